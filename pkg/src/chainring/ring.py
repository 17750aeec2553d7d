"""Exact arithmetic in finite commutative chain rings with prime residue field.

Two backends realize every ring used by this library:

* ``"int"``:  the integers modulo p**s,
* ``"poly"``: truncated polynomials F_p[u]/(u**s).

Both have exactly p**s elements and a maximal ideal generated by a single
element ``gamma`` (p in the integer backend, u in the polynomial one), with
gamma**s == 0 and gamma**(s-1) != 0.

Elements are stored as canonical integer codes in ``range(p**s)``.  The
polynomial backend packs its coefficient vector in base p, lowest degree
first.  Under that packing the two backends share the same valuation,
splitting and representative-range logic (dividing a code by p strips the
lowest base-p digit in both rings); only add/neg/mul and unit inversion
differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

__all__ = [
    "BACKENDS",
    "MAX_RING_SIZE",
    "ChainRing",
    "RingElement",
    "gamma_decompose",
    "unit_inverse",
]

BACKENDS = ("int", "poly")

# Scalar arithmetic stays in machine-word range; code-level counts elsewhere
# use arbitrary precision.
MAX_RING_SIZE = 1 << 31

ElementLike = Union["RingElement", int, Sequence[int]]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ChainRing:
    """The chain ring Z/p^s Z (backend "int") or F_p[u]/(u^s) (backend "poly").

    Immutable; safe to share between concurrent workers.
    """

    p: int
    s: int
    backend: str = "int"

    def __post_init__(self) -> None:
        if self.backend not in BACKENDS:
            raise ValueError(f"unknown backend {self.backend!r}; expected one of {BACKENDS}")
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise ValueError(f"p must be a prime integer, got {self.p!r}")
        if not isinstance(self.s, int) or self.s < 1:
            raise ValueError(f"s must be an integer >= 1, got {self.s!r}")
        if self.p**self.s > MAX_RING_SIZE:
            raise ValueError(f"ring size {self.p}**{self.s} exceeds the supported bound 2**31")

    # -- structure ---------------------------------------------------------

    @cached_property
    def size(self) -> int:
        return self.p**self.s

    @property
    def gamma_code(self) -> int:
        # p (resp. u) reduces to 0 when s == 1; base-p packing makes the code
        # of u equal to p as well.
        return self.p % self.size

    @property
    def gamma(self) -> RingElement:
        return RingElement(self, self.gamma_code)

    @property
    def zero(self) -> RingElement:
        return RingElement(self, 0)

    @property
    def one(self) -> RingElement:
        return RingElement(self, 1)

    def gamma_pow(self, j: int) -> int:
        """Code of gamma**j (zero once j reaches the nilpotency index)."""
        if j < 0:
            raise ValueError("exponent must be nonnegative")
        return self.p**j if j < self.s else 0

    def elements(self) -> range:
        """All element codes, in canonical order."""
        return range(self.size)

    def residue_representatives(self, m: int) -> range:
        """Codes of the canonical representatives of R / gamma^m R.

        In both backends these are exactly the codes below p**m.
        """
        if not 0 <= m <= self.s:
            raise ValueError(f"m must lie in [0, {self.s}], got {m}")
        return range(self.p**m)

    # -- scalar arithmetic on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.backend == "int":
            return (a + b) % self.size
        p = self.p
        out = 0
        pw = 1
        for _ in range(self.s):
            out += ((a % p) + (b % p)) % p * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a: int) -> int:
        if self.backend == "int":
            return (-a) % self.size
        p = self.p
        out = 0
        pw = 1
        for _ in range(self.s):
            out += (-(a % p)) % p * pw
            a //= p
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.backend == "int":
            return (a * b) % self.size
        p, s = self.p, self.s
        digits_a = []
        t = a
        for _ in range(s):
            digits_a.append(t % p)
            t //= p
        out = [0] * s
        for i, x in enumerate(digits_a):
            if x == 0:
                continue
            t = b
            for j in range(s - i):
                d = t % p
                if d:
                    out[i + j] = (out[i + j] + x * d) % p
                t //= p
        code = 0
        pw = 1
        for d in out:
            code += d * pw
            pw *= p
        return code

    def valuation(self, a: int) -> int:
        """Largest j with gamma**j dividing a; s for a == 0.

        Works for both backends: stripping the lowest base-p digit divides by
        p in the integer ring and by u in the polynomial ring.
        """
        if a == 0:
            return self.s
        v = 0
        p = self.p
        while a % p == 0:
            a //= p
            v += 1
        return v

    def split(self, a: int, j: int) -> tuple[int, int]:
        """Decompose a == low + gamma**j * high.

        ``low`` is the canonical representative of a mod gamma**j and
        ``high`` lies in range(p**(s-j)).
        """
        pj = self.p**j
        return a % pj, a // pj

    def unit_part(self, a: int) -> int:
        """The unit w with a == gamma**valuation(a) * w; undefined for zero."""
        if a == 0:
            raise ValueError("zero has no unit part")
        return a // self.p ** self.valuation(a)

    def inverse(self, a: int) -> int:
        """Multiplicative inverse of a unit."""
        if self.valuation(a) != 0:
            raise ValueError(f"{self.decode(a)!r} is not a unit in {self}")
        if self.backend == "int":
            return pow(a, -1, self.size)
        # Triangular solve for b with a*b == 1: the constant coefficient is
        # inverted in F_p, higher coefficients follow one at a time.
        p, s = self.p, self.s
        da = []
        t = a
        for _ in range(s):
            da.append(t % p)
            t //= p
        inv0 = pow(da[0], p - 2, p)
        out = [inv0] + [0] * (s - 1)
        for k in range(1, s):
            acc = 0
            for i in range(1, k + 1):
                acc = (acc + da[i] * out[k - i]) % p
            out[k] = (-inv0 * acc) % p
        code = 0
        pw = 1
        for d in out:
            code += d * pw
            pw *= p
        return code

    # -- encoding ------------------------------------------------------------

    def encode(self, value: ElementLike) -> int:
        """Canonical code of a ring element given in any accepted form.

        Integer backend: any int, reduced modulo p**s.  Polynomial backend:
        either a sequence of coefficients (lowest degree first, reduced mod p)
        or an already-packed code in range(p**s).
        """
        if isinstance(value, RingElement):
            if value.ring != self:
                raise ValueError(f"element of {value.ring} used in {self}")
            return value.code
        if self.backend == "int":
            if isinstance(value, int):
                return value % self.size
            raise TypeError(f"cannot encode {value!r} as an element of {self}")
        if isinstance(value, int):
            if 0 <= value < self.size:
                return value
            raise ValueError(f"packed code {value} out of range for {self}")
        if isinstance(value, (list, tuple)):
            if len(value) > self.s:
                raise ValueError(f"too many coefficients for {self}: {value!r}")
            code = 0
            pw = 1
            for c in value:
                code += (int(c) % self.p) * pw
                pw *= self.p
            return code
        raise TypeError(f"cannot encode {value!r} as an element of {self}")

    def decode(self, code: int):
        """Canonical value: the representative int, or the coefficient tuple."""
        if self.backend == "int":
            return code
        p = self.p
        out = []
        for _ in range(self.s):
            out.append(code % p)
            code //= p
        return tuple(out)

    def element(self, value: ElementLike) -> RingElement:
        return RingElement(self, self.encode(value))

    def __str__(self) -> str:
        if self.backend == "int":
            return f"Z/{self.size}"
        return f"F_{self.p}[u]/(u^{self.s})"


@dataclass(frozen=True)
class RingElement:
    """An element of a ChainRing, held by its canonical code."""

    ring: ChainRing
    code: int

    def __post_init__(self) -> None:
        if not 0 <= self.code < self.ring.size:
            raise ValueError(f"code {self.code} out of range for {self.ring}")

    @property
    def value(self):
        return self.ring.decode(self.code)

    @property
    def valuation(self) -> int:
        return self.ring.valuation(self.code)

    @property
    def is_unit(self) -> bool:
        return self.valuation == 0

    @property
    def is_zero(self) -> bool:
        return self.code == 0

    def unit_part(self) -> RingElement:
        return RingElement(self.ring, self.ring.unit_part(self.code))

    def inverse(self) -> RingElement:
        return RingElement(self.ring, self.ring.inverse(self.code))

    def gamma_decompose(self) -> tuple[int, RingElement | None]:
        """(valuation v, unit w) with self == gamma**v * w; (s, None) for zero."""
        if self.code == 0:
            return self.ring.s, None
        return self.valuation, self.unit_part()

    def _coerce(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.code
        if isinstance(other, int):
            return self.ring.encode(other) if self.ring.backend == "int" else NotImplemented
        return NotImplemented

    def __add__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.add(self.code, code))

    __radd__ = __add__

    def __sub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(self.code, code))

    def __rsub__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.sub(code, self.code))

    def __mul__(self, other):
        code = self._coerce(other)
        if code is NotImplemented:
            return NotImplemented
        return RingElement(self.ring, self.ring.mul(self.code, code))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"{self.ring}:{self.value}"


def gamma_decompose(a: RingElement) -> tuple[int, RingElement | None]:
    """Factor a as gamma**v times a unit; the zero element maps to (s, None)."""
    return a.gamma_decompose()


def unit_inverse(a: RingElement) -> RingElement:
    """Inverse of a unit; raises ValueError for non-units."""
    return a.inverse()
