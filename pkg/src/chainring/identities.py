"""Exact linear identities on weight distributions.

Everything here is integer or exact-rational arithmetic; equality is the only
tolerance.  The machinery:

* the MacWilliams transform between a distribution and its dual,
* the subset-count relation
      sum_l C(n-l, nu-l) A_l  ==  C(n, nu) |C| / p^(s(n-nu)),
  valid for every nu above n - d_dual,
* an unconditional double count of kernel vectors of column submatrices of a
  parity-check matrix,
* power moments (full form against the dual distribution, and the short form
  valid below the dual distance),
* exact solvers that complete a partial distribution from either system, and
* closed forms for MDS and small-defect codes, cross-checkable against the
  solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Mapping

from .code import LinearCode, kernel_code
from .enumeration import WeightDistribution, weight_distribution
from .errors import CapExceededError
from .matrix import DEFAULT_SUBSET_CAP, RingMatrix

__all__ = [
    "ClosedFormCrossCheck",
    "DoubleCountCheck",
    "IdentityContext",
    "PascalSystem",
    "RelationCheck",
    "binomial",
    "check_new_relation",
    "closed_form_crosscheck",
    "double_count_check",
    "macwilliams_transform",
    "mds_distribution",
    "new_relation_report",
    "power_moment",
    "small_defect_distribution",
    "solve_distribution",
    "solve_distribution_pless",
]


def binomial(a: int, b: int) -> int:
    """C(a, b), zero outside 0 <= b <= a (sums here rely on that convention)."""
    if b < 0 or b > a or a < 0:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class IdentityContext:
    """Code parameters the identities depend on; distances are optional."""

    n: int
    p: int
    s: int
    card: int
    rank: int
    free_rank: int
    d: int | None = None
    d_dual: int | None = None

    @classmethod
    def from_code(
        cls, code: LinearCode, d: int | None = None, d_dual: int | None = None
    ) -> IdentityContext:
        return cls(
            n=code.n,
            p=code.ring.p,
            s=code.ring.s,
            card=code.cardinality,
            rank=code.rank,
            free_rank=code.free_rank,
            d=d,
            d_dual=d_dual,
        )

    @classmethod
    def from_distribution(
        cls, dist: WeightDistribution, d: int | None = None, d_dual: int | None = None
    ) -> IdentityContext:
        return cls(
            n=dist.n,
            p=dist.p,
            s=dist.s,
            card=dist.card,
            rank=dist.rank,
            free_rank=dist.free_rank,
            d=d,
            d_dual=d_dual,
        )

    @classmethod
    def from_profile(
        cls,
        n: int,
        p: int,
        s: int,
        counts,
        d: int | None = None,
        d_dual: int | None = None,
    ) -> IdentityContext:
        """Context for a code of a given type; the cardinality is derived, so
        it is consistent with the profile by construction."""
        counts = tuple(counts)
        if len(counts) != s or any(k < 0 for k in counts):
            raise ValueError(f"type profile must be {s} nonnegative counts, got {counts!r}")
        if sum(counts) > n:
            raise ValueError(f"rank {sum(counts)} exceeds length {n}")
        card = p ** sum((s - i) * k for i, k in enumerate(counts))
        return cls(
            n=n,
            p=p,
            s=s,
            card=card,
            rank=sum(counts),
            free_rank=counts[0],
            d=d,
            d_dual=d_dual,
        )

    def scaled_cardinality(self, nu: int) -> Fraction:
        """|C| / p^(s(n-nu)), evaluated per equation."""
        return Fraction(self.card, self.p ** (self.s * (self.n - nu)))


@dataclass(frozen=True)
class RelationCheck:
    """One evaluated identity: integer left side, exact rational right side."""

    nu: int
    lhs: int
    rhs: Fraction
    holds: bool
    required: bool | None = None


@dataclass(frozen=True)
class DoubleCountCheck:
    """Two independent counts of the same set; must agree for every nu."""

    nu: int
    kernel_side: int
    codeword_side: int
    holds: bool


# -- MacWilliams ---------------------------------------------------------------


def macwilliams_transform(dist: WeightDistribution) -> WeightDistribution:
    """Distribution of the dual code, by exact polynomial substitution.

    Expands W(X + (p^s - 1) Y, X - Y) coefficient by coefficient in integer
    arithmetic and divides by |C|.  A non-integral or negative coefficient
    means the input was not the distribution of any linear code.
    """
    n, card = dist.n, dist.card
    q = dist.p**dist.s
    coeffs = [0] * (n + 1)
    for i, a_i in enumerate(dist.counts):
        if a_i == 0:
            continue
        # (X + (q-1)Y)^(n-i) * (X - Y)^i, coefficient of Y^k
        for k in range(n + 1):
            c = 0
            for b in range(min(i, k) + 1):
                t = binomial(i, b) * binomial(n - i, k - b) * (q - 1) ** (k - b)
                c += -t if b & 1 else t
            coeffs[k] += a_i * c
    dual_counts = []
    for k, v in enumerate(coeffs):
        if v % card:
            raise ValueError(
                f"transform coefficient at weight {k} is not divisible by |C|; "
                "input is not a valid weight distribution"
            )
        w = v // card
        if w < 0:
            raise ValueError(
                f"transform produced a negative count at weight {k}; "
                "input is not a valid weight distribution"
            )
        dual_counts.append(w)
    total = q**n
    if total % card:
        raise ValueError("cardinality does not divide the ambient space size")
    return WeightDistribution(
        n=n,
        counts=tuple(dual_counts),
        p=dist.p,
        s=dist.s,
        card=total // card,
        rank=n - dist.free_rank,
        free_rank=n - dist.rank,
    )


# -- subset-count relation -------------------------------------------------------


def check_new_relation(
    dist: WeightDistribution, nu: int, d_dual: int | None = None
) -> RelationCheck:
    """Evaluate sum_l C(n-l, nu-l) A_l against C(n, nu) |C| / p^(s(n-nu)).

    The relation is guaranteed only for nu > n - d_dual; when d_dual is given
    the ``required`` flag marks that range, below it the residual is simply
    reported.
    """
    n = dist.n
    if not 0 <= nu <= n:
        raise ValueError(f"nu must lie in 0..{n}, got {nu}")
    lhs = sum(binomial(n - l, nu - l) * a for l, a in enumerate(dist.counts[: nu + 1]))
    rhs = binomial(n, nu) * IdentityContext.from_distribution(dist).scaled_cardinality(nu)
    required = None if d_dual is None else nu > n - d_dual
    return RelationCheck(nu=nu, lhs=lhs, rhs=rhs, holds=lhs == rhs, required=required)


def new_relation_report(dist: WeightDistribution, d_dual: int | None) -> list[RelationCheck]:
    """The relation at every nu, with the guaranteed range flagged."""
    if d_dual is None:
        raise ValueError("threshold validation needs the dual minimum distance")
    return [check_new_relation(dist, nu, d_dual) for nu in range(dist.n + 1)]


def double_count_check(
    code: LinearCode,
    nu: int,
    *,
    distribution: WeightDistribution | None = None,
    subset_cap: int = DEFAULT_SUBSET_CAP,
) -> DoubleCountCheck:
    """Count kernel vectors of nu-column submatrices of H in two ways.

    Side one sums |ker H_I| over all column subsets I of size nu; side two is
    the binomial-weighted sum over the weight distribution.  Equality holds
    for every nu, with no threshold.
    """
    n = code.n
    if not 0 <= nu <= n:
        raise ValueError(f"nu must lie in 0..{n}, got {nu}")
    if comb(n, nu) > subset_cap:
        raise CapExceededError(
            f"{comb(n, nu)} column subsets exceed the cap of {subset_cap}"
        )
    parity = code.parity_check()
    kernel_side = 0
    for cols in combinations(range(n), nu):
        rows = tuple(tuple(row[c] for c in cols) for row in parity.rows)
        kernel_side += kernel_code(RingMatrix(code.ring, rows, nu)).cardinality
    dist = distribution if distribution is not None else weight_distribution(code)
    codeword_side = sum(
        binomial(n - l, nu - l) * a for l, a in enumerate(dist.counts[: nu + 1])
    )
    return DoubleCountCheck(
        nu=nu,
        kernel_side=kernel_side,
        codeword_side=codeword_side,
        holds=kernel_side == codeword_side,
    )


# -- power moments ---------------------------------------------------------------


def power_moment(
    dist: WeightDistribution,
    dual_dist: WeightDistribution | None = None,
    *,
    nu: int,
    form: str | None = None,
) -> RelationCheck:
    """Evaluate sum_j C(j, nu) A_j against its closed right-hand side.

    ``form="full"`` uses the dual distribution:
        (|C| / p^(s nu)) * sum_{j<=nu} (-1)^j C(n-j, n-nu) (p^s-1)^(nu-j) A_j-dual.
    ``form="pless"`` applies below the dual distance, where the dual terms
    collapse:
        (|C| / p^(s nu)) * C(n, n-nu) (p^s-1)^nu.
    The form defaults to "full" when a dual distribution is supplied.
    """
    n, card = dist.n, dist.card
    q = dist.p**dist.s
    if not 0 <= nu <= n:
        raise ValueError(f"nu must lie in 0..{n}, got {nu}")
    if form is None:
        form = "full" if dual_dist is not None else "pless"
    lhs = sum(binomial(j, nu) * a for j, a in enumerate(dist.counts))
    factor = Fraction(card, q**nu)
    if form == "full":
        if dual_dist is None:
            raise ValueError("the full power-moment form needs the dual distribution")
        acc = 0
        for j in range(nu + 1):
            t = binomial(n - j, n - nu) * (q - 1) ** (nu - j) * dual_dist.counts[j]
            acc += -t if j & 1 else t
        rhs = factor * acc
    elif form == "pless":
        if dual_dist is not None:
            dd = dual_dist.min_positive_weight
        else:
            dd = macwilliams_transform(dist).min_positive_weight
        if dd is None:
            dd = n + 1  # zero dual: every term beyond A_0 vanishes at all nu
        if nu >= dd:
            raise ValueError(f"the short form needs nu < dual distance {dd}, got {nu}")
        rhs = factor * binomial(n, n - nu) * (q - 1) ** nu
    else:
        raise ValueError(f"unknown form {form!r}; expected 'full' or 'pless'")
    return RelationCheck(nu=nu, lhs=lhs, rhs=rhs, holds=lhs == rhs)


# -- solvers --------------------------------------------------------------------


@dataclass(frozen=True)
class PascalSystem:
    """The linear system tying A_0..A_n together above the dual threshold.

    One equation per nu in {n - d_dual + 1, ..., n}; the coefficient of A_l is
    C(n-l, nu-l), so the matrix is a truncated Pascal matrix whose maximal
    minors are all nonzero.  Right-hand sides are integral for any context
    that belongs to an actual code.
    """

    n: int
    nus: tuple[int, ...]
    rhs: tuple[int, ...]

    @classmethod
    def build(cls, ctx: IdentityContext) -> PascalSystem:
        if ctx.d_dual is None:
            raise ValueError("building the system needs the dual minimum distance")
        nus = tuple(range(ctx.n - ctx.d_dual + 1, ctx.n + 1))
        rhs = []
        for nu in nus:
            value = binomial(ctx.n, nu) * ctx.scaled_cardinality(nu)
            if value.denominator != 1 or value < 0:
                raise ValueError(
                    f"right-hand side at nu={nu} is {value}, not a nonnegative "
                    "integer; the context is inconsistent"
                )
            rhs.append(int(value))
        return cls(n=ctx.n, nus=nus, rhs=tuple(rhs))

    def coefficient(self, nu: int, l: int) -> int:
        return binomial(self.n - l, nu - l)


def _solve_exact(
    rows: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction]:
    """Solve an (m x u) system with m >= u by exact Gaussian elimination.

    Requires full column rank; surplus equations must be consistent.
    """
    m = len(rows)
    u = len(rows[0]) if rows else 0
    work = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(u):
        pivot = next((i for i in range(r, m) if work[i][c] != 0), None)
        if pivot is None:
            raise ValueError("singular system: the given unknowns are not determined")
        work[r], work[pivot] = work[pivot], work[r]
        inv = 1 / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if work[i][u] != 0:
            raise ValueError(
                "inconsistent inputs: the supplied values satisfy no common solution"
            )
    return [work[i][u] for i in range(u)]


def _fill_known(ctx: IdentityContext, known: Mapping[int, int]) -> dict[int, int]:
    filled: dict[int, int] = {}
    for idx, value in known.items():
        idx = int(idx)
        value = int(value)
        if not 0 <= idx <= ctx.n:
            raise ValueError(f"known index {idx} out of range 0..{ctx.n}")
        if value < 0:
            raise ValueError(f"known count at index {idx} is negative")
        filled[idx] = value
    if ctx.d is not None:
        if not 1 <= ctx.d <= ctx.n:
            raise ValueError(f"distance {ctx.d} out of range 1..{ctx.n}")
        for idx in range(ctx.d):
            implied = 1 if idx == 0 else 0
            if idx in filled and filled[idx] != implied:
                raise ValueError(
                    f"known value at index {idx} contradicts minimum distance {ctx.d}"
                )
            filled[idx] = implied
    return filled


def _complete(
    ctx: IdentityContext,
    known: dict[int, int],
    equations: list[tuple[list[Fraction], Fraction]],
    capacity: int,
) -> WeightDistribution:
    unknowns = [l for l in range(ctx.n + 1) if l not in known]
    if len(unknowns) > capacity:
        raise ValueError(
            f"underdetermined: {len(unknowns)} unknowns but only {capacity} "
            "independent equations"
        )
    counts: list[int] = [0] * (ctx.n + 1)
    for idx, value in known.items():
        counts[idx] = value
    if unknowns:
        rows = [[coeffs[l] for l in unknowns] for coeffs, _ in equations]
        rhs = [
            b - sum(coeffs[l] * known[l] for l in known)
            for (coeffs, b) in equations
        ]
        solution = _solve_exact(rows, rhs)
        for l, value in zip(unknowns, solution):
            if value.denominator != 1 or value < 0:
                raise ValueError(
                    f"inconsistent inputs: A_{l} solves to {value}, which is not "
                    "a nonnegative integer"
                )
            counts[l] = int(value)
    else:
        for coeffs, b in equations:
            got = sum(coeffs[l] * known[l] for l in known)
            if got != b:
                raise ValueError("inconsistent inputs: known values violate the system")
    try:
        return WeightDistribution(
            n=ctx.n,
            counts=tuple(counts),
            p=ctx.p,
            s=ctx.s,
            card=ctx.card,
            rank=ctx.rank,
            free_rank=ctx.free_rank,
        )
    except ValueError as exc:
        raise ValueError(f"inconsistent inputs: {exc}") from exc


def solve_distribution(
    ctx: IdentityContext, known: Mapping[int, int]
) -> WeightDistribution:
    """Complete a distribution from the truncated Pascal system.

    A known distance auto-fills A_0..A_{d-1}; the remaining unknowns must not
    outnumber the d_dual equations.  Non-integral or negative solutions mean
    the inputs belong to no code and raise ValueError.
    """
    if ctx.d_dual is None:
        raise ValueError("solving needs the dual minimum distance in the context")
    filled = _fill_known(ctx, known)
    system = PascalSystem.build(ctx)
    equations = [
        (
            [Fraction(system.coefficient(nu, l)) for l in range(ctx.n + 1)],
            Fraction(b),
        )
        for nu, b in zip(system.nus, system.rhs)
    ]
    return _complete(ctx, filled, equations, ctx.d_dual)


def solve_distribution_pless(
    ctx: IdentityContext, known: Mapping[int, int]
) -> WeightDistribution:
    """Complete a distribution from the short power moments (nu < d_dual).

    Equivalent to the Pascal route whenever both are determined, which gives
    an independent consistency check on solved distributions.
    """
    if ctx.d_dual is None:
        raise ValueError("solving needs the dual minimum distance in the context")
    filled = _fill_known(ctx, known)
    q = ctx.p**ctx.s
    equations = []
    for nu in range(ctx.d_dual):
        coeffs = [Fraction(binomial(l, nu)) for l in range(ctx.n + 1)]
        rhs = Fraction(ctx.card, q**nu) * binomial(ctx.n, ctx.n - nu) * (q - 1) ** nu
        equations.append((coeffs, rhs))
    return _complete(ctx, filled, equations, ctx.d_dual)


# -- closed forms ------------------------------------------------------------------


def mds_distribution(n: int, rank: int, p: int, s: int) -> WeightDistribution:
    """Weight distribution of a free code meeting the Singleton bound.

    With q = p**s and d = n - rank + 1:
        A_w = C(n, w) * sum_{j=0}^{w-d} (-1)^j C(w, j) (q^(w-d+1-j) - 1).
    """
    if not 1 <= rank <= n:
        raise ValueError(f"rank must lie in 1..{n}, got {rank}")
    q = p**s
    d = n - rank + 1
    counts = [0] * (n + 1)
    counts[0] = 1
    for w in range(d, n + 1):
        acc = 0
        for j in range(w - d + 1):
            t = binomial(w, j) * (q ** (w - d + 1 - j) - 1)
            acc += -t if j & 1 else t
        counts[w] = binomial(n, w) * acc
    return WeightDistribution(
        n=n, counts=tuple(counts), p=p, s=s, card=q**rank, rank=rank, free_rank=rank
    )


def small_defect_distribution(
    ctx: IdentityContext, known_high_weights: Mapping[int, int]
) -> WeightDistribution:
    """Distribution of a code with Singleton defect 0 or 1.

    Delegates to the Pascal solver, which is the canonical recovery path for
    these codes; closed forms live in ``closed_form_crosscheck``.
    """
    if ctx.d is None:
        raise ValueError("the context must carry the minimum distance")
    defect = ctx.n + 1 - ctx.rank - ctx.d
    if defect not in (0, 1):
        raise ValueError(f"expected Singleton defect 0 or 1, got {defect}")
    return solve_distribution(ctx, known_high_weights)


@dataclass(frozen=True)
class ClosedFormCrossCheck:
    """Solver output versus an independently computed distribution."""

    solver: WeightDistribution
    closed_form: tuple[int, ...] | None
    agrees: bool | None
    note: str


def _mdr_closed_form(ctx: IdentityContext, known: dict[int, int]) -> tuple[int, ...] | None:
    """Explicit inverse-Pascal recovery for defect-0 codes.

    The top unknowns A_{n-k0+sigma+i} satisfy a triangular system whose
    inverse is the signed version of itself:
        A_{n-k0+sigma+i} = sum_{j<=i} (-1)^(i-j) C(k0-sigma-j, i-j) * b_j,
    where b_j collects the right-hand side of the equation at
    nu = n - k0 + sigma + j after moving the lower known counts across.
    """
    n, K, k0 = ctx.n, ctx.rank, ctx.free_rank
    d, d_dual = ctx.d, ctx.d_dual
    if d is None or d_dual is None:
        return None
    sigma = (n + 1 - K - d) + (k0 + 1 - d_dual)
    lower = {}
    for h in range(sigma + K - k0 - 1):
        l = n - K + 1 + h
        if l not in known:
            return None  # not enough knowns for the explicit form
        lower[l] = known[l]
    counts = [0] * (n + 1)
    counts[0] = 1
    for l, v in lower.items():
        counts[l] = v
    for i in range(k0 - sigma + 1):
        total = Fraction(0)
        for j in range(i + 1):
            nu = n - k0 + sigma + j
            b = binomial(n, nu) * (ctx.scaled_cardinality(nu) - 1)
            for l, v in lower.items():
                b -= binomial(n - l, nu - l) * v
            term = binomial(k0 - sigma - j, i - j) * b
            total += -term if (i - j) & 1 else term
        if total.denominator != 1 or total < 0:
            return None
        counts[n - k0 + sigma + i] = int(total)
    return tuple(counts)


def _determinant(rows: list[list[Fraction]]) -> Fraction:
    size = len(rows)
    work = [row[:] for row in rows]
    det = Fraction(1)
    for c in range(size):
        pivot = next((i for i in range(c, size) if work[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        det *= work[c][c]
        inv = 1 / work[c][c]
        for i in range(c + 1, size):
            if work[i][c] != 0:
                f = work[i][c] * inv
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
    return det


def _cramer_solve(ctx: IdentityContext, known: dict[int, int]) -> tuple[int, ...] | None:
    """Re-solve the Pascal system through determinant ratios.

    Independent of the Gaussian-elimination path; used to cross-check codes
    whose closed form has no reliable explicit shape.
    """
    if ctx.d_dual is None:
        return None
    system = PascalSystem.build(ctx)
    unknowns = [l for l in range(ctx.n + 1) if l not in known]
    u = len(unknowns)
    if u == 0 or u > ctx.d_dual:
        return None
    # The last u equations form a truncated Pascal matrix with u rows, so
    # every u x u column minor is invertible.
    tail = list(zip(system.nus, system.rhs))[-u:]
    base = [[Fraction(binomial(ctx.n - l, nu - l)) for l in unknowns] for nu, _ in tail]
    rhs = [
        Fraction(b) - sum(binomial(ctx.n - l, nu - l) * known[l] for l in known)
        for nu, b in tail
    ]
    det = _determinant(base)
    if det == 0:
        return None
    counts = [0] * (ctx.n + 1)
    for idx, value in known.items():
        counts[idx] = value
    for col, l in enumerate(unknowns):
        replaced = [row[:col] + [rhs[i]] + row[col + 1 :] for i, row in enumerate(base)]
        value = _determinant(replaced) / det
        if value.denominator != 1 or value < 0:
            return None
        counts[l] = int(value)
    return tuple(counts)


def closed_form_crosscheck(
    ctx: IdentityContext, known_high_weights: Mapping[int, int]
) -> ClosedFormCrossCheck:
    """Compare the solver with an independently derived distribution.

    Free defect-0 codes use the closed MDS formula, other defect-0 codes the
    explicit inverse-Pascal form, and defect-1 codes a determinant-based
    re-solve.  Disagreements are reported, never silently trusted.
    """
    if ctx.d is None:
        raise ValueError("the context must carry the minimum distance")
    solver = small_defect_distribution(ctx, known_high_weights)
    defect = ctx.n + 1 - ctx.rank - ctx.d
    known = _fill_known(ctx, known_high_weights)
    if defect == 0 and ctx.rank == ctx.free_rank:
        closed = mds_distribution(ctx.n, ctx.rank, ctx.p, ctx.s).counts
        note = "mds closed form"
    elif defect == 0:
        closed = _mdr_closed_form(ctx, known)
        note = "inverse-Pascal closed form" if closed else "insufficient knowns for the closed form"
    else:
        closed = _cramer_solve(ctx, known)
        note = "determinant re-solve" if closed else "determinant re-solve unavailable"
    agrees = (closed == solver.counts) if closed is not None else None
    return ClosedFormCrossCheck(solver=solver, closed_form=closed, agrees=agrees, note=note)
