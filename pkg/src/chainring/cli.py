"""Command-line front end.

One JSON document per invocation on stdout.  Exit codes: 0 for success (and
for ``check`` runs whose required identities all hold), 1 when a required
identity is violated, 2 for usage or input errors, 3 when an exhaustive
enumeration would exceed its cap.

The ``random`` subcommand is pinned for reproducibility: entries are drawn
row-major as ``random.Random(seed).randrange(p**s)``, each draw taken as the
canonical element code (the representative itself for the integer backend,
base-p packed coefficients for the polynomial backend).
"""

from __future__ import annotations

import argparse
import json
import random as _random
import sys
from fractions import Fraction
from math import comb
from typing import Any

from .code import LinearCode, classify, dual
from .codefile import (
    CodeDocument,
    CodeFileError,
    distribution_to_obj,
    matrix_to_obj,
    parse_code_document,
    permutation_to_obj,
    ring_to_obj,
)
from .enumeration import WeightDistribution, render_enumerator, weight_distribution
from .errors import CapExceededError
from .identities import (
    IdentityContext,
    check_new_relation,
    double_count_check,
    macwilliams_transform,
    mds_distribution,
    power_moment,
    solve_distribution,
)
from .matrix import DEFAULT_SUBSET_CAP, count_submatrix_types
from .ring import ChainRing

__all__ = ["build_parser", "entry", "main"]


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise CodeFileError(f"cannot read {path}: {exc}") from exc


def _load_document(path: str) -> CodeDocument:
    return parse_code_document(_read_input(path))


def _frac_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _parse_known(text: str | None) -> dict[int, int]:
    known: dict[int, int] = {}
    if not text:
        return known
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise CodeFileError(f"known entry {part!r} is not of the form index=value")
        idx, _, val = part.partition("=")
        try:
            known[int(idx)] = int(val)
        except ValueError as exc:
            raise CodeFileError(f"known entry {part!r} is not a pair of integers") from exc
    return known


def _parse_counts(text: str, n: int) -> list[int]:
    parts = [p.strip() for p in text.split(",")]
    try:
        counts = [int(p) for p in parts]
    except ValueError as exc:
        raise CodeFileError(f"distribution {text!r} is not a comma list of integers") from exc
    if len(counts) != n + 1:
        raise CodeFileError(f"distribution needs {n + 1} counts, got {len(counts)}")
    return counts


def _distribution_from_counts(code: LinearCode, counts: list[int]) -> WeightDistribution:
    return WeightDistribution(
        n=code.n,
        counts=tuple(counts),
        p=code.ring.p,
        s=code.ring.s,
        card=code.cardinality,
        rank=code.rank,
        free_rank=code.free_rank,
    )


def _dual_distance(dual_dist: WeightDistribution) -> int:
    # The zero dual has no nonzero word; every nu then falls below the bound.
    d = dual_dist.min_positive_weight
    return d if d is not None else dual_dist.n + 1


# -- handlers ------------------------------------------------------------------


def _cmd_stdform(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    return (
        {
            "ring": ring_to_obj(doc.ring),
            "n": doc.n,
            "profile": list(code.profile.counts),
            "rank": code.rank,
            "free_rank": code.free_rank,
            "cardinality": str(code.cardinality),
            "reduced": matrix_to_obj(code.std.reduced),
            "column_permutation": permutation_to_obj(code.std.column_permutation),
        },
        0,
    )


def _cmd_paritycheck(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    return (
        {
            "ring": ring_to_obj(doc.ring),
            "n": doc.n,
            "parity_check": matrix_to_obj(code.parity_check()),
        },
        0,
    )


def _cmd_dual(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    dual_doc = CodeDocument(
        ring=doc.ring,
        n=doc.n,
        generators=code.parity_check().rows,
        name=f"{doc.name}-dual" if doc.name else None,
    )
    return dual_doc.to_obj(), 0


def _cmd_card(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    return (
        {
            "cardinality": str(code.cardinality),
            "profile": list(code.profile.counts),
            "rank": code.rank,
            "free_rank": code.free_rank,
        },
        0,
    )


def _cmd_wdist(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    if args.method == "enumerate":
        dist = weight_distribution(code, workers=args.workers)
    elif args.method == "solve":
        dual_dist = weight_distribution(dual(code), workers=args.workers)
        ctx = IdentityContext.from_code(code, d=args.d, d_dual=_dual_distance(dual_dist))
        dist = solve_distribution(ctx, _parse_known(args.known))
    else:  # mds
        if not code.is_free:
            raise CodeFileError("the mds method needs a free code")
        dist = mds_distribution(code.n, code.rank, code.ring.p, code.ring.s)
    payload: Any = distribution_to_obj(dist)
    if args.poly:
        payload = {
            "distribution": payload,
            "enumerator_polynomial": render_enumerator(dist),
        }
    return payload, 0


def _cmd_mac(args) -> tuple[Any, int]:
    try:
        raw = json.loads(_read_input(args.file))
    except json.JSONDecodeError as exc:
        raise CodeFileError(f"malformed JSON distribution: {exc}") from exc
    if not isinstance(raw, list):
        raise CodeFileError("distribution input must be a JSON array")
    try:
        counts = tuple(int(x) for x in raw)
    except (TypeError, ValueError) as exc:
        raise CodeFileError("distribution entries must be integers or decimal strings") from exc
    dist = WeightDistribution(
        n=args.n,
        counts=counts,
        p=args.p,
        s=args.s,
        card=int(args.card),
        rank=args.rank,
        free_rank=args.free_rank,
    )
    return distribution_to_obj(macwilliams_transform(dist)), 0


def _cmd_classify(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    dist = weight_distribution(code, workers=args.workers)
    d = dist.min_positive_weight
    if d is None:
        raise CodeFileError("the zero code has no minimum distance to classify")
    dual_dist = weight_distribution(dual(code), workers=args.workers)
    d_dual = dual_dist.min_positive_weight
    profile = classify(code, d, d_dual)
    return (
        {
            "n": code.n,
            "rank": code.rank,
            "free_rank": code.free_rank,
            "cardinality": str(code.cardinality),
            "d": profile.d,
            "d_dual": profile.d_dual,
            "defect": profile.defect,
            "dual_defect": profile.dual_defect,
            "sigma": profile.sigma,
            "label": profile.label,
        },
        0,
    )


def _cmd_check(args) -> tuple[Any, int]:
    doc = _load_document(args.file)
    code = doc.to_code()
    n = code.n
    if args.nu is None and not args.all_nu:
        raise CodeFileError("check needs --nu N or --all-nu")
    if args.nu is not None and not 0 <= args.nu <= n:
        raise CodeFileError(f"--nu must lie in 0..{n}")

    if args.distribution:
        dist = _distribution_from_counts(code, _parse_counts(args.distribution, n))
    else:
        dist = weight_distribution(code, workers=args.workers)

    report: dict[str, Any] = {"identity": args.identity, "n": n}
    results: list[dict[str, Any]] = []
    all_required_hold = True

    def push(nu, lhs, rhs, holds, required):
        nonlocal all_required_hold
        if required and not holds:
            all_required_hold = False
        results.append(
            {
                "nu": nu,
                "lhs": str(lhs),
                "rhs": _frac_str(rhs) if isinstance(rhs, Fraction) else str(rhs),
                "difference": _frac_str(Fraction(lhs) - rhs),
                "holds": holds,
                "required": required,
            }
        )

    if args.identity in ("new", "pless", "power", "subtypes"):
        dual_dist = weight_distribution(dual(code), workers=args.workers)
        d_dual = _dual_distance(dual_dist)
        report["d_dual"] = d_dual

    if args.identity == "new":
        nus = range(n + 1) if args.all_nu else [args.nu]
        for nu in nus:
            result = check_new_relation(dist, nu, d_dual=d_dual)
            push(nu, result.lhs, result.rhs, result.holds, result.required)
    elif args.identity == "pless":
        top = min(d_dual - 1, n)
        nus = range(top + 1) if args.all_nu else [args.nu]
        for nu in nus:
            if nu >= d_dual:
                raise CodeFileError(f"the pless form needs nu < d_dual = {d_dual}")
            result = power_moment(dist, dual_dist, nu=nu, form="pless")
            push(nu, result.lhs, result.rhs, result.holds, True)
    elif args.identity == "power":
        nus = range(n + 1) if args.all_nu else [args.nu]
        for nu in nus:
            result = power_moment(dist, dual_dist, nu=nu, form="full")
            push(nu, result.lhs, result.rhs, result.holds, True)
    elif args.identity == "doublecount":
        nus = range(n + 1) if args.all_nu else [args.nu]
        skipped = []
        for nu in nus:
            if comb(n, nu) > args.subset_cap:
                if args.all_nu:
                    skipped.append(nu)
                    continue
                raise CapExceededError(
                    f"{comb(n, nu)} column subsets exceed the cap of {args.subset_cap}"
                )
            result = double_count_check(
                code, nu, distribution=dist, subset_cap=args.subset_cap
            )
            push(nu, result.kernel_side, result.codeword_side, result.holds, True)
        if skipped:
            report["skipped_nu"] = skipped
    elif args.identity == "subtypes":
        parity = code.parity_check()
        expected = (n - code.rank,) + tuple(reversed(code.profile.counts[1:]))
        nus = range(1, n + 1) if args.all_nu else [args.nu]
        skipped = []
        for nu in nus:
            if nu < 1:
                raise CodeFileError("subtypes needs nu >= 1")
            if comb(n, nu) > args.subset_cap:
                if args.all_nu:
                    skipped.append(nu)
                    continue
                raise CapExceededError(
                    f"{comb(n, nu)} column subsets exceed the cap of {args.subset_cap}"
                )
            tally = count_submatrix_types(parity, nu, cap=args.subset_cap)
            required = nu > n - d_dual
            only = next(iter(tally)) if len(tally) == 1 else None
            holds = (
                only is not None
                and only.counts == expected
                and tally[only] == comb(n, nu)
            )
            if required and not holds:
                all_required_hold = False
            results.append(
                {
                    "nu": nu,
                    "types": [
                        {"profile": list(profile.counts), "count": count}
                        for profile, count in sorted(
                            tally.items(), key=lambda item: item[0].counts
                        )
                    ],
                    "holds": holds,
                    "required": required,
                }
            )
        if skipped:
            report["skipped_nu"] = skipped

    report["results"] = results
    report["all_required_hold"] = all_required_hold
    return report, 0 if all_required_hold else 1


def random_generator_rows(
    ring: ChainRing, n: int, nrows: int, seed: int
) -> tuple[tuple[int, ...], ...]:
    """Pinned seeded draw: row-major ``random.Random(seed).randrange(p**s)``.

    Each draw is the canonical element code.  Mersenne Twister is stable
    across platforms, so equal arguments always give equal rows.
    """
    rng = _random.Random(seed)
    return tuple(tuple(rng.randrange(ring.size) for _ in range(n)) for _ in range(nrows))


def _cmd_random(args) -> tuple[Any, int]:
    ring = ChainRing(args.p, args.s, args.backend)
    rows = random_generator_rows(ring, args.n, args.rows, args.seed)
    name = args.name or f"random-p{args.p}-s{args.s}-n{args.n}-r{args.rows}-seed{args.seed}"
    doc = CodeDocument(ring=ring, n=args.n, generators=rows, name=name)
    return doc.to_obj(), 0


_HANDLERS = {
    "stdform": _cmd_stdform,
    "paritycheck": _cmd_paritycheck,
    "dual": _cmd_dual,
    "card": _cmd_card,
    "wdist": _cmd_wdist,
    "mac": _cmd_mac,
    "check": _cmd_check,
    "classify": _cmd_classify,
    "random": _cmd_random,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainring",
        description="Exact linear codes over finite chain rings: constructions, "
        "weight distributions, duality identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def code_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="code file path, or - for stdin")
        return p

    code_cmd("stdform", "standard form, type profile and column permutation")
    code_cmd("paritycheck", "systematic parity-check matrix in original coordinates")
    code_cmd("dual", "the dual code as a code document")
    code_cmd("card", "cardinality and type profile")

    wdist = code_cmd("wdist", "weight distribution")
    wdist.add_argument(
        "--method", choices=("enumerate", "solve", "mds"), default="enumerate"
    )
    wdist.add_argument("--known", help="comma list of index=value pairs for --method solve")
    wdist.add_argument("--d", type=int, help="minimum distance hint for --method solve")
    wdist.add_argument("--workers", type=int, default=1)
    wdist.add_argument("--poly", action="store_true", help="include the enumerator polynomial")

    mac = sub.add_parser("mac", help="MacWilliams transform of a distribution")
    mac.add_argument("file", help="JSON array of counts, or - for stdin")
    mac.add_argument("--p", type=int, required=True)
    mac.add_argument("--s", type=int, required=True)
    mac.add_argument("--n", type=int, required=True)
    mac.add_argument("--card", required=True, help="cardinality (decimal string)")
    mac.add_argument("--rank", type=int, required=True)
    mac.add_argument("--free-rank", dest="free_rank", type=int, required=True)

    check = code_cmd("check", "verify identities; exit 1 on a required violation")
    check.add_argument(
        "--identity",
        required=True,
        choices=("new", "pless", "power", "doublecount", "subtypes"),
    )
    check.add_argument("--nu", type=int)
    check.add_argument("--all-nu", dest="all_nu", action="store_true")
    check.add_argument("--workers", type=int, default=1)
    check.add_argument("--subset-cap", dest="subset_cap", type=int, default=DEFAULT_SUBSET_CAP)
    check.add_argument(
        "--distribution",
        help="comma list of counts to validate instead of enumerating",
    )

    classify_cmd = code_cmd("classify", "Singleton defects and classification label")
    classify_cmd.add_argument("--workers", type=int, default=1)

    rand = sub.add_parser("random", help="deterministic seeded random code document")
    rand.add_argument("--p", type=int, required=True)
    rand.add_argument("--s", type=int, required=True)
    rand.add_argument("--n", type=int, required=True)
    rand.add_argument("--rows", type=int, required=True)
    rand.add_argument("--seed", type=int, required=True)
    rand.add_argument("--backend", choices=("int", "poly"), default="int")
    rand.add_argument("--name")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        payload, status = handler(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(payload, separators=(",", ":")))
    return status


def entry() -> None:
    sys.exit(main())
