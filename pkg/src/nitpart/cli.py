"""Command line interface: ``nitpart <command> ...``.

Exit status is 0 on success, 1 on a domain or validation failure and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

import numpy as np

from nitpart.errors import NitError, ParameterError
from nitpart.inverse import build_w_basis, conjugated_nit_operators, verify_separation, w_diagonals
from nitpart.operators import PrimeAssignment, context_operator, nit_operators
from nitpart.partitions import (
    DEFAULT_BUDGET,
    NitParams,
    NitSet,
    apply_state_permutation,
    canonical_nit_set,
    canonicalize,
    enumerate_nit_sets,
    find_mapping_permutations,
    is_valid_nit_set,
    parse_cycle_notation,
)
from nitpart.render import render_tessellation
from nitpart.serialize import context_to_dict, dumps, read_nit_set, write_nit_set
from nitpart.spectra import DEFAULT_TOL, classify_nit_set_eigenstates
from nitpart.urn import BROADENED, MONOSPECTRAL, Lens, run_session, urn_from_nit_set


def _add_source(p: argparse.ArgumentParser, perm: bool = True) -> None:
    p.add_argument("--n", type=int, help="outcomes per particle")
    p.add_argument("--k", type=int, help="number of particles")
    p.add_argument("--input", help="nit set JSON file ('-' for stdin)")
    if perm:
        p.add_argument("--perm", help="relabel states by this cycle-notation permutation first")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nitpart", description="Quantum nits via state partitions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("construct", help="canonical nit set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=["json", "ascii"], default="json")

    p = sub.add_parser("enumerate", help="all nit sets in the canonical orbit, one JSON per line")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--limit", type=int, help="print at most this many sets")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum permutations to sweep")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("permute", help="relabel the states of a nit set")
    _add_source(p, perm=False)
    p.add_argument("--perm", required=True)

    p = sub.add_parser("verify", help="check the separation properties")
    _add_source(p)

    p = sub.add_parser("context", help="nit operators, context operator and decode table")
    _add_source(p)
    p.add_argument("--primes", help="comma separated, k*n primes, partition by partition")

    p = sub.add_parser("w-demo", help="inverse problem for the W-state basis")
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("tessellate", help="draw a two-particle nit set")
    _add_source(p)
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")

    p = sub.add_parser("classify", help="product/entangled classification of block eigenstates")
    _add_source(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("mappings", help="all permutations taking one nit set to another")
    _add_source(p, perm=False)
    p.add_argument("--target", required=True, help="target nit set JSON file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("urn", help="generalized urn session")
    _add_source(p)
    p.add_argument("--lens", required=True, help="lens colour")
    p.add_argument("--mode", choices=[MONOSPECTRAL, BROADENED], default=MONOSPECTRAL)
    p.add_argument("--draws", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--colors", help="comma separated colour names, one per partition")
    p.add_argument("--glyphs", help="comma separated glyphs, one per block")
    return parser


def _load(args, parser) -> NitSet:
    if args.input is not None:
        if args.input == "-":
            s = read_nit_set(sys.stdin)
        else:
            s = read_nit_set(args.input)
    elif args.n is not None and args.k is not None:
        s = canonical_nit_set(NitParams(args.n, args.k))
    else:
        parser.error(f"{args.command}: give --input or both --n and --k")
    perm = getattr(args, "perm", None)
    if perm is not None:
        s = apply_state_permutation(s, parse_cycle_notation(perm, s.params.N))
    return s


def _require_valid(s: NitSet) -> None:
    report = is_valid_nit_set(s)
    if not report:
        raise NitNotValid(report.to_dict())


class NitNotValid(NitError):
    def __init__(self, report: dict):
        self.report = report
        super().__init__("invalid nit set: " + json.dumps(report))


def _csv(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def w_demo_report() -> tuple[str, dict, bool]:
    U = build_w_basis()
    diagonals = w_diagonals()
    report = verify_separation(U, diagonals)
    F1 = conjugated_nit_operators(U, diagonals[:1])[0]
    off = F1 - np.diag(np.diag(F1))
    f1_diag = [round(x.real) for x in np.diag(F1)]
    lines = [
        "W-state basis: 8x8 unitary, columns are the target states",
        f"unitarity deviation: {np.max(np.abs(U.matrix @ U.matrix.conj().T - np.eye(8))):.3e}",
        "diagonals: " + "; ".join("diag(" + ",".join(map(str, d.entries)) + ")" for d in diagonals),
        "F1' = diag(" + ",".join(map(str, f1_diag)) + f"), max off-diagonal {np.max(np.abs(off)):.3e}",
        "context eigenvalues: " + ", ".join(str(v) for v in report.eigenvalues),
    ]
    for name, check in report.checks.items():
        worst = "" if check.worst is None else f" (worst {check.worst:.3e})"
        lines.append(f"{name}: {'PASS' if check.passed else 'FAIL'}{worst}")
    data = report.to_dict()
    data["F1_diagonal"] = f1_diag
    data["F1_max_off_diagonal"] = float(np.max(np.abs(off)))
    return "\n".join(lines) + "\n", data, report.passed


def dispatch(args, parser, out=None) -> int:
    out = out if out is not None else sys.stdout
    cmd = args.command
    if cmd == "construct":
        s = canonical_nit_set(NitParams(args.n, args.k))
        out.write(write_nit_set(s) + "\n" if args.format == "json" else str(s) + "\n")
        return 0

    if cmd == "enumerate":
        result = enumerate_nit_sets(NitParams(args.n, args.k), budget=args.budget, jobs=args.jobs)
        if args.count_only:
            out.write(f"{result.count}\n")
            return 0
        sets = result.sets if args.limit is None else result.sets[: args.limit]
        for s in sets:
            out.write(write_nit_set(s) + "\n")
        return 0

    if cmd == "permute":
        s = _load(args, parser)
        _require_valid(s)
        out.write(write_nit_set(s) + "\n")
        return 0

    if cmd == "verify":
        report = is_valid_nit_set(_load(args, parser))
        out.write(json.dumps(report.to_dict()) + "\n")
        return 0 if report else 1

    if cmd == "context":
        s = _load(args, parser)
        _require_valid(s)
        if args.primes:
            try:
                flat = [int(x) for x in _csv(args.primes)]
            except ValueError:
                parser.error(f"--primes must be integers: {args.primes!r}")
            assignment = PrimeAssignment.from_flat(flat, s.n, s.k)
        else:
            assignment = PrimeAssignment.default(s.n, s.k)
        ops = nit_operators(s, assignment)
        out.write(dumps(context_to_dict(context_operator(ops), s, ops)) + "\n")
        return 0

    if cmd == "w-demo":
        text, data, ok = w_demo_report()
        out.write(text if args.format == "text" else dumps(data) + "\n")
        return 0 if ok else 1

    if cmd == "tessellate":
        s = _load(args, parser)
        _require_valid(s)
        out.write(render_tessellation(canonicalize(s), args.format))
        return 0

    if cmd == "classify":
        s = _load(args, parser)
        _require_valid(s)
        report = [r.to_dict() for r in classify_nit_set_eigenstates(canonicalize(s), args.tol)]
        out.write(json.dumps(report) + "\n")
        return 0

    if cmd == "mappings":
        s = _load(args, parser)
        target = read_nit_set(args.target)
        perms = find_mapping_permutations(s, target, budget=args.budget)
        out.write(json.dumps({"count": len(perms), "permutations": [p.cycle_notation() for p in perms]}) + "\n")
        return 0

    if cmd == "urn":
        s = _load(args, parser)
        colors = _csv(args.colors) if args.colors else None
        glyphs = _csv(args.glyphs) if args.glyphs else None
        urn = urn_from_nit_set(s, colors, glyphs)
        tally = run_session(urn, Lens(args.lens, args.mode), args.draws, args.seed)
        data = tally.to_dict()
        data["colors"] = list(urn.colors)
        data["seed"] = args.seed
        out.write(json.dumps(data) + "\n")
        return 0

    parser.error(f"unknown command {cmd!r}")
    return 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return dispatch(args, parser)
    except NitNotValid as exc:
        sys.stdout.write(json.dumps(exc.report) + "\n")
        sys.stderr.write(f"nitpart {args.command}: invalid nit set\n")
        return 1
    except (NitError, ParameterError) as exc:
        sys.stderr.write(f"nitpart {args.command}: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"nitpart {args.command}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
