"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 solver
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .balance import (
    SolverBudget,
    SubsetSelection,
    complement,
    find_zero_signing,
    lattice_membership_obstruction,
    strongly_orthogonal_set,
)
from .errors import BudgetExceeded, InadmissibleRank, SpecParseError
from .extremal import (
    c5_remark_check,
    max_wellbalanced_cocardinality,
    min_balanced_cocardinality,
    thm32_value,
    thm41_value,
    verify_tables,
)
from .rootsys import DynkinLabel, RootSystem, build_root_system, format_root, true_coords
from .verify import verify
from .witnesses import thm32_witness, thm41_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def parse_subset_spec(text: str, rs: RootSystem) -> SubsetSelection:
    """``full``, ``indices:i,j,...`` or ``complement:i,j,...`` in canonical order."""
    text = text.strip()
    if text == "full":
        return SubsetSelection.of(rs, range(len(rs)))
    kind, sep, body = text.partition(":")
    if not sep or kind not in ("indices", "complement"):
        raise SpecParseError(f"expected full, indices:... or complement:..., got {text!r}")
    try:
        idx = [int(tok) for tok in body.split(",") if tok.strip()]
    except ValueError:
        raise SpecParseError(f"non-integer index in {text!r}") from None
    bad = [i for i in idx if not 0 <= i < len(rs)]
    if bad:
        raise SpecParseError(f"index {bad[0]} out of range 0..{len(rs) - 1} for {rs.label}")
    if len(set(idx)) != len(idx):
        raise SpecParseError(f"repeated index in {text!r}")
    if kind == "complement":
        idx = complement(rs, idx)
    return SubsetSelection.of(rs, idx)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _add_label(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", type=str.upper, choices=list("ABCDEFG"))
    p.add_argument("rank", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--budget-size", type=int, default=36, metavar="N", help="largest subset the exact solver accepts")
    common.add_argument("--budget-table", type=int, default=2**20, metavar="N", help="largest half-table the solver builds")

    parser = _Parser(prog="wellbalanced", description="Balanced and well-balanced subsets of positive roots.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("roots", parents=[common], help="print the index-to-root table")
    _add_label(p)

    p = sub.add_parser("check", parents=[common], help="decide whether a subset is (well-)balanced")
    _add_label(p)
    p.add_argument("--subset", default="full", help="full | indices:i,j,... | complement:i,j,...")

    p = sub.add_parser("witness", parents=[common], help="emit the explicit extremal construction")
    p.add_argument("which", choices=["thm32", "thm41"])
    _add_label(p)

    p = sub.add_parser("extremal", parents=[common], help="certified extremal cocardinalities")
    _add_label(p)
    p.add_argument("--quantity", choices=["min", "max", "both"], default="both")
    p.add_argument("--mode", choices=["auto", "exhaustive", "certified"], default="auto")

    p = sub.add_parser("verify-tables", parents=[common], help="recompute both tables")
    p.add_argument("--max-rank", type=int, default=6, metavar="N")
    p.add_argument("--slow", action="store_true", help="also re-check constructions up to rank 40")
    p.add_argument("--csv", action="store_true", help="emit CSV (the default)")

    sub.add_parser("remark-c5", parents=[common], help="check the C5 maximal-but-not-maximum example")
    return parser


def _emit(out: TextIO, doc) -> None:
    out.write(json.dumps(doc, indent=2) + "\n")


def _cmd_roots(args, rs: RootSystem, budget, out: TextIO) -> int:
    if args.json:
        _emit(out, rs.to_json())
        return EXIT_OK
    for i, r in enumerate(rs.positive_roots):
        coords = ", ".join(str(c) for c in true_coords(r))
        out.write(f"{i:4d}  {format_root(r):<32s} ({coords})\n")
    return EXIT_OK


def _cmd_check(args, rs: RootSystem, budget, out: TextIO) -> int:
    sel = parse_subset_spec(args.subset, rs)
    comp = complement(rs, sel)
    so = strongly_orthogonal_set(rs, comp)
    obstruction = lattice_membership_obstruction(rs, sel)
    combo = None if obstruction else find_zero_signing(rs, sel, budget)
    doc = {
        "subset": sel.to_json(),
        "cocardinality": len(comp),
        "balanced": combo is not None,
        "complement_strongly_orthogonal": so,
        "well_balanced": combo is not None and so,
    }
    if combo is not None:
        doc["witness"] = combo.to_json()
    elif obstruction is not None:
        doc["obstruction"] = verify(obstruction, rs).to_json()
    else:
        doc["obstruction"] = {"kind": "ExhaustiveSolver", "detail": "no vanishing signing exists"}
    if args.json:
        _emit(out, doc)
        return EXIT_OK
    out.write(f"system: {rs.label}\n")
    out.write(f"cocardinality: {len(comp)}\n")
    out.write(f"balanced: {str(doc['balanced']).lower()}\n")
    out.write(f"complement strongly orthogonal: {str(so).lower()}\n")
    out.write(f"well-balanced: {str(doc['well_balanced']).lower()}\n")
    if combo is not None:
        terms = " ".join(f"{'+' if s > 0 else '-'}{i}" for i, s in combo.terms)
        out.write(f"witness: {terms}\n")
    elif obstruction is not None:
        p = obstruction.payload
        out.write(f"obstruction: lattice/parity, test vector {p['test_vector']} modulus {p['modulus']}\n")
    else:
        out.write("obstruction: exhaustive solver found no vanishing signing\n")
    return EXIT_OK


def _cmd_witness(args, rs: RootSystem, budget, out: TextIO) -> int:
    build, table = (thm32_witness, thm32_value) if args.which == "thm32" else (thm41_witness, thm41_value)
    w = build(rs.label)
    cert = verify(w.as_certificate(), rs)
    ok = bool(cert.verified) and w.cocardinality == table(rs.label)
    if args.json:
        doc = w.to_json()
        doc["certificate"] = cert.to_json()
        doc["table_value"] = table(rs.label)
        _emit(out, doc)
    else:
        out.write(f"system: {rs.label}\n")
        out.write(f"cocardinality: {w.cocardinality} (table {table(rs.label)})\n")
        out.write("complement: " + ", ".join(format_root(rs[i]) for i in w.complement) + "\n")
        out.write(f"complement strongly orthogonal: {str(w.complement_so).lower()}\n")
        out.write(f"verified: {str(cert.verified).lower()}\n")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_extremal(args, rs: RootSystem, budget, out: TextIO) -> int:
    fns = []
    if args.quantity in ("min", "both"):
        fns.append((min_balanced_cocardinality, thm32_value))
    if args.quantity in ("max", "both"):
        fns.append((max_wellbalanced_cocardinality, thm41_value))
    reports = [(fn(rs, budget, args.mode).verified(), table(rs.label)) for fn, table in fns]
    ok = all(r.sound and r.value == t for r, t in reports)
    if args.json:
        _emit(out, [r.to_json() for r, _ in reports])
    else:
        for r, t in reports:
            out.write(
                f"{r.label} {r.quantity}: {r.value} (table {t}) method={r.method} "
                f"lower={r.lower_certificate.kind} upper={r.upper_certificate.kind} "
                f"verified={str(r.sound).lower()}\n"
            )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_tables(args, budget, out: TextIO) -> int:
    report = verify_tables(args.max_rank, budget, slow=args.slow)
    if args.json:
        out.write(report.dumps() + "\n")
    else:
        out.write(report.to_csv())
    return EXIT_OK if report.all_pass else EXIT_FAIL


def _cmd_c5(args, budget, out: TextIO) -> int:
    report = c5_remark_check(budget)
    if args.json:
        _emit(out, report.to_json())
    else:
        for k, v in report.to_json().items():
            if k != "system":
                out.write(f"{k}: {str(v).lower() if isinstance(v, bool) else v}\n")
    return EXIT_OK if report.passed else EXIT_FAIL


_LABELLED = {"roots": _cmd_roots, "check": _cmd_check, "witness": _cmd_witness, "extremal": _cmd_extremal}


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _Usage as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        budget = SolverBudget(max_subset_size=args.budget_size, max_table=args.budget_table)
        if args.verb in _LABELLED:
            rs = build_root_system(DynkinLabel(args.family, args.rank))
            return _LABELLED[args.verb](args, rs, budget, out)
        if args.verb == "verify-tables":
            if args.json and args.csv:
                raise SpecParseError("--json and --csv are mutually exclusive")
            return _cmd_tables(args, budget, out)
        return _cmd_c5(args, budget, out)
    except (InadmissibleRank, SpecParseError, ValueError) as exc:
        err.write(f"wellbalanced: error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        err.write(f"wellbalanced: budget exceeded: {exc}\n")
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
