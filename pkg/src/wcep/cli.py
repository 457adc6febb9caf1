"""Command line interface.

Exit status: 0 on success, 1 on validation errors (bad input, failed
verification), 2 on numerical failures.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .bench import METHODS, compute, load_config, rows_to_csv, rows_to_markdown, run_bench
from .complexity import PinvCostModel, cost_eq13, cost_eq28, cost_eq29, recommend
from .dense import EPS, Tolerance, pinv
from .errors import NumericalError, ValidationError
from .genin import WeightedPair, core_ep, drazin
from .instances import gen_random_instance
from .matio import read_matrix, write_matrix
from .reps import GasFactors, wcep_gas, wcep_qr
from .verify import check_all_properties, residuals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(f"{self.prog}: {message} (see --help)")


def _add_tol(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("tolerances")
    g.add_argument("--rank-rtol", type=float, default=EPS, help="singular value cutoff factor")
    g.add_argument("--rtol", type=float, default=1e-9, help="relative residual threshold")
    g.add_argument("--atol", type=float, default=1e-9, help="absolute residual threshold factor")


def _add_output(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("output")
    g.add_argument("-o", "--output", help="write the result here instead of stdout")
    g.add_argument("--out-format", choices=("mtx", "csv"), default="mtx")
    g.add_argument("--layout", choices=("array", "coordinate"), default="array",
                   help="Matrix Market layout")


def _add_input(p: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        p.add_argument(f"-{name}", dest=name.lower(), required=True, metavar="FILE",
                       help=f"matrix {name} (Matrix Market or CSV)")
    p.add_argument("--format", choices=("auto", "mtx", "csv"), default="auto",
                   help="input matrix format (auto: by file extension)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wcep", description="W-weighted core-EP inverse toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pinv", help="Moore-Penrose inverse")
    _add_input(p, "A")
    _add_output(p)
    _add_tol(p)

    p = sub.add_parser("core-ep", help="core-EP inverse A^l (A^(l+1))^+")
    _add_input(p, "A")
    p.add_argument("--l", type=int, help="exponent, at least ind(A)")
    _add_output(p)
    _add_tol(p)

    p = sub.add_parser("drazin", help="Drazin inverse")
    _add_input(p, "A")
    _add_output(p)
    _add_tol(p)

    p = sub.add_parser("wcep", help="W-weighted core-EP inverse")
    _add_input(p, "A", "W")
    p.add_argument("--method", choices=sorted(METHODS) + ["gas"], default="eq28")
    p.add_argument("--l", type=int, help="exponent for eq13/eq28/eq29, at least k")
    p.add_argument("--qr-variant", choices=("r", "q"), default="r")
    p.add_argument("--gas-p", metavar="FILE", help="GAS factor P (method gas)")
    p.add_argument("--gas-q", metavar="FILE", help="GAS factor Q (method gas)")
    p.add_argument("--gas-r1", type=int, help="size of the invertible GAS block (method gas)")
    _add_output(p)
    _add_tol(p)

    p = sub.add_parser("verify", help="residual norms of a candidate X")
    _add_input(p, "A", "W")
    p.add_argument("--x", required=True, metavar="FILE", help="candidate weighted core-EP inverse")
    p.add_argument("--properties", action="store_true", help="also run the structural checks")
    _add_tol(p)

    p = sub.add_parser("bench", help="timing and residual comparison")
    p.add_argument("--config", required=True, metavar="FILE", help="key = value config file")
    p.add_argument("--table", choices=("csv", "markdown"), default="csv")
    _add_tol(p)

    p = sub.add_parser("complexity", help="flop-count tables")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--pinv-model", choices=("lower_bound", "svd_based"), default="lower_bound")
    p.add_argument("--coefficient", type=float, default=21.0, help="svd_based model coefficient")
    p.add_argument("--table", choices=("markdown", "csv"), default="markdown")

    p = sub.add_parser("gen", help="random pair with prescribed index")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--core-rank", type=int)
    p.add_argument("--complex", action="store_true", help="complex dense factors")
    p.add_argument("--out-a", metavar="FILE")
    p.add_argument("--out-w", metavar="FILE")
    p.add_argument("--out-format", choices=("mtx", "csv"), default="mtx")
    return parser


def _tol(args) -> Tolerance:
    return Tolerance(rank_rtol=args.rank_rtol, residual_atol=args.atol, residual_rtol=args.rtol)


def _read(path: str, args) -> np.ndarray:
    return read_matrix(path, None if args.format == "auto" else args.format)


def _emit(x: np.ndarray, args, out) -> None:
    if args.output:
        write_matrix(args.output, x, args.out_format, args.layout)
    else:
        write_matrix(out, x, args.out_format, args.layout)


def _pair(args, tol) -> WeightedPair:
    return WeightedPair(_read(args.a, args), _read(args.w, args), tol)


def _cmd_wcep(args, out) -> int:
    tol = _tol(args)
    p = _pair(args, tol)
    if args.method == "gas":
        if args.gas_p is None or args.gas_q is None or args.gas_r1 is None:
            raise ValidationError("method gas needs --gas-p, --gas-q and --gas-r1")
        g = GasFactors(_read(args.gas_p, args), _read(args.gas_q, args), args.gas_r1)
        x = wcep_gas(p, g, tol)
    elif args.method == "qr":
        x = wcep_qr(p, tol, variant=args.qr_variant)
    else:
        x = compute(p, args.method, args.l, tol)
    _emit(x, args, out)
    return 0


def _cmd_verify(args, out) -> int:
    tol = _tol(args)
    p = _pair(args, tol)
    x = _read(args.x, args)
    rep = residuals(p, x, tol)
    out.write(f"k = {p.k} (ind(AW) = {p.k_aw}, ind(WA) = {p.k_wa})\n")
    for i, (ab, rel) in enumerate(zip(rep.absolute, rep.relative), start=1):
        out.write(f"r{i} = {ab:.6e}  (relative {rel:.6e})\n")
    ok = rep.passed
    if args.properties:
        for name, good in check_all_properties(p, x, tol).items():
            out.write(f"{name}: {'pass' if good else 'FAIL'}\n")
            ok = ok and good
    out.write(f"verdict: {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def _cmd_bench(args, out) -> int:
    cfg = load_config(args.config)
    rows = run_bench(cfg, _tol(args))
    ks = sorted({r.k for r in rows})
    out.write(f"# seed={cfg.seed} target_index={cfg.target_index} k={','.join(map(str, ks))} "
              f"repetitions={cfg.repetitions}\n")
    out.write(rows_to_csv(rows) if args.table == "csv" else rows_to_markdown(rows))
    return 0 if all(r.status == "ok" for r in rows) else 2


def _cmd_complexity(args, out) -> int:
    model = PinvCostModel(args.pinv_model, args.coefficient)
    tables = [cost_eq28(args.m, args.n, args.l, model),
              cost_eq29(args.m, args.n, args.l, model),
              cost_eq13(args.m, args.n, args.l, model)]
    titles = {"eq28": "(2.8)", "eq29": "(2.9)", "eq13": "(1.3)"}
    for t in tables:
        if args.table == "csv":
            out.write("method,expression,formula,flops\n")
            for term in t.terms:
                out.write(f"{t.method},{term.label},{term.formula},{term.flops:.0f}\n")
            out.write(f"{t.method},total,,{t.total:.0f}\n")
        else:
            out.write(f"Complexity of {titles[t.method]}  (m={t.m}, n={t.n}, l={t.l}, "
                      f"pinv model {args.pinv_model})\n")
            w = max(len(term.label) for term in t.terms)
            fw = max(len(term.formula) for term in t.terms)
            for term in t.terms:
                out.write(f"  {term.label.ljust(w)}  {term.formula.ljust(fw)}  {term.flops:>16,.0f}\n")
            out.write(f"  {'total'.ljust(w)}  {''.ljust(fw)}  {t.total:>16,.0f}\n\n")
    c28, _, c13 = tables
    rel = ">" if c13.total > c28.total else "<="
    out.write(f"O(1.3) {rel} O(2.8): {c13.total:,.0f} vs {c28.total:,.0f}\n")
    rec = recommend(args.m, args.n, args.l, model)
    out.write(f"recommended: {rec.choice} ({'m < n' if args.m < args.n else 'm >= n'})\n")
    return 0


def _cmd_gen(args, out) -> int:
    p, _ = gen_random_instance(args.m, args.n, args.index, args.seed,
                               core_rank=args.core_rank, complex_entries=args.complex)
    if args.out_a:
        write_matrix(args.out_a, p.a, args.out_format)
    if args.out_w:
        write_matrix(args.out_w, p.w, args.out_format)
    out.write(f"m = {p.m}, n = {p.n}, ind(AW) = {p.k_aw}, ind(WA) = {p.k_wa}, k = {p.k}\n")
    if not args.out_a:
        out.write("% A\n")
        write_matrix(out, p.a, args.out_format)
    if not args.out_w:
        out.write("% W\n")
        write_matrix(out, p.w, args.out_format)
    return 0


def _cmd_simple(args, out) -> int:
    tol = _tol(args)
    a = _read(args.a, args)
    if args.command == "pinv":
        x = pinv(a, tol)
    elif args.command == "drazin":
        x = drazin(a, tol)
    else:
        x = core_ep(a, args.l, tol)
    _emit(x, args, out)
    return 0


_COMMANDS = {
    "pinv": _cmd_simple,
    "core-ep": _cmd_simple,
    "drazin": _cmd_simple,
    "wcep": _cmd_wcep,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "complexity": _cmd_complexity,
    "gen": _cmd_gen,
}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except ValidationError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except NumericalError as exc:
        err.write(f"numerical failure: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
