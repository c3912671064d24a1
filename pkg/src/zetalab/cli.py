"""``zetalab`` command line.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 invalid or
missing input.  Output is CSV (or JSON rows) on stdout unless ``--out`` is given.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import graphzeta as gz
from . import groups as grp
from .regprod import (
    InsufficientConfigError,
    MellinConfig,
    PolynomialSequence,
    ShiftedLinear,
    read_eigenvalues,
    regularized_det,
)
from .selberg import BelowAbscissaError, CapExhaustedError, EvalConfig, log_ruelle, log_selberg
from .spectra import SpectrumParseError, SpectrumValidationError, load_spectrum
from .tfverify import geometric_side, kernel_trace, random_test_functions
from .verify import SUITES, decomposition_table, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    """Bad or missing input; reported on stderr with exit code 3."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    tol: float | None
    seed: int
    out: str | None
    fmt: str


# -- argument parsing -----------------------------------------------------------

def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {text!r}")
    return x


def _complex_pair(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")


def _grid(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        a, b, n = float(a), float(b), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're0:re1:n', got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("grid needs at least one point")
    return a, b, n


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _global_flags(parser: argparse.ArgumentParser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=_positive_float, default=default(None), help="target tolerance")
    parser.add_argument("--seed", type=int, default=default(0), help="random seed (default 0)")
    parser.add_argument("--out", default=default(None), help="write output to this file")
    parser.add_argument("--format", choices=("csv", "json"), default=default("csv"), dest="fmt")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetalab", description="Regularized determinants, "
                                     "Selberg/Ruelle zeta functions, graph zeta functions and "
                                     "finite trace-formula checks.")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, help_):
        p = subparsers.add_parser(name, help=help_)
        _global_flags(p, suppress=True)
        return p

    p = leaf(sub, "regdet", "regularized determinant of an eigenvalue sequence")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="finite sequence, one eigenvalue per line")
    src.add_argument("--shifted", type=float, metavar="KAPPA", help="a_n = n + KAPPA, n >= 0")
    src.add_argument("--poly", type=_float_list, metavar="C0,C1,...", help="a_n = sum c_k n^k")
    p.add_argument("--offset", type=int, default=0, metavar="N0", help="first index for --poly")
    p.add_argument("--lambda", dest="lam", type=_float_list, default=[0.0], metavar="L1,L2,...")

    for name, help_ in (("selberg", "log of the Selberg zeta function"),
                        ("ruelle", "log of the Ruelle zeta function")):
        p = leaf(sub, name, help_)
        p.add_argument("--spectrum", required=True, help="length spectrum JSON file")
        if name == "selberg":
            p.add_argument("--q", type=int, default=0)
            p.add_argument("--p", type=int, default=0)
        p.add_argument("--s", type=_complex_pair, action="append", metavar="RE,IM",
                       help="evaluation point (repeatable)")
        p.add_argument("--grid", type=_grid, metavar="RE0:RE1:N",
                       help="N real parts from RE0 to RE1, imaginary part taken from --s")

    p = leaf(sub, "graph", "zeta function of a finite graph")
    gsub = p.add_subparsers(dest="action", required=True)
    p = leaf(gsub, "zeta", "zeta polynomial det(I - T B)")
    p.add_argument("--graph", required=True, help="graph file")
    p.add_argument("--max-len", type=int, metavar="L", help="also check the Euler product to degree L")
    p.add_argument("--oracle", choices=("hashimoto", "bass", "both"), default="hashimoto")
    p.add_argument("--divisor", action="store_true", help="append the root table")

    p = leaf(sub, "tf", "trace formula on a finite group")
    tsub = p.add_subparsers(dest="action", required=True)
    p = leaf(tsub, "verify", "compare kernel trace and geometric side")
    p.add_argument("--group", required=True, help="built-in name (s4, d8, c6, q8, ...) or table file")
    p.add_argument("--subgroup", default="whole",
                   help="'perm:(1 2 3 4)', 'gen:i,j', 'center', 'trivial' or 'whole'")
    p.add_argument("--omega", default="trivial", help="trivial, sign, induced2, regular or a JSON file")
    p.add_argument("--trials", type=int, default=50)

    p = leaf(sub, "verify", "property suites")
    p.add_argument("suite", choices=("all", *SUITES, "decomposition"))
    p.add_argument("--spectrum", help="spectrum file (decomposition only)")
    p.add_argument("--samples", type=int, default=10)
    return parser


# -- output ---------------------------------------------------------------------

def _emit(rows: list[dict], cfg: RunConfig, stream) -> None:
    if cfg.fmt == "json":
        stream.write(json.dumps(rows, indent=1) + "\n")
        return
    if not rows:
        return
    w = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def _open_out(cfg: RunConfig):
    if cfg.out is None:
        return sys.stdout, False
    return open(cfg.out, "w", encoding="utf-8", newline=""), True


def _require_file(path: str) -> str:
    if not os.path.isfile(path):
        raise InputError(f"no such file: {path}")
    return path


# -- subcommands ----------------------------------------------------------------

def _cmd_regdet(args, cfg: RunConfig) -> tuple[int, list[dict]]:
    if args.file is not None:
        seq = read_eigenvalues(_require_file(args.file))
    elif args.shifted is not None:
        seq = ShiftedLinear(args.shifted)
    else:
        seq = PolynomialSequence(tuple(args.poly), args.offset)
    mcfg = MellinConfig(tol=cfg.tol) if cfg.tol is not None else None
    rows = []
    for lam in args.lam:
        d = regularized_det(seq, lam, mcfg)
        rows.append({"lambda": lam, "det": d.value, "zeta0": d.zeta0, "dzeta0": d.dzeta0,
                     "flag": d.flag or ""})
    return EXIT_OK, rows


def _points(args) -> list[complex]:
    base = args.s or []
    if args.grid is not None:
        a, b, n = args.grid
        im = base[0].imag if base else 0.0
        return [complex(x, im) for x in np.linspace(a, b, n)]
    if not base:
        raise InputError("give --s or --grid")
    return base


def _cmd_zeta(args, cfg: RunConfig) -> tuple[int, list[dict]]:
    spec = load_spectrum(_require_file(args.spectrum))
    ecfg = EvalConfig(tol=cfg.tol) if cfg.tol is not None else EvalConfig()
    rows = []
    for s in _points(args):
        if args.command == "selberg":
            r = log_selberg(spec, args.q, args.p, s, ecfg)
        else:
            r = log_ruelle(spec, s, ecfg)
        rows.append({"s_re": s.real, "s_im": s.imag, "logZ_re": r.value.real,
                     "logZ_im": r.value.imag, "tail_bound": r.tail_bound})
    return EXIT_OK, rows


def _cmd_graph(args, cfg: RunConfig, stream) -> int:
    g = gz.read_graph(_require_file(args.graph))
    status = EXIT_OK
    if args.oracle == "bass":
        Z = gz.bass_polynomial(g)
    else:
        Z = gz.zeta_polynomial(g)
        if args.oracle == "both" and gz.bass_polynomial(g) != Z:
            print("FAIL: Hashimoto and Bass determinants differ", file=sys.stderr)
            status = EXIT_FAIL
    if args.max_len is not None:
        if args.max_len < 1:
            raise InputError("--max-len must be >= 1")
        rep = gz.rationality_report(g, args.max_len)
        verdict = "PASS" if rep.passed else f"FAIL (first mismatch at T^{rep.first_mismatch})"
        print(f"euler product vs determinant to degree {args.max_len}: {verdict}", file=sys.stderr)
        if not rep.passed:
            status = EXIT_FAIL
    coeffs = [int(c) for c in Z.to_list()]
    roots = []
    if args.divisor:
        roots = [{"re": r.value.real, "im": r.value.imag, "abs": abs(r.value),
                  "multiplicity": r.multiplicity, "residual": r.residual}
                 for r in gz.divisor(g, cfg.tol if cfg.tol is not None else 1e-8)]
    if cfg.fmt == "json" and args.divisor:
        stream.write(json.dumps({"coefficients": coeffs, "roots": roots}, indent=1) + "\n")
    else:
        stream.write(json.dumps(coeffs, separators=(",", ":")) + "\n")
        if args.divisor:
            _emit(roots, cfg, stream)
    return status


def _load_group(name: str) -> grp.FiniteGroupModel:
    if os.path.sep in name or os.path.isfile(name):
        return grp.read_group_table(_require_file(name))
    return grp.group_by_name(name)


def _omega(sub: grp.SubgroupEmbedding, name: str) -> grp.UnitaryRepOmega:
    builders = {"trivial": grp.trivial_rep, "sign": grp.sign_rep,
                "induced2": grp.induced_two_dim_rep, "regular": grp.regular_rep}
    if name in builders:
        rep = builders[name](sub)
        if rep is None:
            raise InputError(f"omega {name!r} is not available on this subgroup")
        return rep
    with open(_require_file(name), encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{name}: not valid JSON ({exc})") from None
    return grp.rep_from_json(sub, data)


def _cmd_tf(args, cfg: RunConfig) -> tuple[int, list[dict]]:
    G = _load_group(args.group)
    sub = grp.parse_subgroup(G, args.subgroup)
    omega = _omega(sub, args.omega)
    if args.trials < 1:
        raise InputError("--trials must be >= 1")
    tol = cfg.tol if cfg.tol is not None else 1e-10
    F = random_test_functions(G.order, args.trials, np.random.default_rng(cfg.seed))
    rows, status = [], EXIT_OK
    for k, f in enumerate(F):
        a = complex(kernel_trace(G, sub, omega, f))
        b = complex(geometric_side(G, sub, omega, f))
        res = abs(a - b)
        ok = res <= tol
        status = status if ok else EXIT_FAIL
        rows.append({"trial": k, "kernel_re": a.real, "kernel_im": a.imag, "geometric_re": b.real,
                     "geometric_im": b.imag, "residual": res, "status": "PASS" if ok else "FAIL"})
    return status, rows


def _cmd_verify(args, cfg: RunConfig) -> tuple[int, list[dict]]:
    if args.suite == "decomposition":
        if not args.spectrum:
            raise InputError("verify decomposition needs --spectrum")
        spec = load_spectrum(_require_file(args.spectrum))
        rows = decomposition_table(spec, args.samples, cfg.seed, cfg.tol if cfg.tol is not None else 1e-12)
        return (EXIT_OK if all(r["status"] == "PASS" for r in rows) else EXIT_FAIL), rows
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = run_suites(names, seed=cfg.seed)
    rows = [{"suite": c.suite, "check": c.name, "status": "PASS" if c.passed else "FAIL",
             "detail": c.detail} for c in checks]
    for name in names:
        mine = [c for c in checks if c.suite == name]
        failed = sum(not c.passed for c in mine)
        print(f"{name:8s} {'PASS' if failed == 0 else 'FAIL'}  {len(mine) - failed}/{len(mine)} checks",
              file=sys.stderr)
    return (EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL), rows


# -- entry point ----------------------------------------------------------------

_INPUT_ERRORS = (InputError, FileNotFoundError, SpectrumParseError, SpectrumValidationError,
                 gz.GraphError, grp.GroupModelError, BelowAbscissaError, CapExhaustedError,
                 InsufficientConfigError, ValueError)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    cfg = RunConfig(args.command, args.tol, args.seed, args.out, args.fmt)
    buffer = io.StringIO()
    try:
        if args.command == "graph":
            status = _cmd_graph(args, cfg, buffer)
        else:
            handler = {"regdet": _cmd_regdet, "selberg": _cmd_zeta, "ruelle": _cmd_zeta,
                       "tf": _cmd_tf, "verify": _cmd_verify}[args.command]
            status, rows = handler(args, cfg)
            _emit(rows, cfg, buffer)
    except FileNotFoundError as exc:
        print(f"zetalab: no such file: {exc.filename}", file=sys.stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        print(f"zetalab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        stream, close = _open_out(cfg)
    except OSError as exc:
        print(f"zetalab: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    stream.write(buffer.getvalue())
    if close:
        stream.close()
    return status


if __name__ == "__main__":
    sys.exit(main())
