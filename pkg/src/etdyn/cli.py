"""Command-line entry point: ``etdyn SUBCOMMAND ...``.

Exit codes: 0 success, 1 negative verdict, 2 inconclusive, 3 input error,
4 numeric failure.  Reports are plain text; CSV payloads are written with
``--csv PATH``.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
from dataclasses import dataclass

from .classify import SystemPresentation, UndecidedRootError, is_ET, mixing_sweep
from .entropy import (
    EntropyError,
    Finite,
    MultipleOfLogMahlerG,
    NumericFailure,
    entropy_equivalent,
    sublattice_entropy,
)
from .laurent import PolynomialSyntaxError, RootRefinementError, format_poly, parse_poly
from .lattice import enumerate_sublattices, parse_lattice
from .mahler import QuadratureConfig, mahler_1d_jensen, mahler_2d
from .shiftspace import InconsistentCell, WindowError, build_window, complete_window, verify_window

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_NUMERIC = range(5)

_UNITS = {"ln": 1.0, "log2": 1 / math.log(2), "log10": 1 / math.log(10)}


class InputError(ValueError):
    pass


@dataclass
class RunResult:
    exit_code: int
    text: str
    csv: str | None = None


# ---------------------------------------------------------------------------
# system files

_LINE = re.compile(r'^\s*([A-Za-z_]\w*)\s*=\s*"([^"]*)"\s*$')


def parse_system_text(text: str, source="<string>") -> SystemPresentation:
    """Parse the ``key = "value"`` format (keys: name, f, g, tol)."""
    data = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        m = _LINE.match(line)
        if not m:
            raise InputError(f"{source}:{lineno}: expected key = \"value\"")
        key, value = m.groups()
        if key not in ("name", "f", "g", "tol"):
            raise InputError(f"{source}:{lineno}: unknown key {key}")
        data[key] = value
    for key in ("f", "g"):
        if key not in data:
            raise InputError(f"missing key {key}")
    try:
        f = parse_poly(data["f"], 2)
    except (PolynomialSyntaxError, ValueError) as exc:
        raise InputError(f"cannot parse f: {exc}") from exc
    try:
        g = parse_poly(data["g"], 1)
    except (PolynomialSyntaxError, ValueError) as exc:
        raise InputError(f"cannot parse g: {exc}") from exc
    if g.has_negative_exponents():
        raise InputError("g must be an ordinary polynomial")
    tol = None
    if "tol" in data:
        try:
            tol = float(data["tol"])
        except ValueError as exc:
            raise InputError(f"bad tol {data['tol']!r}") from exc
        if not tol > 0:
            raise InputError("tol must be positive")
    try:
        return SystemPresentation(data.get("name", source), f, g, tol)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_system(path) -> SystemPresentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_system_text(text, str(path))


# ---------------------------------------------------------------------------
# formatting


def _num(x, unit="ln"):
    if x is None:
        return ""
    return f"{x * _UNITS[unit]:.12f}"


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _cfg(args, system=None):
    tol = system.tol if system is not None and system.tol else args.tol
    return QuadratureConfig(nodes=args.nodes, depth=args.depth, tol=tol)


def _describe(res, unit):
    if isinstance(res, Finite):
        v = res.value
        flag = "" if v.converged else " (not converged)"
        return f"finite {_num(v.value, unit)} +- {v.error:.3g}{flag}"
    if isinstance(res, MultipleOfLogMahlerG):
        return f"multiple of log M(g) = {_num(res.base.value, unit)} (geometry {res.geometry_key})"
    return f"planar structural (f = {res.f_key})"


def _result_fields(res, unit):
    if res is None:
        return "", "", ""
    if isinstance(res, Finite):
        return res.variant, _num(res.value.value, unit), f"{res.value.error:.3e}"
    if isinstance(res, MultipleOfLogMahlerG):
        return res.variant, _num(res.base.value, unit), f"{res.base.error:.3e}"
    return res.variant, "", ""


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args):
    p = parse_poly(args.poly, args.arity)
    return RunResult(EXIT_OK, format_poly(p))


def cmd_classify(args):
    system = load_system(args.system)
    rep = is_ET(system)
    return RunResult(EXIT_OK if rep.is_ET else EXIT_NEGATIVE, rep.summary())


def cmd_mixing(args):
    system = load_system(args.system)
    rep = mixing_sweep(system, args.bound)
    n_ok = len(rep.certified())
    lines = [f"mixing: {n_ok}/{len(rep.entries)} exponents certified (bound {args.bound})"]
    rows = []
    for e in rep.entries:
        wit = "" if e.witness is None else " ".join(f"{complex(z).real:.12g}{complex(z).imag:+.12g}j" for z in e.witness)
        rows.append([*e.n, e.status, wit, _num(e.value), "" if e.error is None else f"{e.error:.3e}"])
        if e.status != "certified":
            lines.append(f"  inconclusive: n = {e.n}")
    payload = _csv_text(["n1", "n2", "n3", "status", "witness", "value", "error"], rows)
    return RunResult(EXIT_OK if rep.all_certified else EXIT_INCONCLUSIVE, "\n".join(lines), payload)


def cmd_mahler(args):
    p = parse_poly(args.poly, args.arity)
    if args.arity == 1:
        mv = mahler_1d_jensen(p)
    elif args.arity == 2:
        mv = mahler_2d(p, _cfg(args))
    else:
        raise InputError("mahler supports arity 1 or 2")
    text = f"log M = {_num(mv.value, args.unit)} (error {mv.error:.3g})"
    if not mv.converged:
        return RunResult(EXIT_INCONCLUSIVE, text + " not converged")
    return RunResult(EXIT_OK, text)


def cmd_entropy(args):
    system = load_system(args.system)
    if not args.lattice:
        raise InputError("entropy needs --lattice")
    lat = parse_lattice(args.lattice)
    res = sublattice_entropy(system, lat, _cfg(args, system))
    text = f"{system.name} on <{lat}>: {_describe(res, args.unit)}"
    variant, value, err = _result_fields(res, args.unit)
    payload = _csv_text(["lattice", "variant", "value", "error"], [[str(lat), variant, value, err]])
    if isinstance(res, Finite) and not res.value.converged:
        return RunResult(EXIT_INCONCLUSIVE, text, payload)
    return RunResult(EXIT_OK, text, payload)


def cmd_equiv(args):
    s1, s2 = load_system(args.system1), load_system(args.system2)
    if args.lattice:
        family = [parse_lattice(args.lattice)]
    else:
        family = enumerate_sublattices(args.bound)
    tol = 1e-5 if args.tol is None else args.tol
    quad_tol = min(t for t in (s1.tol, s2.tol, 1e-7) if t)
    cfg = QuadratureConfig(nodes=args.nodes, depth=args.depth, tol=quad_tol)
    rep = entropy_equivalent(s1, s2, family, cfg, tol)
    rows = []
    for r in rep.rows:
        rows.append([str(r.lattice), *_result_fields(r.result1, args.unit),
                     *_result_fields(r.result2, args.unit), r.verdict])
    counts = {}
    for r in rep.rows:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    tally = ", ".join(f"{k}: {counts[k]}" for k in sorted(counts))
    text = f"{s1.name} vs {s2.name} over {len(rep.rows)} lattices: {rep.verdict} ({tally})"
    header = ["lattice", "variant1", "value1", "err1", "variant2", "value2", "err2", "verdict"]
    code = {"equivalent": EXIT_OK, "not-equivalent": EXIT_NEGATIVE}.get(rep.verdict, EXIT_INCONCLUSIVE)
    return RunResult(code, text, _csv_text(header, rows))


def _read_seeds(path):
    seeds = {}
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip() in ("n1", ""):
                    continue
                if len(row) != 4:
                    raise InputError(f"seed row {row!r}: expected n1,n2,n3,value")
                coord = tuple(int(x) for x in row[:3])
                seeds[coord] = float(row[3])
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise InputError(f"bad seed file: {exc}") from exc
    return seeds


def cmd_helmet(args):
    if args.system:
        system = load_system(args.system)
    else:
        system = SystemPresentation("helmet", parse_poly("1+u1+u2", 2), parse_poly("u1-2", 1))
    try:
        dims = tuple(int(x) for x in args.dims.split(","))
    except ValueError as exc:
        raise InputError(f"bad --dims {args.dims!r}") from exc
    space = build_window(system, dims)
    seeds = _read_seeds(args.seed_file) if args.seed_file else {}
    # free coordinates without a seed default to 0
    full = {c: seeds.get(c, 0.0) for c in space.free_set}
    extra = set(seeds) - set(space.free_set)
    if extra:
        raise InputError(f"seed at non-free coordinate {sorted(extra)[0]}")
    cfg = complete_window(space, full)
    res = verify_window(cfg)
    rows = [[*c, f"{v:.15f}"] for c, v in cfg.items()]
    text = (f"window {dims}: {len(space.free_set)} free, {space.f_placements} f-placements, "
            f"{space.g_placements} g-placements; max residual {res:.3e}")
    return RunResult(EXIT_OK, text, _csv_text(["n1", "n2", "n3", "value"], rows))


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{message}\n{self.format_usage()}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--csv", metavar="PATH")
    common.add_argument("--nodes", type=int, default=256)
    common.add_argument("--depth", type=int, default=8)
    unit = common.add_mutually_exclusive_group()
    unit.add_argument("--log2", dest="unit", action="store_const", const="log2")
    unit.add_argument("--log10", dest="unit", action="store_const", const="log10")
    common.set_defaults(unit="ln")

    p = _Parser(prog="etdyn", description="Entropy invariants of ET systems.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="canonical form of a polynomial")
    s.add_argument("--poly", required=True)
    s.add_argument("--arity", type=int, default=2)
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("classify", parents=[common], help="ET membership")
    s.add_argument("--system", required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("mixing", parents=[common], help="mixing certificates on a box")
    s.add_argument("--system", required=True)
    s.add_argument("--bound", type=int, default=2)
    s.set_defaults(func=cmd_mixing)

    s = sub.add_parser("mahler", parents=[common], help="log Mahler measure")
    s.add_argument("--poly", required=True)
    s.add_argument("--arity", type=int, default=2)
    s.add_argument("--tol", type=float, default=1e-7)
    s.set_defaults(func=cmd_mahler)

    s = sub.add_parser("entropy", parents=[common], help="entropy of a rank-two sub-action")
    s.add_argument("--system", required=True)
    s.add_argument("--lattice")
    s.add_argument("--tol", type=float, default=1e-7)
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("equiv", parents=[common], help="Z^2-entropy equivalence sweep")
    s.add_argument("--system1", required=True)
    s.add_argument("--system2", required=True)
    s.add_argument("--bound", type=int, default=1)
    s.add_argument("--lattice")
    s.add_argument("--tol", type=float, default=None, help="comparison tolerance (default 1e-5)")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("helmet", parents=[common], help="complete a finite window")
    s.add_argument("--dims", required=True)
    s.add_argument("--seed-file")
    s.add_argument("--system")
    s.set_defaults(func=cmd_helmet)
    return p


def run(argv) -> RunResult:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "bound", 1) is not None and getattr(args, "bound", 1) < 1:
            raise InputError("--bound must be >= 1")
        result = args.func(args)
    except (InputError, PolynomialSyntaxError, WindowError) as exc:
        return RunResult(EXIT_INPUT, f"error: {exc}")
    except ValueError as exc:
        return RunResult(EXIT_INPUT, f"error: {exc}")
    except (NumericFailure, EntropyError, RootRefinementError, UndecidedRootError,
            InconsistentCell, ArithmeticError) as exc:
        return RunResult(EXIT_NUMERIC, f"numeric failure: {exc}")
    if result.csv is not None and args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            fh.write(result.csv)
    return result


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    if result.text:
        stream = sys.stdout if result.exit_code in (EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE) else sys.stderr
        print(result.text, file=stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
