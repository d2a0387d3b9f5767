"""Command-line front end: ``isvol {analyze,regular,vl,bounds,degree}``.

Text output is meant for reading; ``--json`` prints one object whose keys are
the field names of the underlying result types.  Floats are rounded to 12
significant digits, exact rationals are printed as ``"p/q"`` strings.
"""

from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds, trunc
from .errors import IsvolError
from .idtri import (
    alternated_fundamental_cycle,
    detect_Mg,
    euler_characteristic_M,
    local_degrees,
    marked_homology_ranks,
    orientability,
    parse,
    quotient_cells,
    verify_marked_cycle,
    vertex_links,
)

SIG_DIGITS = 12


def _round(x: float) -> float:
    if not math.isfinite(x) or x == 0.0:
        return x
    return float(f"{x:.{SIG_DIGITS}g}")


def to_jsonable(obj):
    """Recursively turn results into JSON-ready values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return _round(obj)
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "tolist"):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "item"):
        return to_jsonable(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.{SIG_DIGITS}g}"
    return str(x)


def _text(record: dict) -> str:
    width = max(len(k) for k in record)
    lines = []
    for k, v in record.items():
        if isinstance(v, (list, tuple)):
            v = ", ".join(_fmt(x) for x in v) if v else "-"
        elif v is None:
            v = "-"
        lines.append(f"{k:<{width}}  {_fmt(v)}")
    return "\n".join(lines)


def _emit(record: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(to_jsonable(record), sort_keys=False)
    return _text(record)


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args) -> str:
    T = parse(Path(args.file).read_text(encoding="utf-8"))
    Q = quotient_cells(T)
    links = vertex_links(T)
    orientable, signs = orientability(T)
    det = detect_Mg(T)
    record = {
        "tets": T.g,
        "counts": list(Q.counts),
        "edge_valences": [len(members) for members in Q.edge_classes],
        "links": [dataclasses.asdict(link) for link in links] if args.json else [
            f"chi={link.euler_char} {'orientable' if link.orientable else 'non-orientable'}"
            for link in links
        ],
        "euler_characteristic": euler_characteristic_M(T),
        "orientable": orientable,
        "is_Mg": det.is_Mg,
        "g": det.g,
    }
    if orientable:
        z = alternated_fundamental_cycle(T)
        record["cycle_terms"] = len(z)
        record["cycle_l1_norm"] = z.l1_norm
        record["cycle_verified"] = verify_marked_cycle(T, z)
        record["local_degrees"] = local_degrees(T, z, signs)
    else:
        record["cycle_verified"] = None
    record["homology_ranks"] = list(marked_homology_ranks(T))
    if det.is_Mg:
        report = bounds.isv_bounds(bounds.ManifoldDescriptor(bounds.Kind.MG, g=det.g))
        record["isv"] = report.exact
    if not args.json:
        record["euler_characteristic"] = str(record["euler_characteristic"])
        record["cycle_l1_norm"] = str(record.get("cycle_l1_norm", "-"))
        record["local_degrees"] = [str(x) for x in record.get("local_degrees", [])]
    return _emit(record, args.json)


def cmd_regular(args) -> str:
    if args.g is not None:
        theta = math.pi / (3 * args.g)
        tet = trunc.regular_tet(theta=theta)
    else:
        tet = trunc.regular_tet(ell=args.ell)
    record = {
        "g": args.g,
        "theta": tet.theta,
        "ell": tet.ell,
        "r": trunc.regular_radius(tet.ell),
        "volume": tet.volume,
    }
    return _emit(record, args.json)


def cmd_vl(args) -> str:
    from .extremal import SearchConfig, estimate_Vl

    cfg = SearchConfig(args.ell, restarts=args.restarts, seed=args.seed)
    res = estimate_Vl(cfg)
    certified, why = bounds.certified_Vl(args.ell)
    exact = args.ell <= trunc.ell_g(2)
    record = {
        "ell": args.ell,
        "best_volume": res.best_volume,
        "feasible": res.feasible,
        "restart_index": res.restart_index,
        "label": "certified" if exact else "heuristic",
        "certified_Vl": certified,
        "certified_reason": why,
        "best_config": res.best_config.points if args.json else None,
    }
    if not args.json:
        del record["best_config"]
    return _emit(record, args.json)


def cmd_bounds(args) -> str:
    kind = bounds.Kind(args.kind)
    d = bounds.ManifoldDescriptor(
        kind,
        volume=args.volume,
        g=args.g,
        return_length=args.ell,
        complexity_upper=args.ctets,
        amenable_boundary=args.amenable,
    )
    report = bounds.isv_bounds(d, heuristic_restarts=args.heuristic_restarts, seed=args.seed)
    record = dataclasses.asdict(report)
    record["amenable"] = bounds.amenable_equality(d)
    return _emit(record, args.json)


def cmd_degree(args) -> str:
    return _emit(dataclasses.asdict(bounds.degree_bounds(args.g, args.gp)), args.json)


# ---------------------------------------------------------------------------


def _positive_float(text: str) -> float:
    x = float(text)
    if not (math.isfinite(x) and x > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return x


def _nonneg_float(text: str) -> float:
    x = float(text)
    if not (math.isfinite(x) and x >= 0):
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isvol", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=False):
        p.add_argument("--json", action="store_true", help="print one JSON object")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("analyze", help="combinatorics, homology and cycle check of a triangulation file")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("regular", help="regular truncated tetrahedron")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--g", type=int)
    which.add_argument("--ell", type=_positive_float)
    common(p)
    p.set_defaults(func=cmd_regular)

    p = sub.add_parser("vl", help="extremal volume search at a minimal edge length")
    p.add_argument("--ell", type=_positive_float, required=True)
    p.add_argument("--restarts", type=int, default=50)
    common(p, seed=True)
    p.set_defaults(func=cmd_vl)

    p = sub.add_parser("bounds", help="bounds on the ideal simplicial volume")
    p.add_argument("--kind", choices=[k.value for k in bounds.Kind], required=True)
    p.add_argument("--volume", type=_nonneg_float)
    p.add_argument("--ell", type=_positive_float, help="return length")
    p.add_argument("--g", type=int)
    p.add_argument("--ctets", type=int, help="tetrahedra in a known triangulation")
    p.add_argument("--amenable", action="store_true", help="all boundary groups are amenable")
    p.add_argument("--heuristic-restarts", type=int, default=0)
    common(p, seed=True)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("degree", help="degree bounds for maps M_g -> M_g'")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--gp", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_degree)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except (IsvolError, ValueError, OSError) as exc:
        print(f"isvol: error: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
