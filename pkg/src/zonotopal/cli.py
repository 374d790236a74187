"""Command-line front end: every computation, machine-readable output.

Exit codes: 0 success, 1 usage error, 2 domain error (rank-deficient input,
unpointed list, ...), 3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .abelian import FgGroup, GList
from .brionvergne import (box_deconvolution_check, box_delta_check, bv_count,
                          continuity_check, partition_of_unity, wall_jump_check,
                          walls)
from .corpus import CorpusLimits, corpus
from .errors import DomainError, InternalError
from .geometry import (big_cells, bx_value, lattice_points, quasi_fit,
                       short_regular, tx_value, zonotope_hrep)
from .matroid import arithmetic_tutte, tutte
from .periodic import (PeriodicPoly, dm_basis, f_tilde, hilbert, l_map,
                       periodic_todd, pper_basis, pper_internal_basis)
from .polyspace import d_basis, p_basis
from .scalar import Cyclotomic, rat_str
from .toric import vertices


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _parse_x(args) -> GList:
    rows = json.loads(args.x)
    group = FgGroup.parse(args.group) if args.group else None
    return GList.from_rows(rows, group)


def _parse_vec(s):
    return [Fraction(str(v)) for v in json.loads(s)]


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _poly_text(p) -> str:
    return repr(p)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("ZONOTOPAL_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    """Map, parallel over processes when ZONOTOPAL_THREADS allows it."""
    n = thread_count()
    items = list(items)
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def _cmd_tutte(args):
    t = tutte(_parse_x(args))
    _emit(args, {"tutte": t.to_json()}, str(t))


def _cmd_arith_tutte(args):
    t = arithmetic_tutte(_parse_x(args))
    _emit(args, {"arithmetic_tutte": t.to_json()}, str(t))


def _cmd_vertices(args):
    vs = vertices(_parse_x(args))
    payload = [{"character": v.character.to_json(),
                "x_phi": list(v.x_phi), "tors": v.tors_count} for v in vs]
    text = "\n".join(f"{v.character!r}  X_phi={list(v.x_phi)}" for v in vs)
    _emit(args, {"vertices": payload}, text)


def _cmd_p_basis(args):
    span = p_basis(_parse_x(args))
    _emit(args, {"basis": span.to_json()},
          "\n".join(_poly_text(p) for p in span.basis))


def _cmd_d_basis(args):
    span = d_basis(_parse_x(args))
    _emit(args, {"basis": span.to_json()},
          "\n".join(_poly_text(p) for p in span.basis))


def _cmd_pper_basis(args):
    basis = pper_basis(_parse_x(args))
    _emit(args, {"basis": [p.to_json() for p in basis],
                 "hilbert": hilbert(basis)},
          "\n".join(_poly_text(p) for p in basis))


def _cmd_pper_internal(args):
    basis = pper_internal_basis(_parse_x(args))
    _emit(args, {"basis": [p.to_json() for p in basis],
                 "hilbert": hilbert(basis)},
          "\n".join(_poly_text(p) for p in basis))


def _cmd_dm_basis(args):
    basis = dm_basis(_parse_x(args))
    _emit(args, {"basis": [f.to_json() for f in basis]},
          "\n".join(_poly_text(f) for f in basis))


def _cmd_todd(args):
    x = _parse_x(args)
    if args.z:
        zv = [int(v) for v in _parse_vec(args.z)]
        z = x.group.element(tuple(zv[: x.group.free_rank]),
                            tuple(zv[x.group.free_rank:]))
    else:
        z = x.group.zero()
    series = periodic_todd(x, z, args.cap)
    payload = [{"character": c.to_json(), "series": s.body.to_json(),
                "cap": s.cap} for c, s in series.terms]
    text = "\n".join(f"{c!r}: {s.body!r} + O({s.cap + 1})"
                     for c, s in series.terms)
    _emit(args, {"todd": payload}, text)


def _cmd_f_tilde(args):
    x = _parse_x(args)
    zv = [int(v) for v in _parse_vec(args.z)]
    z = x.group.element(tuple(zv[: x.group.free_rank]),
                        tuple(zv[x.group.free_rank:]))
    ft = f_tilde(x, z, args.cap)
    _emit(args, {"f_tilde": ft.to_json()}, _poly_text(ft))


def _cmd_count(args):
    from .geometry import vpf_count
    c = vpf_count(_parse_x(args), _parse_vec(args.u))
    _emit(args, {"count": c}, str(c))


def _cmd_bv_count(args):
    x = _parse_x(args)
    w = _parse_vec(args.w) if args.w else None
    c = bv_count(x, [int(v) for v in _parse_vec(args.z)],
                 [int(v) for v in _parse_vec(args.u)], w)
    _emit(args, {"bv_count": c}, str(c))


def _cmd_volume(args):
    v = tx_value(_parse_x(args), _parse_vec(args.u))
    _emit(args, {"volume": rat_str(v)}, rat_str(v))


def _cmd_box(args):
    v = bx_value(_parse_x(args), _parse_vec(args.u))
    _emit(args, {"box": rat_str(v)}, rat_str(v))


def _cmd_quasipoly(args):
    x = _parse_x(args)
    cells = big_cells(x)
    cell = cells[0]
    if args.u:
        u = _parse_vec(args.u)
        for c in cells:
            if c.hrep is not None and c.hrep.contains(u):
                cell = c
                break
    q = quasi_fit(x, cell)
    _emit(args, {"cell": cell.to_json(), "quasipolynomial": q.to_json()},
          f"cell {cell.to_json()['sample']}: {q!r}")


def _cmd_cells(args):
    cells = big_cells(_parse_x(args))
    _emit(args, {"cells": [c.to_json() for c in cells]},
          "\n".join(str(c.to_json()["sample"]) for c in cells))


def _cmd_zonotope(args):
    x = _parse_x(args)
    h = zonotope_hrep(x)
    interior = lattice_points(x, "interior")
    payload = {"hrep": h.to_json(),
               "interior_points": [list(p) for p in interior],
               "volume": arithmetic_tutte(x).evaluate(1, 1)}
    _emit(args, payload,
          f"facets: {len(h.b)}, interior lattice points: {len(interior)}, "
          f"volume: {payload['volume']}")


def _cmd_l_map(args):
    x = _parse_x(args)
    if args.p:
        p = PeriodicPoly.from_json(
            tuple(f"s{i}" for i in range(1, x.group.free_rank + 1)),
            json.loads(args.p))
    else:
        zv = [int(v) for v in _parse_vec(args.z)]
        p = f_tilde(x, x.group.element(tuple(zv)))
    w = _parse_vec(args.w) if args.w else short_regular(x)
    lc = l_map(x, p, w)
    text = ", ".join(f"{list(pt)}: {c!r}"
                     for pt, c in zip(lc.support, lc.coeffs))
    _emit(args, {"l_map": lc.to_json()}, text)


def _cmd_check_continuity(args):
    x = _parse_x(args)
    wl = walls(x)
    basis = pper_basis(x)
    internal = pper_internal_basis(x)
    report = {"identity": "internal space = continuous operators",
              "walls": len(wl), "status": "pass", "counterexample": None}
    for p in internal:
        if not continuity_check(x, p, wall_list=wl):
            report["status"] = "fail"
            report["counterexample"] = p.to_json()
            break
    _emit(args, report, f"continuity: {report['status']}")


def _cmd_check_unity(args):
    x = _parse_x(args)
    total = partition_of_unity(x)
    ok = total == PeriodicPoly.one(x)
    report = {"identity": "sum B_X(z) f_z = 1", "status":
              "pass" if ok else "fail",
              "value": total.to_json()}
    _emit(args, report, f"partition of unity: {report['status']}")


def _cmd_check_delta(args):
    x = _parse_x(args)
    w = _parse_vec(args.w) if args.w else short_regular(x)
    points = lattice_points(x, "shifted", w=w)
    results = _pmap(_DeltaJob(x, w), points)
    bad = None
    for z, res in zip(points, results):
        for lam, val in res.items():
            expect = Cyclotomic.one() if lam == z else Cyclotomic.zero()
            if val != expect:
                bad = {"z": list(z), "lambda": list(lam), "value": val.to_json()}
                break
        if bad:
            break
    report = {"identity": "f_z(D)B_X = delta_z", "points": len(points),
              "status": "fail" if bad else "pass", "counterexample": bad}
    _emit(args, report, f"delta interpolation: {report['status']}")


class _DeltaJob:
    """Picklable per-z worker for check-delta."""

    def __init__(self, x, w):
        self.x = x
        self.w = w

    def __call__(self, z):
        return box_delta_check(self.x, z, self.w)


def _cmd_check_deconv(args):
    x = _parse_x(args)
    w = _parse_vec(args.w) if args.w else None
    res = box_deconvolution_check(x, w)
    bad = None
    for lam, val in res.items():
        expect = Cyclotomic.one() if not any(lam) else Cyclotomic.zero()
        if val != expect:
            bad = {"lambda": list(lam), "value": val.to_json()}
            break
    report = {"identity": "ToddB(X)(D)B_X = delta_0",
              "points": len(res),
              "status": "fail" if bad else "pass", "counterexample": bad}
    _emit(args, report, f"box deconvolution: {report['status']}")


def _cmd_wall_jump(args):
    x = _parse_x(args)
    results = []
    ok = True
    for wall in walls(x):
        jump, diff, lead = wall_jump_check(x, wall)
        good = jump == diff and lead
        ok = ok and good
        results.append({"normal": list(wall.normal), "ray": list(wall.ray),
                        "jump": jump.to_json(),
                        "matches_pieces": jump == diff,
                        "leading_structure": lead})
    report = {"identity": "wall crossing residue", "walls": results,
              "status": "pass" if ok else "fail"}
    text = "\n".join(
        f"wall ray {r['ray']}: jump matches pieces: {r['matches_pieces']}, "
        f"leading structure: {r['leading_structure']}" for r in results)
    _emit(args, report, text)


def _cmd_corpus(args):
    limits = CorpusLimits(require_pointed=True)
    if args.d:
        limits.max_dim = args.d
    if args.n:
        limits.max_len = args.n
    lists = corpus(args.seed, limits, count=args.count)
    rotation = ("arith-tutte", "pper-basis", "zonotope", "tutte", "vertices")
    for k, x in enumerate(lists):
        rows = [[e.lift()[i] for e in x.elems]
                for i in range(x.group.ncoords)]
        job = {"command": rotation[k % len(rotation)], "x": rows,
               "group": x.group.spec_string(), "json": True}
        print(json.dumps(job, sort_keys=True))


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

_COMMANDS = {
    "tutte": (_cmd_tutte, ()),
    "arith-tutte": (_cmd_arith_tutte, ()),
    "vertices": (_cmd_vertices, ()),
    "p-basis": (_cmd_p_basis, ()),
    "d-basis": (_cmd_d_basis, ()),
    "pper-basis": (_cmd_pper_basis, ()),
    "pper-internal": (_cmd_pper_internal, ()),
    "dm-basis": (_cmd_dm_basis, ()),
    "todd": (_cmd_todd, ("z",)),
    "f-tilde": (_cmd_f_tilde, ("z!",)),
    "count": (_cmd_count, ("u!",)),
    "bv-count": (_cmd_bv_count, ("z!", "u!", "w")),
    "volume": (_cmd_volume, ("u!",)),
    "box": (_cmd_box, ("u!",)),
    "quasipoly": (_cmd_quasipoly, ("u",)),
    "cells": (_cmd_cells, ()),
    "zonotope": (_cmd_zonotope, ()),
    "l-map": (_cmd_l_map, ("z", "w", "p")),
    "check-continuity": (_cmd_check_continuity, ()),
    "check-unity": (_cmd_check_unity, ()),
    "check-delta": (_cmd_check_delta, ("w",)),
    "wall-jump": (_cmd_wall_jump, ()),
    "check-deconv": (_cmd_check_deconv, ("w",)),
}


def build_parser() -> _Parser:
    parser = _Parser(prog="zonotopal",
                     description="exact zonotopal algebra calculator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, extras) in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--x", required=True,
                       help="JSON row matrix; columns are list elements")
        p.add_argument("--group", default=None,
                       help='e.g. "Z^2" or "Z + Z/2"')
        p.add_argument("--json", action="store_true")
        p.add_argument("--cap", type=int, default=None)
        for extra in extras:
            flag = extra.rstrip("!")
            p.add_argument(f"--{flag}", required=extra.endswith("!"),
                           default=None)
    cp = sub.add_parser("corpus")
    cp.add_argument("--seed", type=int, default=1)
    cp.add_argument("--count", type=int, default=50)
    cp.add_argument("--d", type=int, default=None)
    cp.add_argument("--n", type=int, default=None)
    cp.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "corpus":
            _cmd_corpus(args)
        else:
            _COMMANDS[args.command][0](args)
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
