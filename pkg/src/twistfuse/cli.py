"""Command-line front end.

Commands: smatrix, fusion, fold-info, weights, branch, selfcheck.
JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 bad input, 2 failed check.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from .cartan import (AFFINE_R1, build_cartan, dual_lattice, lattice_M,
                     lattice_index, parse_type)
from .errors import (MethodMismatch, NegativeCoefficient, NotInteger,
                     TwistfuseError)
from .fold import build_folding, pstar_apply, symmetric_weights
from .fusion import (SectorLabel, fusion_table, kac_walton, parse_pattern,
                     twisted_kac_walton, twisted_verlinde, verlinde)
from .rep import branch, dim, dominant_level_weights
from .smatrix import conformal, twisted_a, twisted_sector_S, untwisted_S


@dataclass
class RunConfig:
    type: str = ""
    level: int = 0
    twist: str = "none"
    twist_order: int = 0          # 0 = default order for the type
    precision_bits: int = 53
    integer_tolerance: float = 1e-6
    unitarity_tolerance: float = 1e-9
    output: str = "json"
    parallelism: int = 1

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be >= 0")
        if self.integer_tolerance <= 0 or self.unitarity_tolerance <= 0:
            raise ValueError("tolerances must be positive")


def _dump(obj):
    print(json.dumps(obj, separators=(",", ":"), sort_keys=False))


def _parse_weight(spec):
    return tuple(int(x) for x in spec.split(","))


def _config(args):
    return RunConfig(
        type=args.type, level=args.level, twist=args.twist,
        twist_order=getattr(args, "twist_order", 0),
        precision_bits=args.precision_bits,
        integer_tolerance=args.integer_tolerance,
        unitarity_tolerance=args.unitarity_tolerance,
        output=args.output, parallelism=args.parallelism)


def _folding_for(cfg):
    base_type = parse_type(cfg.type, AFFINE_R1)
    return build_folding(base_type, cfg.twist_order or None)


def cmd_smatrix(cfg):
    datum = build_cartan(parse_type(cfg.type, AFFINE_R1))
    out = {"schema": 1, "algebra": cfg.type, "level": cfg.level}
    worst = 0.0
    if cfg.twist == "none":
        s = untwisted_S(datum, cfg.level, cfg.precision_bits)
        worst = max(s.unitarity_defect(), s.symmetry_defect())
        out["S"] = s.to_json_dict()
    else:
        folding = _folding_for(cfg)
        sector = twisted_sector_S(folding, cfg.level, cfg.precision_bits)
        full = untwisted_S(folding.base, cfg.level, cfg.precision_bits)
        sym = symmetric_weights(folding, cfg.level)
        pos = {tuple(w.finite.coords): i for i, w in enumerate(full.cols)}
        idx = [pos[tuple(w.finite.coords)] for w in sym]
        restricted = full.entries[:, idx]
        out["S_symmetric_columns"] = {
            "rows": [[int(x) for x in w.finite.coords] for w in full.rows],
            "cols": [[int(x) for x in w.finite.coords] for w in sym],
            "re": [[float(f"{v.real:.17g}") for v in row] for row in restricted],
            "im": [[float(f"{v.imag:.17g}") for v in row] for row in restricted],
        }
        out["S_twisted_sector"] = sector.to_json_dict()
        worst = max(full.unitarity_defect(), full.symmetry_defect(),
                    sector.unitarity_defect())
    out["unitarity_defect"] = float(f"{worst:.17g}")
    _dump(out)
    return 0 if worst < cfg.unitarity_tolerance else 2


def cmd_fusion(cfg, pattern, triple, method):
    if pattern == "1,1,1" and cfg.twist == "none":
        source = build_cartan(parse_type(cfg.type, AFFINE_R1))
    else:
        source = _folding_for(cfg)
    if triple:
        value = _single_fusion(cfg, source, pattern, triple, method)
        if cfg.output == "json":
            _dump({"schema": 1, "algebra": cfg.type, "level": cfg.level,
                   "pattern": pattern, "N": value})
        else:
            print(value)
        return 0
    table = fusion_table(source, cfg.level, pattern,
                         tolerance=cfg.integer_tolerance,
                         bits=cfg.precision_bits, parallelism=cfg.parallelism)
    if cfg.output == "json":
        _dump(table.to_json_dict())
    else:
        print(table.to_text())
    return 0


def _single_fusion(cfg, source, pattern, triple, method):
    key, sectors = parse_pattern(pattern)
    coords = [_parse_weight(s) for s in triple]
    if key == "1,1,1":
        datum = source
        labels = [datum.leveled(cfg.level, c) for c in coords]
        if method in ("both", "kac-walton"):
            nk = kac_walton(datum, cfg.level, *labels)
            if method == "kac-walton":
                return nk
        s = untwisted_S(datum, cfg.level, cfg.precision_bits)
        nv = verlinde(s, *labels, tolerance=cfg.integer_tolerance)
        if method == "both" and nv != nk:
            raise MethodMismatch(tuple(labels), nv, nk)
        return nv
    folding = source
    from .errors import UnsupportedSectorPattern
    from .fusion import _COMPUTABLE, check_sector_rule
    check_sector_rule(folding, sectors)
    if key not in _COMPUTABLE:
        raise UnsupportedSectorPattern(f"pattern {key!r} needs an unavailable block")
    labels = []
    for cls, c in zip(sectors, coords):
        datum = folding.base if cls == 0 else folding.twisted
        labels.append(SectorLabel("untwisted" if cls == 0 else "sigma",
                                  datum.leveled(cfg.level, c)))
    nv = None
    if method in ("both", "verlinde"):
        nv = twisted_verlinde(folding, cfg.level, *labels,
                              tolerance=cfg.integer_tolerance,
                              bits=cfg.precision_bits)
        if method == "verlinde":
            return nv
    if key not in ("1,s,s", "s,1,s"):
        if nv is None:
            raise TwistfuseError(f"no folding route for pattern {key}")
        return nv
    untw = labels[0] if key == "1,s,s" else labels[1]
    tw = labels[1] if key == "1,s,s" else labels[0]
    nk = twisted_kac_walton(folding, cfg.level, untw.weight, tw.weight,
                            labels[2].weight)
    if method == "both" and nv != nk:
        raise MethodMismatch(tuple(labels), nv, nk)
    return nk if nv is None else nv


def cmd_fold_info(cfg):
    folding = _folding_for(cfg)
    _dump({"schema": 1, **folding.to_json_dict()})
    return 0


def cmd_weights(cfg):
    datum = build_cartan(parse_type(cfg.type, AFFINE_R1))
    out = {"schema": 1, "algebra": cfg.type, "level": cfg.level}
    weights = dominant_level_weights(datum, cfg.level)
    out["weights"] = [[int(x) for x in w.finite.coords] for w in weights]
    out["conformal"] = [
        {"weight": [int(x) for x in w.finite.coords],
         "h": str(conformal(datum, cfg.level, w).h),
         "m": str(conformal(datum, cfg.level, w).m)}
        for w in weights]
    if cfg.twist == "diagram":
        folding = _folding_for(cfg)
        out["symmetric"] = [[int(x) for x in w.finite.coords]
                            for w in symmetric_weights(folding, cfg.level)]
        out["twisted"] = [[int(x) for x in w.finite.coords]
                          for w in dominant_level_weights(folding.twisted, cfg.level)]
    _dump(out)
    return 0


def cmd_branch(cfg, weight_spec):
    folding = _folding_for(cfg)
    lam = folding.base.weight(_parse_weight(weight_spec))
    table = branch(folding.base.finite, folding.twisted.finite,
                   folding.iota_dual, lam)
    _dump({"schema": 1, "algebra": cfg.type,
           "weight": [int(x) for x in lam.coords],
           "components": [{"weight": [int(x) for x in w.coords], "mult": m,
                           "dim": dim(folding.twisted.finite, w.coords)}
                          for w, m in sorted(table.entries.items(),
                                             key=lambda t: t[0].coords)]})
    return 0


# ---------------------------------------------------------------------------
# Self-check suite

GRIDS = {
    "default": {
        "untwisted": [("A1", 3), ("A2", 3), ("A3", 3), ("B2", 3), ("C2", 3),
                      ("G2", 3), ("D4", 2)],
        "verlinde": [("A1", 3), ("A2", 3), ("A3", 2), ("B2", 2), ("C2", 2),
                     ("G2", 2), ("D4", 1)],
        "foldings": [("A3", 0, 2), ("D4", 2, 2), ("D4", 3, 2)],
        "fold_identities": [("A3", 0), ("D4", 2), ("D4", 3), ("E6", 0)],
    },
    "tiny": {
        "untwisted": [("A1", 2), ("A2", 2)],
        "verlinde": [("A1", 2), ("A2", 1)],
        "foldings": [("A3", 0, 1)],
        "fold_identities": [("A3", 0)],
    },
}


def _check_cartan(grid):
    worst = 0.0
    for name, _ in grid["untwisted"]:
        datum = build_cartan(parse_type(name, AFFINE_R1))
        m = lattice_M(datum)
        det = lattice_index(dual_lattice(m), m)
        from . import _rational as rat
        gram_det = rat.mat_det(m.gram())
        assert det == gram_det, (det, gram_det)
    return worst


def _check_smatrix(grid, bits, tol):
    worst = 0.0
    for name, kmax in grid["untwisted"]:
        datum = build_cartan(parse_type(name, AFFINE_R1))
        for k in range(1, kmax + 1):
            s = untwisted_S(datum, k, bits)
            worst = max(worst, s.unitarity_defect(), s.symmetry_defect())
    return worst


def _check_twisted_a(grid, bits, tol):
    worst = 0.0
    for name, order, kmax in grid["foldings"]:
        folding = build_folding(parse_type(name, AFFINE_R1), order or None)
        for k in range(1, kmax + 1):
            a = twisted_a(folding, k, bits)
            assert a.shape[0] == a.shape[1]
            worst = max(worst, a.unitarity_defect())
    return worst


def _check_verlinde_vs_kw(grid, bits, tol, parallelism):
    for name, kmax in grid["verlinde"]:
        datum = build_cartan(parse_type(name, AFFINE_R1))
        for k in range(1, kmax + 1):
            fusion_table(datum, k, "1,1,1", tolerance=tol, bits=bits,
                         parallelism=parallelism)
    return 0.0


def _check_twisted_fusion(grid, bits, tol, parallelism):
    for name, order, kmax in grid["foldings"]:
        folding = build_folding(parse_type(name, AFFINE_R1), order or None)
        for k in range(1, kmax + 1):
            fusion_table(folding, k, "1,s,s", tolerance=tol, bits=bits,
                         parallelism=parallelism)
    return 0.0


def _check_fold_identities(grid, bits, tol):
    for name, order in grid["fold_identities"]:
        folding = build_folding(parse_type(name, AFFINE_R1), order or None)
        for k in range(0, 4):
            sym = symmetric_weights(folding, k)
            adj = build_cartan(folding.adjacent.type)
            tw = folding.twisted
            n_adj = dominant_level_weights(adj, k)
            n_tw = dominant_level_weights(tw, k)
            assert len(sym) == len(n_adj) == len(n_tw)
            for lw in n_adj:
                image = pstar_apply(folding, lw)
                m_adj = conformal(adj, k, lw).m
                m_base = conformal(folding.base, k, image).m
                assert m_adj == m_base, (str(lw), m_adj, m_base)
    return 0.0


def _check_unit_laws(grid, bits, tol):
    for name, order, kmax in grid["foldings"]:
        folding = build_folding(parse_type(name, AFFINE_R1), order or None)
        k = min(kmax, 1)
        vac = folding.base.leveled(k, (0,) * folding.base.rank)
        for lw in dominant_level_weights(folding.twisted, k):
            for mu in dominant_level_weights(folding.twisted, k):
                n = twisted_verlinde(
                    folding, k, SectorLabel("untwisted", vac),
                    SectorLabel("sigma", lw), SectorLabel("sigma", mu),
                    tolerance=tol, bits=bits)
                assert n == (1 if lw == mu else 0), "vacuum unit law failed"
    return 0.0


def _selfcheck_properties(grid, cfg):
    return [
        ("cartan-lattice-invariants", lambda: _check_cartan(grid)),
        ("smatrix-unitarity-symmetry",
         lambda: _check_smatrix(grid, cfg.precision_bits, cfg.unitarity_tolerance)),
        ("twisted-a-unitarity",
         lambda: _check_twisted_a(grid, cfg.precision_bits, cfg.unitarity_tolerance)),
        ("verlinde-equals-kac-walton",
         lambda: _check_verlinde_vs_kw(grid, cfg.precision_bits,
                                       cfg.integer_tolerance, cfg.parallelism)),
        ("twisted-verlinde-equals-twisted-kac-walton",
         lambda: _check_twisted_fusion(grid, cfg.precision_bits,
                                       cfg.integer_tolerance, cfg.parallelism)),
        ("folding-identities-and-anomaly",
         lambda: _check_fold_identities(grid, cfg.precision_bits,
                                        cfg.integer_tolerance)),
        ("vacuum-unit-laws",
         lambda: _check_unit_laws(grid, cfg.precision_bits, cfg.integer_tolerance)),
    ]


def cmd_selfcheck(cfg, grid_name):
    grid_name = os.environ.get("TWISTFUSE_GRID", grid_name)
    if grid_name not in GRIDS:
        print(f"unknown grid {grid_name!r}", file=sys.stderr)
        return 1
    grid = GRIDS[grid_name]
    failed = None
    for name, fn in _selfcheck_properties(grid, cfg):
        t0 = time.time()
        try:
            residual = fn()
            status = "PASS"
            if residual > cfg.unitarity_tolerance:
                status, failed = "FAIL", failed or name
        except (AssertionError, TwistfuseError) as exc:
            residual = float("nan")
            status, failed = "FAIL", failed or name
            print(f"  {name}: {exc}", file=sys.stderr)
        print(f"{status} {name} residual={residual:.3e} ({time.time() - t0:.2f}s)",
              file=sys.stderr)
        if status == "FAIL":
            break
    if failed:
        print(f"selfcheck failed at: {failed}", file=sys.stderr)
        return 2
    print("selfcheck passed", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="twistfuse",
        description="Fusion rules for affine Lie algebras, twisted and not, "
                    "computed two independent ways.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_level=True, need_type=True):
        if need_type:
            p.add_argument("type", help="finite type spec, e.g. A3")
        if need_level:
            p.add_argument("--level", type=int, required=True)
        p.add_argument("--twist", choices=["none", "diagram"], default="none")
        p.add_argument("--twist-order", type=int, default=0,
                       help="2 or 3 for D4; default picks the triality")
        p.add_argument("--precision-bits", type=int, default=53)
        p.add_argument("--integer-tolerance", type=float, default=1e-6)
        p.add_argument("--unitarity-tolerance", type=float, default=1e-9)
        p.add_argument("--output", choices=["json", "table"], default="json")
        p.add_argument("--parallelism", type=int,
                       default=max(1, os.cpu_count() or 1))

    p = sub.add_parser("smatrix", help="modular S-matrices")
    common(p)

    p = sub.add_parser("fusion", help="fusion coefficients or tables")
    common(p)
    p.add_argument("triple", nargs="*",
                   help="three weights as comma-separated labels; empty for "
                        "the full table")
    p.add_argument("--pattern", default="1,1,1",
                   help="sector pattern: 1,1,1  1,s,s  s,1,s  s,s,1")
    p.add_argument("--method", choices=["both", "verlinde", "kac-walton"],
                   default="both")

    p = sub.add_parser("fold-info", help="diagram automorphism and folding maps")
    common(p, need_level=False)
    p.set_defaults(level=0, twist="diagram")

    p = sub.add_parser("weights", help="dominant weights and conformal data")
    common(p)

    p = sub.add_parser("branch", help="restrict a weight to the folded subalgebra")
    common(p, need_level=False)
    p.set_defaults(level=0, twist="diagram")
    p.add_argument("weight", help="comma-separated Dynkin labels")

    p = sub.add_parser("selfcheck", help="run the invariant suite")
    common(p, need_level=False, need_type=False)
    p.set_defaults(level=0, type="A1")
    p.add_argument("--grid", default="default", choices=sorted(GRIDS))
    return parser


def main(argv=None):
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    # Intermixed parsing lets weight triples follow the option flags.
    if argv and argv[0] == "fusion":
        sub = next(a for a in parser._subparsers._group_actions[0].choices.items()
                   if a[0] == "fusion")[1]
        args = sub.parse_intermixed_args(argv[1:])
        args.command = "fusion"
    else:
        args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "smatrix":
            return cmd_smatrix(cfg)
        if args.command == "fusion":
            return cmd_fusion(cfg, args.pattern, args.triple, args.method)
        if args.command == "fold-info":
            return cmd_fold_info(cfg)
        if args.command == "weights":
            return cmd_weights(cfg)
        if args.command == "branch":
            return cmd_branch(cfg, args.weight)
        if args.command == "selfcheck":
            return cmd_selfcheck(cfg, args.grid)
        parser.error(f"unknown command {args.command}")
    except (MethodMismatch, NotInteger, NegativeCoefficient) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 2
    except TwistfuseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
