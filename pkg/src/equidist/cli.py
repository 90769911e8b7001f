"""Command-line interface.

Commands: classify, contact, table1, invariants, mesh, sweep, loci.
Exit codes: 0 success, 1 acceptance mismatch, 2 input/validation error.
The environment variable EQUIDIST_PRECISION overrides the default
precision (in bits) used wherever an irrational scale is embedded as a
rational.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import classify as classify_mod
from . import degen2, mesh as mesh_mod, special12, surfaces
from .rationals import Q, rat, rat_loose, rat_str

DEFAULT_PRECISION = 128


class CliError(Exception):
    """Input/validation problem; maps to exit code 2."""


def _precision(args):
    bits = getattr(args, "precision", None)
    if bits is None:
        bits = int(os.environ.get("EQUIDIST_PRECISION", DEFAULT_PRECISION))
    if bits < 64:
        raise CliError("precision must be >= 64 bits")
    return bits


def _load_pair(path):
    try:
        with open(path) as fh:
            return surfaces.pair_from_json(fh.read())
    except FileNotFoundError:
        raise CliError("no such file: %s" % path)
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError("bad surface file: %s" % exc)


def _normal_form(args, precision):
    if getattr(args, "bcde", None):
        try:
            b, c, d, e = (rat(v.strip()) for v in args.bcde.split(","))
        except (ValueError, TypeError):
            raise CliError("--bcde expects four comma-separated rationals")
        return degen2.DegenNormalForm(b, c, d, e)
    if getattr(args, "case", None):
        for name, *_, b, c, d, e in degen2.TABLE1:
            if name == args.case.upper():
                return degen2.DegenNormalForm(b, c, d, e)
        raise CliError("unknown class %r (use I..X)" % args.case)
    if getattr(args, "surfaces", None):
        pair = _load_pair(args.surfaces)
        try:
            return degen2.reduce_degenerate(pair, precision)
        except (degen2.MoreDegenerate, surfaces.NotSingular, ValueError) as exc:
            raise CliError("reduction failed: %s" % exc)
    raise CliError("need --bcde, --case or a surface file")


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Commands


def cmd_classify(args):
    pair = _load_pair(args.surfaces)
    rep = surfaces.validate_pair(pair)
    if not rep.geometry_ok:
        failing = [k for k, v in rep.checks.items() if not v]
        raise CliError("validation failed: %s" % ",".join(failing))
    if args.landscape:
        ls = classify_mod.lambda_landscape(pair)
        _emit(
            {
                "special": [rat_str(v) for v in ls.special],
                "special_intervals": [[rat_str(a), rat_str(b)] for a, b in ls.special_intervals],
                "degenerate": rat_str(ls.degenerate) if ls.degenerate is not None else None,
                "warnings": ls.warnings,
            }
        )
        return 0
    if args.ratio is None:
        raise CliError("need --lambda or --landscape")
    try:
        label = classify_mod.classify_lambda(pair, rat(args.ratio))
    except surfaces.ExcludedRatio as exc:
        raise CliError("excluded ratio: %s" % exc)
    _emit(label.to_dict())
    return 0


def cmd_contact(args):
    pair = _load_pair(args.surfaces)
    try:
        K = surfaces.scaled_contact_map(pair, rat(args.ratio))
    except surfaces.ExcludedRatio as exc:
        raise CliError("excluded ratio: %s" % exc)
    ct = surfaces.contact_type(K)
    _emit({"kind": ct.kind, "k": ct.k, "label": str(ct)})
    return 0


def cmd_table1(args):
    rows = degen2.table1_report()
    if args.json:
        _emit(rows)
    else:
        for row in rows:
            sys.stdout.write(
                "%-5s b=%-5s c=%-5s d=%-5s e=%-5s edges=%d selfint=%d sub=%s  %s\n"
                % (
                    row["class"],
                    row["b"],
                    row["c"],
                    row["d"],
                    row["e"],
                    row["cusp_edges"],
                    row["self_int"],
                    row["subcase"],
                    "pass" if row["pass"] else "FAIL",
                )
            )
    bad = [r["class"] for r in rows if not r["pass"]]
    if bad:
        sys.stderr.write("mismatch: %s\n" % ",".join(bad))
        return 1
    return 0


def cmd_invariants(args):
    nf = _normal_form(args, _precision(args))
    try:
        inv = degen2.classify_class(nf)
    except degen2.MoreDegenerate as exc:
        raise CliError("not classifiable: %s" % exc)
    out = inv.to_dict()
    out["b"], out["c"], out["d"], out["e"] = (rat_str(v) for v in nf.tuple())
    regime, k = degen2.cone_regime(nf)
    out["cone_regime"] = regime
    out["cone_k"] = rat_str(k) if k is not None else None
    out["e_interval"] = (
        "e<0" if nf.e < 0 else ("0<e<1/3" if nf.e < Q(1, 3) else "e>1/3")
    )
    _emit(out)
    return 0


def _grid_from(args):
    r = float(args.range)
    return mesh_mod.GridSpec(ranges=((-r, r), (-r, r)), res=(args.res, args.res))


def cmd_mesh(args):
    grid = _grid_from(args)
    outdir = args.out
    os.makedirs(outdir, exist_ok=True)
    if args.subcase:
        sub = {"++": "PosDef", "--": "NegDef", "+-": "Indef"}.get(args.subcase, args.subcase)
        if sub not in ("PosDef", "NegDef", "Indef"):
            raise CliError("bad --subcase (use ++, --, +-)")
        if args.eps is None:
            raise CliError("--subcase needs --eps")
        m = mesh_mod.extract_generic(sub, float(args.eps), grid)
        name = "generic_%s_eps%s" % (sub, args.eps)
    else:
        nf = _normal_form(args, _precision(args))
        p = rat_loose(args.p if args.p is not None else 0)
        q = rat_loose(args.q if args.q is not None else 0)
        m = mesh_mod.extract_degen(nf, p, q, grid)
        name = "degen_p%s_q%s" % (args.p or 0, args.q or 0)
    obj_path = os.path.join(outdir, name + ".obj")
    csv_path = os.path.join(outdir, name + "_features.csv")
    with open(obj_path, "w") as fh:
        fh.write(mesh_mod.mesh_to_obj(m, name))
    with open(csv_path, "w") as fh:
        fh.write(mesh_mod.features_to_csv(m))
    manifest = {
        "empty": m.empty,
        "vertices": len(m.vertices),
        "faces": len(m.faces),
        "cusp_edges": m.feature_count("CuspEdge"),
        "self_int": m.feature_count("SelfIntersection"),
        "obj": obj_path,
        "features_csv": csv_path,
    }
    with open(os.path.join(outdir, name + "_manifest.json"), "w") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    _emit(manifest)
    return 0


def cmd_sweep(args):
    if args.samples < 2:
        raise CliError("need --samples >= 2")
    if args.special:
        source = special12.SpecialFamily(1, 0.0, 0.0)
    else:
        source = _normal_form(args, _precision(args))
    grid = _grid_from(args)
    config = mesh_mod.SweepConfig(
        center=(float(args.center_p), float(args.center_q)),
        radius=float(args.radius),
        samples=args.samples,
        grid=grid,
        source=source,
    )
    _, log = mesh_mod.sweep(config)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "sweep_log.json")
    with open(path, "w") as fh:
        fh.write(json.dumps(log, indent=2, sort_keys=True) + "\n")
    _emit({"log": path, "transitions": len(log["transitions"])})
    return 0


def cmd_loci(args):
    if args.samples < 2:
        raise CliError("need --samples >= 2")
    loci = special12.plane_loci((rat(args.qmin), rat(args.qmax)), args.samples)
    os.makedirs(args.out, exist_ok=True)
    svg_path = os.path.join(args.out, "loci.svg")
    csv_path = os.path.join(args.out, "loci.csv")
    with open(svg_path, "w") as fh:
        fh.write(special12.loci_svg(loci))
    with open(csv_path, "w") as fh:
        fh.write(special12.loci_csv(loci))
    _emit({"svg": svg_path, "csv": csv_path, "cusp_samples": len(loci.cusp_branch)})
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(
        prog="equidist",
        description="Affine equidistants of surface pairs near a degenerate chord.",
    )
    ap.add_argument("--precision", type=int, default=None, help="precision bits (>= 64)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="case/subcase of a ratio, or the ratio landscape")
    p.add_argument("surfaces")
    p.add_argument("--lambda", dest="ratio", default=None)
    p.add_argument("--landscape", action="store_true")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("contact", help="contact type of the scaled reflexion map")
    p.add_argument("surfaces")
    p.add_argument("--lambda", dest="ratio", required=True)
    p.set_defaults(fn=cmd_contact)

    p = sub.add_parser("table1", help="recompute the ten-class table")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_table1)

    def nf_flags(p):
        p.add_argument("--bcde", default=None, help="b,c,d,e rationals")
        p.add_argument("--case", default=None, help="table class I..X")
        p.add_argument("surfaces", nargs="?", default=None)

    p = sub.add_parser("invariants", help="degenerate-case invariants")
    nf_flags(p)
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("mesh", help="extract a surface mesh + feature curves")
    nf_flags(p)
    p.add_argument("--subcase", default=None, help="generic form: ++, --, +-")
    p.add_argument("--eps", default=None)
    p.add_argument("--p", default=None)
    p.add_argument("--q", default=None)
    p.add_argument("--range", default="0.5")
    p.add_argument("--res", type=int, default=96)
    p.add_argument("--out", default="out")
    p.set_defaults(fn=cmd_mesh)

    p = sub.add_parser("sweep", help="circuit of (p,q) samples with a transition log")
    nf_flags(p)
    p.add_argument("--special", action="store_true", help="sweep the special-ratio family")
    p.add_argument("--center-p", default="0")
    p.add_argument("--center-q", default="0")
    p.add_argument("--radius", default="0.05")
    p.add_argument("--samples", type=int, default=24)
    p.add_argument("--range", default="0.5")
    p.add_argument("--res", type=int, default=96)
    p.add_argument("--out", default="out")
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("loci", help="(p,q)-plane transition loci (SVG + CSV)")
    p.add_argument("--qmin", default="-1/5")
    p.add_argument("--qmax", default="1/5")
    p.add_argument("--samples", type=int, default=33)
    p.add_argument("--out", default="out")
    p.set_defaults(fn=cmd_loci)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
