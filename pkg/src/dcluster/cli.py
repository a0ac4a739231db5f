"""Command-line interface: inspect categories, run verifications, export data.

Exit codes: 0 success, 1 verification failure, 2 usage error.
A JSON config file (--config) may supply any of the common flags; explicit
command-line flags win over config values.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import complex as cpxmod
from . import mutation as mut
from .tilting import TiltingContext, enumerate_tilting, is_tilting
from .verify import (CHECK_IDS, load_context, report_to_json, run_checks,
                     save_cache)


class UsageError(Exception):
    pass


class CheckFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# argument handling


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--diagram", help="Dynkin family letter (A, D, or E)")
    sp.add_argument("--rank", type=int, help="number of vertices")
    sp.add_argument("--d", type=int, help="shift parameter d >= 1")
    sp.add_argument("--prime", type=int, help="field characteristic (default 101)")
    sp.add_argument("--orientation",
                    help="'default' or a JSON file with a list of [source, target] arrows")
    sp.add_argument("--out", help="write the command's JSON output here")
    sp.add_argument("--cache-dir", help="directory for the facet-enumeration cache")
    sp.add_argument("--config", help="JSON file supplying any of the flags above")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dcluster",
        description="higher cluster categories of Dynkin quivers: "
                    "objects, tilting sets, mutation, verification")
    sub = ap.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser(
        "indecomposables", help="list the fundamental domain with labels"))
    _add_common(sub.add_parser(
        "ext-table", help="print the shifted-Ext^1 dimension table"))

    tp = sub.add_parser("tilting", help="tilting-set operations")
    tsub = tp.add_subparsers(dest="tilting_command", required=True)
    _add_common(tsub.add_parser("enumerate", help="list all tilting sets"))

    cp = sub.add_parser("complements",
                        help="complement cycle of an almost complete set")
    cp.add_argument("--facet", required=True,
                    help="comma-separated object names forming a tilting set")
    cp.add_argument("--drop", required=True, help="summand to remove")
    _add_common(cp)

    mp = sub.add_parser("mutate", help="replace one summand of a tilting set")
    mp.add_argument("--facet", required=True)
    mp.add_argument("--drop", required=True)
    mp.add_argument("--pick", type=int, default=1,
                    help="steps along the complement cycle (default 1)")
    _add_common(mp)

    gp = sub.add_parser("mutation-graph", help="facet graph summary")
    gp.add_argument("--dot", help="write the graph in DOT format here")
    _add_common(gp)

    xp = sub.add_parser("complex", help="cluster complex summary and exports")
    xp.add_argument("--positive", action="store_true",
                    help="restrict to the positive part")
    xp.add_argument("--dot", help="write the facet-adjacency DOT here")
    _add_common(xp)

    fp = sub.add_parser("fans", help="complement cycles of all almost complete sets")
    fp.add_argument("--verify-all", action="store_true",
                    help="run every fan-level check")
    fp.add_argument("--json", dest="json_out", help="write the check report here")
    fp.add_argument("--list", action="store_true", help="print every cycle")
    _add_common(fp)

    vp = sub.add_parser("verify", help="run verification checks")
    group = vp.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every check")
    group.add_argument("--check", help="comma-separated check ids")
    vp.add_argument("--list-checks", action="store_true",
                    help="print the available check ids and exit")
    _add_common(vp)

    return ap


CONFIG_KEYS = ("diagram", "rank", "d", "prime", "orientation", "out", "cache_dir")


def _apply_config(args: argparse.Namespace) -> None:
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.exists():
            raise UsageError("config file not found: %s" % path)
        cfg = json.loads(path.read_text())
        unknown = sorted(set(cfg) - set(CONFIG_KEYS))
        if unknown:
            raise UsageError("unknown config keys: %s" % ", ".join(unknown))
        for key in CONFIG_KEYS:
            if key in cfg and getattr(args, key, None) is None:
                setattr(args, key, cfg[key])
    if getattr(args, "prime", None) is None:
        args.prime = 101


def _context(args: argparse.Namespace) -> TiltingContext:
    for key in ("diagram", "rank", "d"):
        if getattr(args, key, None) is None:
            raise UsageError("--%s is required (flag or config file)" % key)
    orientation = None
    if args.orientation not in (None, "default"):
        path = Path(args.orientation)
        if not path.exists():
            raise UsageError("orientation file not found: %s" % path)
        orientation = json.loads(path.read_text())
    try:
        return load_context(args.diagram, args.rank, args.d, prime=args.prime,
                            orientation=orientation, cache_dir=args.cache_dir)
    except ValueError as exc:
        raise UsageError(str(exc))


def _parse_objs(ctx: TiltingContext, text: str) -> List:
    try:
        return [ctx.oc.parse_name(nm) for nm in text.split(",") if nm.strip()]
    except ValueError as exc:
        raise UsageError(str(exc))


def _write_out(args: argparse.Namespace, payload: dict) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _line(oc, x) -> str:
    lab = cpxmod.gamma(oc, x)
    sign = "-" if lab[2] == "negative-simple" else "+"
    return "%-12s dim=%s degree=%d color=%d label=%s(%s)^%d" % (
        oc.obj_name(x), list(x[0]), oc.degree(x), oc.color(x),
        sign, ",".join(str(c) for c in lab[0]), lab[1])


# ---------------------------------------------------------------------------
# subcommands


def cmd_indecomposables(args) -> int:
    ctx = _context(args)
    oc = ctx.oc
    objs = ctx.objects
    for x in objs:
        print(_line(oc, x))
    print("%d objects" % len(objs))
    _write_out(args, {
        "schema": "indecomposables", "schema_version": 1,
        "objects": [{"name": oc.obj_name(x), "root": list(x[0]),
                     "shift": x[1], "degree": oc.degree(x),
                     "color": oc.color(x)} for x in objs]})
    return 0


def cmd_ext_table(args) -> int:
    ctx = _context(args)
    oc = ctx.oc
    objs = ctx.objects
    names = [oc.obj_name(x) for x in objs]
    width = max(len(nm) for nm in names)
    print(" " * width, " ".join(nm.rjust(width) for nm in names))
    table = []
    for x in objs:
        row = [oc.ext_dim(x, y, 1) for y in objs]
        table.append(row)
        print(oc.obj_name(x).rjust(width),
              " ".join(str(v).rjust(width) for v in row))
    _write_out(args, {"schema": "ext-table", "schema_version": 1,
                      "objects": names, "ext1": table})
    return 0


def cmd_tilting_enumerate(args) -> int:
    ctx = _context(args)
    oc = ctx.oc
    facets = enumerate_tilting(ctx)
    for f in facets:
        print(" + ".join(oc.obj_name(x) for x in f))
    print("%d tilting sets" % len(facets))
    if args.cache_dir:
        save_cache(ctx, args.cache_dir)
    _write_out(args, {"schema": "tilting-sets", "schema_version": 1,
                      "facets": [[oc.obj_name(x) for x in f] for f in facets]})
    return 0


def cmd_complements(args) -> int:
    ctx = _context(args)
    oc = ctx.oc
    facet = _parse_objs(ctx, args.facet)
    drop = _parse_objs(ctx, args.drop)
    if len(drop) != 1:
        raise UsageError("--drop takes exactly one object name")
    if drop[0] not in facet:
        raise UsageError("%s is not a summand of the given facet" % args.drop)
    if not is_tilting(ctx, facet):
        raise UsageError("--facet is not a tilting set")
    almost = [x for x in facet if x != drop[0]]
    try:
        fan = mut.rotate_to(mut.fan_of(ctx, almost), drop[0])
        tris = mut.triangles_of(ctx, almost)
    except ValueError as exc:
        raise UsageError(str(exc))
    for x in fan:
        print("%-12s degree=%d" % (oc.obj_name(x), oc.degree(x)))
    by_source = {tri["source"]: tri for tri in tris}
    for x in fan:
        tri = by_source[x]
        mid = " + ".join("%d*%s" % (m, oc.obj_name(t))
                         for t, m in sorted(tri["mults"].items(),
                                            key=lambda kv: ctx.index[kv[0]])
                         if m > 0) or "0"
        print("triangle: %s -> %s -> %s" % (oc.obj_name(tri["source"]), mid,
                                            oc.obj_name(tri["target"])))
    _write_out(args, {
        "schema": "complements", "schema_version": 1,
        "almost": sorted(oc.obj_name(x) for x in almost),
        "cycle": [oc.obj_name(x) for x in fan],
        "triangles": [{"source": oc.obj_name(tri["source"]),
                       "target": oc.obj_name(tri["target"]),
                       "middle": {oc.obj_name(t): m
                                  for t, m in tri["mults"].items() if m > 0}}
                      for tri in (by_source[x] for x in fan)]})
    return 0


def cmd_mutate(args) -> int:
    ctx = _context(args)
    oc = ctx.oc
    facet = _parse_objs(ctx, args.facet)
    drop = _parse_objs(ctx, args.drop)
    if len(drop) != 1:
        raise UsageError("--drop takes exactly one object name")
    try:
        new = mut.mutate(ctx, facet, drop[0], pick=args.pick)
    except ValueError as exc:
        raise UsageError(str(exc))
    print(" + ".join(oc.obj_name(x) for x in new))
    _write_out(args, {"schema": "mutate", "schema_version": 1,
                      "facet": [oc.obj_name(x) for x in new]})
    return 0


def _mutation_dot(ctx: TiltingContext) -> str:
    oc = ctx.oc
    facets, neighbors = mut.mutation_graph(ctx)
    lines = ["graph mutation {"]
    for i, f in enumerate(facets):
        lines.append('  f%d [label="%s"];'
                     % (i, " + ".join(oc.obj_name(x) for x in f)))
    for i, nbrs in enumerate(neighbors):
        for j in sorted(nbrs):
            if i < j:
                lines.append("  f%d -- f%d;" % (i, j))
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_mutation_graph(args) -> int:
    ctx = _context(args)
    res = mut.mutation_graph_checks(ctx)
    edges = res["vertices"] * res["degree"] // 2
    print("vertices=%d edges=%d degree=%d regular=%s connected=%s"
          % (res["vertices"], edges, res["degree"],
             res["regular"], res["connected"]))
    if args.dot:
        Path(args.dot).write_text(_mutation_dot(ctx))
        print("wrote %s" % args.dot)
    _write_out(args, {"schema": "mutation-graph", "schema_version": 1,
                      "vertices": res["vertices"], "edges": edges,
                      "degree": res["degree"], "regular": res["regular"],
                      "connected": res["connected"]})
    if not (res["regular"] and res["connected"]):
        raise CheckFailure("mutation graph fails regularity/connectivity")
    return 0


def cmd_complex(args) -> int:
    ctx = _context(args)
    cpx = cpxmod.build_complex(ctx, positive_only=args.positive)
    print(cpxmod.f_vector_text(cpx).strip())
    print("%d vertices, %d facets" % (len(cpx.vertices), len(cpx.facets)))
    if not args.positive:
        stats = cpxmod.facet_stats(cpx)
        print("pure=%s codim1_faces=%d codim1_in_d_plus_1=%s colors_ok=%s"
              % (stats["pure"], stats["codim1_faces"],
                 stats["codim1_in_d_plus_1"], stats["colors_ok"]))
    if args.dot:
        Path(args.dot).write_text(cpxmod.to_dot(cpx))
        print("wrote %s" % args.dot)
    _write_out(args, cpxmod.to_json(cpx))
    return 0


FAN_CHECKS = ["complement-count", "complement-degrees", "fan-ext-pattern",
              "delta-composites", "middle-rigid", "exchange-team-fan",
              "degree-profile", "successor-hom-vanishing",
              "middle-terms-disjoint"]


def _print_report(report: dict, timings: dict) -> None:
    for entry in report["checks"]:
        cid = entry["id"]
        status = entry["status"]
        extra = ""
        if status == "n/a":
            extra = " (%s)" % entry["reason"]
        elif cid == "complement-count":
            extra = " x %d complements each" % entry["complements_each"]
        elif "counterexample" in entry:
            extra = " counterexample=%s" % json.dumps(entry["counterexample"],
                                                      sort_keys=True)
        print("%-28s %-4s %6d instances%s  [%.2fs]"
              % (cid, status, entry["instances"], extra, timings.get(cid, 0.0)))
    s = report["summary"]
    print("summary: %d pass, %d fail, %d n/a" % (s["pass"], s["fail"], s["n/a"]))


def cmd_fans(args) -> int:
    ctx = _context(args)
    oc = ctx.oc
    almosts = mut.almost_completes(ctx)
    print("%d almost complete sets" % len(almosts))
    if args.list:
        for a in almosts:
            fan = mut.fan_of(ctx, a)
            print("{%s}: %s" % (", ".join(oc.obj_name(x) for x in a),
                                " -> ".join(oc.obj_name(x) for x in fan)))
    rc = 0
    if args.verify_all:
        report, timings = run_checks(ctx, only=FAN_CHECKS)
        _print_report(report, timings)
        if args.json_out:
            Path(args.json_out).write_text(report_to_json(report))
        if report["summary"]["fail"]:
            rc = 1
    if args.cache_dir:
        save_cache(ctx, args.cache_dir)
    return rc


def cmd_verify(args) -> int:
    if args.list_checks:
        for cid in CHECK_IDS:
            print(cid)
        return 0
    ctx = _context(args)
    only: Optional[List[str]] = None
    if args.check:
        only = [c.strip() for c in args.check.split(",") if c.strip()]
    elif not args.all:
        raise UsageError("verify needs --all or --check <id,...>")
    try:
        report, timings = run_checks(ctx, only=only)
    except ValueError as exc:
        raise UsageError(str(exc))
    _print_report(report, timings)
    if getattr(args, "out", None):
        Path(args.out).write_text(report_to_json(report))
        print("wrote %s" % args.out)
    if args.cache_dir:
        save_cache(ctx, args.cache_dir)
    return 1 if report["summary"]["fail"] else 0


# ---------------------------------------------------------------------------
# dispatch


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_config(args)
        if args.command == "indecomposables":
            return cmd_indecomposables(args)
        if args.command == "ext-table":
            return cmd_ext_table(args)
        if args.command == "tilting":
            return cmd_tilting_enumerate(args)
        if args.command == "complements":
            return cmd_complements(args)
        if args.command == "mutate":
            return cmd_mutate(args)
        if args.command == "mutation-graph":
            return cmd_mutation_graph(args)
        if args.command == "complex":
            return cmd_complex(args)
        if args.command == "fans":
            return cmd_fans(args)
        if args.command == "verify":
            return cmd_verify(args)
        raise UsageError("unknown command %r" % args.command)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except CheckFailure as exc:
        print("failure: %s" % exc, file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
