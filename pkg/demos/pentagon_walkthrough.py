"""The classical rank-2 case from scratch: five objects, five facets, a pentagon.

Walks through the A_2, d = 1 category: lists the fundamental domain, prints
the Ext^1 table that governs compatibility, enumerates the tilting sets,
and then mutates around the exchange graph until it closes up.
"""

from __future__ import annotations

import argparse

from dcluster import mutation as mut
from dcluster.tilting import enumerate_tilting
from dcluster.verify import load_context


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=101)
    args = ap.parse_args()

    ctx = load_context("A", 2, 1, prime=args.prime)
    oc = ctx.oc
    print("== objects of the fundamental domain ==")
    for x in ctx.objects:
        print("  %-11s dimension vector %s, shift %d" % (oc.obj_name(x),
                                                         list(x[0]), x[1]))

    print("\n== Ext^1 table (rows: source, columns: target) ==")
    names = [oc.obj_name(x) for x in ctx.objects]
    print("  %11s" % "", " ".join(n.rjust(9) for n in names))
    for x in ctx.objects:
        row = [oc.ext_dim(x, y, 1) for y in ctx.objects]
        print("  %11s" % oc.obj_name(x), " ".join(str(v).rjust(9) for v in row))

    facets = enumerate_tilting(ctx)
    print("\n== tilting sets (%d) ==" % len(facets))
    for f in facets:
        print("  " + " + ".join(oc.obj_name(x) for x in f))

    print("\n== mutation walk ==")
    facet = facets[0]
    start = frozenset(facet)
    for step in range(6):
        drop = sorted(facet, key=lambda x: ctx.index[x])[0]
        new = mut.mutate(ctx, facet, drop)
        print("  step %d: drop %-11s -> %s" % (
            step + 1, oc.obj_name(drop),
            " + ".join(oc.obj_name(x) for x in new)))
        facet = new
        if frozenset(facet) == start:
            print("  back at the start after %d steps (the pentagon closes)"
                  % (step + 1))
            break

    print("\n== one exchange in detail ==")
    drop = facet[0]
    almost = [x for x in facet if x != drop]
    fan = mut.rotate_to(mut.fan_of(ctx, almost), drop)
    tris = {t["source"]: t for t in mut.triangles_of(ctx, almost)}
    for x in fan:
        tri = tris[x]
        mid = " + ".join("%d*%s" % (m, oc.obj_name(t))
                         for t, m in tri["mults"].items() if m) or "0"
        print("  %s -> %s -> %s -> shift of the first" % (
            oc.obj_name(tri["source"]), mid, oc.obj_name(tri["target"])))


if __name__ == "__main__":
    main()
