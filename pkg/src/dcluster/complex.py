"""The cluster complex: rigid subsets labeled by colored roots.

Vertices are the fundamental-domain objects, faces are the rigid subsets,
and facets are the tilting sets, so the complex is pure of dimension n-1.
Each vertex is labeled by a colored root: an object of degree i < d is sent
to its dimension vector with color i+1, and a degree-d object (a shifted
projective) to the negative simple root at its vertex, with color 1.  On
the fundamental domain this labeling is a bijection onto the set of
positive roots in d colors together with the negative simples.

The positive part is the vertex-restriction to degrees < d (no negative
labels); its facets are the tilting sets avoiding the shifted projectives.

Faces are never materialized beyond the facets: the f-vector is counted by
backtracking over compatibility bitmasks, and codimension-1 statistics come
from the complement fans.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .mutation import almost_completes, fan_of, mutation_graph
from .orbit import Obj, OrbitCategory
from .tilting import TiltingContext, _bits, enumerate_tilting

ColoredRoot = Tuple[Tuple[int, ...], int, str]   # (root, color, sign)


def gamma(oc: OrbitCategory, x: Obj) -> ColoredRoot:
    """Colored-root label of a canonical object.

    Degree i < d objects keep their dimension vector, colored i+1; degree-d
    objects are projectives P_j and map to the simple root at j, colored 1
    and flagged as negative.
    """
    root, shift = oc.normalize(x)[0]
    deg = shift
    if deg < oc.d:
        return (root, deg + 1, "positive")
    j = oc.proj_vertex[root]
    simple = tuple(1 if v == j else 0 for v in range(len(root)))
    return (simple, 1, "negative-simple")


def colored_roots(oc: OrbitCategory) -> List[ColoredRoot]:
    """All colored roots: positive roots in colors 1..d plus negative simples."""
    out = [(r, c, "positive") for c in range(1, oc.d + 1) for r in oc.cat.roots]
    n = oc.cat.q.rank
    for j in range(n):
        out.append((tuple(1 if v == j else 0 for v in range(n)), 1, "negative-simple"))
    return out


def gamma_is_bijection(oc: OrbitCategory) -> bool:
    labels = [gamma(oc, x) for x in oc.objects()]
    return len(set(labels)) == len(labels) and set(labels) == set(colored_roots(oc))


class ClusterComplex:
    """Facet-level view of the complex (faces implicit via rigidity)."""

    def __init__(self, ctx: TiltingContext, positive_only: bool = False):
        self.ctx = ctx
        self.positive_only = positive_only
        oc = ctx.oc
        if positive_only:
            self.vertices = [x for x in ctx.objects if oc.degree(x) < oc.d]
        else:
            self.vertices = list(ctx.objects)
        vset = set(self.vertices)
        self.labels = {x: gamma(oc, x) for x in self.vertices}
        self.facets = [f for f in enumerate_tilting(ctx)
                       if all(x in vset for x in f)]

    def vertex_names(self) -> List[str]:
        return [self.ctx.oc.obj_name(x) for x in self.vertices]


def build_complex(ctx: TiltingContext, positive_only: bool = False) -> ClusterComplex:
    return ClusterComplex(ctx, positive_only)


def f_vector(cpx: ClusterComplex) -> List[int]:
    """Face counts by size, starting from the empty face: [1, f_0, ..., f_{n-1}]."""
    ctx = cpx.ctx
    adj = ctx.adjacency()
    idx = [ctx.index[x] for x in cpx.vertices]
    allowed = 0
    for i in idx:
        allowed |= 1 << i
    counts = [0] * (ctx.n + 1)
    counts[0] = 1

    def walk(cand: int, size: int) -> None:
        for i in _bits(cand):
            counts[size + 1] += 1
            higher = cand & ~((1 << (i + 1)) - 1)
            nxt = higher & adj[i]
            if nxt and size + 1 < ctx.n:
                walk(nxt, size + 1)

    walk(allowed, 0)
    return counts


def facet_adjacency(facets: Sequence[Tuple[Obj, ...]]) -> List[set]:
    """Adjacency of facets sharing all but one vertex."""
    nbrs = [set() for _ in facets]
    groups: Dict[Tuple[Obj, ...], List[int]] = {}
    for fi, facet in enumerate(facets):
        for drop in facet:
            groups.setdefault(tuple(x for x in facet if x != drop), []).append(fi)
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                nbrs[members[a]].add(members[b])
                nbrs[members[b]].add(members[a])
    return nbrs


def facet_stats(cpx: ClusterComplex) -> Dict[str, object]:
    """Purity, codimension-1 incidence and complement-color census.

    Runs on the full complex: every codimension-1 face must lie in exactly
    d+1 facets, and the colors of its d+1 complements must cover 1..d.
    """
    ctx = cpx.ctx
    oc = ctx.oc
    if cpx.positive_only:
        raise ValueError("facet statistics are defined on the full complex")
    pure = all(len(f) == ctx.n for f in cpx.facets)
    almosts = almost_completes(ctx)
    incidence = {}
    colors_ok = True
    for a in almosts:
        fan = fan_of(ctx, a)
        incidence[len(fan)] = incidence.get(len(fan), 0) + 1
        if set(oc.color(x) for x in fan) != set(range(1, oc.d + 1)):
            colors_ok = False
    return {
        "facets": len(cpx.facets),
        "pure": pure,
        "codim1_faces": len(almosts),
        "codim1_incidence": incidence,
        "codim1_in_d_plus_1": list(incidence) == [oc.d + 1],
        "colors_ok": colors_ok,
    }


# ---------------------------------------------------------------------------
# exports


def _label_record(cpx: ClusterComplex, x: Obj) -> Dict[str, object]:
    root, color, sign = cpx.labels[x]
    return {
        "name": cpx.ctx.oc.obj_name(x),
        "root": list(x[0]),
        "shift": x[1],
        "label": {"root": list(root), "color": color, "sign": sign},
    }


def to_json(cpx: ClusterComplex) -> Dict[str, object]:
    """Versioned JSON form of the complex (vertices, labels, facets, f-vector)."""
    ctx = cpx.ctx
    q = ctx.oc.cat.q
    return {
        "schema": "cluster-complex",
        "schema_version": 1,
        "diagram": q.diagram,
        "rank": q.rank,
        "orientation": [list(a) for a in q.arrows],
        "d": ctx.oc.d,
        "prime": ctx.oc.cat.p,
        "positive_only": cpx.positive_only,
        "vertices": [_label_record(cpx, x) for x in cpx.vertices],
        "facets": [[ctx.oc.obj_name(x) for x in f] for f in cpx.facets],
        "f_vector": f_vector(cpx),
    }


def to_dot(cpx: ClusterComplex) -> str:
    """DOT source for the facet-adjacency graph."""
    ctx = cpx.ctx
    names = [" + ".join(ctx.oc.obj_name(x) for x in f) for f in cpx.facets]
    nbrs = facet_adjacency(cpx.facets)
    lines = ["graph complex {"]
    for i, name in enumerate(names):
        lines.append('  f%d [label="%s"];' % (i, name))
    for i, s in enumerate(nbrs):
        for j in sorted(s):
            if i < j:
                lines.append("  f%d -- f%d;" % (i, j))
    lines.append("}")
    return "\n".join(lines) + "\n"


def f_vector_text(cpx: ClusterComplex) -> str:
    return " ".join(str(c) for c in f_vector(cpx)) + "\n"
