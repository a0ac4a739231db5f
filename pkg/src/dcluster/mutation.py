"""Complements, exchange fans and approximation triangles.

An almost complete tilting set (a facet minus one summand) extends back to
a tilting set in finitely many ways.  The extensions carry a canonical
cyclic order: each complement X has exactly one other complement Y with a
nonvanishing extension class in Ext^1(X, Y), and following these classes
walks through all complements once before returning to the start.  We call
the ordered cycle a *fan*.

Consecutive fan members are linked by a triangle whose middle term lies in
the additive hull of the fixed almost complete part.  The middle term is
never built as a cone here; instead its multiplicities are computed twice,
as the radical-quotient dimensions of Hom(T_j, X_i) (minimal right
approximation of X_i) and of Hom(X_{i+1}, T_j) (minimal left approximation
of X_{i+1}), and the two routes must agree.  The factorization property of
the approximation is checked directly on basis elements.

The module also packages the fan-level laws this data obeys: the cyclic
Ext-dimension pattern with its nonvanishing composites of connecting
classes ("exchange team"), degree bounds and the two-piece degree profile,
disjointness of middle-term supports, one-directional Hom between summands,
and the mutation graph on facets.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .orbit import CMorphism, Obj
from .tilting import TiltingContext, _bits, _common_neighbors, \
    enumerate_tilting, is_rigid, is_tilting


def _caches(ctx: TiltingContext, name: str) -> dict:
    store = ctx.__dict__.setdefault("_mutation_caches", {})
    return store.setdefault(name, {})


def _hom_basis(ctx: TiltingContext, a: Obj, b: Obj) -> List[CMorphism]:
    cache = _caches(ctx, "hom_basis")
    key = (a, b)
    if key not in cache:
        cache[key] = ctx.oc.hom_basis(a, b)
    return cache[key]


def complements(ctx: TiltingContext, almost: Sequence[Obj]) -> List[Obj]:
    """All indecomposables completing `almost` to a tilting set, in domain order."""
    oc = ctx.oc
    almost = tuple(oc.normalize(x)[0] for x in almost)
    if not is_rigid(ctx, almost):
        raise ValueError("almost complete part is not rigid")
    mask = ctx.mask_of(almost)
    out = []
    for i in _bits(_common_neighbors(ctx, mask)):
        if is_tilting(ctx, almost + (ctx.objects[i],)):
            out.append(ctx.objects[i])
    return out


def successor(ctx: TiltingContext, comps: Sequence[Obj], x: Obj) -> Obj:
    """The unique other complement hit by a nonzero class in Ext^1(x, -)."""
    oc = ctx.oc
    succ = [y for y in comps if y != x and oc.ext_dim(x, y, 1) != 0]
    if len(succ) != 1:
        raise RuntimeError("complement %r has %d Ext^1-successors, expected 1"
                           % (x, len(succ)))
    return succ[0]


def order_into_fan(ctx: TiltingContext, comps: Sequence[Obj],
                   start: Optional[Obj] = None) -> Tuple[Obj, ...]:
    """Order complements into the Ext^1-successor cycle, starting at `start`."""
    comps = list(comps)
    if start is None:
        start = min(comps, key=lambda y: ctx.index[y])
    if start not in comps:
        raise ValueError("start %r is not among the complements" % (start,))
    cycle = [start]
    cur = start
    for _ in range(len(comps) - 1):
        cur = successor(ctx, comps, cur)
        if cur in cycle:
            raise RuntimeError("Ext^1-successors revisit %r before closing" % (cur,))
        cycle.append(cur)
    if successor(ctx, comps, cycle[-1]) != start:
        raise RuntimeError("Ext^1-successor cycle does not close")
    return tuple(cycle)


def fan_of(ctx: TiltingContext, almost: Sequence[Obj]) -> Tuple[Obj, ...]:
    """The ordered complement cycle of an almost complete set (cached)."""
    oc = ctx.oc
    almost = tuple(oc.normalize(x)[0] for x in almost)
    cache = _caches(ctx, "fans")
    key = frozenset(almost)
    if key not in cache:
        cache[key] = order_into_fan(ctx, complements(ctx, almost))
    return cache[key]


def rotate_to(cycle: Sequence[Obj], start: Obj) -> Tuple[Obj, ...]:
    cycle = tuple(cycle)
    i = cycle.index(start)
    return cycle[i:] + cycle[:i]


def cyclic_form(ctx: TiltingContext, cycle: Sequence[Obj]) -> Tuple[Obj, ...]:
    """Least rotation; identifies cycles that differ only in starting point."""
    cycle = tuple(cycle)
    rots = [cycle[i:] + cycle[:i] for i in range(len(cycle))]
    return min(rots, key=lambda t: tuple(ctx.index[x] for x in t))


def fan_degrees(ctx: TiltingContext, cycle: Sequence[Obj]) -> Tuple[int, ...]:
    return tuple(ctx.oc.degree(x) for x in cycle)


def almost_completes(ctx: TiltingContext) -> List[Tuple[Obj, ...]]:
    """Every facet minus one summand, deduplicated, in canonical order."""
    seen = set()
    for facet in enumerate_tilting(ctx):
        for drop in facet:
            seen.add(tuple(x for x in facet if x != drop))
    return sorted(seen, key=lambda t: tuple(ctx.index[x] for x in t))


# ---------------------------------------------------------------------------
# approximations


def _composite_columns(ctx: TiltingContext, a: Obj, mid: Obj, b: Obj) -> List[np.ndarray]:
    """Coordinate columns of {g o f : f in Hom(a, mid), g in Hom(mid, b)}."""
    cache = _caches(ctx, "composites")
    key = (a, mid, b)
    if key not in cache:
        oc = ctx.oc
        cols = []
        for f in _hom_basis(ctx, a, mid):
            for g in _hom_basis(ctx, mid, b):
                cols.append(oc.morph_coords(oc.compose(g, f)))
        cache[key] = cols
    return cache[key]


def _tops_mod_radical(ctx, basis: List[CMorphism], rad_cols: List[np.ndarray]) -> List[CMorphism]:
    """Basis elements completing the radical columns to a spanning set."""
    oc = ctx.oc
    p = oc.cat.p
    dim = len(oc.morph_coords(basis[0]))
    mat = np.stack(rad_cols, axis=1) if rad_cols else linalg.zeros(dim, 0)
    rank = linalg.rank_mod(mat, p)
    tops = []
    for f in basis:
        cand = np.concatenate([mat, oc.morph_coords(f).reshape(-1, 1)], axis=1)
        r = linalg.rank_mod(cand, p)
        if r > rank:
            mat, rank = cand, r
            tops.append(f)
    return tops


def _check_end_fields(ctx: TiltingContext, addset: Sequence[Obj]) -> None:
    for t in addset:
        if ctx.oc.hom_dim(t, t) != 1:
            raise RuntimeError("endomorphism ring of %r is not one-dimensional" % (t,))


def right_approximation(ctx: TiltingContext, addset: Sequence[Obj],
                        target: Obj) -> Dict[Obj, List[CMorphism]]:
    """Radical-complement generators of Hom(T_j, target) for each summand T_j.

    The number of generators at T_j is the multiplicity of T_j in the
    minimal right approximation of `target` from the additive hull of
    `addset`; requires every End(T_j) to be one-dimensional so that the
    radical is exactly the span of composites through the other summands.
    """
    oc = ctx.oc
    addset = tuple(oc.normalize(x)[0] for x in addset)
    target = oc.normalize(target)[0]
    _check_end_fields(ctx, addset)
    tops = {}
    for j, tj in enumerate(addset):
        basis = _hom_basis(ctx, tj, target)
        if not basis:
            continue
        rad = []
        for l, tl in enumerate(addset):
            if l != j:
                rad.extend(_composite_columns(ctx, tj, tl, target))
        tops[tj] = _tops_mod_radical(ctx, basis, rad)
    return tops


def left_approximation(ctx: TiltingContext, addset: Sequence[Obj],
                       source: Obj) -> Dict[Obj, List[CMorphism]]:
    """Dual of right_approximation: generators of Hom(source, T_j) mod radical."""
    oc = ctx.oc
    addset = tuple(oc.normalize(x)[0] for x in addset)
    source = oc.normalize(source)[0]
    _check_end_fields(ctx, addset)
    tops = {}
    for j, tj in enumerate(addset):
        basis = _hom_basis(ctx, source, tj)
        if not basis:
            continue
        rad = []
        for l, tl in enumerate(addset):
            if l != j:
                rad.extend(_composite_columns(ctx, source, tl, tj))
        tops[tj] = _tops_mod_radical(ctx, basis, rad)
    return tops


def _factors_through_right(ctx, addset, target, tops) -> bool:
    """Does every Hom(T_l, target) lie in the span of tops precomposed with add maps?"""
    oc = ctx.oc
    p = oc.cat.p
    for tl in addset:
        basis = _hom_basis(ctx, tl, target)
        if not basis:
            continue
        cols = []
        for tj, fs in tops.items():
            for v in _hom_basis(ctx, tl, tj):
                for f in fs:
                    cols.append(oc.morph_coords(oc.compose(f, v)))
        dim = len(oc.morph_coords(basis[0]))
        span = np.stack(cols, axis=1) if cols else linalg.zeros(dim, 0)
        for h in basis:
            if not linalg.in_span(span, oc.morph_coords(h), p):
                return False
    return True


def _factors_through_left(ctx, addset, source, tops) -> bool:
    oc = ctx.oc
    p = oc.cat.p
    for tl in addset:
        basis = _hom_basis(ctx, source, tl)
        if not basis:
            continue
        cols = []
        for tj, gs in tops.items():
            for v in _hom_basis(ctx, tj, tl):
                for g in gs:
                    cols.append(oc.morph_coords(oc.compose(v, g)))
        dim = len(oc.morph_coords(basis[0]))
        span = np.stack(cols, axis=1) if cols else linalg.zeros(dim, 0)
        for h in basis:
            if not linalg.in_span(span, oc.morph_coords(h), p):
                return False
    return True


def approximation_mults(ctx: TiltingContext, addset: Sequence[Obj],
                        target: Obj) -> Dict[Obj, int]:
    """Multiplicities of the minimal right approximation, factorization-checked."""
    addset = tuple(ctx.oc.normalize(x)[0] for x in addset)
    tops = right_approximation(ctx, addset, target)
    if not _factors_through_right(ctx, addset, target, tops):
        raise RuntimeError("approximation candidates do not cover Hom(add set, %r)"
                           % (target,))
    return {tj: len(fs) for tj, fs in tops.items()}


def fan_triangles(ctx: TiltingContext, almost: Sequence[Obj],
                  cycle: Sequence[Obj]) -> List[Dict[str, object]]:
    """Middle-term data of the connecting triangles along a fan.

    Each entry records the multiplicities of the middle term between X_i
    (triangle target) and X_{i+1} (triangle source).  Multiplicities are
    computed from both ends and must agree; both factorization properties
    are checked.  An empty middle term is legal: the connecting class is
    then an isomorphism X_i = X_{i+1}[1].
    """
    oc = ctx.oc
    almost = tuple(oc.normalize(x)[0] for x in almost)
    cycle = tuple(oc.normalize(x)[0] for x in cycle)
    out = []
    m = len(cycle)
    for i in range(m):
        xi, xnext = cycle[i], cycle[(i + 1) % m]
        right = right_approximation(ctx, almost, xi)
        left = left_approximation(ctx, almost, xnext)
        rm = {t: len(fs) for t, fs in right.items() if fs}
        lm = {t: len(gs) for t, gs in left.items() if gs}
        if rm != lm:
            raise RuntimeError("middle term of triangle at %r disagrees between "
                               "right (%r) and left (%r) approximations" % (xi, rm, lm))
        if not _factors_through_right(ctx, almost, xi, right):
            raise RuntimeError("right approximation of %r does not cover all maps" % (xi,))
        if not _factors_through_left(ctx, almost, xnext, left):
            raise RuntimeError("left approximation of %r does not cover all maps" % (xnext,))
        out.append({"target": xi, "source": xnext, "mults": rm})
    return out


# ---------------------------------------------------------------------------
# connecting classes and the cyclic Ext pattern


def triangles_of(ctx: TiltingContext, almost: Sequence[Obj]) -> List[Dict[str, object]]:
    """fan_triangles over the cached fan of `almost`, itself cached."""
    almost = tuple(ctx.oc.normalize(x)[0] for x in almost)
    cache = _caches(ctx, "triangles")
    key = frozenset(almost)
    if key not in cache:
        cache[key] = fan_triangles(ctx, almost, fan_of(ctx, almost))
    return cache[key]


def delta_classes(ctx: TiltingContext, cycle: Sequence[Obj]) -> List[CMorphism]:
    """A basis vector of each Ext^1(X_i, X_{i+1}) along the cycle."""
    oc = ctx.oc
    out = []
    m = len(cycle)
    for i in range(m):
        basis = oc.ext_basis(cycle[i], cycle[(i + 1) % m], 1)
        if len(basis) != 1:
            raise RuntimeError("Ext^1(%r, %r) is not one-dimensional"
                               % (cycle[i], cycle[(i + 1) % m]))
        out.append(basis[0])
    return out


def delta_chains_nonzero(ctx: TiltingContext, cycle: Sequence[Obj],
                         deltas: Optional[List[CMorphism]] = None) -> bool:
    """Are all composites of consecutive connecting classes nonzero?

    Starting anywhere, composing k of them gives a class in
    Ext^k(X_i, X_{i+k}); these must be nonzero for k up to the full cycle
    length (the length-(d+1) composite is a self-extension of top degree).
    """
    oc = ctx.oc
    cycle = tuple(cycle)
    if deltas is None:
        deltas = delta_classes(ctx, cycle)
    m = len(cycle)
    for i in range(m):
        chain = deltas[i]
        for k in range(1, m):
            chain = oc.yoneda(deltas[(i + k) % m], chain, 1)
            if oc.is_zero(chain):
                return False
    return True


def ext_pattern_ok(ctx: TiltingContext, cycle: Sequence[Obj]) -> bool:
    """One-dimensional endomorphisms and the cyclic shifted-Ext pattern.

    Requires dim Hom(X_i, X_i) = 1 and, for 1 <= k <= d,
    dim Ext^k(X_i, X_j) = 1 if i + k = j (mod cycle length) and 0
    otherwise.  Plain Homs between distinct members are deliberately not
    constrained: complement cycles at d = 2 can have nonzero
    Hom(X_i, X_{i-1}) (computed A_3, d = 2 fans do), and only d >= 3
    forces those to vanish.
    """
    oc = ctx.oc
    cycle = tuple(cycle)
    m = len(cycle)
    for i in range(m):
        if oc.hom_dim(cycle[i], cycle[i]) != 1:
            return False
        for j in range(m):
            for k in range(1, oc.d + 1):
                want = 1 if (i + k - j) % m == 0 else 0
                if oc.ext_dim(cycle[i], cycle[j], k) != want:
                    return False
    return True


def is_exchange_team(ctx: TiltingContext, objs: Sequence[Obj]) -> bool:
    """Ordered (d+1)-tuple with the cyclic Ext pattern and nonzero composites."""
    oc = ctx.oc
    objs = tuple(oc.normalize(x)[0] for x in objs)
    if len(objs) != oc.d + 1 or len(set(objs)) != len(objs):
        return False
    if not ext_pattern_ok(ctx, objs):
        return False
    return delta_chains_nonzero(ctx, objs)


def exchange_teams_exhaustive(ctx: TiltingContext) -> List[Tuple[Obj, ...]]:
    """All exchange teams up to rotation, by brute tuple scan (small cases only)."""
    m = ctx.oc.d + 1
    found = set()
    for combo in combinations(ctx.objects, m):
        for perm in permutations(combo[1:]):
            objs = (combo[0],) + perm
            if is_exchange_team(ctx, objs):
                found.add(cyclic_form(ctx, objs))
    return sorted(found, key=lambda t: tuple(ctx.index[x] for x in t))


# ---------------------------------------------------------------------------
# fan-level laws


def degree_bounds_instances(ctx: TiltingContext, cycle: Sequence[Obj]) -> Tuple[int, int]:
    """(#rotations with deg X_0 = 0, #those breaking the degree bounds).

    For a rotation starting at degree 0 the next member has degree 0, d or
    d-1, and the i-th member has degree at least d - i for 2 <= i <= d.
    """
    d = ctx.oc.d
    degs = fan_degrees(ctx, cycle)
    m = len(cycle)
    instances = violations = 0
    for r in range(m):
        if degs[r] != 0:
            continue
        instances += 1
        rot = [degs[(r + i) % m] for i in range(m)]
        if rot[1] not in (0, d, d - 1) or \
                any(rot[i] < d - i for i in range(2, d + 1)):
            violations += 1
    return instances, violations


def degree_profile_instances(ctx: TiltingContext, cycle: Sequence[Obj]) -> Tuple[int, int]:
    """(#rotations with deg X_0 = 0 != deg X_1, #those off the two-piece profile).

    Such a rotation must satisfy, for some 0 <= k <= d: deg X_i = d - i for
    1 <= i <= k and deg X_i = d + 1 - i for k + 1 <= i <= d.
    """
    d = ctx.oc.d
    degs = fan_degrees(ctx, cycle)
    m = len(cycle)
    instances = violations = 0
    for r in range(m):
        rot = [degs[(r + i) % m] for i in range(m)]
        if rot[0] != 0 or rot[1] == 0:
            continue
        instances += 1
        if not any(all(rot[i] == d - i for i in range(1, k + 1)) and
                   all(rot[i] == d + 1 - i for i in range(k + 1, d + 1))
                   for k in range(d + 1)):
            violations += 1
    return instances, violations


def middle_supports_disjoint(triangles: List[Dict[str, object]]) -> bool:
    """Do the middle terms of a fan's triangles share no indecomposable summand?"""
    sups = [frozenset(t for t, mm in tri["mults"].items() if mm > 0)
            for tri in triangles]
    return all(not (sups[i] & sups[j])
               for i in range(len(sups)) for j in range(i + 1, len(sups)))


def middle_union_rigid(ctx: TiltingContext, cycle: Sequence[Obj],
                       triangles: List[Dict[str, object]]) -> bool:
    """Is the union of all middle-term summands rigid with each complement?"""
    support = sorted({t for tri in triangles
                      for t, mm in tri["mults"].items() if mm > 0},
                     key=lambda t: ctx.index[t])
    return all(is_rigid(ctx, support + [x]) for x in cycle)


def hom_one_directional(ctx: TiltingContext, objs: Sequence[Obj]) -> bool:
    """No two distinct members with nonzero Hom in both directions."""
    oc = ctx.oc
    objs = tuple(objs)
    for i, x in enumerate(objs):
        for y in objs[i + 1:]:
            if oc.hom_dim(x, y) and oc.hom_dim(y, x):
                return False
    return True


def successor_hom_vanishing(ctx: TiltingContext, cycle: Sequence[Obj]) -> bool:
    """Hom(X_i, X_{i+1}) = 0 for consecutive fan members."""
    oc = ctx.oc
    m = len(cycle)
    return all(oc.hom_dim(cycle[i], cycle[(i + 1) % m]) == 0 for i in range(m))


# ---------------------------------------------------------------------------
# mutation of facets


def mutate(ctx: TiltingContext, objs: Sequence[Obj], drop: Obj,
           pick: int = 1) -> Tuple[Obj, ...]:
    """Replace `drop` by the pick-th complement along the fan starting there."""
    oc = ctx.oc
    objs = tuple(sorted((oc.normalize(x)[0] for x in objs),
                        key=lambda t: ctx.index[t]))
    drop = oc.normalize(drop)[0]
    if drop not in objs:
        raise ValueError("drop object %r is not a summand" % (drop,))
    if not is_tilting(ctx, objs):
        raise ValueError("mutation requires a tilting set")
    almost = tuple(x for x in objs if x != drop)
    cycle = rotate_to(fan_of(ctx, almost), drop)
    new = cycle[pick % len(cycle)]
    return tuple(sorted(almost + (new,), key=lambda t: ctx.index[t]))


def mutation_graph(ctx: TiltingContext) -> Tuple[List[Tuple[Obj, ...]], List[set]]:
    """Facets and their adjacency (facets sharing all but one summand)."""
    facets = enumerate_tilting(ctx)
    nbrs = [set() for _ in facets]
    groups = {}
    for fi, facet in enumerate(facets):
        for drop in facet:
            groups.setdefault(tuple(x for x in facet if x != drop), []).append(fi)
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                nbrs[members[a]].add(members[b])
                nbrs[members[b]].add(members[a])
    return facets, nbrs


def mutation_graph_checks(ctx: TiltingContext) -> Dict[str, object]:
    """Vertex count, n*d-regularity and connectivity of the mutation graph."""
    facets, nbrs = mutation_graph(ctx)
    want = ctx.n * ctx.oc.d
    regular = all(len(s) == want for s in nbrs)
    seen = set()
    if facets:
        queue = [0]
        seen.add(0)
        while queue:
            v = queue.pop()
            for w in nbrs[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return {"vertices": len(facets), "degree": want, "regular": regular,
            "connected": len(seen) == len(facets)}
