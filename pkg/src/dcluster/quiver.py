"""Simply-laced Dynkin diagrams, quiver orientations, roots and Coxeter data.

Vertices are 0-based.  Canonical layouts:

  A_n : chain 0 - 1 - ... - (n-1)
  D_n : chain 0 - ... - (n-3), plus edges (n-3, n-2) and (n-3, n-1)
  E_n : chain 0 - ... - (n-2), plus edge (2, n-1)          (n = 6, 7, 8)

The default orientation points every edge toward the branch vertex (for A_n,
along the chain: 0 -> 1 -> ... -> n-1).  Any other orientation of the same
underlying diagram is accepted.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

Root = Tuple[int, ...]


def dynkin_edges(diagram: str, rank: int) -> List[Tuple[int, int]]:
    """Undirected edges of the Dynkin diagram."""
    if diagram == "A":
        if rank < 1:
            raise ValueError("type A needs rank >= 1")
        return [(i, i + 1) for i in range(rank - 1)]
    if diagram == "D":
        if rank < 4:
            raise ValueError("type D needs rank >= 4")
        edges = [(i, i + 1) for i in range(rank - 3)]
        edges += [(rank - 3, rank - 2), (rank - 3, rank - 1)]
        return edges
    if diagram == "E":
        if rank not in (6, 7, 8):
            raise ValueError("type E needs rank 6, 7 or 8")
        edges = [(i, i + 1) for i in range(rank - 2)]
        edges.append((2, rank - 1))
        return edges
    raise ValueError("unknown diagram %r" % (diagram,))


def branch_vertex(diagram: str, rank: int) -> Optional[int]:
    if diagram == "D":
        return rank - 3
    if diagram == "E":
        return 2
    return None


def default_orientation(diagram: str, rank: int) -> List[Tuple[int, int]]:
    """Default arrows: toward the branch vertex (A_n: along the chain)."""
    edges = dynkin_edges(diagram, rank)
    b = branch_vertex(diagram, rank)
    if b is None:
        return list(edges)
    # orient each edge from the endpoint farther from b to the nearer one
    dist = {b: 0}
    adj: Dict[int, List[int]] = {v: [] for v in range(rank)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    queue = deque([b])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return [(u, v) if dist[u] > dist[v] else (v, u) for u, v in edges]


class DynkinQuiver:
    """A Dynkin diagram with a chosen orientation of its edges."""

    def __init__(self, diagram: str, rank: int,
                 arrows: Optional[Sequence[Tuple[int, int]]] = None):
        self.diagram = diagram
        self.rank = rank
        edges = dynkin_edges(diagram, rank)
        if arrows is None:
            arrows = default_orientation(diagram, rank)
        arrows = [(int(s), int(t)) for s, t in arrows]
        want = {frozenset(e) for e in edges}
        got = [frozenset(a) for a in arrows]
        if len(arrows) != len(edges) or set(got) != want or len(set(got)) != len(got):
            raise ValueError("arrows do not orient the %s_%d diagram exactly once each"
                             % (diagram, rank))
        self.arrows: Tuple[Tuple[int, int], ...] = tuple(arrows)

    @property
    def n(self) -> int:
        return self.rank

    def key(self) -> tuple:
        return (self.diagram, self.rank, self.arrows)

    def __repr__(self):
        return "DynkinQuiver(%r, %d, %r)" % (self.diagram, self.rank, list(self.arrows))

    def arrows_out(self, v: int) -> List[Tuple[int, int]]:
        """(arrow index, target) pairs for arrows leaving v."""
        return [(i, t) for i, (s, t) in enumerate(self.arrows) if s == v]

    def arrows_in(self, v: int) -> List[Tuple[int, int]]:
        return [(i, s) for i, (s, t) in enumerate(self.arrows) if t == v]


def parse_quiver(diagram: str, rank: int, orientation=None) -> DynkinQuiver:
    """Build a quiver; orientation is None/'default' or a list of [s, t] pairs."""
    if orientation in (None, "default"):
        return DynkinQuiver(diagram, rank)
    return DynkinQuiver(diagram, rank, [tuple(a) for a in orientation])


def directed_paths(q: DynkinQuiver) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    """All directed paths as {(u, v): arrow index sequence u ~> v}.

    The underlying graph is a tree so there is at most one path per pair;
    (v, v) maps to the empty path.
    """
    paths: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for u in range(q.rank):
        paths[(u, u)] = ()
        queue = deque([u])
        while queue:
            w = queue.popleft()
            for i, t in q.arrows_out(w):
                if (u, t) not in paths:
                    paths[(u, t)] = paths[(u, w)] + (i,)
                    queue.append(t)
    return paths


def euler_matrix(q: DynkinQuiver) -> np.ndarray:
    """Matrix E of the Euler form: <a, b> = a^T E b, E = I - (arrow counts)."""
    e = np.eye(q.rank, dtype=np.int64)
    for s, t in q.arrows:
        e[s, t] -= 1
    return e


def euler_form(q: DynkinQuiver, a: Sequence[int], b: Sequence[int]) -> int:
    e = euler_matrix(q)
    return int(np.asarray(a, dtype=np.int64) @ e @ np.asarray(b, dtype=np.int64))


def cartan_matrix(q: DynkinQuiver) -> np.ndarray:
    e = euler_matrix(q)
    return e + e.T


def positive_roots(q: DynkinQuiver) -> List[Root]:
    """Positive roots in the simple-root basis, sorted by (height, coords)."""
    c = cartan_matrix(q)
    found = set()
    frontier = [tuple(int(x) for x in row) for row in np.eye(q.rank, dtype=np.int64)]
    while frontier:
        nxt = []
        for beta in frontier:
            if beta in found:
                continue
            found.add(beta)
            bv = np.array(beta, dtype=np.int64)
            for i in range(q.rank):
                new = bv.copy()
                new[i] -= int(c[i] @ bv)
                if new.min() >= 0 and new.max() > 0:
                    t = tuple(int(x) for x in new)
                    if t not in found:
                        nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda r: (sum(r), r))


class CoxeterData:
    """Coxeter transformation, Coxeter number and exponents of the quiver."""

    def __init__(self, matrix: np.ndarray, h: int, exponents: Tuple[int, ...]):
        self.matrix = matrix
        self.h = h
        self.exponents = exponents

    def __repr__(self):
        return "CoxeterData(h=%d, exponents=%r)" % (self.h, list(self.exponents))


def coxeter_matrix(q: DynkinQuiver) -> np.ndarray:
    """Coxeter transformation Phi = -E^{-T} ... acting as [tau M] = Phi [M]."""
    e = sympy.Matrix(euler_matrix(q).tolist())
    phi = -e.inv() * e.T
    return np.array(phi.tolist(), dtype=np.int64)


def coxeter_data(q: DynkinQuiver) -> CoxeterData:
    phi = coxeter_matrix(q)
    power = np.eye(q.rank, dtype=np.int64)
    h = 0
    for k in range(1, 100):
        power = power @ phi
        if np.array_equal(power, np.eye(q.rank, dtype=np.int64)):
            h = k
            break
    if h == 0:
        raise RuntimeError("Coxeter transformation has unexpected infinite order")
    x = sympy.Symbol("x")
    charpoly = sympy.Matrix(phi.tolist()).charpoly(x).as_expr()
    _, factors = sympy.factor_list(charpoly)
    exponents: List[int] = []
    for fac, mult in factors:
        k = None
        for cand in range(1, h + 1):
            if sympy.expand(fac - sympy.cyclotomic_poly(cand, x)) == 0:
                k = cand
                break
        if k is None:
            raise RuntimeError("charpoly factor %s is not cyclotomic" % fac)
        for r in range(1, k + 1):
            if math.gcd(r, k) == 1:
                exponents.extend([h * r // k] * mult)
    exponents.sort()
    if len(exponents) != q.rank or sum(exponents) != q.rank * h // 2:
        raise RuntimeError("exponent bookkeeping failed: %r" % exponents)
    return CoxeterData(phi, h, tuple(exponents))


def fomin_reading_count(q: DynkinQuiver, d: int) -> int:
    """prod_i (d h + e_i + 1) / (e_i + 1), as an exact integer."""
    cox = coxeter_data(q)
    total = Fraction(1)
    for e in cox.exponents:
        total *= Fraction(d * cox.h + e + 1, e + 1)
    if total.denominator != 1:
        raise RuntimeError("facet-count product is not an integer: %s" % total)
    return int(total)
