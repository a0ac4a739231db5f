import pytest

from dcluster.mutation import (almost_completes, approximation_mults, complements,
                               cyclic_form, degree_bounds_instances,
                               degree_profile_instances, delta_chains_nonzero,
                               delta_classes, exchange_teams_exhaustive,
                               ext_pattern_ok, fan_degrees, fan_of, fan_triangles,
                               hom_one_directional, is_exchange_team,
                               left_approximation, middle_supports_disjoint,
                               middle_union_rigid, mutate, mutation_graph,
                               mutation_graph_checks, order_into_fan,
                               right_approximation, rotate_to,
                               successor_hom_vanishing)
from dcluster.orbit import OrbitCategory
from dcluster.quiver import parse_quiver
from dcluster.reps import ModuleCategory
from dcluster.tilting import TiltingContext, enumerate_tilting, is_tilting

_cache = {}


def ctx(diagram, rank, d, p=101):
    key = (diagram, rank, d, p)
    if key not in _cache:
        q = parse_quiver(diagram, rank)
        _cache[key] = TiltingContext(OrbitCategory(ModuleCategory(q, p=p), d))
    return _cache[key]


CASES = [
    ("A", 1, 1), ("A", 1, 2), ("A", 1, 3),
    ("A", 2, 1), ("A", 2, 2), ("A", 2, 3),
    ("A", 3, 1), ("A", 3, 2),
    ("D", 4, 1),
]

# A_2 with the arrow 0 -> 1: projectives (1,1), (0,1); the third root (1,0)
# is the simple at the source.
P1, P2, S1 = ((1, 1), 0), ((0, 1), 0), ((1, 0), 0)


def test_complements_frozen_a2():
    c = ctx("A", 2, 1)
    assert complements(c, [P1]) == [P2, S1]
    assert complements(c, [P2]) == [P1, ((1, 1), 1)]


def test_complements_reject_non_rigid():
    c = ctx("A", 2, 1)
    with pytest.raises(ValueError):
        complements(c, [P2, S1])


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_every_almost_complete_has_d_plus_one_complements(diagram, rank, d):
    c = ctx(diagram, rank, d)
    almosts = almost_completes(c)
    assert almosts
    for a in almosts:
        comps = complements(c, a)
        assert len(comps) == d + 1
        for y in comps:
            assert is_tilting(c, a + (y,))


def test_fan_frozen_a2_d1():
    c = ctx("A", 2, 1)
    fan = order_into_fan(c, complements(c, [P1]), start=P2)
    assert fan == (P2, S1)
    assert fan_of(c, [P1]) == (P2, S1)


def test_fan_frozen_a1_d2():
    c = ctx("A", 1, 2)
    fan = fan_of(c, ())
    assert fan == (((1,), 0), ((1,), 2), ((1,), 1))
    assert fan_degrees(c, fan) == (0, 2, 1)


def test_order_into_fan_rejects_bad_start():
    c = ctx("A", 2, 1)
    with pytest.raises(ValueError):
        order_into_fan(c, complements(c, [P1]), start=P1)


def test_rotate_and_cyclic_form():
    c = ctx("A", 2, 1)
    fan = fan_of(c, [P1])
    assert rotate_to(fan, S1) == (S1, P2)
    assert cyclic_form(c, (S1, P2)) == (P2, S1)


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_fan_is_single_cycle_of_complements(diagram, rank, d):
    c = ctx(diagram, rank, d)
    for a in almost_completes(c):
        fan = fan_of(c, a)
        assert len(fan) == d + 1
        assert set(fan) == set(complements(c, a))


def test_right_approximation_frozen_a2_d1():
    c = ctx("A", 2, 1)
    # the quotient map P1 ->> S1 is the whole approximation of S1 ...
    assert approximation_mults(c, [P1], S1) == {P1: 1}
    # ... while nothing maps to the third complement: its triangle has an
    # empty middle term and the connecting map is an isomorphism.
    assert approximation_mults(c, [P1], P2) == {}


def test_left_and_right_routes_agree_a2_d1():
    c = ctx("A", 2, 1)
    right = right_approximation(c, (P1,), S1)
    left = left_approximation(c, (P1,), P2)
    assert {t: len(v) for t, v in right.items() if v} == {P1: 1}
    assert {t: len(v) for t, v in left.items() if v} == {P1: 1}


def test_fan_triangles_frozen_a2_d1():
    c = ctx("A", 2, 1)
    tris = fan_triangles(c, (P1,), fan_of(c, [P1]))
    assert tris[0] == {"target": P2, "source": S1, "mults": {}}
    assert tris[1] == {"target": S1, "source": P2, "mults": {P1: 1}}


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_fan_triangles_consistent(diagram, rank, d):
    c = ctx(diagram, rank, d)
    for a in almost_completes(c):
        fan = fan_of(c, a)
        tris = fan_triangles(c, a, fan)
        assert len(tris) == d + 1
        for tri in tris:
            assert all(m > 0 for m in tri["mults"].values())
            assert set(tri["mults"]) <= set(a)
        assert middle_union_rigid(c, fan, tris)


@pytest.mark.parametrize("diagram,rank,d", [c for c in CASES if c[2] >= 2])
def test_middle_supports_disjoint(diagram, rank, d):
    c = ctx(diagram, rank, d)
    for a in almost_completes(c):
        tris = fan_triangles(c, a, fan_of(c, a))
        assert middle_supports_disjoint(tris)


def test_delta_classes_and_chains_a2_d2():
    c = ctx("A", 2, 2)
    for a in almost_completes(c):
        fan = fan_of(c, a)
        deltas = delta_classes(c, fan)
        assert len(deltas) == 3
        for i, delta in enumerate(deltas):
            assert not c.oc.is_zero(delta)
        assert delta_chains_nonzero(c, fan, deltas)


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_every_fan_is_an_exchange_team(diagram, rank, d):
    c = ctx(diagram, rank, d)
    for a in almost_completes(c):
        fan = fan_of(c, a)
        assert ext_pattern_ok(c, fan)
        assert is_exchange_team(c, fan)


def test_backwards_homs_exist_at_d2():
    # the Ext pattern must not constrain plain Homs between distinct
    # members: these A_3 fans carry a nonzero Hom against the cycle
    c = ctx("A", 3, 2)
    oc = c.oc
    seen = 0
    for a in almost_completes(c):
        fan = fan_of(c, a)
        m = len(fan)
        for i in range(m):
            if oc.hom_dim(fan[i], fan[(i - 1) % m]):
                seen += 1
    assert seen > 0


@pytest.mark.parametrize("diagram,rank,d", [("A", 1, 1), ("A", 1, 2), ("A", 1, 3),
                                            ("A", 2, 1), ("A", 2, 2)])
def test_exchange_teams_are_exactly_fans(diagram, rank, d):
    c = ctx(diagram, rank, d)
    teams = set(exchange_teams_exhaustive(c))
    fans = {cyclic_form(c, fan_of(c, a)) for a in almost_completes(c)}
    assert teams == fans


def test_is_exchange_team_rejects_wrong_size():
    c = ctx("A", 2, 1)
    assert not is_exchange_team(c, (P1,))
    assert not is_exchange_team(c, (P1, P1))
    assert not is_exchange_team(c, (P1, P2, S1))


@pytest.mark.parametrize("diagram,rank,d", [c for c in CASES if c[2] >= 2])
def test_degree_bounds_and_profile(diagram, rank, d):
    c = ctx(diagram, rank, d)
    bounds = [0, 0]
    profile = [0, 0]
    for a in almost_completes(c):
        fan = fan_of(c, a)
        i, v = degree_bounds_instances(c, fan)
        bounds[0] += i
        bounds[1] += v
        i, v = degree_profile_instances(c, fan)
        profile[0] += i
        profile[1] += v
    assert bounds[0] > 0 and bounds[1] == 0
    assert profile[0] > 0 and profile[1] == 0


def test_degree_profile_two_piece_shape_a2_d2():
    c = ctx("A", 2, 2)
    seen = set()
    for a in almost_completes(c):
        degs = fan_degrees(c, fan_of(c, a))
        m = len(degs)
        for r in range(m):
            rot = tuple(degs[(r + i) % m] for i in range(m))
            if rot[0] == 0 and rot[1] != 0:
                seen.add(rot)
    # d = 2 allows exactly the profiles (0, 2, 1), (0, 1, 1) and (0, 1, 0)
    assert seen == {(0, 2, 1), (0, 1, 1), (0, 1, 0)}


@pytest.mark.parametrize("diagram,rank,d", [("A", 2, 3), ("A", 3, 3)])
def test_hom_vanishing_at_d3(diagram, rank, d):
    c = ctx(diagram, rank, d)
    for facet in enumerate_tilting(c):
        assert hom_one_directional(c, facet)
    for a in almost_completes(c):
        assert successor_hom_vanishing(c, fan_of(c, a))


def test_mutate_frozen_a2_d1():
    c = ctx("A", 2, 1)
    assert mutate(c, [P1, P2], P2) == (S1, P1)
    assert mutate(c, [S1, P1], S1) == (P2, P1)


def test_mutate_validates_input():
    c = ctx("A", 2, 1)
    with pytest.raises(ValueError):
        mutate(c, [P1, P2], S1)
    with pytest.raises(ValueError):
        mutate(c, [P2, S1], S1)


@pytest.mark.parametrize("diagram,rank,d", [("A", 2, 2), ("A", 3, 2), ("A", 2, 3)])
def test_mutate_walks_fan_and_returns(diagram, rank, d):
    c = ctx(diagram, rank, d)
    for facet in enumerate_tilting(c)[:6]:
        for drop in facet:
            for pick in range(1, d + 1):
                new = mutate(c, facet, drop, pick)
                assert is_tilting(c, new)
                assert new != facet
                added = [x for x in new if x not in facet]
                assert len(added) == 1
                back = mutate(c, new, added[0], d + 1 - pick)
                assert back == tuple(sorted(facet, key=lambda t: c.index[t]))


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_mutation_graph_regular_connected(diagram, rank, d):
    c = ctx(diagram, rank, d)
    checks = mutation_graph_checks(c)
    assert checks["vertices"] == len(enumerate_tilting(c))
    assert checks["degree"] == rank * d
    assert checks["regular"]
    assert checks["connected"]


def test_mutation_graph_pentagon():
    c = ctx("A", 2, 1)
    facets, nbrs = mutation_graph(c)
    assert len(facets) == 5
    assert all(len(s) == 2 for s in nbrs)
    # walk the 5-cycle
    seen = [0]
    prev, cur = None, 0
    for _ in range(5):
        nxt = [w for w in nbrs[cur] if w != prev]
        prev, cur = cur, nxt[0]
        seen.append(cur)
    assert cur == 0 and len(set(seen)) == 5


def test_mutation_agrees_with_graph_edges():
    c = ctx("A", 2, 2)
    facets, nbrs = mutation_graph(c)
    index = {f: i for i, f in enumerate(facets)}
    for fi, facet in enumerate(facets):
        reached = set()
        for drop in facet:
            for pick in range(1, c.oc.d + 1):
                reached.add(index[mutate(c, facet, drop, pick)])
        assert reached == nbrs[fi]
