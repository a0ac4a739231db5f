import pytest

from dcluster.orbit import OrbitCategory
from dcluster.quiver import coxeter_data, fomin_reading_count, parse_quiver
from dcluster.reps import ModuleCategory
from dcluster.tilting import (TiltingContext, classify, complete_to_tilting,
                              enumerate_tilting, is_maximal_rigid, is_rigid,
                              is_tilting, maximal_rigid_sets, verify_equivalence)

_cache = {}


def ctx(diagram, rank, d, p=101):
    key = (diagram, rank, d, p)
    if key not in _cache:
        q = parse_quiver(diagram, rank)
        _cache[key] = TiltingContext(OrbitCategory(ModuleCategory(q, p=p), d))
    return _cache[key]


FACETS = [
    ("A", 1, 1, 2), ("A", 1, 2, 3), ("A", 1, 3, 4),
    ("A", 2, 1, 5), ("A", 2, 2, 12), ("A", 2, 3, 22),
    ("A", 3, 1, 14), ("A", 3, 2, 55), ("A", 3, 3, 140),
    ("D", 4, 1, 50), ("D", 4, 2, 336), ("D", 4, 3, 1210),
]


@pytest.mark.parametrize("diagram,rank,d,count", FACETS)
def test_tilting_counts_match_product_formula(diagram, rank, d, count):
    c = ctx(diagram, rank, d)
    tiltings = enumerate_tilting(c)
    assert len(tiltings) == count
    q = parse_quiver(diagram, rank)
    assert fomin_reading_count(q, d) == count
    assert len(set(tiltings)) == count
    for t in tiltings:
        assert len(t) == rank


@pytest.mark.parametrize("diagram,rank,d", [
    ("A", 2, 1), ("A", 2, 2), ("A", 2, 3),
    ("A", 3, 1), ("A", 3, 2), ("A", 3, 3),
    ("D", 4, 1), ("D", 4, 2), ("D", 4, 3),
])
def test_three_rigidity_notions_agree(diagram, rank, d):
    report = verify_equivalence(ctx(diagram, rank, d))
    assert report["ok"], report


def test_a1_facets_are_singletons():
    for d in (1, 2, 3):
        c = ctx("A", 1, d)
        cliques = maximal_rigid_sets(c)
        assert len(cliques) == d + 1
        assert all(bin(m).count("1") == 1 for m in cliques)


def test_frozen_rigid_pair_a2_d2():
    # the pair {(1,0) at shift 0, (0,1) at shift 1} is rigid and tilting
    c = ctx("A", 2, 2)
    pair = [((1, 0), 0), ((0, 1), 1)]
    assert c.oc.ext_dim(pair[0], pair[1], 1) == 0
    assert c.oc.ext_dim(pair[1], pair[0], 1) == 0
    assert is_rigid(c, pair)
    flags = classify(c, pair)
    assert flags == {"rigid": True, "maximal": True, "complete": True, "tilting": True}
    assert tuple(sorted(pair, key=c.index.get)) in enumerate_tilting(c)


def test_frozen_singleton_classification_a2_d2():
    c = ctx("A", 2, 2)
    single = [((1, 0), 0)]
    flags = classify(c, single)
    assert flags == {"rigid": True, "maximal": False, "complete": False, "tilting": False}


def test_greedy_completion_a2_d2():
    # ((1,1),0) is the first canonical object compatible with ((1,0),0); the
    # wide-window orbit sums confirm all intermediate Ext groups vanish.
    c = ctx("A", 2, 2)
    done = complete_to_tilting(c, [((1, 0), 0)])
    assert done == (((1, 0), 0), ((1, 1), 0))
    for k in (1, 2):
        assert c.oc.hom_dim_wide(((1, 0), 0), ((1, 1), k)) == 0
        assert c.oc.hom_dim_wide(((1, 1), 0), ((1, 0), k)) == 0
    assert is_tilting(c, done)


def test_completion_from_every_singleton():
    for diagram, rank, d in [("A", 2, 1), ("A", 2, 2), ("A", 3, 1), ("D", 4, 1)]:
        c = ctx(diagram, rank, d)
        for x in c.objects:
            t = complete_to_tilting(c, [x])
            assert x in t
            assert len(t) == rank
            assert is_tilting(c, t)


def test_completion_rejects_non_rigid():
    c = ctx("A", 2, 1)
    bad = [((1, 0), 0), ((0, 1), 0)]
    assert not is_rigid(c, bad)
    with pytest.raises(ValueError):
        complete_to_tilting(c, bad)


def test_every_tilting_is_maximal_and_closed():
    c = ctx("A", 3, 2)
    for t in enumerate_tilting(c)[::7]:
        assert is_maximal_rigid(c, t)
        assert is_tilting(c, t)
        for i in range(len(t)):
            sub = t[:i] + t[i + 1:]
            flags = classify(c, sub)
            assert flags["rigid"]
            assert not flags["maximal"] and not flags["tilting"] and not flags["complete"]


def test_counts_stable_across_primes():
    a = enumerate_tilting(ctx("A", 2, 2, p=101))
    b = enumerate_tilting(ctx("A", 2, 2, p=2))
    assert a == b
    assert len(enumerate_tilting(ctx("A", 3, 1, p=2))) == 14
