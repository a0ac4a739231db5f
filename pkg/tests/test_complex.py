import json

import pytest

from dcluster.complex import (ClusterComplex, build_complex, colored_roots,
                              f_vector, f_vector_text, facet_adjacency,
                              facet_stats, gamma, gamma_is_bijection, to_dot,
                              to_json)
from dcluster.mutation import mutation_graph
from dcluster.orbit import OrbitCategory
from dcluster.quiver import coxeter_data, parse_quiver
from dcluster.reps import ModuleCategory
from dcluster.tilting import TiltingContext, enumerate_tilting, is_rigid

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


def test_gamma_frozen_a2_d2():
    oc = ctx("A", 2, 2).oc
    assert gamma(oc, ((1, 0), 1)) == ((1, 0), 2, "positive")
    assert gamma(oc, ((0, 1), 2)) == ((0, 1), 1, "negative-simple")
    assert gamma(oc, ((1, 1), 0)) == ((1, 1), 1, "positive")


def test_gamma_frozen_any_d():
    for d in (1, 2, 3):
        oc = ctx("A", 2, d).oc
        assert gamma(oc, ((1, 1), 0)) == ((1, 1), 1, "positive")


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_gamma_bijection(diagram, rank, d):
    oc = ctx(diagram, rank, d).oc
    assert gamma_is_bijection(oc)
    target = colored_roots(oc)
    assert len(target) == d * len(oc.cat.roots) + rank
    negatives = [lab for lab in (gamma(oc, x) for x in oc.objects())
                 if lab[2] == "negative-simple"]
    assert len(negatives) == rank
    assert all(color == 1 and sum(root) == 1 for root, color, _ in negatives)


FVECTORS = [
    ("A", 1, 2, [1, 3]),
    ("A", 2, 1, [1, 5, 5]),
    ("A", 2, 2, [1, 8, 12]),
    ("A", 2, 3, [1, 11, 22]),
    ("A", 3, 1, [1, 9, 21, 14]),
    ("A", 3, 2, [1, 15, 55, 55]),
    ("D", 4, 1, [1, 16, 66, 100, 50]),
]


@pytest.mark.parametrize("diagram,rank,d,fv", FVECTORS)
def test_f_vector_frozen(diagram, rank, d, fv):
    c = ctx(diagram, rank, d)
    cpx = build_complex(c)
    assert f_vector(cpx) == fv
    assert fv[1] == len(cpx.vertices)
    assert fv[-1] == len(cpx.facets)


def test_f_vector_counts_rigid_subsets():
    c = ctx("A", 2, 2)
    from itertools import combinations
    fv = f_vector(build_complex(c))
    for size in range(c.n + 1):
        byhand = sum(1 for sub in combinations(c.objects, size) if is_rigid(c, sub))
        assert fv[size] == byhand


def test_sphere_euler_characteristics():
    # d = 1 complexes triangulate spheres
    fv = f_vector(build_complex(ctx("A", 3, 1)))
    assert fv[1] - fv[2] + fv[3] == 2
    fv = f_vector(build_complex(ctx("D", 4, 1)))
    assert fv[1] - fv[2] + fv[3] - fv[4] == 0


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_facet_stats(diagram, rank, d):
    c = ctx(diagram, rank, d)
    stats = facet_stats(build_complex(c))
    assert stats["pure"]
    assert stats["codim1_in_d_plus_1"]
    assert stats["codim1_incidence"] == {d + 1: stats["codim1_faces"]}
    assert stats["colors_ok"]
    assert stats["facets"] == len(enumerate_tilting(c))


def test_facet_stats_frozen_a2_d1():
    stats = facet_stats(build_complex(ctx("A", 2, 1)))
    assert stats["facets"] == 5
    assert stats["codim1_faces"] == 5
    assert stats["codim1_incidence"] == {2: 5}


def _positive_count(q, d):
    data = coxeter_data(q)
    num = den = 1
    for e in data.exponents:
        num *= d * data.h + e - 1
        den *= e + 1
    assert num % den == 0
    return num // den


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_positive_part(diagram, rank, d):
    c = ctx(diagram, rank, d)
    pos = build_complex(c, positive_only=True)
    oc = c.oc
    assert len(pos.vertices) == d * len(oc.cat.roots)
    assert all(oc.degree(x) < d for x in pos.vertices)
    assert all(lab[2] == "positive" for lab in pos.labels.values())
    full = set(enumerate_tilting(c))
    assert set(pos.facets) <= full
    assert len(pos.facets) == _positive_count(oc.cat.q, d)
    with pytest.raises(ValueError):
        facet_stats(pos)


def test_positive_part_frozen():
    assert len(build_complex(ctx("A", 2, 2), positive_only=True).facets) == 7
    assert len(build_complex(ctx("A", 3, 1), positive_only=True).facets) == 5


@pytest.mark.parametrize("diagram,rank,d", CASES)
def test_facet_adjacency_is_mutation_graph(diagram, rank, d):
    c = ctx(diagram, rank, d)
    cpx = build_complex(c)
    facets, nbrs = mutation_graph(c)
    assert cpx.facets == facets
    assert facet_adjacency(cpx.facets) == nbrs


def test_json_export():
    c = ctx("A", 2, 2)
    cpx = build_complex(c)
    data = to_json(cpx)
    assert data["schema"] == "cluster-complex"
    assert data["schema_version"] == 1
    assert data["diagram"] == "A" and data["rank"] == 2 and data["d"] == 2
    assert data["f_vector"] == [1, 8, 12]
    assert len(data["vertices"]) == 8 and len(data["facets"]) == 12
    rec = next(v for v in data["vertices"] if v["root"] == [1, 0] and v["shift"] == 1)
    assert rec["label"] == {"root": [1, 0], "color": 2, "sign": "positive"}
    # serializes deterministically
    assert json.dumps(data, sort_keys=True) == json.dumps(to_json(build_complex(c)),
                                                          sort_keys=True)


def test_dot_export():
    cpx = build_complex(ctx("A", 2, 1))
    dot = to_dot(cpx)
    assert dot.startswith("graph complex {")
    assert dot.count(" -- ") == 5
    assert dot.count("label=") == 5


def test_f_vector_text():
    assert f_vector_text(build_complex(ctx("A", 2, 2))) == "1 8 12\n"
