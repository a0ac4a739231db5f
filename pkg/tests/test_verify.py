"""Tests for the check registry, report determinism, and the facet cache."""

from __future__ import annotations

import json

import pytest

from dcluster.verify import (CHECK_IDS, CHECKS, cache_key, load_context,
                             report_to_json, run_checks, save_cache)

_cache = {}


def ctx(diagram, rank, d):
    key = (diagram, rank, d)
    if key not in _cache:
        _cache[key] = load_context(diagram, rank, d)
    return _cache[key]


def report(diagram, rank, d, only=None):
    rep, _ = run_checks(ctx(diagram, rank, d), only=only)
    return rep


def entry(rep, cid):
    matches = [c for c in rep["checks"] if c["id"] == cid]
    assert len(matches) == 1
    return matches[0]


def test_all_checks_pass_small_grid():
    for (dg, rk, d) in [("A", 1, 1), ("A", 1, 3), ("A", 2, 1), ("A", 2, 2),
                        ("A", 2, 3), ("A", 3, 1), ("A", 3, 2), ("D", 4, 1)]:
        rep = report(dg, rk, d)
        assert rep["summary"]["fail"] == 0, (dg, rk, d, rep["checks"])


def test_every_check_appears_once_in_order():
    rep = report("A", 2, 1)
    assert [c["id"] for c in rep["checks"]] == CHECK_IDS
    assert len(set(CHECK_IDS)) == len(CHECK_IDS) == 24


def test_gating_d1():
    rep = report("A", 3, 1)
    gated2 = ["degree-hom-constraints", "window-hom-reduction",
              "complement-degrees", "degree-profile", "middle-terms-disjoint"]
    gated3 = ["summand-hom-onedirectional", "successor-hom-vanishing"]
    for cid in gated2 + gated3:
        e = entry(rep, cid)
        assert e["status"] == "n/a"
        assert "requires d >= " in e["reason"]
    assert rep["summary"]["n/a"] == 7


def test_gating_d2():
    rep = report("A", 2, 2)
    assert entry(rep, "degree-profile")["status"] == "pass"
    assert entry(rep, "successor-hom-vanishing")["status"] == "n/a"
    assert rep["summary"]["n/a"] == 2


def test_gating_d3_nothing_gated():
    rep = report("A", 2, 3)
    assert rep["summary"]["n/a"] == 0
    assert rep["summary"]["pass"] == 24


def test_frozen_instance_counts_a2_d1():
    rep = report("A", 2, 1)
    assert entry(rep, "euler-identity")["instances"] == 9
    assert entry(rep, "fundamental-domain-size")["instances"] == 5
    assert entry(rep, "cy-duality")["instances"] == 75
    assert entry(rep, "rigidity-equivalence")["instances"] == 5
    cc = entry(rep, "complement-count")
    assert cc["instances"] == 5 and cc["complements_each"] == 2
    assert entry(rep, "facet-count-formula")["count"] == 5
    assert entry(rep, "mutation-regular")["degree"] == 2


def test_exchange_team_converse_modes():
    assert entry(report("A", 2, 2), "exchange-team-fan")["converse"] == "exhaustive"
    assert entry(report("D", 4, 3), "exchange-team-fan")["converse"] == "fans-only"


def test_statements_have_no_citation_text():
    for cid, statement, _, _ in CHECKS:
        low = statement.lower()
        for banned in ("thm", "theorem", "lemma", "prop", "cor", "section",
                       "paper", "spec"):
            assert banned not in low, (cid, banned)


def test_report_deterministic():
    a = report_to_json(run_checks(load_context("A", 3, 2))[0])
    b = report_to_json(run_checks(load_context("A", 3, 2))[0])
    assert a == b
    assert "time" not in json.loads(a)


def test_report_config_block():
    rep = report("A", 2, 2)
    assert rep["config"] == {"diagram": "A", "rank": 2,
                             "orientation": [[0, 1]], "d": 2, "prime": 101}
    assert rep["schema"] == "verification-report"
    assert rep["schema_version"] == 1


def test_check_selection():
    rep = report("A", 2, 1, only=["cy-duality", "facet-count-formula"])
    assert [c["id"] for c in rep["checks"]] == ["cy-duality", "facet-count-formula"]
    with pytest.raises(ValueError):
        run_checks(ctx("A", 2, 1), only=["no-such-check"])


def test_cache_roundtrip(tmp_path):
    c1 = load_context("A", 3, 2)
    r1, _ = run_checks(c1)
    save_cache(c1, str(tmp_path))
    c2 = load_context("A", 3, 2, cache_dir=str(tmp_path))
    assert c2.__dict__.get("_tilting") is not None
    assert len(c2._tilting) == 55
    assert c2._tilting == c1._tilting
    r2, _ = run_checks(c2)
    assert report_to_json(r1) == report_to_json(r2)


def test_cache_miss_on_other_config(tmp_path):
    c1 = load_context("A", 3, 2)
    save_cache(c1, str(tmp_path))
    c2 = load_context("A", 3, 3, cache_dir=str(tmp_path))
    assert c2.__dict__.get("_tilting") is None


def test_cache_key_depends_on_orientation():
    a = ctx("A", 3, 1)
    b = load_context("A", 3, 1, orientation=[[1, 0], [1, 2]])
    ka = cache_key(a.oc.cat.q, 1, 101)
    kb = cache_key(b.oc.cat.q, 1, 101)
    assert ka != kb


def test_cache_file_contents(tmp_path):
    c1 = load_context("A", 2, 1)
    path = save_cache(c1, str(tmp_path))
    data = json.loads(path.read_text())
    assert data["schema"] == "tilting-cache"
    assert data["diagram"] == "A" and data["rank"] == 2 and data["d"] == 1
    assert len(data["facets"]) == 5
    assert all(len(f) == 2 for f in data["facets"])


def test_custom_orientation_verifies():
    c = load_context("A", 3, 1, orientation=[[1, 0], [1, 2]])
    rep, _ = run_checks(c)
    assert rep["summary"]["fail"] == 0
    facet_entry = [e for e in rep["checks"] if e["id"] == "facet-count-formula"][0]
    assert facet_entry["count"] == 14
