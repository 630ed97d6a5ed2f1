from __future__ import annotations

import json

import pytest

from helpers import random_graph
from lollipop_spectra.canon import canonical_graph6
from lollipop_spectra.charpoly import charpoly, charpoly_family
from lollipop_spectra.dss import (
    FingerprintCache,
    Universe,
    case_family_check,
    classify_case_family,
    cospectral_mates,
    ds_lollipop_sweep,
    lollipop_pairwise_scan,
    lollipops_with_n,
    saltire_check,
    saltire_pair,
    structural_consequence_check,
    universe_fingerprints,
)
from lollipop_spectra.errors import CapExceededError, NotCospectralError
from lollipop_spectra.families import build, gamma, lollipop
from lollipop_spectra.graph import Graph, decode_graph6


class TestFingerprints:
    def test_isomorphic_graphs_share_charpoly(self, rng):
        for _ in range(1000):
            g = random_graph(rng, rng.randint(1, 9), 0.4)
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert charpoly(g.relabel(perm)) == charpoly(g)

    def test_cache_file_round_trip(self, tmp_path):
        path = tmp_path / "fp.tsv"
        cache = FingerprintCache(path)
        g = build(lollipop(4, 2))
        g6 = canonical_graph6(g)
        fp = cache.fingerprint(g6, g)
        cache.flush()
        line = path.read_text().strip()
        assert line == g6 + "\t" + ",".join(str(c) for c in fp)
        again = FingerprintCache(path)
        assert g6 in again and again.fingerprint(g6) == fp

    def test_cache_is_used_for_lookups(self, tmp_path):
        path = tmp_path / "fp.tsv"
        path.write_text("Dl_\t1,2,3\n")
        cache = FingerprintCache(path)
        assert cache.fingerprint("Dl_") == (1, 2, 3)

    def test_universe_with_cache(self, tmp_path):
        path = tmp_path / "fp.tsv"
        u = Universe(5, 4, connected_only=True)
        rows = universe_fingerprints(u, FingerprintCache(path))
        assert len(rows) == 3  # the trees on five vertices
        assert len(path.read_text().splitlines()) == 3

    def test_memoized_universe_still_fills_cache_file(self, tmp_path):
        u = Universe(5, 5)
        universe_fingerprints(u)
        path = tmp_path / "fp.tsv"
        rows = universe_fingerprints(u, FingerprintCache(path))
        assert len(path.read_text().splitlines()) == len(rows)


class TestCospectralMates:
    def test_l43_determined(self):
        rep = cospectral_mates(lollipop(4, 3))
        assert rep.verdict == "determined"
        assert rep.mates == [canonical_graph6(build(lollipop(4, 3)))]
        assert rep.universe == Universe(7, 7)

    def test_l52_determined(self):
        assert cospectral_mates(lollipop(5, 2)).verdict == "determined"

    def test_saltire_pair(self):
        c4k1, star = saltire_pair()
        assert charpoly(c4k1) == charpoly(star)
        rep = saltire_check()
        assert rep.verdict == "not-determined"
        assert rep.foreign_mates == [canonical_graph6(star)]

    def test_report_json_shape(self):
        d = cospectral_mates(lollipop(3, 2)).to_dict()
        assert set(d) == {"target", "universe", "class_count", "mates", "verdict", "wall_time_ms"}
        assert d["universe"] == {"n": 5, "m_filter": 5, "connected_only": False}
        json.dumps(d)

    def test_full_universe_small(self):
        rep = cospectral_mates(lollipop(3, 3), full_universe=True)
        assert rep.universe.m_filter is None and rep.class_count == 156
        assert rep.verdict == "determined"

    def test_caps(self):
        with pytest.raises(CapExceededError):
            cospectral_mates(lollipop(6, 3), full_universe=True)
        with pytest.raises(CapExceededError):
            cospectral_mates(lollipop(6, 5))

    def test_sweep_small(self):
        reps = ds_lollipop_sweep(5, 7)
        assert len(reps) == sum(len(lollipops_with_n(n)) for n in range(5, 8))
        assert all(r.verdict == "determined" for r in reps)

    def test_cospectral_trees_on_eight_vertices(self):
        # the double star S(3,3) and K_{1,4} with a P_3 hanging off its centre
        a = Graph(8, [(0, 6), (1, 6), (2, 6), (3, 7), (4, 7), (5, 7), (6, 7)])
        b = Graph(8, [(0, 5), (1, 7), (2, 7), (3, 7), (4, 7), (5, 6), (6, 7)])
        assert charpoly(a) == charpoly(b)
        rep = cospectral_mates(a)
        assert rep.verdict == "not-determined"
        assert canonical_graph6(b) in rep.foreign_mates


class TestLollipopScan:
    def test_n40(self):
        rep = lollipop_pairwise_scan(40)
        assert rep.verdict == "verified"
        assert rep.lollipops == sum(n - 2 for n in range(3, 41))

    def test_n10_direct(self):
        polys = [charpoly_family(s) for s in lollipops_with_n(10)]
        assert len(set(polys)) == len(polys) == 8

    def test_n3_vacuous(self):
        rep = lollipop_pairwise_scan(3)
        assert rep.lollipops == 1 and rep.pairs_compared == 0 and rep.verdict == "verified"

    def test_cap(self):
        with pytest.raises(CapExceededError):
            lollipop_pairwise_scan(61)


class TestStructure:
    def test_l4k_self_check(self):
        for k in range(1, 8):
            rep = structural_consequence_check(build(lollipop(4, k)), lollipop(4, k))
            assert rep["verdict"] == "verified" and rep["isomorphic_to_target"]
            checks = {c["check"]: c["actual"] for c in rep["checks"]}
            assert checks["has 4-cycle"] is True and checks["connected"] and checks["unicyclic"]

    def test_odd_lollipop_has_no_4_cycle(self):
        rep = structural_consequence_check(build(lollipop(7, 2)), lollipop(7, 2))
        checks = {c["check"]: c["actual"] for c in rep["checks"]}
        assert checks["has 4-cycle"] is False and rep["verdict"] == "verified"

    def test_mates_of_odd_lollipops(self):
        for n in range(5, 9):
            for spec in lollipops_with_n(n):
                if spec.params[0] % 2 == 0:
                    continue
                for g6 in cospectral_mates(spec).mates:
                    rep = structural_consequence_check(decode_graph6(g6), spec)
                    assert rep["verdict"] == "verified"

    def test_saltire_structure(self):
        c4k1, star = saltire_pair()
        rep = structural_consequence_check(star, c4k1)
        assert not rep["isomorphic_to_target"]
        assert rep["verdict"] == "verified"

    def test_not_cospectral(self):
        with pytest.raises(NotCospectralError):
            structural_consequence_check(build(lollipop(4, 2)), lollipop(3, 3))


class TestCaseFamilies:
    def test_classification(self):
        assert classify_case_family(build(gamma(6, 2, 3))) == "Gamma"
        assert classify_case_family(build(lollipop(6, 3))) is None
        # three degree-3 vertices on a 6-cycle
        g3 = Graph(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (2, 7), (4, 8)])
        assert classify_case_family(g3) == "G3"
        g2 = Graph(10, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (2, 7), (7, 8), (7, 9)])
        assert classify_case_family(g2) == "G2"
        g1 = Graph(11, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 6), (6, 7), (6, 8), (8, 9), (8, 10)])
        assert classify_case_family(g1) == "G1"

    def test_no_case_family_graph_matches_l4(self):
        rep = case_family_check(12)
        assert rep["verdict"] == "verified"
        assert set(rep["parameters"]["graphs_per_family"]) == {"G1", "G2", "G3", "Gamma"}
