"""End-to-end acceptance criteria, each with its time limit.

Every test records one ``criterion N: PASS|FAIL`` line, collected in the
"acceptance criteria" section of the pytest terminal summary.  Run alone
with ``pytest tests/test_acceptance.py -v``.
"""
from __future__ import annotations

import random

import networkx as nx
import numpy as np
import pytest

from helpers import brute_covering_walks, random_connected_graph, random_graph, to_nx
from lollipop_spectra import walks
from lollipop_spectra.canon import canonical_graph6
from lollipop_spectra.charpoly import (
    charpoly,
    charpoly_family,
    eval_rational,
    root_multiplicity_at_zero,
)
from lollipop_spectra.dss import (
    ds_lollipop_sweep,
    lollipop_pairwise_scan,
    lollipops_with_n,
    saltire_check,
    saltire_pair,
)
from lollipop_spectra.families import build, build_from_text, lollipop
from lollipop_spectra.graph import Graph
from lollipop_spectra.spectral import (
    BoundRanges,
    appendix_sign_suite,
    bound_suite,
    interlacing_check_exact,
    internal_path_edges,
    is_ttree,
    subdivision_check,
)
from lollipop_spectra.tables import compare_table
from lollipop_spectra.walks import (
    closed_walks,
    motif_decomposition,
    power_sum_4,
)

SEED = 20240601


def np_adjacency(g: Graph) -> np.ndarray:
    return np.array(g.adjacency_matrix(), dtype=np.int64).reshape(g.n, g.n)


def np_trace_power(g: Graph, k: int) -> int:
    if g.n == 0:
        return 0
    return int(np.trace(np.linalg.matrix_power(np_adjacency(g), k)))


def np_lambda1(g: Graph) -> float:
    return float(np.linalg.eigvalsh(np_adjacency(g).astype(float))[-1])


def violated(records) -> list:
    return [r for r in records if r.verdict != "verified"]


def clear_walk_caches() -> None:
    walks._covering_by_class.cache_clear()
    walks._algebraic_by_class.cache_clear()


def test_criterion_01_covering_walk_table(criterion):
    with criterion(1, "covering closed walk table, 48 cells, both methods", 10) as detail:
        clear_walk_caches()
        cells = compare_table("tab_marches")
        assert len(cells) == 48, f"{len(cells)} cells"
        wrong = [(c.motif, c.k) for c in cells if not c.holds]
        assert not wrong, f"cells disagreeing: {wrong}"
        blanks = [c for c in cells if c.published is None]
        for c in blanks:
            assert c.combinatorial == brute_covering_walks(build_from_text(c.motif), c.k)
        detail.append(f"{48 - len(blanks)} published cells exact, {len(blanks)} blank cells computed")


def test_criterion_02_trace_decomposition(criterion):
    r = random.Random(SEED + 2)
    with criterion(2, "motif decomposition equals tr(A^k), 500 connected graphs, k = 2..10", 120) as detail:
        clear_walk_caches()
        checked = 0
        for _ in range(500):
            g = random_connected_graph(r, r.randint(1, 10), r.uniform(0.0, 0.2))
            for k in range(2, 11):
                table = motif_decomposition(g, k)
                assert table.trace == np_trace_power(g, k)
                assert table.holds(), f"identity fails on {g.to_graph6()} at k={k}"
                checked += 1
        detail.append(f"{checked} (graph, k) instances")


def test_criterion_03_power_sum_4(criterion):
    r = random.Random(SEED + 3)
    with criterion(3, "power_sum_4 equals tr(A^4), 500 random graphs", 30) as detail:
        for _ in range(500):
            g = random_graph(r, r.randint(1, 10), r.random())
            assert power_sum_4(g) == np_trace_power(g, 4), g.to_graph6()
        detail.append("500 graphs")


def test_criterion_04_l4k_power_sums(criterion):
    with criterion(4, "tr(A^6), tr(A^8), tr(A^10) of L(4,k), k = 4..40", 30):
        for k in range(4, 41):
            g = build(lollipop(4, k))
            n = g.n
            for power, expected in ((6, 20 * n + 96), (8, 70 * n + 596), (10, 252 * n + 3360)):
                assert closed_walks(g, power) == expected == np_trace_power(g, power), (k, power)


def test_criterion_05_charpoly_evaluations(criterion):
    residues = {0: 1, 1: 3, 2: 2, 3: -1, 4: -3, 5: -2}
    with criterion(5, "charpoly values at 2, 1 and 0", 30) as detail:
        for p in range(3, 13):
            for k in range(1, 13):
                assert eval_rational(charpoly_family(lollipop(p, k)), 2) == -p * k, (p, k)
                assert eval_rational(charpoly(build(lollipop(p, k))), 2) == -p * k, (p, k)
        for k in range(1, 121):
            n = k + 4
            assert eval_rational(charpoly_family(lollipop(4, k)), 1) == residues[n % 6], k
        for k in range(1, 41):
            assert eval_rational(charpoly(build(lollipop(4, k))), 1) == residues[(k + 4) % 6], k
        for k in range(2, 61, 2):
            n = k + 4
            assert root_multiplicity_at_zero(charpoly_family(lollipop(4, k))) == (2, (-1) ** (k // 2 + 1) * n), k
        detail.append("144 + 120 + 30 cases")


def test_criterion_06_eigenvalue_tables(criterion):
    with criterion(6, "eigenvalue tables within 5e-5", 60) as detail:
        failures = []
        total = 0
        for name in ("spect_L4k", "tab_eig_P2", "tab_eig_P3", "tab_eig_P4", "spect_special"):
            for c in compare_table(name):
                total += 1
                if not c.holds:
                    got = "no graph" if c.computed is None else f"computed {c.computed}, error {c.error:.2e}"
                    failures.append(f"{name}{list(c.key)} published {c.published}: {got}")
        detail.append(f"{total} cells")
        assert not failures, f"{len(failures)} of {total} cells not reproduced: " + "; ".join(failures)


def test_criterion_07_strictness_certificates(criterion):
    with criterion(7, "Sturm certificates for the lollipop, dumbbell and bouquet bounds", 120) as detail:
        records = bound_suite(BoundRanges())
        by_claim: dict[str, int] = {}
        for r in records:
            by_claim[r.claim] = by_claim.get(r.claim, 0) + 1
        expected = {
            "exactly one eigenvalue of L(p,k) exceeds 2, none equals 2": 18 * 20,
            "lambda1(L(p,k)) < sqrt(5)": 18 * 20,
            "lambda1(L(4,k)) < sqrt(2+2*sqrt(2))": 41,
            "lambda1(H(p,q)) > sqrt(5)": 13 * 13,
            "lambda1(B(p,q)) > 4/sqrt(3)": 13 * 13,
        }
        for claim, count in expected.items():
            assert by_claim.get(claim) == count, (claim, by_claim.get(claim))
        bad = violated(records)
        assert not bad, f"{len(bad)} violated, first {bad[0].to_dict()}"
        detail.append(f"{len(records)} records verified")


def test_criterion_08_ds_sweep(criterion):
    with criterion(8, "lollipops with 5 <= n <= 9 determined by spectrum", 600) as detail:
        reports = ds_lollipop_sweep(5, 9, full_universe_n=(8,))
        restricted = sum(len(lollipops_with_n(n)) for n in range(5, 10))
        assert len(reports) == restricted + len(lollipops_with_n(8))
        full = [r for r in reports if r.universe.m_filter is None]
        assert {r.universe.n for r in full} == {8}
        assert all(r.class_count == 12346 for r in full)
        bad = [r.target for r in reports if r.verdict != "determined"]
        assert not bad, f"not determined: {bad}"
        detail.append(f"{restricted} restricted checks, {len(full)} unrestricted at n = 8")


def test_criterion_09_pairwise_scan(criterion):
    with criterion(9, "no two lollipops with n <= 40 share a charpoly", 30) as detail:
        rep = lollipop_pairwise_scan(40)
        assert rep.verdict == "verified"
        assert rep.lollipops == sum(n - 2 for n in range(3, 41))
        detail.append(f"{rep.lollipops} lollipops")


def test_criterion_10_known_cospectral_pair(criterion):
    with criterion(10, "C4 + K1 and the star K_{1,4} reported as cospectral mates", 1):
        rep = saltire_check()
        c4k1, star = saltire_pair()
        assert rep.verdict == "not-determined"
        assert rep.foreign_mates == [canonical_graph6(star)]
        assert np.allclose(np.linalg.eigvalsh(np_adjacency(c4k1)), np.linalg.eigvalsh(np_adjacency(star)))
        assert not nx.is_isomorphic(to_nx(c4k1), to_nx(star))


def _subdivision_sample(r: random.Random, internal: bool) -> tuple[Graph, tuple[int, int]]:
    while True:
        g = random_connected_graph(r, r.randint(3, 10), r.uniform(0.0, 0.25))
        if g.max_degree() <= 2 and g.m == g.n:
            continue
        inner = internal_path_edges(g)
        pool = sorted(inner) if internal else sorted(set(g.edges) - inner)
        if not pool or (internal and is_ttree(g)):
            continue
        return g, r.choice(pool)


def test_criterion_11_interlacing_and_subdivision(criterion):
    r = random.Random(SEED + 11)
    with criterion(11, "interlacing on 300 pairs, 100 + 100 subdivisions", 120) as detail:
        for _ in range(300):
            g = random_graph(r, r.randint(2, 10), r.random())
            subset = r.sample(range(g.n), r.randint(1, g.n - 1))
            assert interlacing_check_exact(g, subset), (g.to_graph6(), subset)
            lam = np.sort(np.linalg.eigvalsh(np_adjacency(g).astype(float)))[::-1]
            h = g.induced_subgraph(subset)
            mu = np.sort(np.linalg.eigvalsh(np_adjacency(h).astype(float)))[::-1]
            n, m = len(lam), len(mu)
            assert all(lam[n - m + i] - 1e-9 <= mu[i] <= lam[i] + 1e-9 for i in range(m))
        for internal, sign in ((False, 1), (True, -1)):
            for _ in range(100):
                g, (u, v) = _subdivision_sample(r, internal)
                rec = subdivision_check(g, u, v)
                assert rec.verdict == "verified", rec.to_dict()
                diff = np_lambda1(g.subdivide(u, v)) - np_lambda1(g)
                assert diff * sign > -1e-9
        detail.append("300 interlacing pairs, 100 increases, 100 decreases")


def test_criterion_12_appendix_sign_suite(criterion):
    with criterion(12, "sign suite for dumbbells and theta constructions", 60) as detail:
        records = appendix_sign_suite(cap=30, h_cap=50)
        bad = violated(records)
        assert not bad, f"{len(bad)} violated, first {bad[0].to_dict()}"
        claims = {r.claim for r in records}
        assert "Q_{H(p,p)}(sqrt(5)) < 0" in claims
        assert sum(r.claim == "Q_{H(p,p)}(sqrt(5)) < 0" for r in records) == 48
        detail.append(f"{len(records)} records verified")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
