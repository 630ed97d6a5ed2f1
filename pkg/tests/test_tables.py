from __future__ import annotations

import csv
import io
from fractions import Fraction

import mpmath
import pytest

from helpers import brute_covering_walks, mp_top_eigenvalues
from lollipop_spectra import tables
from lollipop_spectra.families import build, build_from_text, lollipop, theta
from lollipop_spectra.tables import (
    SPECIAL_ROWS,
    TAB_EIG_P2_PRINTED,
    TAB_MARCHES,
    TOLERANCE,
    compare_table,
    round4,
    table_csv,
    top_enclosures,
    within_tolerance,
)
from lollipop_spectra.walks import covering_walk_count


def mp_error(value, published: str) -> float:
    with mpmath.workdps(40):
        return float(abs(value - mpmath.mpf(published)))


class TestRounding:
    def test_half_even(self):
        assert round4(Fraction(21_35785, 10**6)) == "2.1358"
        assert round4(Fraction(2_00005, 10**5)) == "2.0000"
        assert round4(Fraction(2_00015, 10**5)) == "2.0002"
        assert round4(Fraction(-1, 3)) == "-0.3333"

    def test_tolerance_uses_whole_enclosure(self):
        pub = "2.0000"
        assert within_tolerance(Fraction(2), Fraction(2) + TOLERANCE, pub)
        assert not within_tolerance(Fraction(2), Fraction(2) + TOLERANCE + Fraction(1, 10**9), pub)

    def test_enclosures_contain_mpmath_values(self):
        for g in (build(lollipop(4, 3)), build(theta(3, 5, 7)), build_from_text("C(6)")):
            ref = mp_top_eigenvalues(g, 2)
            for (lo, hi), x in zip(top_enclosures(g, 2), ref):
                assert hi - lo <= Fraction(1, 1 << 60)
                with mpmath.workdps(40):
                    slack = mpmath.mpf(10) ** -30
                    assert mpmath.mpf(lo.numerator) / lo.denominator - slack <= x
                    assert x <= mpmath.mpf(hi.numerator) / hi.denominator + slack


class TestCoveringWalkTable:
    def test_every_cell(self):
        cells = compare_table("tab_marches")
        assert len(cells) == 48
        assert all(c.holds for c in cells)

    def test_against_brute_force(self):
        for c in compare_table("tab_marches"):
            if c.k <= 8:
                assert c.combinatorial == brute_covering_walks(build_from_text(c.motif), c.k)

    def test_blank_cells(self):
        values = {(c.motif, c.k): c.combinatorial for c in compare_table("tab_marches") if c.published is None}
        assert values == {("C(6)", 8): 96, ("C(6)", 10): 540, ("C(8)", 10): 160}

    def test_blank_cells_brute_force(self):
        assert brute_covering_walks(build_from_text("C(6)"), 8) == 96
        assert brute_covering_walks(build_from_text("C(8)"), 10) == 160

    def test_cycle_closed_form(self):
        # a covering walk of C_p of length p goes once around: p starts, 2 directions
        for p in (4, 6):
            assert covering_walk_count(build_from_text(f"C({p})"), p) == 2 * p


class TestEigenvalueTables:
    @pytest.mark.parametrize("name", ["spect_L4k", "tab_eig_P2", "tab_eig_P3", "tab_eig_P4"])
    def test_all_cells_within_tolerance(self, name):
        cells = compare_table(name)
        bad = [(c.key, c.rank, c.published, c.computed) for c in cells if not c.holds]
        assert not bad

    @pytest.mark.parametrize("name, p1", [("tab_eig_P2", 2), ("tab_eig_P3", 3), ("tab_eig_P4", 4)])
    def test_theta_tables_against_mpmath(self, name, p1):
        for c in compare_table(name):
            p3, p2 = c.key
            ref = mp_top_eigenvalues(build(theta(p1, p2, p3)), 2)[c.rank - 1]
            assert mp_error(ref, c.published) <= float(TOLERANCE)

    def test_spect_l4k_against_mpmath(self):
        for c in compare_table("spect_L4k"):
            ref = mp_top_eigenvalues(build(lollipop(4, c.key[0])), 1)[0]
            assert mp_error(ref, c.published) <= float(TOLERANCE)

    def test_printed_typos_are_off_by_a_digit(self):
        cells = {(c.key, c.rank): c for c in compare_table("tab_eig_P2")}
        for key, (_, printed) in TAB_EIG_P2_PRINTED.items():
            cell = cells[(key, 2)]
            assert printed.replace("1.1", "1.", 1) == cell.published
            assert not within_tolerance(Fraction(cell.published), Fraction(cell.published), printed)

    def test_symmetry_in_arm_lengths(self):
        # P(p1, a, b) and P(p1, b, a) are the same graph
        cells = {(c.key, c.rank): c.computed for c in compare_table("tab_eig_P3")}
        assert cells[((5, 7), 1)] == cells[((7, 5), 1)]


class TestSpecialGraphs:
    def test_identified_rows(self):
        results = {row.name: cell for row, cell in zip(SPECIAL_ROWS, compare_table("spect_special")) if row.make is not None}
        failing = sorted(name for name, cell in results.items() if not cell.holds)
        assert failing == ["c4_double"]

    def test_identified_rows_against_mpmath(self):
        for row in SPECIAL_ROWS:
            if row.make is not None and row.name != "c4_double":
                ref = mp_top_eigenvalues(row.make(), 1)[0]
                assert mp_error(ref, row.published) <= float(TOLERANCE)

    def test_c4_double_pendant_value(self):
        ref = mp_top_eigenvalues(SPECIAL_ROWS[-1].make(), 1)[0]
        assert round(float(ref), 5) == 2.28825
        assert mp_error(ref, "2.2883") > float(TOLERANCE)

    def test_unidentified_rows_have_no_graph(self):
        cells = compare_table("spect_special")
        missing = [row.name for row, cell in zip(SPECIAL_ROWS, cells) if cell.computed is None]
        assert missing == ["unidentified_a", "unidentified_b", "unidentified_c"]
        assert not any(cells[i].holds for i, row in enumerate(SPECIAL_ROWS) if row.make is None)


class TestCsv:
    @pytest.mark.parametrize("name", tables.TABLE_NAMES)
    def test_byte_stable(self, name):
        assert table_csv(name) == table_csv(name)

    def test_tab_marches_layout(self):
        rows = list(csv.reader(io.StringIO(table_csv("tab_marches"))))
        assert rows[0] == ["M", "w6", "w8", "w10"]
        assert [r[0] for r in rows[1:]] == list(TAB_MARCHES)
        assert rows[1 + list(TAB_MARCHES).index("C(4)")] == ["C(4)", "48", "264", "1320"]

    def test_theta_layout(self):
        rows = list(csv.reader(io.StringIO(table_csv("tab_eig_P4"))))
        assert rows[0] == ["p3\\p2 (p1=4)", "4", "6"]
        assert rows[1] == ["4", "2.1987;1.9122", "2.1853;1.9666"]

    def test_spect_l4k_layout(self):
        text = table_csv("spect_L4k")
        assert text.startswith("k,lambda1\n1,2.1358\n")
        assert text.endswith("14,2.1974\n")

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            table_csv("nope")
