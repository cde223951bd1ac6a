"""Unit tests for tower equations and first-stage place counts."""
from types import SimpleNamespace

import pytest

from gsdescent.checks.golden import GoldenQ4, GoldenQ8, GoldenQ16, GoldenQ32
from gsdescent.tower import (MAX_DEPTH, RelationKind, TowerError, check_maximality,
    completed_tower, count_places_first_stage, first_stage_genus, gs_tower, ladder_equations,
    relative_degree_product, render_ladder, verify_step_composition)

pytestmark = pytest.mark.unit


class TestEquations:
    def test_gs_tower(self, F4):
        eqs = gs_tower(F4, 3)
        assert [e.new_var for e in eqs] == ["x_1", "z_2", "x_2", "z_3"]
        assert eqs[1].relation == "z_2^4 + z_2 = x_1^5"
        assert eqs[2].relation == "x_2 = z_2/x_1"
        assert eqs[3].relation == "z_3^4 + z_3 = x_2^5"
        assert [e.degree_over_prev for e in eqs] == [None, 4, 1, 4]

    def test_depth_limits(self, F4, table_for_q):
        with pytest.raises(TowerError):
            gs_tower(F4, 0)
        with pytest.raises(TowerError):
            completed_tower(table_for_q(2, 2), MAX_DEPTH + 1)

    def test_completed_tower_q8(self, table_for_q):
        eqs = completed_tower(table_for_q(2, 3), 2)
        assert [e.new_var for e in eqs] == ["x_1", "t_{1,1}", "t_{1,2}", "z_2"]
        assert [e.kind for e in eqs[1:]] == [RelationKind.INTERMEDIATE,
            RelationKind.INTERMEDIATE, RelationKind.ARTIN_SCHREIER]
        assert eqs[1].relation == "t_{1,1}^2 + w^3*t_{1,1} = x_1^9"
        assert eqs[1].step == "t_{1,1}^2 + w^3*t_{1,1} = x_1^9"
        assert eqs[2].relation == "t_{1,2}^4 + t_{1,2}^2 + t_{1,2} = x_1^9"
        assert eqs[2].step == "t_{1,2}^2 + w^4*t_{1,2} = t_{1,1}"
        assert eqs[2].definition == "t_{1,2} = P_1(z_2)"
        assert eqs[3].step == "z_2^2 + z_2 = t_{1,2}"
        assert [e.degree_over_stage for e in eqs[1:]] == [2, 4, 8]

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4)])
    def test_relative_degrees_multiply_to_q(self, table_for_q, p, n):
        eqs = completed_tower(table_for_q(p, n), 3)
        for i in (1, 2):
            assert relative_degree_product(eqs, i) == p ** n

    def test_single_level_matches_plain_tower(self, table_for_q):
        table = table_for_q(5, 1)
        completed = completed_tower(table, 3)
        plain = gs_tower(table.base_field, 3)
        assert [e.relation for e in completed] == [e.relation for e in plain]

    def test_to_json(self, table_for_q):
        payload = completed_tower(table_for_q(2, 2), 2)[1].to_json()
        assert payload["level"] == [1, 1]
        assert payload["new_var"] == "t_{1,1}"
        assert payload["degree_over_prev"] == 2


class TestLadder:
    @pytest.mark.parametrize("check,p,n", [(GoldenQ4, 2, 2), (GoldenQ8, 2, 3),
        (GoldenQ16, 2, 4), (GoldenQ32, 2, 5)])
    def test_ladder_matches_fixture(self, table_for_q, check, p, n):
        table = table_for_q(p, n)
        assert ladder_equations(table) == check.load_fixture()["ladder"]
        assert verify_step_composition(table)

    def test_render_ladder(self, table_for_q):
        text = render_ladder(table_for_q(2, 5))
        assert "t_1^2 + w^2*t_1 = x^33" in text
        assert "G_{2,0}" in text and "G_{1,1}" in text


class TestPlaces:
    def test_genus(self, F4, F9):
        assert first_stage_genus(F4, 1) == 2
        assert first_stage_genus(F4, 2) == 6
        assert first_stage_genus(F9, 1) == 9
        with pytest.raises(TowerError):
            first_stage_genus(F4, 3)

    def test_hermitian_q4(self, table_for_q):
        table = table_for_q(2, 2)
        assert count_places_first_stage(table, 1, "q") == 5
        assert count_places_first_stage(table, 1, "q2") == 33
        assert count_places_first_stage(table, 2, "q2") == 65

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (2, 4)])
    def test_rational_places_over_fq(self, table_for_q, p, n):
        table = table_for_q(p, n)
        q = p ** n
        for i in range(1, n + 1):
            assert count_places_first_stage(table, i, "q") == q + 1

    @pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2)])
    def test_maximal(self, table_for_q, p, n):
        table = table_for_q(p, n)
        q = p ** n
        for i in range(1, n + 1):
            stats = check_maximality(table, i)
            assert stats.maximal
            assert stats.n_over_Fq2 == q * q + 1 + 2 * stats.genus * q
            assert stats.genus == q * (p ** i - 1) // 2

    @pytest.mark.slow
    def test_workers_agree(self, table_for_q):
        table = table_for_q(2, 3)
        assert count_places_first_stage(table, 1, "q2", workers=2) == \
            count_places_first_stage(table, 1, "q2", workers=1)

    def test_bad_arguments(self, table_for_q):
        table = table_for_q(2, 2)
        with pytest.raises(TowerError):
            count_places_first_stage(table, 0)
        with pytest.raises(TowerError):
            count_places_first_stage(table, 1, over="q3")
        with pytest.raises(TowerError):
            check_maximality(SimpleNamespace(q=128), 1)
