"""Unit tests for the bilinear-complexity bounds."""
import random
from fractions import Fraction

import pytest

from gsdescent.complexity import (BoundInputError, CurveInput, bound_report, chud_conditions,
    compare_prime_case, genus_size_holds, genus_size_numeric, mu_bound, prime_power_parts,
    rational_json, show_rational, uniform_bound)

pytestmark = pytest.mark.unit


class TestConditions:
    def test_genus_too_large(self):
        report = chud_conditions(CurveInput(q=4, n=3, g=2, n1=5, n2=2))
        assert report.nonspecial
        assert not report.genus_size
        assert report.place_count
        assert report.failing() == ["genus_size"]

    def test_genus_zero_boundary(self):
        report = chud_conditions(CurveInput(q=4, n=2, g=0, n1=5, n2=0))
        assert report.all_hold

    def test_rational_curve_q9(self):
        inp = CurveInput(q=9, n=2, g=0, n1=10, n2=0)
        assert chud_conditions(inp).all_hold
        assert mu_bound(inp) == (6, [])

    def test_place_count_gate(self):
        bound, failing = mu_bound(CurveInput(q=4, n=2, g=0, n1=1, n2=0))
        assert bound is None
        assert failing == ["place_count"]

    def test_nonspecial_flag(self):
        assert CurveInput(q=4, n=2, g=0, n1=5, n2=0).nonspecial_assumed
        assert not CurveInput(q=3, n=2, g=0, n1=4, n2=0).nonspecial_assumed
        inp = CurveInput(q=4, n=2, g=0, n1=5, n2=0, nonspecial_assumed=False)
        assert mu_bound(inp) == (None, ["nonspecial"])

    def test_square_q_threshold(self):
        # q = 4, n = 3: q^((n-1)/2) (sqrt(q) - 1) = 4, so 2g + 1 <= 4 iff g <= 1
        assert genus_size_holds(4, 3, 1)
        assert not genus_size_holds(4, 3, 2)

    def test_nonsquare_q_threshold(self):
        # q = 2, n = 9: 2^4 (sqrt(2) - 1) = 6.627..., so 2g + 1 <= 6.627 iff g <= 2
        assert genus_size_holds(2, 9, 2)
        assert not genus_size_holds(2, 9, 3)

    def test_monotone_in_genus(self):
        for g in range(0, 20):
            lo = mu_bound(CurveInput(q=16, n=10, g=g, n1=10 ** 6, n2=0))[0]
            hi = mu_bound(CurveInput(q=16, n=10, g=g + 1, n1=10 ** 6, n2=0))[0]
            assert hi - lo == 3

    def test_bad_inputs(self):
        with pytest.raises(BoundInputError):
            CurveInput(q=6, n=2, g=0, n1=1, n2=0)
        with pytest.raises(BoundInputError):
            CurveInput(q=4, n=1, g=0, n1=1, n2=0)
        with pytest.raises(BoundInputError):
            CurveInput(q=4, n=2, g=-1, n1=1, n2=0)


class TestNumericOracle:
    def test_agrees_on_random_triples(self):
        rng = random.Random(2024)
        for _ in range(1000):
            q = rng.choice((2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 81, 121, 128))
            n = rng.randrange(2, 16)
            hi = int((q ** ((n - 1) / 2)) * (q ** 0.5 - 1)) + 2
            g = rng.randrange(0, hi)
            assert genus_size_holds(q, n, g) == genus_size_numeric(q, n, g)


class TestUniformBound:
    def test_q4(self):
        assert uniform_bound(4, 10) == (Fraction(90), Fraction(9))
        for n in range(1, 30):
            assert uniform_bound(4, n)[0] == 9 * n

    def test_q9(self):
        assert uniform_bound(9, 10) == (Fraction(45), Fraction(9, 2))

    def test_small_q(self):
        with pytest.raises(BoundInputError):
            uniform_bound(3, 10)
        with pytest.raises(BoundInputError):
            uniform_bound(10, 2)

    def test_prime_case(self):
        assert compare_prime_case(5) == (Fraction(21, 2), Fraction(9))
        assert compare_prime_case(7) == (Fraction(33, 4), Fraction(6))
        with pytest.raises(BoundInputError):
            compare_prime_case(3)
        with pytest.raises(BoundInputError):
            compare_prime_case(9)

    def test_prime_case_limits(self):
        ours, cited = compare_prime_case(10 ** 6 + 3)
        assert cited < ours
        assert abs(float(cited) - 3) < 1e-4
        assert abs(float(ours) - 6) < 1e-4

    def test_prime_power_parts(self):
        assert prime_power_parts(32) == (2, 5)
        assert prime_power_parts(27) == (3, 3)
        assert prime_power_parts(7) == (7, 1)
        with pytest.raises(BoundInputError):
            prime_power_parts(12)


class TestReport:
    def test_uniform_only(self):
        report = bound_report(4, 10)
        assert "uniform bound = 90" in report.render()
        payload = report.to_json()
        assert payload["uniform_bound"] == {"num": 90, "den": 1, "decimal": "90.000000"}
        assert "curve" not in payload

    def test_with_curve(self):
        report = bound_report(4, 3, CurveInput(q=4, n=3, g=2, n1=5, n2=2))
        lines = report.render()
        assert "mu bound = not applicable (failing: genus_size)" in lines
        payload = report.to_json()
        assert payload["bound"] is None
        assert payload["failing"] == ["genus_size"]

    def test_prime_comparison_included(self):
        report = bound_report(5, 4)
        assert report.comparison == (Fraction(21, 2), Fraction(9))
        assert report.to_json()["comparison"]["prime_field"]["num"] == 9

    def test_rational_rendering(self):
        assert show_rational(Fraction(90)) == "90"
        assert show_rational(Fraction(21, 2)) == "21/2 (10.500000)"
        assert rational_json(Fraction(33, 4)) == {"num": 33, "den": 4, "decimal": "8.250000"}
