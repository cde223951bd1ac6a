"""Unit tests for finite field construction and element arithmetic."""
import random
from itertools import product

import pytest
from sympy import Poly, symbols

from gsdescent.ff import (DEFAULT_MODULI, FieldError, FieldMismatchError, FieldTooLargeError,
    NotPrimeError, ReducibleModulusError, arithmetic, discrete_log, extend_quadratic,
    field_pair, frobenius, make_field, trace_norm)

pytestmark = pytest.mark.unit

X = symbols("x")


def _sympy_irreducible(p, ascending):
    return Poly(list(reversed(ascending)), X, modulus=p).is_irreducible


def _assert_field_axioms(F, triples):
    for a, b, c in triples:
        assert a + b == b + a and a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + F.zero == a and a * F.one == a
        assert a + (-a) == F.zero
        if a: assert a * a.inverse() == F.one


def _tower(p, n):
    return field_pair(p, n)[1]


class TestMakeField:
    @pytest.mark.parametrize("p,m", sorted(DEFAULT_MODULI))
    def test_default_moduli_make_w_primitive(self, p, m):
        F = make_field(p, m)
        assert F.order == p ** m
        assert F.modulus == DEFAULT_MODULI[(p, m)]
        assert F.indeterminate_is_generator
        assert F.generator == F.indeterminate
        assert len(set(F.nonzero_powers())) == F.order - 1

    def test_defining_relations(self, F4, F8, F16, F9):
        for F in (F4, F8, F16):
            w = F.generator
            assert w ** F.degree == w + 1
        # w^2 + 2w + 2 = 0 gives w^2 = w + 1 mod 3
        assert F9.generator ** 2 == F9.generator + 1

    @pytest.mark.parametrize("p,m", [(2, 6), (3, 4), (5, 2), (7, 2)])
    def test_least_irreducible_fallback(self, p, m):
        F = make_field(p, m)
        assert _sympy_irreducible(p, F.modulus)
        packed = sum(c * p ** k for k, c in enumerate(F.modulus[:-1]))
        for v in range(packed):
            tail = [(v // p ** k) % p for k in range(m)]
            assert not _sympy_irreducible(p, tail + [1])

    def test_non_primitive_indeterminate(self):
        # x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
        F = make_field(2, 4, [1, 1, 1, 1, 1])
        assert not F.indeterminate_is_generator
        assert F.indeterminate ** 5 == F.one
        assert F.generator != F.indeterminate
        assert len(set(F.nonzero_powers())) == 15

    @pytest.mark.parametrize("p,g", [(2, 1), (5, 2), (7, 3), (11, 2)])
    def test_prime_field_generator_is_least_primitive_root(self, p, g):
        F = make_field(p, 1)
        assert F.modulus == (0, 1)
        assert not F.indeterminate_is_generator
        assert F.generator == F.from_int(g)

    def test_presentation(self, F8, pair4):
        assert F8.presentation() == "F_8 = F_2[w]/(w^3 + w + 1)"
        assert make_field(7, 1).presentation() == "F_7 = Z/7Z"
        assert pair4[1].presentation().startswith("F_16 = F_4[W]/(W^2")
        assert make_field(2, 11).order == 2048

    def test_bad_inputs(self):
        with pytest.raises(NotPrimeError):
            make_field(4, 1)
        with pytest.raises(FieldError):
            make_field(2, 0)
        with pytest.raises(FieldTooLargeError):
            make_field(2, 21)
        with pytest.raises(ReducibleModulusError):
            make_field(2, 2, [1, 0, 1])
        with pytest.raises(FieldError):
            make_field(2, 2, [1, 1, 0])
        with pytest.raises(FieldError):
            make_field(2, 2, [1, 2, 1])
        with pytest.raises(FieldError):
            make_field(2, 2, [1, 1, 0, 1])

    def test_field_errors_are_value_errors(self):
        with pytest.raises(ValueError):
            make_field(6, 1)


class TestFieldAxioms:
    @pytest.mark.parametrize("build", [
        lambda: make_field(2, 2),
        lambda: make_field(2, 3),
        lambda: make_field(2, 4),
        lambda: make_field(3, 2),
        lambda: make_field(5, 2),
        lambda: make_field(3, 3),
        lambda: _tower(2, 2),
        pytest.param(lambda: make_field(2, 5), marks=pytest.mark.slow),
        pytest.param(lambda: make_field(7, 2), marks=pytest.mark.slow),
        pytest.param(lambda: make_field(2, 6), marks=pytest.mark.slow),
    ])
    def test_exhaustive(self, build):
        F = build()
        elems = F.elements()
        _assert_field_axioms(F, product(elems, repeat=3))

    @pytest.mark.parametrize("build", [
        lambda: make_field(3, 4),
        lambda: make_field(5, 3),
        lambda: make_field(2, 8),
        lambda: _tower(2, 4),
        lambda: _tower(2, 5),
    ])
    def test_random_triples(self, build):
        F = build()
        rng = random.Random(F.order)
        elems = F.elements()
        _assert_field_axioms(F, ((rng.choice(elems), rng.choice(elems), rng.choice(elems))
            for _ in range(10 ** 4)))


class TestElements:
    def test_elements_in_value_order(self, F8):
        values = [x.value for x in F8.elements()]
        assert values == list(range(8))

    def test_inverse_and_division(self, F16):
        for x in F16.elements()[1:]:
            assert x * x.inverse() == F16.one
            assert F16.one / x == x.inverse()

    def test_zero_powers(self, F4):
        assert F4.zero ** 0 == F4.one
        assert F4.zero ** 3 == F4.zero
        with pytest.raises(ZeroDivisionError):
            F4.zero ** -1
        with pytest.raises(ZeroDivisionError):
            F4.zero.inverse()
        with pytest.raises(ZeroDivisionError):
            F4.one / F4.zero

    def test_integers_map_to_prime_subfield(self, F9):
        assert F9.from_int(5) == F9.from_int(2)
        assert F9.generator + 3 == F9.generator
        assert 1 - F9.one == F9.zero

    def test_mixing_fields(self, F4, F8):
        with pytest.raises(FieldMismatchError):
            F4.one + F8.one

    def test_element_from_coords(self, F9):
        w = F9.generator
        assert F9.element([2, 1]) == w + 2
        with pytest.raises(FieldError):
            F9.element([1])

    def test_discrete_log(self, F16):
        assert discrete_log(F16.zero) is None
        for k in range(15):
            assert discrete_log(F16.power(k)) == k

    def test_render(self, F4):
        w = F4.generator
        assert F4.zero.render() == "0"
        assert F4.one.render() == "1"
        assert w.render() == "w"
        assert (w * w).render() == "w^2"
        assert (w * w).render("coords") == "1+w"
        assert F4.zero.render("coords") == "0"

    def test_to_json(self, F4):
        assert F4.power(2).to_json() == {"log": 2}
        assert F4.zero.to_json() == {"log": None, "coords": [0, 0]}

    def test_arithmetic_dispatch(self, F8):
        w = F8.generator
        assert arithmetic(w, w, "add") == F8.zero
        assert arithmetic(w, w, "mul") == w ** 2
        assert arithmetic(w, w, "div") == F8.one
        assert arithmetic(w, None, "pow", k=-1) == w.inverse()
        with pytest.raises(FieldError):
            arithmetic(w, w, "mod")

    def test_frobenius(self, F16, F9):
        for x in F16.elements():
            assert frobenius(x, 1) == x ** 2
            assert frobenius(x, F16.total_degree) == x
        for x in F9.elements():
            assert frobenius(x, 1) == x ** 3

    @pytest.mark.parametrize("build", [
        lambda: make_field(2, 4),
        lambda: make_field(3, 3),
        lambda: _tower(3, 2),
    ])
    def test_frobenius_is_a_field_map(self, build):
        F = build()
        for x, y in product(F.elements(), repeat=2):
            assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)
            assert frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1)

    def test_worked_example_values(self, F16):
        F32 = make_field(2, 5)
        w = F32.generator
        assert w ** 19 == w ** 2 + w
        v = F16.generator
        assert discrete_log(v ** 2 + v + 1) == 10

    def test_subfield(self, F16):
        F4_inside = F16.subfield(4)
        assert len(F4_inside) == 4
        assert all(x ** 4 == x for x in F4_inside)
        assert F16.subfield(2) == (F16.zero, F16.one)
        with pytest.raises(FieldError):
            F16.subfield(8)


class TestQuadraticTower:
    def test_shape(self, pair4):
        F, K = pair4
        assert K.base == F
        assert K.order == 16
        assert K.degree == 2 and K.total_degree == 4
        assert K.generator_name == "W"

    def test_embed_and_restrict(self, pair9):
        F, K = pair9
        for a in F.elements():
            b = K.embed(a)
            assert K.contains_in(b, F)
            assert K.restrict(b, F) == a
        with pytest.raises(FieldError):
            K.restrict(K.generator, F)

    def test_embedding_is_a_homomorphism(self, pair4):
        F, K = pair4
        for a in F.elements():
            for b in F.elements():
                assert K.embed(a * b) == K.embed(a) * K.embed(b)
                assert K.embed(a + b) == K.embed(a) + K.embed(b)

    def test_trace_norm(self, pair9):
        F, K = pair9
        for a in F.elements():
            assert trace_norm(K.embed(a), F) == (a + a, a * a)
        for x in K.elements():
            trace, norm = trace_norm(x, F)
            assert trace.field == F and norm.field == F
        with pytest.raises(FieldMismatchError):
            trace_norm(F.one, F)

    def test_tower_generator_is_primitive(self, pair4):
        _, K = pair4
        W = K.generator
        assert W ** 15 == K.one
        assert W ** 3 != K.one and W ** 5 != K.one

    def test_embedding_into_f81_is_a_homomorphism(self, pair9):
        F, K = pair9
        for a, b in product(F.elements(), repeat=2):
            assert K.embed(a * b) == K.embed(a) * K.embed(b)
            assert K.embed(a + b) == K.embed(a) + K.embed(b)

    @pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 1), (3, 2),
        (3, 3), (5, 1), (5, 2), (7, 1), (11, 1), (13, 1), (31, 1)])
    def test_trace_norm_lands_in_base(self, p, n):
        F, K = field_pair(p, n)
        for x in K.elements():
            trace, norm = trace_norm(x, F)
            conj = x ** F.order
            assert trace.field == F and norm.field == F
            assert K.embed(trace) == x + conj
            assert K.embed(norm) == x * conj

    def test_base_too_large(self):
        with pytest.raises(FieldTooLargeError):
            extend_quadratic(make_field(2, 11))

    def test_field_pair_cached(self):
        assert field_pair(2, 3) is field_pair(2, 3)
        assert field_pair(2, 3)[0] == make_field(2, 3)
