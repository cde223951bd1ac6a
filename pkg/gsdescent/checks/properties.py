from itertools import combinations, product
from math import isqrt

from sympy import primerange

from ..complexity import compare_prime_case, genus_size_holds, genus_size_numeric
from ..descent import canonical_chain, descent_table
from ..ff import field_pair, make_field
from ..linpoly import (LinearizedPoly, moore_det, ordinary_divides, span, symbolic_compose,
    symbolic_right_divmod, to_ordinary)
from ..tower import count_places_first_stage, check_maximality, first_stage_genus
from .abstract import AbstractPropertyCheck


def monic_polys(field, base, max_degree):
    """Every monic b-polynomial over `field` of symbolic degree <= max_degree."""
    out = []
    for d in range(max_degree + 1):
        for tail in product(field.elements(), repeat=d):
            out.append(LinearizedPoly(field, base, list(tail) + [field.one]))
    return out


class CompositionIdentity(AbstractPropertyCheck):
    """M_i o P_i = T^q + T with all coefficients in F_q, canonical chain, every level."""
    name = "composition identity"
    order = 1
    Q_VALUES = ((2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5))

    def run(self):
        results = []
        for p, n in self.Q_VALUES:
            base, ambient = field_pair(p, n)
            table = descent_table(canonical_chain(ambient))
            A = table.trace_poly()
            ok = all(table.M(i).compose(table.P(i)) == A
                and table.M(i).field == base and table.P(i).field == base
                for i in range(1, n))
            results.append(self.result(f"q = {base.order}", ok))
        return results


class MooreCriterion(AbstractPropertyCheck):
    """Moore determinant nonzero iff F_2-independent, for every subset of F_16 of size <= 3."""
    name = "moore criterion"
    order = 2

    def run(self):
        F = make_field(2, 4)
        checked, bad = 0, []
        for k in (1, 2, 3):
            for subset in combinations(F.elements(), k):
                independent = len(span(subset, 2)) == 2 ** k
                if bool(moore_det(subset, 2)) != independent:
                    bad.append(subset)
                checked += 1
        return [self.result("", not bad, f"{checked} subsets, {len(bad)} mismatches")]


class DivisibilityLemma(AbstractPropertyCheck):
    """For q-polynomials over F_q: Q divides R ordinarily iff R = M o Q for some M over F_q.
    Exhaustive over monic pairs of symbolic degree <= 2 over F_4 and F_8."""
    name = "divisibility lemma"
    order = 3

    def run(self):
        results = []
        for p, m in ((2, 2), (2, 3)):
            F = make_field(p, m)
            polys = monic_polys(F, F.order, 2)
            bad = 0
            for Q, R in product(polys, polys):
                _, rem = symbolic_right_divmod(R, Q)
                if ordinary_divides(Q, R) != rem.is_zero:
                    bad += 1
            results.append(self.result(f"over {F.name}", bad == 0,
                f"{len(polys) ** 2} pairs, {bad} mismatches"))
        return results


class OrdinarySubstitution(AbstractPropertyCheck):
    """to_ordinary(M o Q) equals ordinary substitution, on seeded random 2-polynomials of
    symbolic degree <= 3 over F_4, F_8 and F_16."""
    name = "ordinary substitution"
    order = 4

    def _random_poly(self, F):
        d = self.rng.randrange(4)
        return LinearizedPoly(F, 2, [F.power(self.rng.randrange(F.order - 1))
            if self.rng.random() > 0.2 else F.zero for _ in range(d + 1)])

    def run(self):
        results = []
        for m in (2, 3, 4):
            F = make_field(2, m)
            samples = self.config.property_samples
            bad = 0
            for _ in range(samples):
                M, Q = self._random_poly(F), self._random_poly(F)
                lhs = to_ordinary(symbolic_compose(M, Q))
                rhs = to_ordinary(M).compose(to_ordinary(Q))
                if lhs != rhs: bad += 1
            results.append(self.result(f"over {F.name}", bad == 0,
                f"{samples} samples, {bad} mismatches"))
        return results


class Commutation(AbstractPropertyCheck):
    """Composition is not commutative over F_4, and is commutative for F_2-coefficients."""
    name = "commutation"
    order = 5

    def run(self):
        F4 = make_field(2, 2)
        M = LinearizedPoly(F4, 2, [F4.generator])
        Q = LinearizedPoly.monomial(F4, 2, 1)
        witness = symbolic_compose(M, Q) != symbolic_compose(Q, M)

        F2 = make_field(2, 1)
        polys = [LinearizedPoly(F2, 2, list(cs)) for cs in product((0, 1), repeat=4)]
        commute = all(symbolic_compose(a, b) == symbolic_compose(b, a)
            for a, b in product(polys, polys))
        return [self.result("witness over F_4", witness, f"M = {M}, Q = {Q}"),
            self.result("F_2 coefficients commute", commute, f"{len(polys) ** 2} pairs")]


class FirstStagePlaces(AbstractPropertyCheck):
    """q + 1 rational places over F_q at every first-stage step, and maximality over
    F_{q^2} for q in {4, 8, 9}."""
    name = "first-stage places"
    order = 6
    RATIONAL = ((2, 2), (2, 3), (3, 2), (2, 4))
    MAXIMAL = ((2, 2), (2, 3), (3, 2))

    def run(self):
        results = []
        workers = self.config.workers
        for p, n in self.RATIONAL:
            base, ambient = field_pair(p, n)
            table = descent_table(canonical_chain(ambient))
            counts = [count_places_first_stage(table, i, "q", workers) for i in range(1, n + 1)]
            results.append(self.result(f"N_1 over F_{base.order}",
                all(c == base.order + 1 for c in counts), f"counts {counts}"))
        for p, n in self.MAXIMAL:
            base, ambient = field_pair(p, n)
            table = descent_table(canonical_chain(ambient))
            stats = [check_maximality(table, i, workers) for i in range(1, n + 1)]
            ok = all(s.maximal and s.genus == first_stage_genus(base, s.i) for s in stats)
            results.append(self.result(f"maximal over F_{base.order ** 2}", ok,
                ", ".join(f"i={s.i}: {s.n_over_Fq2}" for s in stats)))
        return results


class BoundArithmetic(AbstractPropertyCheck):
    """Exact genus-size test agrees with high-precision evaluation on seeded random
    triples; the prime-field coefficient is sharper for every prime 5 <= p < 10^4."""
    name = "bound arithmetic"
    order = 7
    Q_CHOICES = (4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128)

    def run(self):
        samples = self.config.property_samples
        bad = 0
        for _ in range(samples):
            q = self.rng.choice(self.Q_CHOICES)
            n = self.rng.randrange(2, 20)
            # spans both sides of the threshold
            g = self.rng.randrange(0, isqrt(q ** n) - isqrt(q ** (n - 1)) + 2)
            if genus_size_holds(q, n, g) != genus_size_numeric(q, n, g):
                bad += 1
        primes = [int(p) for p in primerange(5, 10 ** 4)]
        sharper = all(cited < ours for ours, cited in map(compare_prime_case, primes))
        return [self.result("genus-size oracle", bad == 0, f"{samples} triples, {bad} mismatches"),
            self.result("prime-field comparison", sharper, f"{len(primes)} primes")]
