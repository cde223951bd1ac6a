from ..descent import odd_p_factorization, subspace_poly_of, table_for
from ..ff import discrete_log, field_pair
from ..tower import check_maximality, ladder_equations, verify_step_composition
from .abstract import AbstractGoldenCheck


class AbstractTableCheck(AbstractGoldenCheck):
    """Rebuilds the descent table of a fixture and compares it entry by entry.

    Recognized fixture keys: p, n, modulus, norms (generator exponents), P and M (rendered
    polynomials keyed by level), ladder (one-step equations from z down to x),
    factor_exponents (odd p), counts (first-stage genus and place counts)."""

    def run(self):
        fx = self.load_fixture()
        base, ambient = field_pair(fx["p"], fx["n"], fx.get("modulus") or "default")
        norms = [base.power(k) for k in fx["norms"]] if fx.get("norms") else None
        table = table_for(ambient, norms)
        results = []

        for key, lookup in (("P", table.P), ("M", table.M)):
            for i, expected in fx.get(key, {}).items():
                got = lookup(int(i)).render()
                results.append(self.result(f"{key}_{i}", got == expected,
                    "" if got == expected else f"got {got}"))

        composed = all(table.M(i).compose(table.P(i)) == table.trace_poly()
            for i in range(1, table.n))
        direct = all(subspace_poly_of(table.chain, i) == table.P(i) for i in range(1, table.n))
        results.append(self.result("M_i o P_i = T^q + T", composed))
        results.append(self.result("recursion matches product expansion", direct))

        if "ladder" in fx:
            got = ladder_equations(table)
            results.append(self.result("ladder", got == fx["ladder"] and verify_step_composition(table),
                "" if got == fx["ladder"] else "got " + "; ".join(got)))

        if "factor_exponents" in fx:
            got = [discrete_log(f.coeffs[0]) for f in odd_p_factorization(ambient)[1:]]
            results.append(self.result("T^2 + a factors", got == fx["factor_exponents"],
                "" if got == fx["factor_exponents"] else f"got exponents {got}"))

        for expected in fx.get("counts", []):
            stats = check_maximality(table, expected["i"], workers=self.config.workers)
            got = {"i": stats.i, "genus": stats.genus, "n1": stats.n1_over_Fq,
                "n2": stats.n_over_Fq2}
            ok = got == expected and stats.maximal and stats.n1_over_Fq == table.q + 1
            results.append(self.result(f"places of G_1,{stats.i}", ok,
                f"genus {stats.genus}, N1 {stats.n1_over_Fq}, N2 {stats.n_over_Fq2}"))
        return results


class GoldenQ4(AbstractTableCheck):
    """q = 4, w^2 + w + 1 = 0."""
    name = "q4"
    fixture = "q4"
    order = 1


class GoldenQ8(AbstractTableCheck):
    """q = 8, w^3 + w + 1 = 0."""
    name = "q8"
    fixture = "q8"
    order = 2


class GoldenQ16(AbstractTableCheck):
    """q = 16, w^4 + w + 1 = 0."""
    name = "q16"
    fixture = "q16"
    order = 3


class GoldenQ32(AbstractTableCheck):
    """q = 32, w^5 + w^2 + 1 = 0, including the one-step ladder."""
    name = "q32"
    fixture = "q32"
    order = 4


class GoldenQ9(AbstractTableCheck):
    """q = 9, w^2 + 2w + 2 = 0, chain chosen by the norm w."""
    name = "q9"
    fixture = "q9"
    order = 5


class GoldenQ27(AbstractTableCheck):
    """q = 27, w^3 + 2w + 1 = 0, chain chosen by the norms 1 and w^2."""
    name = "q27"
    fixture = "q27"
    order = 6
