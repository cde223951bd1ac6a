"""Bilinear-complexity bounds for multiplication in F_{q^n}.

Given a curve over F_q of genus g with N_1 places of degree 1 and N_2 of degree 2,
mu_q(n) <= 3n + 3g holds when
  1. there is a non-special divisor of degree g - 1 (an input flag),
  2. 2g + 1 <= q^((n-1)/2) (q^(1/2) - 1),
  3. N_1 + 2 N_2 > 2n + 2g - 2.
The uniform bound mu_q(n) <= 3(1 + p/(q-3)) n holds for every q >= 4.

Condition 2 is decided in integers. With L = 2g + 1, A = q^n and B = q^(n-1) it reads
L <= sqrt(A) - sqrt(B), i.e. L^2 + 2L sqrt(B) + B <= A. So it holds iff
D = A - B - L^2 >= 0 and 4 L^2 B <= D^2. Equality is impossible: sqrt(A) - sqrt(B) is
irrational unless q is a square r^2, and then it is r^(n-1)(r-1), which is even, while
L is odd.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import N, Integer, Rational, isprime, primefactors, sqrt

from .utils import InternalConsistencyError

NUMERIC_DIGITS = 78  # ~256 bits


class BoundInputError(ValueError):
    pass


def _prime_of(q):
    if not isinstance(q, int) or q < 2:
        raise BoundInputError(f"q must be a prime power, got {q}")
    factors = primefactors(q)
    if len(factors) != 1:
        raise BoundInputError(f"q must be a prime power, got {q}")
    return int(factors[0])


def prime_power_parts(q):
    """(p, n) with q = p^n."""
    p, n, rest = _prime_of(q), 0, q
    while rest > 1:
        rest //= p
        n += 1
    return p, n


@dataclass(frozen=True)
class CurveInput:
    q: int
    n: int
    g: int
    n1: int
    n2: int
    nonspecial_assumed: bool | None = None

    def __post_init__(self):
        _prime_of(self.q)
        if self.n <= 1:
            raise BoundInputError(f"the extension degree n must exceed 1, got {self.n}")
        for name in ("g", "n1", "n2"):
            if getattr(self, name) < 0:
                raise BoundInputError(f"{name} must be nonnegative")
        if self.nonspecial_assumed is None:
            object.__setattr__(self, "nonspecial_assumed", self.q >= 4)

    @property
    def p(self): return _prime_of(self.q)


@dataclass(frozen=True)
class ConditionReport:
    nonspecial: bool
    genus_size: bool
    place_count: bool

    @property
    def all_hold(self):
        return self.nonspecial and self.genus_size and self.place_count

    def failing(self):
        return [k for k in ("nonspecial", "genus_size", "place_count") if not getattr(self, k)]


def genus_size_holds(q, n, g):
    """2g + 1 <= q^((n-1)/2) (sqrt(q) - 1), decided in exact integers."""
    L, A, B = 2 * g + 1, q ** n, q ** (n - 1)
    D = A - B - L * L
    return D >= 0 and 4 * L * L * B <= D * D


def genus_size_numeric(q, n, g, digits=NUMERIC_DIGITS):
    """The same comparison evaluated numerically at high precision."""
    q = Integer(q)
    rhs = N(q ** Rational(n - 1, 2) * (sqrt(q) - 1), digits)
    return bool(N(2 * g + 1, digits) <= rhs)


def chud_conditions(inp):
    return ConditionReport(
        nonspecial=bool(inp.nonspecial_assumed),
        genus_size=genus_size_holds(inp.q, inp.n, inp.g),
        place_count=inp.n1 + 2 * inp.n2 > 2 * inp.n + 2 * inp.g - 2,
    )


def mu_bound(inp):
    """(3n + 3g, []) when all three conditions hold, else (None, failing condition names)."""
    report = chud_conditions(inp)
    if report.all_hold:
        return 3 * inp.n + 3 * inp.g, []
    return None, report.failing()


def uniform_bound(q, n):
    """(3(1 + p/(q-3)) n, 3(1 + p/(q-3))) as exact rationals."""
    p = _prime_of(q)
    if q < 4:
        raise BoundInputError(f"the uniform bound needs q >= 4, got {q}")
    if n < 1:
        raise BoundInputError(f"n must be positive, got {n}")
    coeff = 3 * (1 + Fraction(p, q - 3))
    return coeff * n, coeff


def compare_prime_case(p):
    """(3(1 + p/(p-3)), 3(1 + 4/(p-3))): the uniform coefficient at q = p, and the sharper
    prime-field coefficient."""
    if not isinstance(p, int) or p < 5 or not isprime(p):
        raise BoundInputError(f"the prime-field comparison needs a prime p >= 5, got {p}")
    ours = 3 * (1 + Fraction(p, p - 3))
    cited = 3 * (1 + Fraction(4, p - 3))
    if not cited < ours:
        raise InternalConsistencyError(f"prime-field coefficient {cited} is not below {ours}")
    return ours, cited


def rational_json(x):
    return {"num": x.numerator, "den": x.denominator, "decimal": f"{float(x):.6f}"}


def show_rational(x):
    if x.denominator == 1: return str(x.numerator)
    return f"{x} ({float(x):.6f})"


@dataclass(frozen=True)
class BoundReport:
    q: int
    n: int
    uniform: Fraction
    asymptotic: Fraction
    curve: CurveInput | None = None
    conditions: ConditionReport | None = None
    bound: int | None = None
    failing: list = field(default_factory=list)
    comparison: tuple | None = None

    def render(self):
        lines = [f"q = {self.q}, n = {self.n}",
            f"uniform bound = {show_rational(self.uniform)}",
            f"asymptotic coefficient = {show_rational(self.asymptotic)}"]
        if self.curve is not None:
            c = self.curve
            lines.append(f"curve: g = {c.g}, N_1 = {c.n1}, N_2 = {c.n2}")
            yes_no = lambda b: "yes" if b else "no"
            lines.append(f"conditions: nonspecial={yes_no(self.conditions.nonspecial)}, "
                f"genus_size={yes_no(self.conditions.genus_size)}, "
                f"place_count={yes_no(self.conditions.place_count)}")
            if self.bound is not None:
                lines.append(f"mu bound = {self.bound}")
            else:
                lines.append(f"mu bound = not applicable (failing: {', '.join(self.failing)})")
        if self.comparison is not None:
            ours, cited = self.comparison
            lines.append(f"prime-field coefficients: uniform {show_rational(ours)}, "
                f"sharper {show_rational(cited)}")
        return lines

    def to_json(self):
        out = {"q": self.q, "n": self.n, "uniform_bound": rational_json(self.uniform),
            "asymptotic": rational_json(self.asymptotic)}
        if self.curve is not None:
            out["curve"] = {"g": self.curve.g, "n1": self.curve.n1, "n2": self.curve.n2,
                "nonspecial_assumed": self.curve.nonspecial_assumed}
            out["conditions"] = {"nonspecial": self.conditions.nonspecial,
                "genus_size": self.conditions.genus_size,
                "place_count": self.conditions.place_count}
            out["bound"] = self.bound
            out["failing"] = list(self.failing)
        if self.comparison is not None:
            out["comparison"] = {"uniform": rational_json(self.comparison[0]),
                "prime_field": rational_json(self.comparison[1])}
        return out


def bound_report(q, n, curve=None):
    uniform, asymptotic = uniform_bound(q, n)
    comparison = compare_prime_case(q) if isprime(q) and q >= 5 else None
    if curve is None:
        return BoundReport(q, n, uniform, asymptotic, comparison=comparison)
    bound, failing = mu_bound(curve)
    return BoundReport(q, n, uniform, asymptotic, curve, chud_conditions(curve), bound,
        failing, comparison)
