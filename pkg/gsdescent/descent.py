"""Descent of T^q + T from F_{q^2} to F_q.

The roots of T^q + T in F_{q^2} form an n-dimensional F_p-space (q = p^n). A basis
w_1..w_n of it gives a chain H_1 < H_2 < ... < H_n of spans, and each H_i splits
T^q + T = M_i(P_i(T)) with P_i the subspace polynomial of H_i. Although the roots live in
F_{q^2}, every P_i and M_i has its coefficients in F_q; descent_table computes them, checks
that they do, and records the one-step recursion P_j = P_{j-1}^p - W_j P_{j-1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .ff import FieldError, discrete_log, trace_norm
from .linpoly import (LinearizedPoly, OrdinaryPoly, moore_det, span, subspace_poly,
    symbolic_cofactor, symbolic_compose, to_ordinary)
from .utils import InternalConsistencyError


class ChainError(ValueError):
    pass


def _show(x, base_field):
    """Renders x in the F_q notation when it lies there, else in the F_{q^2} notation."""
    if x.field.contains_in(x, base_field):
        return x.field.restrict(x, base_field).render()
    return x.render()


@dataclass(frozen=True)
class SubspaceChain:
    """An F_p-basis of the kernel of T^q + T in `ambient` = F_{q^2}, with spans H_1..H_n."""
    ambient: object
    basis: tuple
    spans: tuple

    @property
    def base_field(self): return self.ambient.base

    @property
    def q(self): return self.ambient.base.order

    @property
    def p(self): return self.ambient.characteristic

    @property
    def n(self): return len(self.basis)

    def render_basis(self):
        return "(" + ", ".join(_show(w, self.base_field) for w in self.basis) + ")"


def make_chain(ambient, basis):
    """Validates `basis` and builds its chain of spans."""
    base = ambient.base
    if base is None or ambient.degree != 2:
        raise ChainError(f"{ambient.name} is not a quadratic tower")
    q, p, n = base.order, ambient.characteristic, base.total_degree
    basis = tuple(ambient.embed(w) for w in basis)
    if len(basis) != n:
        raise ChainError(f"a basis of the kernel of T^{q} + T has {n} elements, got {len(basis)}")
    for w in basis:
        if w ** q + w:
            raise ChainError(f"{w} is not a root of T^{q} + T")
    if not moore_det(basis, p):
        raise ChainError("basis elements are dependent over F_%d" % p)
    spans = tuple(span(basis[:i], p) for i in range(1, n + 1))
    for i, H in enumerate(spans, start=1):
        if not verify_galois_stability(H, q):
            raise InternalConsistencyError(f"H_{i} is not stable under x -> x^{q}")
    return SubspaceChain(ambient, basis, spans)


def trace_zero_kernel(ambient):
    """All x in F_{q^2} with x^q + x = 0, in packed-integer order."""
    q = ambient.base.order
    kernel = tuple(x for x in ambient.elements() if not x ** q + x)
    if len(kernel) != q:
        raise InternalConsistencyError(f"T^{q} + T has {len(kernel)} roots in {ambient.name}")
    return kernel


def canonical_chain(ambient):
    """(1, w, ..., w^(n-1)) in characteristic 2; (a, a*w, ..., a*w^(n-1)) with
    a = W^((q+1)/2) otherwise."""
    base = ambient.base
    q, n = base.order, base.total_degree
    powers = [ambient.embed(base.power(k)) for k in range(n)]
    if ambient.characteristic == 2:
        return make_chain(ambient, powers)
    alpha0 = ambient.power((q + 1) // 2)
    return make_chain(ambient, [alpha0 * w for w in powers])


def chain_from_norms(ambient, norms):
    """Odd characteristic only. For each norm a, picks the kernel element of smallest
    discrete log whose norm to F_q is a (a root of T^2 + a), then completes the family
    with canonical basis vectors."""
    base = ambient.base
    p, n = ambient.characteristic, base.total_degree
    if p == 2:
        raise ChainError("chains by norms only exist in odd characteristic")
    if len(norms) > n:
        raise ChainError(f"at most {n} norms can be given for q = {base.order}")
    kernel = [x for x in trace_zero_kernel(ambient) if x]
    by_log = sorted(kernel, key=discrete_log)

    picked = []
    for a in norms:
        if a.field != base:
            raise ChainError(f"norm {a} is not an element of {base.name}")
        alpha = next((x for x in by_log if trace_norm(x, base)[1] == a), None)
        if alpha is None:
            raise ChainError(f"{a} is not the norm of a root of T^{base.order} + T")
        picked.append(alpha)
    if picked and not moore_det(picked, p):
        raise ChainError("the roots selected by these norms are dependent over F_%d" % p)

    for w in canonical_chain(ambient).basis:
        if len(picked) == n: break
        if moore_det(picked + [w], p):
            picked.append(w)
    return make_chain(ambient, picked)


def verify_galois_stability(H, q):
    members = set(H)
    return all(a ** q in members for a in members)


@dataclass(frozen=True)
class DescentRow:
    i: int
    P: LinearizedPoly
    M: LinearizedPoly


@dataclass(frozen=True)
class DescentTable:
    """P_i and M_i over F_q for 1 <= i < n, and the recursion constants W_1..W_n."""
    chain: SubspaceChain
    rows: tuple
    recursion: tuple

    @property
    def q(self): return self.chain.q

    @property
    def p(self): return self.chain.p

    @property
    def n(self): return self.chain.n

    @property
    def base_field(self): return self.chain.base_field

    def trace_poly(self):
        return LinearizedPoly.trace_poly(self.base_field, self.q).rebase(self.p)

    def P(self, i):
        """P_0 = T, P_n = T^q + T."""
        if i == 0: return LinearizedPoly.identity(self.base_field, self.p)
        if i == self.n: return self.trace_poly()
        return self.rows[i - 1].P

    def M(self, i):
        """M_0 = T^q + T, M_n = T."""
        if i == 0: return self.trace_poly()
        if i == self.n: return LinearizedPoly.identity(self.base_field, self.p)
        return self.rows[i - 1].M

    def W(self, j):
        return self.recursion[j - 1]

    def step_poly(self, j):
        """T^p - W_j T, which maps P_{j-1} to P_j under composition."""
        F = self.base_field
        return LinearizedPoly(F, self.p, [-self.W(j), F.one])

    def render(self):
        F, K = self.base_field, self.chain.ambient
        lines = [
            f"q = {self.q}: {F.presentation()}, {K.presentation()}",
            f"basis = {self.chain.render_basis()}",
        ]
        for row in self.rows:
            lines.append(f"P_{row.i} = {row.P}")
            lines.append(f"M_{row.i} = {row.M}")
        for j, W in enumerate(self.recursion, start=1):
            lines.append(f"W_{j} = {W}")
        return lines

    def to_json(self):
        F = self.base_field
        return {
            "q": self.q,
            "modulus": F.modulus_json(),
            "quadratic_modulus": self.chain.ambient.modulus_json(),
            "basis": [w.to_json() for w in self.chain.basis],
            "rows": [{"i": r.i, "P": r.P.to_json(), "M": r.M.to_json(),
                "P_text": r.P.render(), "M_text": r.M.render()} for r in self.rows],
            "recursion": [{"j": j, "W": W.to_json(), "W_text": W.render()}
                for j, W in enumerate(self.recursion, start=1)],
        }


def descent_table(chain):
    F = chain.base_field
    p, q, n = chain.p, chain.q, chain.n
    A = LinearizedPoly.trace_poly(F, q).rebase(p)

    rows = []
    for i in range(1, n):
        P_i, M_i = symbolic_cofactor(A, chain.basis, i)
        try:
            P_i, M_i = P_i.restrict(F), M_i.restrict(F)
        except FieldError as e:
            raise InternalConsistencyError(f"level {i} of the descent escaped {F.name}: {e}")
        if not (P_i.is_monic and P_i.is_separable and P_i.ordinary_degree == p ** i):
            raise InternalConsistencyError(f"P_{i} = {P_i} has the wrong shape")
        rows.append(DescentRow(i, P_i, M_i))

    recursion = []
    P_prev = LinearizedPoly.identity(F, p)
    for j in range(1, n + 1):
        v = P_prev(chain.basis[j - 1])
        if not v:
            raise InternalConsistencyError(f"w_{j} lies in H_{j - 1}")
        try:
            W_j = chain.ambient.restrict(v ** (p - 1), F)
        except FieldError:
            raise InternalConsistencyError(f"W_{j} does not lie in {F.name}")
        recursion.append(W_j)
        step = LinearizedPoly(F, p, [-W_j, F.one])
        P_prev = symbolic_compose(step, P_prev)
        expected = rows[j - 1].P if j < n else A
        if P_prev != expected:
            raise InternalConsistencyError(f"recursion gives {P_prev} for P_{j}, expected {expected}")

    return DescentTable(chain, tuple(rows), tuple(recursion))


def image_space(table, i):
    """P_i applied to every root of T^q + T: exactly the root set of M_i."""
    P = table.P(i)
    return frozenset(P(a) for a in trace_zero_kernel(table.chain.ambient))


def kernel_norms(ambient):
    """Norms to F_q of the nonzero roots of T^q + T, ordered by discrete log."""
    base = ambient.base
    norms = {trace_norm(x, base)[1] for x in trace_zero_kernel(ambient) if x}
    return sorted(norms, key=discrete_log)


def odd_p_factorization(ambient):
    """T^q + T = T * prod(T^2 + a) over the norms a of the kernel; returns the factors,
    T first, over F_q."""
    base = ambient.base
    if ambient.characteristic == 2:
        raise ChainError("the quadratic factorization needs odd characteristic")
    T = OrdinaryPoly(base, (0, 1))
    factors = [T] + [OrdinaryPoly(base, (a, 0, 1)) for a in kernel_norms(ambient)]
    product = reduce(lambda acc, f: acc * f, factors)
    if product != to_ordinary(LinearizedPoly.trace_poly(base, base.order)):
        raise InternalConsistencyError(f"factors do not multiply back to T^{base.order} + T")
    return factors


def table_for(ambient, norms=None):
    """descent_table of the canonical chain, or of chain_from_norms(norms) when given."""
    chain = chain_from_norms(ambient, norms) if norms else canonical_chain(ambient)
    return descent_table(chain)


def subspace_poly_of(chain, i):
    """Direct product expansion over H_i; an independent oracle for the recursion."""
    return subspace_poly(chain.spans[i - 1], chain.p).restrict(chain.base_field)
