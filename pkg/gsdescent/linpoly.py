"""Linearized (additive) polynomials and the Moore-system cofactor solver.

A b-polynomial sum(c_i * T^(b^i)) is stored by its symbolic coefficients c_0..c_d; the
base b is explicit and never coerced. Composition M(Q(T)) is the product of the symbolic
ring. OrdinaryPoly is a plain dense polynomial used for expansions, long division and
the quadratic factors of T^q + T in odd characteristic.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .ff import FieldError, FieldMismatchError, _is_power_of
from .utils import InternalConsistencyError

MAX_SUBSPACE_SIZE = 1024


class LinpolyError(ValueError):
    pass

class NotSubspaceError(LinpolyError):
    pass

class DependentBasisError(LinpolyError):
    pass

class BaseMismatchError(LinpolyError):
    pass


def _trimmed(field, coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, int):
            c = field.from_int(c)
        elif c.field != field:
            c = field.embed(c)
        out.append(c)
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def _common_field(a, b):
    """The larger of two fields in the same tower."""
    if a == b: return a
    if a._is_below(b): return a
    if b._is_below(a): return b
    raise FieldMismatchError(f"{a.name} and {b.name} are not in one tower")


##################################################################
# Ordinary polynomials
##################################################################

@dataclass(frozen=True)
class OrdinaryPoly:
    """A dense polynomial over `field`, coefficients ascending."""
    field: object
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trimmed(self.field, self.coeffs))

    @classmethod
    def from_roots(cls, field, roots):
        """prod (T - a) over the given roots."""
        coeffs = [field.one]
        for a in roots:
            a = field.embed(a)
            shifted = [field.zero] + coeffs
            for k, c in enumerate(coeffs):
                shifted[k] = shifted[k] - a * c
            coeffs = shifted
        return cls(field, coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self): return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda cs: list(cs) + [self.field.zero] * (n - len(cs))
        return OrdinaryPoly(self.field, [a + b for a, b in zip(pad(self.coeffs), pad(other.coeffs))])

    def __neg__(self):
        return OrdinaryPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return OrdinaryPoly(self.field, ())
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a: continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return OrdinaryPoly(self.field, out)

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = other.degree
        lead_inv = other.coeffs[-1].inverse()
        support = [(j, d) for j, d in enumerate(other.coeffs) if d]
        quot = [self.field.zero] * max(len(rem) - dd, 0)
        for shift in range(len(rem) - dd - 1, -1, -1):
            c = rem[shift + dd] * lead_inv
            if not c: continue
            quot[shift] = c
            for j, d in support:
                rem[shift + j] = rem[shift + j] - c * d
        return OrdinaryPoly(self.field, quot), OrdinaryPoly(self.field, rem[:dd])

    def compose(self, inner):
        """self(inner(T))"""
        acc = OrdinaryPoly(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * inner + OrdinaryPoly(self.field, [c])
        return acc

    def render(self, var="T"):
        if self.is_zero: return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c: continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if k == 0:
                terms.append(c.render())
            elif c.value == 1:
                terms.append(mono)
            else:
                terms.append(f"{c.render()}*{mono}")
        return " + ".join(terms)

    def __str__(self):
        return self.render()


##################################################################
# Linearized polynomials
##################################################################

@dataclass(frozen=True)
class LinearizedPoly:
    """sum(coeffs[i] * T^(base^i)) over `field`; the empty coefficient tuple is the zero
    polynomial, whose symbolic and ordinary degrees are None."""
    field: object
    base: int
    coeffs: tuple

    def __post_init__(self):
        p = self.field.characteristic
        if self.base < p or not _is_power_of(self.base, p):
            raise LinpolyError(f"base {self.base} is not a power of {p}")
        object.__setattr__(self, "coeffs", _trimmed(self.field, self.coeffs))

    @classmethod
    def identity(cls, field, base):
        return cls(field, base, (1,))

    @classmethod
    def monomial(cls, field, base, k, coeff=1):
        """coeff * T^(base^k)"""
        return cls(field, base, [0] * k + [coeff])

    @classmethod
    def trace_poly(cls, field, q):
        """T^q + T as a q-polynomial."""
        return cls(field, q, (1, 1))

    @property
    def symbolic_degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def ordinary_degree(self):
        return self.base ** self.symbolic_degree if self.coeffs else None

    @property
    def is_zero(self): return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1].value == 1

    @property
    def is_separable(self):
        return bool(self.coeffs) and bool(self.coeffs[0])

    def __call__(self, x):
        return lin_eval(self, x)

    def compose(self, inner):
        return symbolic_compose(self, inner)

    def __add__(self, other):
        if self.base != other.base:
            raise BaseMismatchError(f"cannot add a {self.base}-polynomial and a {other.base}-polynomial")
        field = _common_field(self.field, other.field)
        a, b = self.embed(field).coeffs, other.embed(field).coeffs
        n = max(len(a), len(b))
        a, b = a + (field.zero,) * (n - len(a)), b + (field.zero,) * (n - len(b))
        return LinearizedPoly(field, self.base, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return LinearizedPoly(self.field, self.base, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def embed(self, field):
        """The same polynomial with coefficients read in a field above self.field."""
        if field == self.field: return self
        return LinearizedPoly(field, self.base, [field.embed(c) for c in self.coeffs])

    def restrict(self, target):
        """The same polynomial with coefficients read in a field below self.field; raises
        FieldError if some coefficient does not lie in `target`."""
        if target == self.field: return self
        return LinearizedPoly(target, self.base, [self.field.restrict(c, target) for c in self.coeffs])

    def lies_in(self, target):
        return all(self.field.contains_in(c, target) for c in self.coeffs)

    def rebase(self, new_base):
        """Reads a b-polynomial as a b'-polynomial, where b = b'^e: coefficient k moves
        to index e*k."""
        e, b = 0, 1
        while b < self.base:
            b *= new_base
            e += 1
        if b != self.base:
            raise BaseMismatchError(f"{self.base} is not a power of {new_base}")
        coeffs = [self.field.zero] * (e * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            coeffs[e * k] = c
        return LinearizedPoly(self.field, new_base, coeffs)

    def render(self, var="T"):
        if self.is_zero: return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c: continue
            power = self.base ** k
            mono = var if power == 1 else f"{var}^{power}"
            terms.append(mono if c.value == 1 else f"{c.render()}*{mono}")
        return " + ".join(terms)

    def to_json(self):
        return {"base": self.base, "coeffs": [c.to_json() for c in self.coeffs]}

    def __str__(self):
        return self.render()


def lin_eval(L, x):
    """sum(c_i * x^(b^i)) for x in L.field or in any field above it."""
    if x.field != L.field:
        L = L.embed(x.field)
    acc = x.field.zero
    for i, c in enumerate(L.coeffs):
        if c:
            acc = acc + c * x ** (L.base ** i)
    return acc


def symbolic_compose(M, Q):
    """M(Q(T)); coefficient j of the result is sum over i+k=j of m_i * q_k^(b^i)."""
    if M.base != Q.base:
        raise BaseMismatchError(f"cannot compose a {M.base}-polynomial with a {Q.base}-polynomial")
    field = _common_field(M.field, Q.field)
    M, Q = M.embed(field), Q.embed(field)
    if M.is_zero or Q.is_zero:
        return LinearizedPoly(field, M.base, ())
    out = [field.zero] * (len(M.coeffs) + len(Q.coeffs) - 1)
    for i, m in enumerate(M.coeffs):
        if not m: continue
        twist = M.base ** i
        for k, qk in enumerate(Q.coeffs):
            if qk:
                out[i + k] = out[i + k] + m * qk ** twist
    return LinearizedPoly(field, M.base, out)


def symbolic_right_divmod(R, Q):
    """(M, Rem) with R = M(Q(T)) + Rem and symbolic degree of Rem below that of Q."""
    if Q.is_zero:
        raise ZeroDivisionError("symbolic division by the zero polynomial")
    if R.base != Q.base:
        raise BaseMismatchError(f"cannot divide a {R.base}-polynomial by a {Q.base}-polynomial")
    field = _common_field(R.field, Q.field)
    R, Q = R.embed(field), Q.embed(field)
    dq = Q.symbolic_degree
    quot = [field.zero] * max(len(R.coeffs) - dq, 0)
    while not R.is_zero and R.symbolic_degree >= dq:
        s = R.symbolic_degree - dq
        c = R.coeffs[-1] / Q.coeffs[-1] ** (R.base ** s)
        quot[s] = quot[s] + c
        R = R - symbolic_compose(LinearizedPoly.monomial(field, R.base, s, c), Q)
    return LinearizedPoly(field, Q.base, quot), R


def to_ordinary(L):
    if L.is_zero:
        return OrdinaryPoly(L.field, ())
    coeffs = [L.field.zero] * (L.ordinary_degree + 1)
    for i, c in enumerate(L.coeffs):
        coeffs[L.base ** i] = c
    return OrdinaryPoly(L.field, coeffs)


def ordinary_divides(Q, R):
    """True iff Q divides R as ordinary polynomials (zero remainder on long division)."""
    if isinstance(Q, LinearizedPoly): Q = to_ordinary(Q)
    if isinstance(R, LinearizedPoly): R = to_ordinary(R)
    _, rem = divmod(R, Q)
    return rem.is_zero


def span(vectors, b):
    """The F_b-span of `vectors` (elements of one field), as a frozenset."""
    vectors = list(vectors)
    if not vectors:
        raise LinpolyError("cannot span an empty family without its ambient field")
    field = vectors[0].field
    scalars = field.subfield(b)
    out = {field.zero}
    for v in vectors:
        out = {s + c * v for s in out for c in scalars}
    return frozenset(out)


def subspace_poly(H, b):
    """prod (T - a) over an F_b-subspace H, returned as a monic b-polynomial. Computed by
    direct expansion and then checked to be supported on the powers of b."""
    H = sorted(H, key=lambda a: a.value)
    if not H:
        raise NotSubspaceError("a subspace contains at least 0")
    if len(H) > MAX_SUBSPACE_SIZE:
        raise LinpolyError(f"subspaces are capped at {MAX_SUBSPACE_SIZE} elements")
    field = H[0].field
    members = set(H)
    if field.zero not in members:
        raise NotSubspaceError("0 is missing from the set")
    for a, c in product(H, field.subfield(b)):
        if c * a not in members:
            raise NotSubspaceError(f"{c} * {a} leaves the set")
    for a, a2 in product(H, H):
        if a + a2 not in members:
            raise NotSubspaceError(f"{a} + {a2} leaves the set")

    expanded = OrdinaryPoly.from_roots(field, H)
    coeffs, power = [], 1
    while power <= expanded.degree:
        coeffs.append(expanded.coeffs[power])
        power *= b
    L = LinearizedPoly(field, b, coeffs)
    if to_ordinary(L) != expanded:
        raise InternalConsistencyError(f"product over a subspace is not a {b}-polynomial")
    return L


##################################################################
# Exact linear algebra over a field
##################################################################

def _determinant(rows):
    mat = [list(r) for r in rows]
    n = len(mat)
    det = mat[0][0].field.one
    for k in range(n):
        pivot = next((r for r in range(k, n) if mat[r][k]), None)
        if pivot is None:
            return det.field.zero
        if pivot != k:
            mat[k], mat[pivot] = mat[pivot], mat[k]
            det = -det
        det = det * mat[k][k]
        inv = mat[k][k].inverse()
        for row in range(k + 1, n):
            factor = mat[row][k] * inv
            if not factor: continue
            for col in range(k, n):
                mat[row][col] = mat[row][col] - factor * mat[k][col]
    return det


def _solve(rows, rhs):
    """Gauss-Jordan elimination; returns the solution of rows * X = rhs, or None when the
    matrix is singular."""
    mat = [list(r) for r in rows]
    vec = list(rhs)
    n = len(mat)
    for k in range(n):
        pivot = next((r for r in range(k, n) if mat[r][k]), None)
        if pivot is None:
            return None
        if pivot != k:
            mat[k], mat[pivot] = mat[pivot], mat[k]
            vec[k], vec[pivot] = vec[pivot], vec[k]

        factor = mat[k][k].inverse()
        vec[k] = vec[k] * factor
        for col in range(k, n):
            mat[k][col] = mat[k][col] * factor

        for row in range(n):
            if row == k: continue
            factor = mat[row][k]
            if not factor: continue
            vec[row] = vec[row] - factor * vec[k]
            for col in range(k, n):
                mat[row][col] = mat[row][col] - factor * mat[k][col]
    return vec


def moore_det(elems, b):
    """det of the matrix with entry (i, j) = elems[j]^(b^i)."""
    elems = list(elems)
    if not elems:
        raise LinpolyError("the Moore determinant needs at least one element")
    field = elems[0].field
    if any(w.field != field for w in elems):
        raise FieldMismatchError("Moore determinant entries must share one field")
    rows = [[w ** (b ** i) for w in elems] for i in range(len(elems))]
    return _determinant(rows)


def symbolic_cofactor(A, basis, i):
    """Splits A = M_i (x) A_i where A_i is the subspace polynomial of span(basis[:i]).

    A must be monic and separable of symbolic degree d = len(basis), with `basis` a
    b-basis of its roots. M_i comes from the Moore system
    sigma_j^(b^(t-1)) X_(t-1) + ... + sigma_j X_0 = -sigma_j^(b^t), sigma_j = A_i(w_j),
    over the d - i remaining basis vectors. Returns (A_i, M_i) over the field of `basis`."""
    basis = list(basis)
    d, b = A.symbolic_degree, A.base
    if not A.is_monic or not A.is_separable:
        raise LinpolyError(f"{A} must be monic and separable")
    if len(basis) != d:
        raise LinpolyError(f"a root basis of {A} has {d} elements, got {len(basis)}")
    if not 1 <= i < d:
        raise LinpolyError(f"split index must satisfy 1 <= i < {d}, got {i}")
    field = basis[0].field
    try:
        A = A.embed(field)
    except FieldError as e:
        raise FieldMismatchError(f"basis field {field.name} does not contain {A.field.name}: {e}")
    for w in basis:
        if A(w):
            raise LinpolyError(f"{w} is not a root of {A}")
    if not moore_det(basis, b):
        raise DependentBasisError("basis elements are dependent (Moore determinant is zero)")

    A_i = subspace_poly(span(basis[:i], b), b)
    t = d - i
    sigmas = [A_i(w) for w in basis[i:]]
    rows = [[s ** (b ** k) for k in range(t)] for s in sigmas]
    rhs = [-(s ** (b ** t)) for s in sigmas]
    solution = _solve(rows, rhs)
    if solution is None:
        raise InternalConsistencyError("the Moore system of the cofactor is singular")
    M_i = LinearizedPoly(field, b, solution + [field.one])

    if symbolic_compose(M_i, A_i) != A:
        raise InternalConsistencyError(f"({M_i}) composed with ({A_i}) does not give {A}")
    if not (M_i.is_monic and M_i.is_separable and M_i.symbolic_degree == t):
        raise InternalConsistencyError(f"cofactor {M_i} is not monic separable of degree {t}")
    if M_i.coeffs[0] * A_i.coeffs[0] != A.coeffs[0]:
        raise InternalConsistencyError("constant coefficients of the split do not multiply back")
    return A_i, M_i
