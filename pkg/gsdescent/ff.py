"""Exact arithmetic in small finite fields F_{p^m}.

Fields are built either over the prime field (a monic irreducible modulus with integer
coefficients mod p) or as a degree-2 tower F_{q^2} = F_q[W]/(quadratic) over another field.
Elements are stored as one integer per element: the base-field coordinates c_0..c_{m-1}
packed as sum(c_k * |base|^k). Because every level packs its coordinates the same way, the
p-adic digits of that integer are always the F_p-coordinates of the element, so addition
is digit-wise mod p all the way down the tower, and an element lies in the base field
exactly when its integer is smaller than |base|.

Multiplication, inversion and powers go through exponent/log tables over a stored
multiplicative generator, built eagerly at construction time. After construction nothing
is mutated, so fields and elements can be shared freely between threads and processes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sympy import isprime, primefactors

from .utils import InternalConsistencyError

MAX_FIELD_ORDER = 2 ** 20
MAX_QUADRATIC_BASE_ORDER = 2 ** 10

# Ascending coefficients c_0, ..., c_m of the moduli used in the worked examples
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),           # w^2 + w + 1
    (2, 3): (1, 1, 0, 1),        # w^3 + w + 1
    (2, 4): (1, 1, 0, 0, 1),     # w^4 + w + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # w^5 + w^2 + 1
    (3, 2): (2, 2, 1),           # w^2 + 2w + 2
    (3, 3): (1, 2, 0, 1),        # w^3 + 2w + 1
}


class FieldError(ValueError):
    pass

class NotPrimeError(FieldError):
    pass

class ReducibleModulusError(FieldError):
    pass

class FieldTooLargeError(FieldError):
    pass

class FieldMismatchError(FieldError):
    pass


class _ResidueRing:
    """Integers mod p, the coefficient ring underneath every field built over F_p.
    Implements the same integer-level protocol as FieldSpec (_add, _mul, ...)."""

    def __init__(self, p):
        self.characteristic = p
        self.order = p

    def _add(self, a, b): return (a + b) % self.order

    def _neg(self, a): return (-a) % self.order

    def _sub(self, a, b): return (a - b) % self.order

    def _mul(self, a, b): return (a * b) % self.order

    def _inv(self, a):
        if a % self.order == 0: raise ZeroDivisionError(f"division by zero mod {self.order}")
        return pow(a, -1, self.order)


def _poly_rem(ops, num, den):
    """Remainder of `num` by `den`, both ascending coefficient lists of packed integers."""
    num = list(num)
    lead_inv = ops._inv(den[-1])
    shift = len(num) - len(den)
    while shift >= 0:
        c = ops._mul(num[shift + len(den) - 1], lead_inv)
        if c != 0:
            for j, d in enumerate(den):
                num[shift + j] = ops._sub(num[shift + j], ops._mul(c, d))
        shift -= 1
    return num[:len(den) - 1]


def _is_irreducible(ops, modulus):
    """Exhaustive factor search: a degree-m polynomial is reducible iff it has a monic
    factor of degree 1..m//2."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for tail in product(range(ops.order), repeat=d):
            if not any(_poly_rem(ops, modulus, list(tail) + [1])):
                return False
    return True


class FieldSpec:
    """An explicit finite field, either F_p[w]/(modulus) or a tower base[W]/(modulus).

    `modulus` holds ascending coefficients as packed integers of the base (plain residues
    mod p when `base` is None). The residue class of the indeterminate is used as the
    multiplicative generator when it is primitive; otherwise the first primitive element
    in packed-integer order is used, and `indeterminate_is_generator` records which."""

    def __init__(self, p, modulus, base=None, generator_name="w"):
        if base is not None and base.characteristic != p:
            raise FieldMismatchError("a tower must keep the characteristic of its base")
        self.characteristic = p
        self.base = base
        self._ops = base if base is not None else _ResidueRing(p)
        self.base_order = self._ops.order

        modulus = tuple(int(c) for c in modulus)
        if len(modulus) < 2:
            raise FieldError("the modulus must have degree at least 1")
        if modulus[-1] != 1:
            raise FieldError("the modulus must be monic")
        if any(c < 0 or c >= self.base_order for c in modulus):
            raise FieldError(f"modulus coefficients must be reduced below {self.base_order}")
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.order = self.base_order ** self.degree
        if self.order > MAX_FIELD_ORDER:
            raise FieldTooLargeError(f"fields are capped at {MAX_FIELD_ORDER} elements")
        if not _is_irreducible(self._ops, modulus):
            raise ReducibleModulusError(f"modulus {modulus} is reducible over the base field")

        self.total_degree = (base.total_degree if base is not None else 1) * self.degree
        self.generator_name = generator_name
        self._key = (p, modulus, None if base is None else base._key)

        if self.degree > 1:
            self._indeterminate = self.base_order
        else:
            self._indeterminate = self._ops._neg(modulus[0])

        gen = self._indeterminate
        if not self._is_primitive(gen):
            gen = next(v for v in range(1, self.order) if self._is_primitive(v))
        self._generator = gen
        self.indeterminate_is_generator = gen == self._indeterminate
        self._build_tables()


    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        over = "F_%d" % self.characteristic if self.base is None else self.base.name
        return f"FieldSpec({self.name} over {over}, modulus={self.modulus_text()})"

    @property
    def name(self): return f"F_{self.order}"

    ##################################################################
    # Packed-integer arithmetic, shared with towers built on top
    ##################################################################

    def _decode(self, v):
        coords = []
        for _ in range(self.degree):
            v, c = divmod(v, self.base_order)
            coords.append(c)
        return coords

    def _encode(self, coords):
        v = 0
        for c in reversed(coords):
            v = v * self.base_order + c
        return v

    def _raw_mul(self, a, b):
        # Schoolbook product over the base followed by reduction; only used to build tables
        ops, m = self._ops, self.degree
        xs, ys = self._decode(a), self._decode(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(xs):
            if x == 0: continue
            for j, y in enumerate(ys):
                prod[i + j] = ops._add(prod[i + j], ops._mul(x, y))
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c == 0: continue
            for j in range(m):
                prod[k - m + j] = ops._sub(prod[k - m + j], ops._mul(c, self.modulus[j]))
            prod[k] = 0
        return self._encode(prod[:m])

    def _raw_pow(self, a, k):
        result = 1
        while k:
            if k & 1: result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return result

    def _is_primitive(self, v):
        if v == 0: return False
        group_order = self.order - 1
        return all(self._raw_pow(v, group_order // r) != 1 for r in primefactors(group_order))

    def _build_tables(self):
        group_order = self.order - 1
        self._exp = [0] * group_order
        self._log = [None] * self.order
        x = 1
        for k in range(group_order):
            if self._log[x] is not None:
                raise InternalConsistencyError(f"generator of {self.name} is not primitive")
            self._exp[k] = x
            self._log[x] = k
            x = self._raw_mul(x, self._generator)
        if x != 1:
            raise InternalConsistencyError(f"generator order mismatch in {self.name}")

    def _add(self, a, b):
        p = self.characteristic
        if p == 2: return a ^ b
        result, place = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            result += ((da + db) % p) * place
            place *= p
        return result

    def _neg(self, a):
        p = self.characteristic
        if p == 2: return a
        result, place = 0, 1
        while a:
            a, da = divmod(a, p)
            result += ((-da) % p) * place
            place *= p
        return result

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _mul(self, a, b):
        if a == 0 or b == 0: return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def _inv(self, a):
        if a == 0: raise ZeroDivisionError(f"division by zero in {self.name}")
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def _pow(self, a, k):
        if a == 0:
            if k < 0: raise ZeroDivisionError(f"zero raised to a negative power in {self.name}")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    ##################################################################
    # Public element API
    ##################################################################

    @property
    def zero(self): return FieldElement(self, 0)

    @property
    def one(self): return FieldElement(self, 1)

    @property
    def generator(self): return FieldElement(self, self._generator)

    @property
    def indeterminate(self): return FieldElement(self, self._indeterminate)

    def from_int(self, k):
        """The image of the integer k in the prime subfield."""
        return FieldElement(self, k % self.characteristic)

    def element(self, coords):
        """Builds an element from its coordinates over the base field; coordinates may be
        packed integers or elements of the base."""
        coords = list(coords)
        if len(coords) != self.degree:
            raise FieldError(f"{self.name} elements have exactly {self.degree} coordinates")
        packed = []
        for c in coords:
            if isinstance(c, FieldElement):
                if self.base is None or c.field != self.base:
                    raise FieldMismatchError(f"coordinate {c} is not in the base of {self.name}")
                c = c.value
            elif self.base is None:
                c = c % self.characteristic
            elif not 0 <= c < self.base_order:
                raise FieldError(f"packed coordinate {c} out of range for {self.base.name}")
            packed.append(c)
        return FieldElement(self, self._encode(packed))

    def power(self, k):
        """generator ** k"""
        return FieldElement(self, self._exp[k % (self.order - 1)])

    def elements(self):
        """All elements, in packed-integer order (zero first)."""
        return [FieldElement(self, v) for v in range(self.order)]

    def nonzero_powers(self):
        """generator^0, generator^1, ..., generator^(order-2)"""
        return [FieldElement(self, v) for v in self._exp]

    def subfield(self, b):
        """The elements x with x^b = x, i.e. the subfield of order b."""
        group_order = self.order - 1
        if b < 2 or group_order % (b - 1) or not _is_power_of(b, self.characteristic):
            raise FieldError(f"{self.name} has no subfield of order {b}")
        step = group_order // (b - 1)
        return (self.zero,) + tuple(self.power(k * step) for k in range(b - 1))

    def embed(self, x):
        """Maps an element of this field or of any field below it in the tower into this field."""
        if x.field == self: return x
        if self.base is None:
            raise FieldMismatchError(f"{x.field.name} is not a subfield of {self.name}")
        return FieldElement(self, self.base.embed(x).value)

    def contains_in(self, x, target):
        """True iff the element x of this field lies in the subfield `target` below it."""
        return x.field == self and x.value < target.order and self._is_below(target)

    def restrict(self, x, target):
        """Inverse of `embed`: returns x as an element of `target`, a field below this one."""
        if x.field != self:
            raise FieldMismatchError(f"{x} is not an element of {self.name}")
        if not self._is_below(target):
            raise FieldMismatchError(f"{target.name} is not below {self.name} in the tower")
        if x.value >= target.order:
            raise FieldError(f"{x} does not lie in {target.name}")
        return FieldElement(target, x.value)

    def _is_below(self, target):
        field = self
        while field is not None:
            if field == target: return True
            field = field.base
        return False

    def modulus_json(self):
        if self.base is None:
            return list(self.modulus)
        return [FieldElement(self.base, c).to_json() for c in self.modulus]

    def modulus_text(self):
        if self.base is None:
            coeff = str
        else:
            coeff = lambda c: FieldElement(self.base, c).render()
        name = self.generator_name
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.modulus[k]
            if c == 0: continue
            mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            if k == 0:
                terms.append(coeff(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{coeff(c)}*{mono}")
        return " + ".join(terms)

    def presentation(self):
        """'F_q = F_p[w]/(modulus)'; a prime field prints as 'F_p = Z/pZ'."""
        if self.base is None and self.degree == 1:
            return f"{self.name} = Z/{self.characteristic}Z"
        below = f"F_{self.characteristic}" if self.base is None else self.base.name
        return f"{self.name} = {below}[{self.generator_name}]/({self.modulus_text()})"


def _is_power_of(b, p):
    while b > 1 and b % p == 0:
        b //= p
    return b == 1


@dataclass(frozen=True)
class FieldElement:
    """An element of `field`, stored as its packed integer. Equality is coordinate-wise."""
    field: FieldSpec
    value: int

    @property
    def coords(self):
        return tuple(self.field._decode(self.value))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field.name} "
                    f"and {other.field.name}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other).value
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None: return NotImplemented
        return FieldElement(self.field, self.field._add(self.value, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None: return NotImplemented
        return FieldElement(self.field, self.field._sub(self.value, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None: return NotImplemented
        return FieldElement(self.field, self.field._sub(v, self.value))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None: return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None: return NotImplemented
        return FieldElement(self.field, self.field._mul(self.value, self.field._inv(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None: return NotImplemented
        return FieldElement(self.field, self.field._mul(v, self.field._inv(self.value)))

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, k):
        return FieldElement(self.field, self.field._pow(self.value, k))

    def __bool__(self):
        return self.value != 0

    def inverse(self):
        return FieldElement(self.field, self.field._inv(self.value))

    def render(self, style="log"):
        """'0', '1' or 'w^k' (generator-power form), or with style='coords' the
        coordinate form 'c0+c1*w+...'."""
        name = self.field.generator_name
        if style == "coords":
            terms = []
            for k, c in enumerate(self.coords):
                if c == 0: continue
                if self.field.base is None:
                    coeff = str(c)
                else:
                    coeff = FieldElement(self.field.base, c).render()
                if k == 0:
                    terms.append(coeff)
                    continue
                mono = name if k == 1 else f"{name}^{k}"
                terms.append(mono if coeff == "1" else f"{coeff}*{mono}")
            return "+".join(terms) if terms else "0"
        k = discrete_log(self)
        if k is None: return "0"
        if k == 0: return "1"
        return name if k == 1 else f"{name}^{k}"

    def to_json(self):
        k = discrete_log(self)
        if k is None:
            return {"log": None, "coords": list(self.coords)}
        return {"log": k}

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"<{self.render()} in {self.field.name}>"


##################################################################
# Module-level operations
##################################################################

def _least_irreducible(ops, m):
    for v in range(ops.order ** m):
        tail = []
        for _ in range(m):
            v, c = divmod(v, ops.order)
            tail.append(c)
        if _is_irreducible(ops, tail + [1]):
            return tuple(tail + [1])
    raise InternalConsistencyError(f"no irreducible polynomial of degree {m} found")


def make_field(p, m, modulus="default"):
    """Builds F_{p^m} over F_p. With modulus="default", the moduli of the worked examples
    are used for the six (p, m) pairs in DEFAULT_MODULI. Otherwise the lexicographically
    least monic irreducible polynomial (highest coefficient most significant) is used, which
    is T for prime fields; w then names the least primitive root."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrimeError(f"the characteristic must be prime, got {p}")
    if not isinstance(m, int) or m < 1:
        raise FieldError(f"the degree must be a positive integer, got {m}")
    if p ** m > MAX_FIELD_ORDER:
        raise FieldTooLargeError(f"fields are capped at {MAX_FIELD_ORDER} elements")
    if isinstance(modulus, str):
        if modulus != "default":
            raise FieldError(f"unknown modulus keyword {modulus!r}")
        modulus = DEFAULT_MODULI.get((p, m)) or _least_irreducible(_ResidueRing(p), m)
    modulus = tuple(modulus)
    if len(modulus) != m + 1:
        raise FieldError(f"the modulus must have degree {m}, got {len(modulus) - 1}")
    if any(not 0 <= c < p for c in modulus):
        raise FieldError(f"modulus coefficients must lie in 0..{p - 1}")
    return FieldSpec(p, modulus, generator_name="w")


def extend_quadratic(base):
    """Builds F_{q^2} as base[W]/(W^2 + c1*W + c0). Candidates are scanned with c1 outer and
    c0 inner, each running through 0, 1, w, w^2, ... (generator-power order); the first
    one without a root in the base is used."""
    if base.order > MAX_QUADRATIC_BASE_ORDER:
        raise FieldTooLargeError(f"quadratic towers are capped at bases of "
            f"{MAX_QUADRATIC_BASE_ORDER} elements")
    ranked = [0] + list(base._exp)
    for c1 in ranked:
        for c0 in ranked[1:]:
            if not _has_quadratic_root(base, c0, c1):
                return FieldSpec(base.characteristic, (c0, c1, 1), base=base, generator_name="W")
    raise InternalConsistencyError(f"no irreducible quadratic over {base.name}")


def _has_quadratic_root(base, c0, c1):
    for x in range(base.order):
        if base._add(base._add(base._mul(x, x), base._mul(c1, x)), c0) == 0:
            return True
    return False


ARITHMETIC_OPS = ("add", "sub", "mul", "div", "pow")

def arithmetic(x, y, op, k=None):
    """Dispatches one field operation by name; for op='pow', `y` is ignored and `k` is the
    (possibly negative) exponent."""
    if op == "add": return x + y
    if op == "sub": return x - y
    if op == "mul": return x * y
    if op == "div": return x / y
    if op == "pow": return x ** k
    raise FieldError(f"unknown operation {op!r}; expected one of {', '.join(ARITHMETIC_OPS)}")


def frobenius(x, e):
    """x^(p^e), by e repeated p-th powers (e is reduced modulo the degree over F_p)."""
    p = x.field.characteristic
    for _ in range(e % x.field.total_degree):
        x = x ** p
    return x


def trace_norm(x, target):
    """(x + x^q, x * x^q) for x in a quadratic tower over `target` = F_q, returned as
    elements of `target`."""
    field = x.field
    if field.base != target or field.degree != 2:
        raise FieldMismatchError(f"{field.name} is not a quadratic tower over {target.name}")
    conj = x ** target.order
    trace, norm = x + conj, x * conj
    try:
        return field.restrict(trace, target), field.restrict(norm, target)
    except FieldError as e:
        raise InternalConsistencyError(f"trace/norm of {x} escaped {target.name}: {e}")


def discrete_log(x):
    """k with generator^k = x, or None (the zero marker) when x = 0."""
    return x.field._log[x.value]


@lru_cache(maxsize=None)
def _cached_pair(p, n, modulus):
    base = make_field(p, n, modulus if modulus is not None else "default")
    return base, extend_quadratic(base)


def field_pair(p, n, modulus="default"):
    """(F_q, F_{q^2}) for q = p^n, with F_{q^2} as a quadratic tower. Cached per arguments."""
    key = None if isinstance(modulus, str) and modulus == "default" else tuple(modulus)
    return _cached_pair(p, n, key)
