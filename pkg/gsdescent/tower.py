"""Equations of the Garcia-Stichtenoth tower and of its completed form over F_q, plus
brute-force statistics for the curves at the first stage.

The tower over F_{q^2} is F_1 = F(x_1) and F_{i+1} = F_i(z_{i+1}) with
z_{i+1}^q + z_{i+1} = x_i^{q+1} and x_i = z_i / x_{i-1}. Its completed form over F_q inserts
n - 1 intermediate steps of degree p between consecutive stages, using a descent table:
t_{i,s} = P_{n-s}(z_{i+1}) satisfies M_{n-s}(t_{i,s}) = x_i^{q+1}.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import reduce

from tabulate import tabulate
from tqdm import tqdm

from .ff import FieldElement
from .linpoly import LinearizedPoly, symbolic_compose
from .utils import InternalConsistencyError, chunker

MAX_DEPTH = 16
MAX_COUNT_WORK = 2 ** 20


class TowerError(ValueError):
    pass


class RelationKind:
    RATIONAL = "rational"
    ARTIN_SCHREIER = "artin_schreier"
    INTERMEDIATE = "intermediate"
    RECURSION_LINK = "recursion_link"


@dataclass(frozen=True)
class TowerEquation:
    """One generator of the tower and the relation that introduces it.

    `relation` is the defining equation over the stage G_{i,0}; `step` (completed tower
    only) is the same generator's one-step equation over the previous intermediate field."""
    level: tuple
    new_var: str
    kind: str
    relation: str
    degree_over_prev: int | None
    degree_over_stage: int | None = None
    polynomial: LinearizedPoly | None = None
    definition: str | None = None
    step: str | None = None

    def to_json(self):
        out = {
            "level": list(self.level),
            "new_var": self.new_var,
            "relation": self.relation,
            "degree_over_prev": self.degree_over_prev,
            "kind": self.kind,
        }
        if self.definition is not None: out["definition"] = self.definition
        if self.step is not None: out["step"] = self.step
        return out


@dataclass(frozen=True)
class CurveStats:
    q: int
    i: int
    genus: int
    n1_over_Fq: int
    n_over_Fq2: int
    maximal: bool

    def to_json(self):
        return {"q": self.q, "i": self.i, "genus": self.genus, "n1_over_Fq": self.n1_over_Fq,
            "n_over_Fq2": self.n_over_Fq2, "maximal": self.maximal}


def _check_depth(depth):
    if not isinstance(depth, int) or not 1 <= depth <= MAX_DEPTH:
        raise TowerError(f"depth must be between 1 and {MAX_DEPTH}, got {depth}")


def _rational(field):
    return TowerEquation((1, 0), "x_1", RelationKind.RATIONAL, f"F_1 = {field.name}(x_1)", None)


def _link(i):
    return TowerEquation((i, 0), f"x_{i}", RelationKind.RECURSION_LINK,
        f"x_{i} = z_{i}/x_{i - 1}", 1, 1)


def _artin_schreier(field, i, degree, step=None):
    q = field.order
    return TowerEquation((i + 1, 0), f"z_{i + 1}", RelationKind.ARTIN_SCHREIER,
        f"z_{i + 1}^{q} + z_{i + 1} = x_{i}^{q + 1}", degree, q,
        polynomial=LinearizedPoly.trace_poly(field, q), step=step)


def gs_tower(field, depth):
    """Equations of the tower up to F_depth, for `field` = F_q."""
    _check_depth(depth)
    eqs = [_rational(field)]
    for i in range(1, depth):
        if i >= 2: eqs.append(_link(i))
        eqs.append(_artin_schreier(field, i, field.order))
    return eqs


def _t(i, s):
    return f"t_{{{i},{s}}}"


def _step_text(table, j, var, rhs):
    return f"{table.step_poly(j).render(var)} = {rhs}"


def completed_tower(table, depth):
    """Equations of the completed tower up to G_{depth,0}, for the chain of `table`."""
    _check_depth(depth)
    if not verify_step_composition(table):
        raise InternalConsistencyError("one-step equations do not compose to the M_i")
    field, p, q, n = table.base_field, table.p, table.q, table.n
    eqs = [_rational(field)]
    for i in range(1, depth):
        if i >= 2: eqs.append(_link(i))
        x_pow = f"x_{i}^{q + 1}"
        for s in range(1, n):
            var = _t(i, s)
            M = table.M(n - s)
            below = x_pow if s == 1 else _t(i, s - 1)
            eqs.append(TowerEquation((i, s), var, RelationKind.INTERMEDIATE,
                f"{M.render(var)} = {x_pow}", p, p ** s, polynomial=M,
                definition=f"{var} = P_{n - s}(z_{i + 1})",
                step=_step_text(table, n - s + 1, var, below)))
        if n == 1:
            eqs.append(_artin_schreier(field, i, q))
        else:
            top = _step_text(table, 1, f"z_{i + 1}", _t(i, n - 1))
            eqs.append(_artin_schreier(field, i, p, step=top))
    return eqs


def verify_step_composition(table):
    """M_{n-s} = S_n o S_{n-1} o ... o S_{n-s+1} for every s, where S_j = T^p - W_j T;
    for s = n the composite is T^q + T."""
    n = table.n
    composite = LinearizedPoly.identity(table.base_field, table.p)
    for s in range(1, n + 1):
        composite = symbolic_compose(composite, table.step_poly(n - s + 1))
        if composite != table.M(n - s):
            return False
    return True


def ladder_equations(table):
    """One-step equations of the first stage, from z down to x, in short variable names
    (z, t_{n-1}, ..., t_1, x)."""
    n, q = table.n, table.q
    name = lambda s: "z" if s == n else f"t_{s}"
    out = []
    for s in range(n, 0, -1):
        below = f"x^{q + 1}" if s == 1 else name(s - 1)
        out.append(_step_text(table, n - s + 1, name(s), below))
    return out


def render_ladder(table):
    n = table.n
    fields = ["G_{2,0}" if s == n else f"G_{{1,{s}}}" for s in range(n, 0, -1)]
    rows = list(zip(fields, ladder_equations(table)))
    return tabulate(rows, headers=["field", "equation"], tablefmt="simple")


def first_stage_genus(field, i):
    """q (p^i - 1) / 2, the genus of G_{1,i} for 1 <= i <= n."""
    p, n, q = field.characteristic, field.total_degree, field.order
    if not 1 <= i <= n:
        raise TowerError(f"stage index must satisfy 1 <= i <= {n}, got {i}")
    return q * (p ** i - 1) // 2


def _image_histogram(M, values):
    field = M.field
    return Counter(M(FieldElement(field, v)).value for v in values)


def count_places_first_stage(table, i, over="q", workers=1, progress=False):
    """Rational places of M_{n-i}(t) = x^(q+1) over F_q (over="q") or F_{q^2} (over="q2").

    Affine solutions are counted with a histogram of M over all t, then summed over x;
    the single place at infinity is added. The t-range may be split over worker processes."""
    n, q = table.n, table.q
    if not 1 <= i <= n:
        raise TowerError(f"stage index must satisfy 1 <= i <= {n}, got {i}")
    if over not in ("q", "q2"):
        raise TowerError(f"`over` must be 'q' or 'q2', got {over!r}")
    field = table.base_field if over == "q" else table.chain.ambient
    M = table.M(n - i).embed(field)

    chunks = chunker(list(range(field.order)), max(1, -(-field.order // (4 * workers))))
    hist = Counter()
    chunk_pb = tqdm(chunks, disable=None if progress else True, leave=False,
        desc=f"counting over {field.name}")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_image_histogram, [M] * len(chunks), chunks):
                hist.update(part)
                chunk_pb.update(1)
        chunk_pb.close()
    else:
        for chunk in chunk_pb:
            hist.update(_image_histogram(M, chunk))

    affine = sum(hist[(x ** (q + 1)).value] for x in field.elements())
    return affine + 1


def check_maximality(table, i, workers=1, progress=False):
    q = table.q
    if q ** 3 > MAX_COUNT_WORK:
        raise TowerError(f"q = {q} is too large for exhaustive place counting")
    genus = first_stage_genus(table.base_field, i)
    n1 = count_places_first_stage(table, i, "q", workers, progress)
    n2 = count_places_first_stage(table, i, "q2", workers, progress)
    weil = q ** 2 + 1 + 2 * genus * q
    if n2 > weil:
        raise InternalConsistencyError(f"{n2} places over F_{q * q} exceed the Weil bound {weil}")
    return CurveStats(q, i, genus, n1, n2, n2 == weil)


def relative_degree_product(eqs, i):
    """Product of the relative degrees recorded from G_{i,0} up to G_{i+1,0}."""
    degrees = [e.degree_over_prev for e in eqs
        if e.kind in (RelationKind.INTERMEDIATE, RelationKind.ARTIN_SCHREIER)
        and (e.level[0] == i and e.level[1] > 0 or e.level == (i + 1, 0))]
    return reduce(lambda a, b: a * b, degrees, 1)
