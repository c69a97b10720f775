"""Buchberger's algorithm over the rationals for zero-dimensional solution counting.

Working polynomials are dicts {exponent tuple: int}. Reduction is
fraction-free: the work polynomial is rescaled by the reducer's leading
coefficient, and its content is stripped once the rescaling has added
CONTENT_STRIP_BITS bits and again when the reduction ends. Inside the pair
loop only leading terms are reduced; the final basis is tail-reduced once.
The public types carry monic `Polynomial` values.
"""
import heapq
import logging
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import chain, product
from math import gcd

from config import default_budget
from errors import BudgetExceededError, InputError, NotZeroDimensionalError, ZeroPolynomialError
from polynomials import Polynomial, grevlex_key

logger = logging.getLogger(__name__)

GREVLEX = "grevlex"
CONTENT_STRIP_BITS = 256

# cost orders candidate reducers: smaller leading coefficient first, then fewer terms
_Entry = namedtuple("_Entry", ["lm", "poly", "cost"])


@lru_cache(maxsize=None)
def _key(monomial):
    return grevlex_key(monomial)


@lru_cache(maxsize=None)
def _heap_key(monomial):
    # componentwise negation of grevlex_key: heapq pops the largest monomial first
    return (-sum(monomial), tuple(reversed(monomial)))


def _divides(small, big):
    return all(s <= b for s, b in zip(small, big))


def _lead(poly):
    return max(poly, key=_key)


def _entry(poly):
    lm = _lead(poly)
    return _Entry(lm, poly, (abs(poly[lm]).bit_length(), len(poly)))


def _content(values):
    """gcd of the integers, smallest first so the remaining gcds run against a small number"""
    result = 0
    for v in sorted(values, key=lambda c: abs(c).bit_length()):
        result = gcd(result, v)
        if result == 1:
            break
    return result


def _primitive(poly):
    if not poly:
        return poly
    content = _content(poly.values())
    if poly[_lead(poly)] < 0:
        content = -content
    if content == 1:
        return poly
    return {m: c // content for m, c in poly.items()}


def _from_polynomial(f):
    return {m: int(c) for m, c in f.primitive_integer().terms.items()}


def _to_polynomial(nvars, poly):
    lc = poly[_lead(poly)]
    return Polynomial(nvars, {m: Fraction(c, lc) for m, c in poly.items()})


def _pick_reducer(m, basis):
    best = None
    for g in basis:
        if _divides(g.lm, m) and (best is None or g.cost < best.cost):
            best = g
    return best


def _reduce(poly, basis, full=True):
    """Normal form modulo the entries, up to a nonzero integer factor.

    With full=False only the leading term is reduced and the tail is
    returned as it stands.
    """
    work = dict(poly)
    heap = [(_heap_key(m), m) for m in work]
    heapq.heapify(heap)
    remainder = {}
    grown = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = work.get(m)
        if c is None:
            continue
        divisor = _pick_reducer(m, basis)
        if divisor is None:
            if not full:
                break
            remainder[m] = work.pop(m)
            continue
        lc_g = divisor.poly[divisor.lm]
        k = gcd(c, lc_g)
        scale, factor = lc_g // k, c // k
        if scale < 0:
            scale, factor = -scale, -factor
        if scale != 1:
            for mm in work:
                work[mm] *= scale
            for mm in remainder:
                remainder[mm] *= scale
            grown += scale.bit_length()
        shift = tuple(x - y for x, y in zip(m, divisor.lm))
        for mg, cg in divisor.poly.items():
            target = tuple(x + y for x, y in zip(mg, shift))
            old = work.get(target)
            if old is None:
                work[target] = -factor * cg
                heapq.heappush(heap, (_heap_key(target), target))
                continue
            value = old - factor * cg
            if value:
                work[target] = value
            else:
                del work[target]
        if grown >= CONTENT_STRIP_BITS:
            content = _content(chain(work.values(), remainder.values()))
            if content > 1:
                work = {mm: cc // content for mm, cc in work.items()}
                remainder = {mm: cc // content for mm, cc in remainder.items()}
            grown = 0
    return _primitive(remainder if full else work)


def _s_polynomial(f, g):
    lm_f, lm_g = f.lm, g.lm
    lcm = tuple(max(a, b) for a, b in zip(lm_f, lm_g))
    lc_f, lc_g = f.poly[lm_f], g.poly[lm_g]
    k = gcd(lc_f, lc_g)
    a, b = lc_g // k, lc_f // k
    shift_f = tuple(x - y for x, y in zip(lcm, lm_f))
    shift_g = tuple(x - y for x, y in zip(lcm, lm_g))
    result = {}
    for m, c in f.poly.items():
        target = tuple(x + y for x, y in zip(m, shift_f))
        result[target] = result.get(target, 0) + a * c
    for m, c in g.poly.items():
        target = tuple(x + y for x, y in zip(m, shift_g))
        result[target] = result.get(target, 0) - b * c
    return {m: c for m, c in result.items() if c}


@dataclass(frozen=True)
class Ideal:
    """Ideal of Q[x_0..x_{nvars-1}] given by generators; zero generators are dropped"""
    nvars: int
    generators: tuple

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.nvars != self.nvars:
                raise InputError(f"Generator {g.render()} is not in {self.nvars} variables")
            if not g.is_zero():
                gens.append(g)
        if not gens:
            raise ZeroPolynomialError("An ideal needs at least one nonzero generator")
        object.__setattr__(self, "generators", tuple(gens))


@dataclass(frozen=True)
class GroebnerBasis:
    nvars: int
    basis: tuple
    order: str = GREVLEX
    staircase: frozenset = None

    def leading_monomials(self):
        return [g.leading_monomial() for g in self.basis]

    def is_unit(self):
        return len(self.basis) == 1 and self.basis[0].is_constant()


def _check_budget(basis, pending, max_degree_seen, budget):
    if len(basis) > budget.max_basis or max_degree_seen > budget.max_degree:
        raise BudgetExceededError(
            f"Groebner computation exceeded its budget "
            f"(basis {len(basis)}/{budget.max_basis}, degree {max_degree_seen}/{budget.max_degree})",
            diagnostics={
                "basis_size": len(basis),
                "pending_pairs": len(pending),
                "max_degree_seen": max_degree_seen,
                "max_basis": budget.max_basis,
                "max_degree": budget.max_degree,
            })


def buchberger(ideal, budget=None):
    """Reduced Groebner basis under grevlex.

    Pairs are taken by the normal strategy (smallest lcm of leading
    monomials, ties by pair index); the product and chain criteria prune
    pairs.
    """
    budget = budget or default_budget()
    nvars = ideal.nvars
    unit = GroebnerBasis(nvars, (Polynomial.constant(nvars, 1),))
    basis = []
    pending = set()
    heap = []
    max_degree_seen = 0

    def add(poly):
        nonlocal max_degree_seen
        entry = _entry(poly)
        lm = entry.lm
        if not any(lm):
            return False
        index = len(basis)
        basis.append(entry)
        max_degree_seen = max(max_degree_seen, sum(lm))
        for i in range(index):
            lcm = tuple(max(a, b) for a, b in zip(basis[i].lm, lm))
            pending.add((i, index))
            heapq.heappush(heap, (_key(lcm), i, index))
        _check_budget(basis, pending, max_degree_seen, budget)
        return True

    for g in ideal.generators:
        if not add(_primitive(_from_polynomial(g))):
            return _with_staircase(unit)

    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        f, g = basis[i], basis[j]
        lcm = tuple(max(a, b) for a, b in zip(f.lm, g.lm))
        if all(a == 0 or b == 0 for a, b in zip(f.lm, g.lm)):
            continue
        if any(
            k not in (i, j)
            and _divides(basis[k].lm, lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(basis))
        ):
            continue
        processed += 1
        remainder = _reduce(_s_polynomial(f, g), basis, full=False)
        if remainder:
            if not add(remainder):
                return _with_staircase(unit)
        if processed % 50 == 0:
            logger.debug(f"Buchberger: {processed} pairs reduced, basis size {len(basis)}, "
                         f"{len(pending)} pairs pending")

    reduced = _interreduce(basis)
    logger.debug(f"Buchberger finished: {processed} pairs reduced, reduced basis size {len(reduced)}")
    polys = tuple(_to_polynomial(nvars, e.poly) for e in reduced)
    return _with_staircase(GroebnerBasis(nvars, polys))


def _interreduce(basis):
    minimal = []
    for entry in sorted(basis, key=lambda e: _key(e.lm)):
        if not any(_divides(kept.lm, entry.lm) for kept in minimal):
            minimal.append(entry)
    # terms of an element sit at or below its leading monomial, so only the
    # already reduced elements before it in the order can reduce it
    reduced = []
    for entry in minimal:
        reduced.append(_entry(_reduce(entry.poly, reduced)))
    return reduced


def _pure_power_bounds(gb):
    bounds = [None] * gb.nvars
    for lm in gb.leading_monomials():
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            bounds[i] = lm[i] if bounds[i] is None else min(bounds[i], lm[i])
    return bounds


def is_zero_dimensional(gb):
    """True when every variable has a pure power among the leading monomials (or the ideal is the unit ideal)"""
    if gb.is_unit():
        return True
    return all(b is not None for b in _pure_power_bounds(gb))


def _with_staircase(gb):
    if gb.is_unit():
        return GroebnerBasis(gb.nvars, gb.basis, gb.order, frozenset())
    if not is_zero_dimensional(gb):
        return gb
    leads = gb.leading_monomials()
    bounds = _pure_power_bounds(gb)
    staircase = frozenset(
        m for m in product(*(range(b) for b in bounds))
        if not any(_divides(lm, m) for lm in leads)
    )
    return GroebnerBasis(gb.nvars, gb.basis, gb.order, staircase)


def count_standard_monomials(gb):
    """Dimension of the quotient ring: solutions counted with multiplicity"""
    if not is_zero_dimensional(gb):
        raise NotZeroDimensionalError(
            "Ideal is not zero-dimensional; standard monomials are infinite",
            diagnostics={"leading_monomials": [list(m) for m in gb.leading_monomials()]})
    if gb.staircase is None:
        gb = _with_staircase(gb)
    return len(gb.staircase)


def saturate_rabinowitsch(ideal, g):
    """Adjoin t*g - 1 in a fresh last variable t, removing the zero set of g"""
    if g.nvars != ideal.nvars:
        raise InputError(f"Saturating polynomial is not in {ideal.nvars} variables")
    if g.is_zero():
        raise ZeroPolynomialError("Cannot saturate by the zero polynomial")
    nvars = ideal.nvars + 1

    def lift(f):
        return Polynomial(nvars, {m + (0,): c for m, c in f.terms.items()})

    t = Polynomial.variable(nvars, nvars - 1)
    gens = tuple(lift(f) for f in ideal.generators) + (t * lift(g) - 1,)
    return Ideal(nvars, gens)


def normal_form(f, gb):
    """Remainder of f modulo the basis, up to a nonzero scalar"""
    if f.nvars != gb.nvars:
        raise InputError(f"{f.render()} is not in {gb.nvars} variables")
    if f.is_zero():
        return f
    entries = [_entry(_from_polynomial(b)) for b in gb.basis]
    remainder = _reduce(_from_polynomial(f), entries)
    if not remainder:
        return Polynomial.zero(f.nvars)
    return Polynomial(f.nvars, remainder)


def s_polynomial(f, g):
    """S-polynomial of two nonzero polynomials, up to a nonzero scalar"""
    a, b = _from_polynomial(f), _from_polynomial(g)
    poly = _s_polynomial(_entry(a), _entry(b))
    return Polynomial(f.nvars, poly)
