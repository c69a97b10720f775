"""Signed Euler characteristic of hyperplane arrangement complements.

The projective arrangement is deconed at a pivot hyperplane, the
intersection poset of the resulting affine arrangement is built exactly
over the rationals, and the Euler characteristic of the complement is the
sum of the Moebius values of all flats.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.special import comb

from config import ARRANGEMENT_MAX_HYPERPLANES
from errors import BudgetExceededError, InputError, InternalConsistencyError, NonLinearInputError
from polynomials import Polynomial, homogeneity_degree

logger = logging.getLogger(__name__)


def linear_coefficients(form):
    """Coefficient vector of a linear form"""
    nvars = form.nvars
    return tuple(
        form.terms.get(tuple(1 if i == j else 0 for i in range(nvars)), Fraction(0))
        for j in range(nvars))


@dataclass(frozen=True)
class ProjectiveArrangement:
    n: int
    forms: tuple

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if self.n < 1:
            raise InputError(f"Ambient dimension must be at least 1, got {self.n}")
        if not self.forms:
            raise InputError("An arrangement needs at least one hyperplane")
        for i, f in enumerate(self.forms):
            if f.nvars != self.n + 1:
                raise InputError(f"Form {i} is in {f.nvars} variables, expected {self.n + 1}")
            if f.is_zero() or homogeneity_degree(f) != 1:
                raise NonLinearInputError(f"Form {i} ({f.render()}) is not a nonzero linear form")
        vectors = self.vectors()
        for i, j in combinations(range(len(vectors)), 2):
            u, v = vectors[i], vectors[j]
            if all(u[a] * v[b] == u[b] * v[a] for a, b in combinations(range(len(u)), 2)):
                raise InputError(f"Hyperplanes {i} and {j} are proportional")

    def vectors(self):
        return [linear_coefficients(f) for f in self.forms]


@dataclass(frozen=True)
class AffineHyperplane:
    """normal . y + constant = 0"""
    normal: tuple
    constant: Fraction


@dataclass(frozen=True)
class AffineArrangement:
    dim: int
    hyperplanes: tuple


def decone(arr, pivot):
    """Send the pivot hyperplane to infinity and dehomogenize the others"""
    if not 0 <= pivot < len(arr.forms):
        raise InputError(f"Pivot {pivot} out of range for {len(arr.forms)} hyperplanes")
    vectors = arr.vectors()
    a = vectors[pivot]
    k = next(i for i, c in enumerate(a) if c)
    free = [j for j in range(len(a)) if j != k]
    hyperplanes = []
    for index, b in enumerate(vectors):
        if index == pivot:
            continue
        # On {a . x = 1}, x_k = (1 - sum_{j != k} a_j x_j) / a_k
        ratio = b[k] / a[k]
        normal = tuple(b[j] - ratio * a[j] for j in free)
        hyperplanes.append(AffineHyperplane(normal, ratio))
    return AffineArrangement(arr.n, tuple(hyperplanes))


def _rref(rows, width):
    """Reduced row echelon form of augmented rows (width coefficient columns + rhs).

    Returns (rows, consistent). Pivots are leftmost and normalized to 1.
    """
    matrix = [list(r) for r in rows]
    pivot_row = 0
    for col in range(width):
        found = next((r for r in range(pivot_row, len(matrix)) if matrix[r][col]), None)
        if found is None:
            continue
        matrix[pivot_row], matrix[found] = matrix[found], matrix[pivot_row]
        lead = matrix[pivot_row][col]
        matrix[pivot_row] = [x / lead for x in matrix[pivot_row]]
        for r in range(len(matrix)):
            if r != pivot_row and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [x - factor * y for x, y in zip(matrix[r], matrix[pivot_row])]
        pivot_row += 1
    consistent = all(row[width] == 0 for row in matrix[pivot_row:])
    return tuple(tuple(row) for row in matrix[:pivot_row]), consistent


def _equation(h):
    return tuple(h.normal) + (-h.constant,)


@dataclass(frozen=True)
class Flat:
    key: tuple
    rank: int
    hyperplanes: frozenset
    mobius: int


@dataclass(frozen=True)
class IntersectionPoset:
    dim: int
    flats: tuple
    covers: tuple

    def euler_characteristic(self):
        return sum(f.mobius for f in self.flats)

    def rank_counts(self):
        counts = {}
        for f in self.flats:
            counts[f.rank] = counts.get(f.rank, 0) + 1
        return [counts.get(r, 0) for r in range(max(counts) + 1)]

    def characteristic_polynomial(self):
        """Coefficients c_k of t^k in sum mu(X) t^(dim X)"""
        coeffs = [0] * (self.dim + 1)
        for f in self.flats:
            coeffs[self.dim - f.rank] += f.mobius
        return coeffs


def build_intersection_poset(affine):
    """All nonempty intersections of subsets of hyperplanes, with Moebius values"""
    m = len(affine.hyperplanes)
    if m > ARRANGEMENT_MAX_HYPERPLANES:
        raise BudgetExceededError(
            f"Arrangement has {m} hyperplanes; the limit is {ARRANGEMENT_MAX_HYPERPLANES}",
            diagnostics={"hyperplanes": m, "max_hyperplanes": ARRANGEMENT_MAX_HYPERPLANES})
    width = affine.dim
    equations = [_equation(h) for h in affine.hyperplanes]

    def containing(key):
        result = []
        for i, eq in enumerate(equations):
            rows, consistent = _rref(key + (eq,), width)
            if consistent and rows == key:
                result.append(i)
        return frozenset(result)

    levels = [{(): frozenset()}]
    while True:
        next_level = {}
        for key, hyperplanes in levels[-1].items():
            for i, eq in enumerate(equations):
                if i in hyperplanes:
                    continue
                rows, consistent = _rref(key + (eq,), width)
                if not consistent or rows in next_level:
                    continue
                next_level[rows] = containing(rows)
        if not next_level:
            break
        logger.debug(f"Rank {len(levels)}: {len(next_level)} flats")
        levels.append(next_level)

    flats = []
    mobius = {}
    for rank, level in enumerate(levels):
        for key in sorted(level):
            hyperplanes = level[key]
            if rank == 0:
                value = 1
            else:
                value = -sum(mobius[other] for other, other_h in _below(levels, rank, hyperplanes))
            mobius[key] = value
            flats.append(Flat(key, rank, hyperplanes, value))

    index = {f.key: i for i, f in enumerate(flats)}
    covers = tuple(
        (index[y.key], index[x.key])
        for x in flats for y in flats
        if y.rank + 1 == x.rank and y.hyperplanes < x.hyperplanes)
    return IntersectionPoset(width, tuple(flats), covers)


def _below(levels, rank, hyperplanes):
    for lower in range(rank):
        for key, other in levels[lower].items():
            if other < hyperplanes:
                yield key, other


def euler_complement_projective(arr, pivot=0):
    """Euler characteristic of P^n minus the arrangement"""
    poset = build_intersection_poset(decone(arr, pivot))
    chi = poset.euler_characteristic()
    logger.debug(f"Euler characteristic of the complement (pivot {pivot}): {chi}")
    return chi


def ml_degree_signed_euler(arr, pivot=0):
    return (-1) ** arr.n * euler_complement_projective(arr, pivot)


def generic_ml_degree(n, count):
    """ML degree of `count` generic hyperplanes in P^n: C(count - 2, n)"""
    if count < 2:
        raise InputError("The closed form needs at least two hyperplanes")
    return int(comb(count - 2, n, exact=True))


def is_generic(arr):
    """Maximal flat counts after deconing, equivalently every n+1 forms independent"""
    m = len(arr.forms) - 1
    counts = build_intersection_poset(decone(arr, 0)).rank_counts()
    expected = [int(comb(m, k, exact=True)) for k in range(min(arr.n, m) + 1)]
    return counts == expected


def sample_generic_arrangement(n, count, seed, attempts=100):
    """Random integer arrangement certified generic by its flat counts"""
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        forms = []
        for _ in range(count):
            coeffs = [int(c) for c in rng.integers(-10, 10, size=n + 1, endpoint=True)]
            forms.append(Polynomial(n + 1, {
                tuple(1 if i == j else 0 for i in range(n + 1)): c for j, c in enumerate(coeffs)}))
        try:
            arr = ProjectiveArrangement(n, tuple(forms))
        except (InputError, NonLinearInputError):
            continue
        if is_generic(arr):
            return arr
    raise InternalConsistencyError(
        f"No generic arrangement of {count} hyperplanes in P^{n} after {attempts} attempts")
