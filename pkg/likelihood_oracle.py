"""Critical points of the log-likelihood sum_i s_i log f_i on P^n minus D.

With sum_i s_i deg f_i = 0 the log-likelihood is a function on the
complement. In an affine chart its critical equations, cleared of
denominators, are

    h_j = sum_i s_i (d g_i / d y_j) prod_{k != i} g_k,   j = 1..n,

and spurious solutions on D are removed by saturating with prod g_k. The
number of standard monomials of the saturated ideal is the critical-point
count. Generic weights make the points simple and a random chart hyperplane
keeps them off the hyperplane at infinity; two trials with independent
randomness must agree.
"""
import hashlib
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from operator import mul

import numpy as np

from config import CERTIFY_POINTS, COORD_CHANGE_BOUND, CRITICAL_MAX_DIMENSION, DEFAULT_TRIALS, WEIGHT_BOUND
from errors import (
    BudgetExceededError,
    InputError,
    InternalConsistencyError,
    NonGenericWeightsError,
    NotHomogeneousError,
    NotZeroDimensionalError,
)
from groebner import Ideal, buchberger, count_standard_monomials, saturate_rabinowitsch
from polynomials import (
    Polynomial,
    dehomogenize,
    exact_divide,
    homogeneity_degree,
    poly_det,
    poly_gcd,
    squarefree_part,
    substitute_linear,
)
from tracking import track_oracle_trial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DivisorCollection:
    """Hypersurfaces D_0..D_m of P^n given by homogeneous forms"""
    n: int
    forms: tuple

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if self.n < 1:
            raise InputError(f"Ambient dimension must be at least 1, got {self.n}")
        if len(self.forms) < 2:
            raise InputError("A divisor collection needs at least two forms")
        for i, f in enumerate(self.forms):
            if f.nvars != self.n + 1:
                raise InputError(f"Form {i} is in {f.nvars} variables, expected {self.n + 1}")
            if f.is_zero():
                raise InputError(f"Form {i} is the zero polynomial")
            degree = homogeneity_degree(f)
            if degree is None:
                raise NotHomogeneousError(f"Form {i} ({f.render()}) is not homogeneous")
            if degree < 1:
                raise InputError(f"Form {i} is a constant")

    @property
    def degrees(self):
        return tuple(homogeneity_degree(f) for f in self.forms)


@dataclass(frozen=True)
class WeightVector:
    s: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.s) != len(self.degrees):
            raise InputError(f"{len(self.s)} weights for {len(self.degrees)} forms")
        if any(w == 0 for w in self.s):
            raise InputError(f"Weights must be nonzero, got {list(self.s)}")
        if sum(w * d for w, d in zip(self.s, self.degrees)) != 0:
            raise InputError(f"Weights {list(self.s)} violate sum s_i d_i = 0 for degrees {list(self.degrees)}")

    def scaled(self, factor):
        return WeightVector(tuple(factor * w for w in self.s), self.degrees)


@dataclass(frozen=True)
class OracleTrial:
    seed: int
    matrix_hash: str
    weights: tuple
    count: int
    retried: bool = False

    def to_dict(self):
        return {
            "seed": self.seed,
            "matrix_hash": self.matrix_hash,
            "weights": list(self.weights),
            "count": self.count,
            "retried": self.retried,
        }


@dataclass(frozen=True)
class OracleReport:
    count: object
    trials: tuple
    agreed: bool

    def to_dict(self):
        return {
            "name": "critical",
            "count": self.count,
            "agreed": self.agreed,
            "trials": [t.to_dict() for t in self.trials],
        }


def sample_weights(degrees, seed):
    """Nonzero integer weights in [-WEIGHT_BOUND, WEIGHT_BOUND] with sum s_i d_i = 0.

    The last weight is solved for; the others are drawn as multiples of
    d_last / gcd(d_i, d_last) so that it comes out integral.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) < 2:
        raise InputError("Need at least two degrees")
    if any(d < 1 for d in degrees):
        raise InputError(f"Degrees must be positive, got {list(degrees)}")
    rng = np.random.default_rng(seed)
    d_last = degrees[-1]
    for _ in range(1000):
        weights = []
        for d in degrees[:-1]:
            step = d_last // gcd(d, d_last)
            bound = max(1, WEIGHT_BOUND // step)
            k = 0
            while k == 0:
                k = int(rng.integers(-bound, bound, endpoint=True))
            weights.append(k * step)
        last = -sum(w * d for w, d in zip(weights, degrees)) // d_last
        if last and abs(last) <= WEIGHT_BOUND:
            return WeightVector(tuple(weights) + (last,), degrees)
    raise InternalConsistencyError(f"Could not sample weights for degrees {list(degrees)}")


def _products_without(polys):
    """prod_{k != i} polys[k] for each i, via prefix and suffix products"""
    one = Polynomial.constant(polys[0].nvars, 1)
    prefix = [one]
    for p in polys[:-1]:
        prefix.append(prefix[-1] * p)
    suffix = [one]
    for p in reversed(polys[1:]):
        suffix.append(suffix[-1] * p)
    suffix.reverse()
    return [a * b for a, b in zip(prefix, suffix)]


def _matrix_det(matrix):
    if not matrix:
        return Fraction(1)
    return poly_det([[Polynomial.constant(1, x) for x in row] for row in matrix]).constant_value()


def _certify(gs, weights, generators, product, rng):
    # h_j must equal prod(g) * sum_i s_i (dg_i/dy_j) / g_i wherever prod(g) != 0
    nvars = product.nvars
    checked = 0
    for _ in range(20 * CERTIFY_POINTS):
        if checked == CERTIFY_POINTS:
            break
        point = [Fraction(int(rng.integers(-50, 50, endpoint=True)), int(rng.integers(1, 20, endpoint=True)))
                 for _ in range(nvars)]
        values = [g.evaluate(point) for g in gs]
        if any(v == 0 for v in values):
            continue
        total = reduce(mul, values, Fraction(1))
        for j, h in enumerate(generators):
            expected = total * sum(s * g.partial(j).evaluate(point) / v
                                   for s, g, v in zip(weights.s, gs, values))
            if h.evaluate(point) != expected:
                raise InternalConsistencyError(
                    f"Likelihood generator {j} failed certification at {[str(p) for p in point]}")
        checked += 1


def likelihood_system(coll, weights, coord_change, certify_seed=0):
    """Critical equations in the chart x_0 = 1 after a coordinate change.

    Returns (ideal, saturation polynomial).
    """
    if len(weights.s) != len(coll.forms):
        raise InputError(f"{len(weights.s)} weights for {len(coll.forms)} forms")
    if _matrix_det(coord_change) == 0:
        raise InputError("Coordinate change is not invertible")
    transformed = [substitute_linear(f, coord_change) for f in coll.forms]
    # a nonzero form never dehomogenizes to zero
    gs = [dehomogenize(f, 0) for f in transformed]
    cofactors = _products_without(gs)
    product = cofactors[0] * gs[0]
    generators = []
    for j in range(coll.n):
        h = Polynomial.zero(coll.n)
        for s, g, cofactor in zip(weights.s, gs, cofactors):
            derivative = g.partial(j)
            if not derivative.is_zero():
                h = h + s * derivative * cofactor
        generators.append(h)
    _certify(gs, weights, generators, product, np.random.default_rng(certify_seed))
    if all(h.is_zero() for h in generators):
        raise NotZeroDimensionalError("Every likelihood equation vanishes identically")
    return Ideal(coll.n, tuple(generators)), product


def _random_chart_change(size, rng):
    """Identity with a random first row: x_0 -> x_0 + a_1 x_1 + ... + a_n x_n, determinant 1.

    The chart x_0 = 1 then misses a random hyperplane instead of x_0 = 0.
    """
    shifts = rng.integers(-COORD_CHANGE_BOUND, COORD_CHANGE_BOUND, size=size - 1, endpoint=True)
    first = [1] + [int(v) for v in shifts]
    return [first] + [[int(i == j) for j in range(size)] for i in range(1, size)]


def _matrix_hash(matrix):
    return hashlib.sha256(json.dumps(matrix).encode()).hexdigest()[:16]


def _trial_seed(seed, trial, attempt):
    return int(np.random.SeedSequence([seed, trial, attempt]).generate_state(1)[0])


def _run_trial(coll, seed, trial, budget):
    for attempt in range(2):
        trial_seed = _trial_seed(seed, trial, attempt)
        rng = np.random.default_rng(trial_seed)
        weights = sample_weights(coll.degrees, int(rng.integers(0, 2 ** 32)))
        matrix = _random_chart_change(coll.n + 1, rng)
        try:
            ideal, saturation = likelihood_system(coll, weights, matrix, certify_seed=trial_seed)
            # same saturation as by the product itself, with smaller coefficients
            basis = buchberger(saturate_rabinowitsch(ideal, saturation.primitive_integer()), budget)
            count = count_standard_monomials(basis)
        except NotZeroDimensionalError as e:
            if attempt == 0:
                logger.warning(f"Trial {trial}: {e.message}. Retrying with fresh randomness.")
                continue
            raise
        result = OracleTrial(trial_seed, _matrix_hash(matrix), weights.s, count, retried=attempt > 0)
        track_oracle_trial("critical", result)
        return result


def count_critical_points(coll, trials=DEFAULT_TRIALS, seed=0, budget=None):
    """Critical-point count by Groebner bases, repeated over independent random trials"""
    if trials < 2:
        raise InputError(f"At least two trials are required, got {trials}")
    if coll.n > CRITICAL_MAX_DIMENSION:
        raise BudgetExceededError(
            f"Critical-point oracle is limited to n <= {CRITICAL_MAX_DIMENSION}, got n = {coll.n}",
            diagnostics={"n": coll.n, "max_dimension": CRITICAL_MAX_DIMENSION})
    results = [_run_trial(coll, seed, t, budget) for t in range(trials)]
    counts = [r.count for r in results]
    agreed = len(set(counts)) == 1
    if not agreed:
        logger.warning(f"Critical-point trials disagree: {counts}")
    return OracleReport(counts[0] if agreed else None, tuple(results), agreed)


def count_critical_points_p1(coll, weights):
    """Distinct roots off D of the cleared critical equation on P^1"""
    if coll.n != 1:
        raise InputError(f"Direct count is for P^1 only, got n = {coll.n}")
    if len(weights.s) != len(coll.forms):
        raise InputError(f"{len(weights.s)} weights for {len(coll.forms)} forms")
    gs = [dehomogenize(f, 0) for f in coll.forms]
    cofactors = _products_without(gs)
    numerator = Polynomial.zero(1)
    for s, g, cofactor in zip(weights.s, gs, cofactors):
        numerator = numerator + s * g.partial(0) * cofactor
    if numerator.is_zero():
        raise NonGenericWeightsError(f"Weights {list(weights.s)} make the critical equation vanish")
    if numerator.is_constant():
        return 0
    product = cofactors[0] * gs[0]
    on_divisor = poly_gcd(numerator, product ** numerator.total_degree())
    off_divisor = exact_divide(numerator, on_divisor)
    return squarefree_part(off_divisor).total_degree()
