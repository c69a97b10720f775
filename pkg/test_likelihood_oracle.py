import json
import os
import re
import time

import numpy as np
import pytest

from chow_chern import ml_degree_theorem
from errors import BudgetExceededError, InputError, NonGenericWeightsError, NotHomogeneousError
from likelihood_oracle import (
    DivisorCollection,
    WeightVector,
    count_critical_points,
    count_critical_points_p1,
    likelihood_system,
    sample_weights,
)
from map_analysis import MapInput, ml_degree_of_map, validate_map
from polynomials import Polynomial, dehomogenize, poly_gcd, squarefree_part, substitute_linear
from sanitization import load_input

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
IDENTITY_2 = [[1, 0], [0, 1]]


def xs(n):
    return [Polynomial.variable(n + 1, i) for i in range(n + 1)]


def three_points():
    x0, x1 = xs(1)
    return DivisorCollection(1, (x1, x1 - x0, x1 - 2 * x0))


@pytest.mark.parametrize("seed", range(20))
def test_sampled_weights_satisfy_the_degree_constraint(seed):
    for degrees in [(1, 1), (1, 1, 1), (2, 1), (3, 2, 5), (4, 6)]:
        w = sample_weights(degrees, seed)
        assert all(s != 0 for s in w.s)
        assert sum(s * d for s, d in zip(w.s, degrees)) == 0


def test_weight_shapes():
    w = sample_weights((1, 1), 3)
    assert w.s[0] == -w.s[1]
    w = sample_weights((2, 1), 3)
    assert w.s[1] == -2 * w.s[0]
    assert sample_weights((3, 2, 5), 9) == sample_weights((3, 2, 5), 9)


def test_weight_vector_validation():
    with pytest.raises(InputError):
        WeightVector((1, 1), (1, 1))
    with pytest.raises(InputError):
        WeightVector((0, 0), (1, 1))
    with pytest.raises(InputError):
        WeightVector((1,), (1, 1))


def test_divisor_collection_validation():
    x0, x1 = xs(1)
    with pytest.raises(NotHomogeneousError):
        DivisorCollection(1, (x0, x1 + 1))
    with pytest.raises(InputError):
        DivisorCollection(1, (x0,))
    assert three_points().degrees == (1, 1, 1)


def test_three_points_generator():
    coll = three_points()
    ideal, saturation = likelihood_system(coll, WeightVector((1, 1, -2), coll.degrees), IDENTITY_2)
    assert ideal.generators == (Polynomial(1, {(1,): -3, (0,): 2}),)
    y = Polynomial.variable(1, 0)
    assert saturation == y * (y - 1) * (y - 2)


def test_generators_scale_with_weights():
    coll = three_points()
    w = WeightVector((1, 1, -2), coll.degrees)
    ideal, _ = likelihood_system(coll, w, IDENTITY_2)
    scaled, _ = likelihood_system(coll, w.scaled(-5), IDENTITY_2)
    assert scaled.generators == tuple(-5 * g for g in ideal.generators)


def test_frobenius_line_generator():
    x0, x1 = xs(1)
    coll = DivisorCollection(1, (x1 ** 2, x0 ** 2))
    ideal, _ = likelihood_system(coll, WeightVector((3, -3), coll.degrees), IDENTITY_2)
    assert ideal.generators == (Polynomial(1, {(1,): 6}),)


def test_singular_coordinate_change_is_rejected():
    coll = three_points()
    with pytest.raises(InputError):
        likelihood_system(coll, WeightVector((1, 1, -2), coll.degrees), [[1, 2], [2, 4]])


def test_three_points_have_one_critical_point():
    coll = three_points()
    report = count_critical_points(coll, trials=2, seed=5)
    assert report.agreed
    assert report.count == 1
    assert len(report.trials) == 2
    assert count_critical_points_p1(coll, WeightVector((1, 1, -2), coll.degrees)) == 1


def test_report_is_reproducible():
    coll = three_points()
    first = count_critical_points(coll, trials=3, seed=42).to_dict()
    second = count_critical_points(coll, trials=3, seed=42).to_dict()
    assert json.dumps(first) == json.dumps(second)
    assert all(re.fullmatch("[0-9a-f]{16}", t["matrix_hash"]) for t in first["trials"])


def test_trials_and_dimension_limits():
    with pytest.raises(InputError):
        count_critical_points(three_points(), trials=1)
    coll = DivisorCollection(3, tuple(Polynomial.variable(4, i) for i in range(4)))
    with pytest.raises(BudgetExceededError):
        count_critical_points(coll)


def test_vanishing_critical_equation_on_the_line():
    x0, x1 = xs(1)
    coll = DivisorCollection(1, (x0, x0))
    with pytest.raises(NonGenericWeightsError):
        count_critical_points_p1(coll, WeightVector((1, -1), coll.degrees))


@pytest.mark.parametrize("n,d", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_frobenius_reduced_divisor_has_no_critical_points(n, d):
    forms = tuple(Polynomial.variable(n + 1, i) for i in range(n + 1))
    report = count_critical_points(DivisorCollection(n, forms), seed=d)
    assert report.agreed
    assert report.count == 0


def random_linear_factor(rng):
    while True:
        a, b = (int(v) for v in rng.integers(-6, 7, size=2))
        if a or b:
            return Polynomial(2, {(1, 0): a, (0, 1): b})


def random_binary_form(rng, d):
    f = Polynomial.constant(2, 1)
    remaining = d
    while remaining:
        k = int(rng.integers(1, remaining + 1))
        f = f * random_linear_factor(rng) ** k
        remaining -= k
    return f


def random_surjective_line_map(rng):
    """Two coprime binary forms of one degree d <= 5, often with repeated factors"""
    while True:
        d = int(rng.integers(1, 6))
        forms = (random_binary_form(rng, d), random_binary_form(rng, d))
        if poly_gcd(*forms).is_constant():
            return MapInput(1, forms)


def distinct_roots(f):
    return squarefree_part(f).total_degree()


@pytest.mark.parametrize("trial", range(200))
def test_line_theorem_matches_both_counts(trial):
    rng = np.random.default_rng(1000 + trial)
    map_input = random_surjective_line_map(rng)
    value, profile = ml_degree_of_map(map_input)
    coll = DivisorCollection(1, profile.reduced_forms)
    assert value == ml_degree_theorem(1, profile.reduced_degrees)
    assert value == distinct_roots(map_input.forms[0] * map_input.forms[1]) - 2
    assert count_critical_points_p1(coll, sample_weights(coll.degrees, trial)) == value
    report = count_critical_points(coll, seed=trial)
    assert report.agreed
    assert report.count == value


def random_line_collection(rng):
    """Three or four binary forms of degree at most 4 with at least three distinct zeros in total"""
    while True:
        size = int(rng.integers(3, 5))
        forms = tuple(random_binary_form(rng, int(rng.integers(1, 5))) for _ in range(size))
        product = forms[0]
        for f in forms[1:]:
            product = product * f
        if distinct_roots(product) >= 3:
            return DivisorCollection(1, forms)


@pytest.mark.parametrize("trial", range(60))
def test_groebner_count_matches_direct_count_on_line_collections(trial):
    rng = np.random.default_rng(9000 + trial)
    coll = random_line_collection(rng)
    report = count_critical_points(coll, seed=trial)
    assert report.agreed
    assert report.count == count_critical_points_p1(coll, sample_weights(coll.degrees, trial))


def test_identity_chart_keeps_every_form():
    x0, x1 = xs(1)
    ideal, product = likelihood_system(DivisorCollection(1, (x0, x1, x1 - x0)),
                                       WeightVector((1, 1, -2), (1, 1, 1)), IDENTITY_2)
    assert dehomogenize(x0, 0).constant_value() == 1
    assert product.total_degree() == 2
    assert len(ideal.generators) == 1
    assert count_critical_points(three_points(), seed=3).count == 1


def generic_conics():
    parsed = load_input(os.path.join(FIXTURES, "generic_conics.json"))
    return MapInput(parsed.n, parsed.polynomials)


def random_unimodular_change(rng, size):
    """Permuted unit upper-triangular matrix with entries in {-1, 0, 1}"""
    upper = [[1 if i == j else (int(rng.integers(-1, 2)) if j > i else 0) for j in range(size)]
             for i in range(size)]
    return [upper[i] for i in rng.permutation(size)]


@pytest.mark.slow
def test_plane_conics_have_nine_critical_points():
    value, profile = ml_degree_of_map(generic_conics())
    assert value == 9
    start = time.perf_counter()
    report = count_critical_points(DivisorCollection(2, profile.reduced_forms), seed=1)
    assert time.perf_counter() - start < 300
    assert report.agreed
    assert report.count == 9


@pytest.mark.slow
@pytest.mark.parametrize("seed", [2, 3, 4])
def test_plane_conics_after_coordinate_change(seed):
    rng = np.random.default_rng(seed)
    change = random_unimodular_change(rng, 3)
    map_input = MapInput(2, tuple(substitute_linear(f, change) for f in generic_conics().forms))
    profile = validate_map(map_input)
    assert profile.conforming
    assert profile.reduced_degrees == (2, 2, 2)
    assert ml_degree_theorem(2, profile.reduced_degrees) == 9
    start = time.perf_counter()
    report = count_critical_points(DivisorCollection(2, profile.reduced_forms), seed=seed)
    assert time.perf_counter() - start < 300
    assert report.agreed
    assert report.count == 9
