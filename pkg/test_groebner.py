from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
import sympy

from config import Budget
from errors import BudgetExceededError, InputError, NotZeroDimensionalError, ZeroPolynomialError
from groebner import (
    Ideal,
    buchberger,
    count_standard_monomials,
    is_zero_dimensional,
    normal_form,
    s_polynomial,
    saturate_rabinowitsch,
)
from polynomials import Polynomial, poly_gcd, squarefree_part

rng = np.random.default_rng(11)

# y is variable 0 so that y > x in grevlex
Y = Polynomial.variable(2, 0)
X = Polynomial.variable(2, 1)
ONE = Polynomial.constant(2, 1)


def random_poly(nvars, max_degree=2, max_terms=3):
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        m = tuple(int(e) for e in rng.integers(0, max_degree + 1, size=nvars))
        terms[m] = int(rng.integers(-4, 5)) or 1
    return Polynomial(nvars, terms)


def random_ideal(nvars):
    gens = [random_poly(nvars) for _ in range(int(rng.integers(1, 4)))]
    gens = [g for g in gens if not g.is_zero()] or [Polynomial.variable(nvars, 0)]
    return Ideal(nvars, tuple(gens))


def from_sympy(expr, symbols):
    poly = sympy.Poly(expr, *symbols)
    terms = {m: Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for m, c in poly.terms()}
    return Polynomial(len(symbols), terms).monic()


def is_reduced(gb):
    leads = gb.leading_monomials()
    for g in gb.basis:
        if g.leading_coefficient() != 1:
            return False
        for m in g.terms:
            for lm in leads:
                if lm != g.leading_monomial() and all(a <= b for a, b in zip(lm, m)):
                    return False
    return True


def test_already_reduced_basis():
    gb = buchberger(Ideal(2, (X ** 2 - 1, Y - X)))
    assert set(gb.basis) == {X ** 2 - 1, Y - X}


def test_unit_ideal():
    gb = buchberger(Ideal(2, (ONE,)))
    assert gb.is_unit()
    assert gb.basis == (ONE,)
    assert is_zero_dimensional(gb)
    assert count_standard_monomials(gb) == 0


def test_duplicate_generators_collapse():
    gb = buchberger(Ideal(2, (X, X)))
    assert gb.basis == (X,)


def test_zero_generators_are_dropped():
    ideal = Ideal(2, (Polynomial.zero(2), X))
    assert ideal.generators == (X,)
    with pytest.raises(ZeroPolynomialError):
        Ideal(2, (Polynomial.zero(2),))
    with pytest.raises(InputError):
        Ideal(2, (Polynomial.variable(3, 0),))


def test_standard_monomials_of_pure_powers():
    gb = buchberger(Ideal(2, (X ** 2 - 1, Y ** 3 - 1)))
    assert is_zero_dimensional(gb)
    assert count_standard_monomials(gb) == 6
    assert len(gb.staircase) == 6


def test_coordinate_point():
    gb = buchberger(Ideal(2, (X, Y)))
    assert count_standard_monomials(gb) == 1


def test_positive_dimensional_ideal():
    gb = buchberger(Ideal(2, (X * Y,)))
    assert not is_zero_dimensional(gb)
    with pytest.raises(NotZeroDimensionalError):
        count_standard_monomials(gb)


def test_saturation_removes_roots():
    x1 = Polynomial.variable(1, 0)
    gb = buchberger(saturate_rabinowitsch(Ideal(1, (x1 ** 2,)), x1))
    assert gb.is_unit()
    assert count_standard_monomials(gb) == 0
    gb = buchberger(saturate_rabinowitsch(Ideal(1, (x1 ** 2 - 1,)), x1 - 2))
    assert count_standard_monomials(gb) == 2
    gb = buchberger(saturate_rabinowitsch(Ideal(1, (x1 ** 2 - 1,)), x1 - 1))
    assert count_standard_monomials(gb) == 1


def test_saturation_appends_last_variable():
    saturated = saturate_rabinowitsch(Ideal(2, (X,)), Y)
    assert saturated.nvars == 3
    t = Polynomial.variable(3, 2)
    assert saturated.generators[-1] == t * Polynomial.variable(3, 0) - 1
    with pytest.raises(ZeroPolynomialError):
        saturate_rabinowitsch(Ideal(2, (X,)), Polynomial.zero(2))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError) as info:
        buchberger(Ideal(2, (X ** 2 - 1, Y ** 3 - 1)), Budget(max_basis=1, max_degree=60))
    assert info.value.diagnostics["basis_size"] == 2
    assert info.value.exit_code == 5


def random_zero_dimensional_ideal(nvars):
    # x_i^3 leads each pure-power generator since the tails have degree at most 2
    gens = [Polynomial.variable(nvars, i) ** 3 + random_poly(nvars, max_degree=1, max_terms=2)
            for i in range(nvars)]
    gens.append(random_poly(nvars))
    return Ideal(nvars, tuple(gens))


@pytest.mark.parametrize("trial", range(30))
def test_count_ignores_generator_order(trial):
    nvars = int(rng.integers(1, 3))
    ideal = random_zero_dimensional_ideal(nvars)
    shuffled = Ideal(nvars, tuple(ideal.generators[i] for i in rng.permutation(len(ideal.generators))))
    gb = buchberger(ideal)
    assert set(buchberger(shuffled).basis) == set(gb.basis)
    assert count_standard_monomials(buchberger(shuffled)) == count_standard_monomials(gb)


def random_univariate(max_degree):
    x1 = Polynomial.variable(1, 0)
    f = Polynomial.constant(1, 1)
    for _ in range(int(rng.integers(1, max_degree + 1))):
        f = f * (int(rng.integers(1, 4)) * x1 + int(rng.integers(-3, 4)))
    return f


@pytest.mark.parametrize("trial", range(40))
def test_univariate_saturation_counts_roots_off_the_divisor(trial):
    f = squarefree_part(random_univariate(6))
    g = random_univariate(3)
    expected = f.total_degree() - poly_gcd(f, g).total_degree()
    gb = buchberger(saturate_rabinowitsch(Ideal(1, (f,)), g))
    assert count_standard_monomials(gb) == expected


@pytest.mark.parametrize("trial", range(100))
def test_buchberger_postconditions(trial):
    nvars = int(rng.integers(1, 4))
    ideal = random_ideal(nvars)
    gb = buchberger(ideal)
    for f in ideal.generators:
        assert normal_form(f, gb).is_zero()
    for f, g in combinations(gb.basis, 2):
        assert normal_form(s_polynomial(f, g), gb).is_zero()
    assert is_reduced(gb)


@pytest.mark.parametrize("trial", range(30))
def test_buchberger_matches_sympy(trial):
    nvars = int(rng.integers(1, 4))
    symbols = sympy.symbols(f"x0:{nvars}")
    ideal = random_ideal(nvars)
    exprs = [sum(int(c) * sympy.Mul(*(s ** e for s, e in zip(symbols, m))) for m, c in g.terms.items())
             for g in ideal.generators]
    expected = sympy.groebner(exprs, *symbols, order="grevlex")
    converted = {from_sympy(expr, symbols) for expr in expected.exprs}
    assert set(buchberger(ideal).basis) == converted
