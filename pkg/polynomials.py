"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a dict mapping exponent tuples to nonzero Fractions.
The monomial order is graded reverse lexicographic everywhere: leading
monomials, canonical rendering and the Groebner engine all agree on it.
"""
import logging
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from types import MappingProxyType

from errors import (
    ExactDivisionError,
    InputError,
    NotHomogeneousError,
    UndefinedGcdError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)


def grevlex_key(exponents):
    """Sort key for graded reverse lexicographic order (larger key = larger monomial)"""
    return (sum(exponents), tuple(-e for e in reversed(exponents)))


def _divides(small, big):
    return all(s <= b for s, b in zip(small, big))


class Polynomial:
    """Immutable sparse polynomial in `nvars` variables over the rationals"""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        if not isinstance(nvars, int) or nvars < 0:
            raise InputError(f"nvars must be a non-negative integer, got {nvars!r}")
        items = terms.items() if hasattr(terms, "items") else (terms or [])
        clean = {}
        for exponents, coeff in items:
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != nvars:
                raise InputError(
                    f"Monomial {exponents} has {len(exponents)} exponents, expected {nvars}")
            if any(e < 0 for e in exponents):
                raise InputError(f"Negative exponent in monomial {exponents}")
            value = clean.get(exponents, Fraction(0)) + Fraction(coeff)
            if value:
                clean[exponents] = value
            else:
                clean.pop(exponents, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # terms must already be canonical: tuple keys, nonzero Fraction values
        poly = cls.__new__(cls)
        poly.nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, nvars):
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars, value):
        value = Fraction(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def variable(cls, nvars, index):
        if not 0 <= index < nvars:
            raise InputError(f"Variable index {index} out of range for {nvars} variables")
        exponents = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._raw(nvars, {exponents: Fraction(1)})

    @classmethod
    def from_terms_json(cls, nvars, terms):
        """Build from the report/input encoding: [{"coeff": "p/q", "exponents": [...]}, ...]"""
        return cls(nvars, [(t["exponents"], Fraction(t["coeff"])) for t in terms])

    # --- inspection -------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(m) for m in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def leading_monomial(self):
        if not self._terms:
            raise ZeroPolynomialError("The zero polynomial has no leading monomial")
        return max(self._terms, key=grevlex_key)

    def leading_coefficient(self):
        return self._terms[self.leading_monomial()]

    def sorted_terms(self):
        """Terms in descending monomial order"""
        return sorted(self._terms.items(), key=lambda item: grevlex_key(item[0]), reverse=True)

    def total_degree(self):
        if not self._terms:
            raise ZeroPolynomialError("The zero polynomial has no degree")
        return max(sum(m) for m in self._terms)

    def degree_in(self, index):
        """Degree in one variable; -1 for the zero polynomial"""
        return max((m[index] for m in self._terms), default=-1)

    def max_variable(self):
        """Largest variable index occurring in some term, -1 for constants"""
        return max((i for m in self._terms for i, e in enumerate(m) if e), default=-1)

    # --- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise InputError(
                    f"Variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            value = terms.get(m, 0) + c
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial._raw(self.nvars, {m: c for m, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise InputError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def partial(self, index):
        if not 0 <= index < self.nvars:
            raise InputError(f"Variable index {index} out of range for {self.nvars} variables")
        terms = {}
        for m, c in self._terms.items():
            e = m[index]
            if e:
                reduced = m[:index] + (e - 1,) + m[index + 1:]
                terms[reduced] = c * e
        return Polynomial._raw(self.nvars, terms)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise InputError(f"Point has {len(point)} coordinates, expected {self.nvars}")
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for m, c in self._terms.items():
            value = c
            for x, e in zip(point, m):
                if e:
                    value *= x ** e
            total += value
        return total

    def monic(self):
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    def primitive_integer(self):
        """Scale to integer coefficients with content 1 and positive leading coefficient"""
        if not self._terms:
            return self
        denominators = reduce(lcm, (c.denominator for c in self._terms.values()), 1)
        numerators = [int(c * denominators) for c in self._terms.values()]
        content = reduce(gcd, numerators, 0)
        scale = Fraction(denominators, content)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    # --- identity ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def render(self, names=None):
        """Canonical text, terms in descending grevlex order"""
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            magnitude = abs(c)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(magnitude)] + factors)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def to_terms_json(self):
        return [{"coeff": str(c), "exponents": list(m)} for m, c in self.sorted_terms()]

    def __repr__(self):
        return f"Polynomial({self.render()})"


def _check_same(a, b):
    if a.nvars != b.nvars:
        raise InputError(f"Variable count mismatch: {a.nvars} vs {b.nvars}")


def poly_arith(a, b, op):
    """Add, subtract or multiply two polynomials in the same variables"""
    _check_same(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InputError(f"Unknown operation {op!r}; expected add, sub or mul")


def poly_partial(f, var_index):
    return f.partial(var_index)


def eval_at(f, point):
    return f.evaluate(point)


def homogeneity_degree(f):
    """Common total degree of all terms, or None when the terms disagree"""
    degrees = {sum(m) for m in f.terms}
    if len(degrees) != 1:
        return None
    return degrees.pop()


def dehomogenize(f, chart_var):
    """Set variable `chart_var` to 1; the result lives in nvars - 1 variables"""
    if not 0 <= chart_var < f.nvars:
        raise InputError(f"Chart variable {chart_var} out of range for {f.nvars} variables")
    if not f.is_zero() and homogeneity_degree(f) is None:
        raise NotHomogeneousError(f"Cannot dehomogenize non-homogeneous {f.render()}")
    terms = {m[:chart_var] + m[chart_var + 1:]: c for m, c in f.terms.items()}
    return Polynomial._raw(f.nvars - 1, terms)


def poly_divmod(a, b):
    """Divide by a single nonzero divisor; returns (quotient, remainder).

    With one divisor the remainder is zero exactly when b divides a.
    """
    _check_same(a, b)
    if b.is_zero():
        raise ZeroPolynomialError("Division by the zero polynomial")
    lm_b = b.leading_monomial()
    lc_b = b.terms[lm_b]
    b_terms = list(b.terms.items())
    work = dict(a.terms)
    quotient, remainder = {}, {}
    while work:
        m = max(work, key=grevlex_key)
        c = work[m]
        if _divides(lm_b, m):
            shift = tuple(x - y for x, y in zip(m, lm_b))
            factor = c / lc_b
            quotient[shift] = quotient.get(shift, 0) + factor
            for mb, cb in b_terms:
                target = tuple(x + y for x, y in zip(mb, shift))
                value = work.get(target, 0) - factor * cb
                if value:
                    work[target] = value
                else:
                    work.pop(target, None)
        else:
            remainder[m] = c
            del work[m]
    return (Polynomial._raw(a.nvars, {m: c for m, c in quotient.items() if c}),
            Polynomial._raw(a.nvars, remainder))


def exact_divide(a, b):
    quotient, remainder = poly_divmod(a, b)
    if not remainder.is_zero():
        raise ExactDivisionError(f"{b.render()} does not divide {a.render()}")
    return quotient


# --- gcd ------------------------------------------------------------------
#
# Recursive reduction to univariate: a polynomial is viewed as univariate in
# its largest variable v over the ring of polynomials in the smaller ones.

def _coefficients_in(f, v):
    coeffs = {}
    for m, c in f.terms.items():
        k = m[v]
        base = m[:v] + (0,) + m[v + 1:]
        coeffs.setdefault(k, {})[base] = c
    return {k: Polynomial._raw(f.nvars, t) for k, t in coeffs.items()}


def _leading_coefficient_in(f, v):
    coeffs = _coefficients_in(f, v)
    return coeffs[max(coeffs)]


def _content_in(f, v):
    return reduce(_gcd, _coefficients_in(f, v).values(), Polynomial.zero(f.nvars))


def _primitive_in(f, v):
    return exact_divide(f, _content_in(f, v))


def _pseudo_remainder(a, b, v):
    deg_b = b.degree_in(v)
    lc_b = _leading_coefficient_in(b, v)
    x = Polynomial.variable(a.nvars, v)
    remainder = a
    e = a.degree_in(v) - deg_b + 1
    while not remainder.is_zero() and remainder.degree_in(v) >= deg_b:
        shift = x ** (remainder.degree_in(v) - deg_b)
        remainder = lc_b * remainder - _leading_coefficient_in(remainder, v) * shift * b
        e -= 1
    return lc_b ** e * remainder


def _subresultant_gcd(a, b, v):
    """gcd of two polynomials primitive in v, via the subresultant remainder sequence"""
    one = Polynomial.constant(a.nvars, 1)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    g = h = one
    while True:
        delta = a.degree_in(v) - b.degree_in(v)
        r = _pseudo_remainder(a, b, v)
        if r.is_zero():
            break
        if r.degree_in(v) == 0:
            return one
        a = b
        b = exact_divide(r, g * h ** delta)
        g = _leading_coefficient_in(a, v)
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_divide(g ** delta, h ** (delta - 1))
    return _primitive_in(b, v)


def _gcd(a, b):
    # Unnormalized gcd; scalar multiples are stripped by the caller.
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Polynomial.constant(a.nvars, 1)
    v = max(a.max_variable(), b.max_variable())
    if a.degree_in(v) == 0:
        return _gcd(a, _content_in(b, v))
    if b.degree_in(v) == 0:
        return _gcd(_content_in(a, v), b)
    content_a, content_b = _content_in(a, v), _content_in(b, v)
    common = _gcd(content_a, content_b)
    g = _subresultant_gcd(exact_divide(a, content_a), exact_divide(b, content_b), v)
    return (common * g).monic()


def poly_gcd(a, b):
    """Monic greatest common divisor"""
    _check_same(a, b)
    if a.is_zero() and b.is_zero():
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    return _gcd(a, b).monic()


def squarefree_part(f):
    """Product of the distinct irreducible factors of f, monic"""
    if f.is_zero():
        raise ZeroPolynomialError("The zero polynomial has no squarefree part")
    g = f
    for j in range(f.nvars):
        derivative = f.partial(j)
        if not derivative.is_zero():
            g = _gcd(g, derivative)
    return exact_divide(f, g).monic()


# --- determinants and coordinate changes -------------------------------

def poly_det(matrix):
    """Determinant of a square matrix of polynomials (Laplace expansion with memoized minors)"""
    size = len(matrix)
    if size == 0:
        raise InputError("Empty matrix")
    if any(len(row) != size for row in matrix):
        raise InputError("Matrix must be square")
    nvars = matrix[0][0].nvars
    for row in matrix:
        for entry in row:
            if entry.nvars != nvars:
                raise InputError("Matrix entries live in different polynomial rings")

    @lru_cache(maxsize=None)
    def minor(row, columns):
        if row == size:
            return Polynomial.constant(nvars, 1)
        total = Polynomial.zero(nvars)
        sign = 1
        for col in range(size):
            if not columns >> col & 1:
                continue
            entry = matrix[row][col]
            if not entry.is_zero():
                term = entry * minor(row + 1, columns & ~(1 << col))
                total = total + term if sign > 0 else total - term
            sign = -sign
        return total

    return minor(0, (1 << size) - 1)


def jacobian_det(fs):
    """Determinant of the square matrix of partials d f_i / d x_j"""
    size = len(fs)
    if size == 0 or any(f.nvars != size for f in fs):
        raise InputError(
            f"Jacobian needs k polynomials in k variables, got {size} "
            f"in {[f.nvars for f in fs]} variables")
    return poly_det([[f.partial(j) for j in range(size)] for f in fs])


def substitute_linear(f, matrix):
    """Apply the coordinate change x_j -> sum_k matrix[j][k] * x_k"""
    if len(matrix) != f.nvars or any(len(row) != f.nvars for row in matrix):
        raise InputError(f"Coordinate change must be {f.nvars}x{f.nvars}")
    forms = [
        Polynomial(f.nvars, {
            tuple(1 if i == k else 0 for i in range(f.nvars)): Fraction(entry)
            for k, entry in enumerate(row)
        })
        for row in matrix
    ]
    powers = {}

    def power(j, e):
        if (j, e) not in powers:
            powers[(j, e)] = forms[j] ** e
        return powers[(j, e)]

    result = Polynomial.zero(f.nvars)
    for m, c in f.terms.items():
        term = Polynomial.constant(f.nvars, c)
        for j, e in enumerate(m):
            if e:
                term = term * power(j, e)
        result = result + term
    return result
