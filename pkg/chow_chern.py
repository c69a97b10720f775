"""Truncated Chow ring of projective n-space and total Chern classes.

A class is a polynomial in the hyperplane class h modulo h^(n+1). Every
degree-k Chern component of the bundles handled here is a multiple of h^k,
so the formal variable of the product formula is read off the h-grading and
"coefficient of z^n" becomes the coefficient of h^n.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import comb

from errors import InputError, InternalConsistencyError, NonUnitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChowClass:
    """Element of Q[h]/(h^(n+1)); coeffs[k] is the coefficient of h^k"""
    n: int
    coeffs: tuple

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"Ambient dimension must be non-negative, got {self.n}")
        if len(self.coeffs) != self.n + 1:
            raise InputError(
                f"A class on P^{self.n} needs {self.n + 1} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def degree_part(self, k):
        return self.coeffs[k]

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            monomial = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
            if k and abs(c) == 1:
                body = monomial
            else:
                body = f"{abs(c)}{'*' + monomial if monomial else ''}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return text + "".join(f" {s} {b}" for s, b in parts[1:])


def chow_from_coeffs(n, coeffs):
    """Build a class from a possibly short coefficient list (missing entries are 0, extra ones truncated)"""
    coeffs = list(coeffs)[: n + 1]
    return ChowClass(n, tuple(coeffs) + (0,) * (n + 1 - len(coeffs)))


def chow_one(n):
    return chow_from_coeffs(n, [1])


def chow_hyperplane(n):
    return chow_from_coeffs(n, [0, 1])


def _check_dims(a, b):
    if a.n != b.n:
        raise InputError(f"Dimension mismatch: P^{a.n} vs P^{b.n}")


def chow_add(a, b):
    _check_dims(a, b)
    return ChowClass(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def chow_sub(a, b):
    _check_dims(a, b)
    return ChowClass(a.n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def chow_scale(a, factor):
    return ChowClass(a.n, tuple(Fraction(factor) * c for c in a.coeffs))


def chow_mul(a, b):
    """Cauchy product truncated at degree n"""
    _check_dims(a, b)
    n = a.n
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j in range(n + 1 - i):
            out[i + j] += x * b.coeffs[j]
    return ChowClass(n, tuple(out))


def chow_pow(a, exponent):
    if exponent < 0:
        return chow_pow(chow_invert_unit(a), -exponent)
    result = chow_one(a.n)
    for _ in range(exponent):
        result = chow_mul(result, a)
    return result


def chow_invert_unit(a):
    """Multiplicative inverse of a class with nonzero constant term"""
    a0 = a.coeffs[0]
    if not a0:
        raise NonUnitError(f"{a} has zero constant term and is not invertible")
    inverse = [1 / a0]
    for k in range(1, a.n + 1):
        acc = sum((a.coeffs[j] * inverse[k - j] for j in range(1, k + 1)), Fraction(0))
        inverse.append(-acc / a0)
    return ChowClass(a.n, tuple(inverse))


@dataclass(frozen=True)
class ChernSpec:
    """Which bundle to take the total Chern class of.

    kind is one of "line", "cotangent", "tangent", "log_divisor".
    """
    kind: str
    n: int
    d: int = 0
    degrees: tuple = ()

    def __post_init__(self):
        if self.kind not in ("line", "cotangent", "tangent", "log_divisor"):
            raise InputError(f"Unknown bundle kind {self.kind!r}")
        if self.n < 0:
            raise InputError(f"Ambient dimension must be non-negative, got {self.n}")
        if self.kind == "log_divisor":
            object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
            if not self.degrees:
                raise InputError("log_divisor needs at least one reduced degree")
            if any(d < 1 for d in self.degrees):
                raise InputError(f"Reduced degrees must be positive, got {list(self.degrees)}")

    @classmethod
    def line(cls, n, d):
        return cls("line", n, d=d)

    @classmethod
    def cotangent(cls, n):
        return cls("cotangent", n)

    @classmethod
    def tangent(cls, n):
        return cls("tangent", n)

    @classmethod
    def log_divisor(cls, n, degrees):
        return cls("log_divisor", n, degrees=tuple(degrees))


def chern_total(spec):
    n = spec.n
    if spec.kind == "line":
        return chow_from_coeffs(n, [1, spec.d])
    if spec.kind == "cotangent":
        # Euler sequence: c(Omega^1) = (1 - h)^(n+1)
        return chow_pow(chow_from_coeffs(n, [1, -1]), n + 1)
    if spec.kind == "tangent":
        return chow_pow(chow_from_coeffs(n, [1, 1]), n + 1)
    result = chern_total(ChernSpec.cotangent(n))
    for d in spec.degrees:
        result = chow_mul(result, chow_invert_unit(chow_from_coeffs(n, [1, -d])))
    return result


def chern_twist(c, rank, d):
    """Total Chern class of E (x) O(d) for E of the given rank with total class c"""
    if rank < 1:
        raise InputError(f"Rank must be positive, got {rank}")
    if c.coeffs[0] != 1:
        raise InputError(f"Total Chern class must start with 1, got {c}")
    out = []
    for k in range(c.n + 1):
        value = Fraction(0)
        for j in range(k + 1):
            if c.coeffs[j] and rank - j >= 0:
                value += int(comb(rank - j, k - j, exact=True)) * c.coeffs[j] * Fraction(d) ** (k - j)
        out.append(value)
    return ChowClass(c.n, tuple(out))


def chern_pullback(c, d_f):
    """Pullback under a map of degree d_f: h^k scales by d_f^k"""
    return ChowClass(c.n, tuple(coeff * Fraction(d_f) ** k for k, coeff in enumerate(c.coeffs)))


def _top_integer(c, label):
    top = c.coeffs[c.n]
    if top.denominator != 1:
        raise InternalConsistencyError(f"{label}: top coefficient {top} is not an integer")
    return int(top)


def ml_degree_theorem(n, reduced_degrees):
    """Coefficient of h^n in (1 - h)^(n+1) / prod (1 - d'_i h).

    The result is not clamped; a negative value is returned as is.
    """
    reduced_degrees = list(reduced_degrees)
    if len(reduced_degrees) != n + 1:
        raise InputError(
            f"Expected {n + 1} reduced degrees on P^{n}, got {len(reduced_degrees)}")
    total = chern_total(ChernSpec.log_divisor(n, reduced_degrees))
    value = _top_integer(total, "ml_degree_theorem")
    logger.debug(f"Theorem value on P^{n} for reduced degrees {reduced_degrees}: {value}")
    return value


def whitney_log_sequence(n, reduced_degrees):
    """(1 - h)^(n+1) * (1 + deg(D_red) h), from 0 -> Omega^1 -> Omega^1(log D) -> O(D_red) -> 0"""
    if not reduced_degrees or any(d < 1 for d in reduced_degrees):
        raise InputError(f"Reduced degrees must be positive, got {list(reduced_degrees)}")
    return chow_mul(chern_total(ChernSpec.cotangent(n)),
                    chern_total(ChernSpec.line(n, sum(reduced_degrees))))


def ml_degree_exact_sequence(n, reduced_degrees):
    """Top coefficient of whitney_log_sequence; differs from the product formula for n >= 2"""
    return _top_integer(whitney_log_sequence(n, reduced_degrees), "ml_degree_exact_sequence")


def pullback_cotangent_comparison(n, d_f):
    """Pullback of c(Omega^1) next to c(Omega^1 (x) O(1 - d_f)).

    Their first Chern classes are -(n+1) d_f h and (-1 - n d_f) h; they agree
    only for d_f = 1.
    """
    cotangent = chern_total(ChernSpec.cotangent(n))
    return chern_pullback(cotangent, d_f), chern_twist(cotangent, n, 1 - d_f)
