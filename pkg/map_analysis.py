"""Validation of a surjective rational self-map of P^n and the theorem path.

The forms f_0..f_n must share one degree d_f, have no common factor (base
locus of codimension at least 2), define a dominant map (Jacobian determinant
not identically zero) and have pairwise coprime squarefree parts. The reduced
degrees d'_i are the degrees of those squarefree parts.
"""
import logging
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from chow_chern import ml_degree_theorem
from config import PREFILTER_POINTS, PREFILTER_RANGE
from errors import (
    CommonFactorError,
    DegreeMismatchError,
    InputError,
    NotDominantError,
    SharedReducedComponentError,
)
from polynomials import Polynomial, homogeneity_degree, jacobian_det, poly_det, poly_gcd, squarefree_part

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MapInput:
    n: int
    forms: tuple

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(self.forms))
        if self.n < 1:
            raise InputError(f"Ambient dimension must be at least 1, got {self.n}")
        if len(self.forms) != self.n + 1:
            raise InputError(f"A self-map of P^{self.n} needs {self.n + 1} forms, got {len(self.forms)}")
        for i, f in enumerate(self.forms):
            if f.nvars != self.n + 1:
                raise InputError(f"Form {i} is in {f.nvars} variables, expected {self.n + 1}")
            if f.is_zero():
                raise InputError(f"Form {i} is the zero polynomial")


@dataclass(frozen=True)
class MapProfile:
    n: int
    d_f: int
    reduced_degrees: tuple
    dominant: bool
    base_locus_codim_ok: bool
    pairwise_reduced_coprime: bool
    reduced_forms: tuple = ()
    warnings: tuple = field(default=())

    @property
    def conforming(self):
        return self.dominant and self.base_locus_codim_ok and self.pairwise_reduced_coprime

    def to_dict(self):
        return {
            "d_f": self.d_f,
            "reduced_degrees": list(self.reduced_degrees),
            "dominant": self.dominant,
            "base_locus_codim_ok": self.base_locus_codim_ok,
            "pairwise_reduced_coprime": self.pairwise_reduced_coprime,
            "reduced_forms": [f.to_terms_json() for f in self.reduced_forms],
        }


def frobenius_map(n, d):
    """The map x_i -> x_i^d"""
    return MapInput(n, tuple(Polynomial.variable(n + 1, i) ** d for i in range(n + 1)))


def _jacobian_nonzero_at_random_points(forms, seed=0):
    # Exact evaluation: a nonzero value certifies a nonzero determinant.
    rng = np.random.default_rng(seed)
    size = len(forms)
    partials = [[f.partial(j) for j in range(size)] for f in forms]
    for _ in range(PREFILTER_POINTS):
        point = [int(v) for v in rng.integers(1, PREFILTER_RANGE, size=size, endpoint=True)]
        matrix = [[Polynomial.constant(1, p.evaluate(point)) for p in row] for row in partials]
        if not poly_det(matrix).is_zero():
            return True
    return False


def is_dominant(forms):
    if _jacobian_nonzero_at_random_points(forms):
        return True
    logger.info("Random evaluation of the Jacobian vanished; expanding the determinant")
    return not jacobian_det(list(forms)).is_zero()


def validate_map(map_input, strict=True):
    """Check the map conditions in order and build its profile.

    Degree mismatch always raises. With strict=True every other failed check
    raises as well; with strict=False the profile records the failures.
    """
    forms = map_input.forms
    degrees = [homogeneity_degree(f) for f in forms]
    if any(d is None for d in degrees) or len(set(degrees)) != 1 or degrees[0] < 1:
        raise DegreeMismatchError(
            f"Forms must be homogeneous of one positive degree, got degrees {degrees}",
            diagnostics={"degrees": degrees})
    d_f = degrees[0]

    common = reduce(poly_gcd, forms)
    base_ok = common.is_constant()
    if not base_ok:
        logger.info(f"Forms share the factor {common.render()}")
        if strict:
            raise CommonFactorError(
                f"Forms share the common factor {common.render()}; the base locus has a divisorial part",
                diagnostics={"common_factor": common.to_terms_json()})

    dominant = is_dominant(forms)
    if not dominant and strict:
        raise NotDominantError("Jacobian determinant vanishes identically; the map is not dominant")

    reduced = tuple(squarefree_part(f) for f in forms)
    reduced_degrees = tuple(r.total_degree() for r in reduced)

    coprime = True
    for i in range(len(reduced)):
        for j in range(i + 1, len(reduced)):
            shared = poly_gcd(reduced[i], reduced[j])
            if not shared.is_constant():
                coprime = False
                if strict:
                    raise SharedReducedComponentError(
                        f"Squarefree parts of forms {i} and {j} share {shared.render()}",
                        diagnostics={"pair": [i, j], "shared": shared.to_terms_json()})

    warnings = []
    if map_input.n >= 2 and any(d >= 2 for d in reduced_degrees):
        warnings.append("reduced_part_possibly_reducible")

    profile = MapProfile(
        n=map_input.n,
        d_f=d_f,
        reduced_degrees=reduced_degrees,
        dominant=dominant,
        base_locus_codim_ok=base_ok,
        pairwise_reduced_coprime=coprime,
        reduced_forms=reduced,
        warnings=tuple(warnings),
    )
    logger.info(f"Map profile: d_f={d_f}, reduced degrees {list(reduced_degrees)}, "
                f"conforming={profile.conforming}")
    return profile


def ml_degree_of_map(map_input):
    """Theorem value for a validated surjective map, with the profile used"""
    profile = validate_map(map_input, strict=True)
    return ml_degree_theorem(profile.n, profile.reduced_degrees), profile


def linear_reduced_forms(profile):
    """Squarefree parts when every one is a linear form, else None"""
    if all(d == 1 for d in profile.reduced_degrees):
        return list(profile.reduced_forms)
    return None
