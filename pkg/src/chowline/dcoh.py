"""Cohomological oracle for product families of projective spaces.

For the constant family X = (P^{n_1} x ... x P^{n_t}) x P^m -> P^m and a
line bundle O(d_1, ..., d_t; e), the derived direct image splits by the
Kunneth formula into copies of O(e) indexed by fiber cohomology, so the
determinant of cohomology is computable exactly from the classical
cohomology of O(d) on projective space:

    h^0(P^n, O(d)) = C(n+d, n) for d >= 0,
    h^n(P^n, O(d)) = C(-d-1, n) for d <= -n-1,

all other groups vanishing.  This gives an oracle for pairing degrees that
is entirely independent of the symbolic pushforward machinery: the pairing
of n+1 line bundles is the alternating tensor product of determinants of
cohomology over subsets of the bundles, and its degree must match the
direct image of the product of first Chern classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import UnsupportedFamily, WrongBundleCount
from .pushforward import Tower, integrate


@dataclass(frozen=True)
class FamilyDescriptor:
    """X = (prod_i P^{fiber[i]}) x P^base -> P^base."""
    fiber: tuple
    base: int

    def __post_init__(self):
        object.__setattr__(self, "fiber", tuple(int(n) for n in self.fiber))
        if any(n < 1 for n in self.fiber) or self.base < 1:
            raise UnsupportedFamily("all projective-space factors need dimension >= 1")

    @property
    def fiber_dimension(self):
        return sum(self.fiber)


@dataclass(frozen=True)
class MultidegreeLineBundle:
    """O(d_1, ..., d_t; e): fiber multidegree d, base twist e."""
    fiber_degrees: tuple
    base_twist: int

    def __post_init__(self):
        object.__setattr__(
            self, "fiber_degrees", tuple(int(d) for d in self.fiber_degrees))

    def __add__(self, other):
        if len(self.fiber_degrees) != len(other.fiber_degrees):
            raise ValueError("multidegree length mismatch")
        return MultidegreeLineBundle(
            tuple(a + b for a, b in zip(self.fiber_degrees, other.fiber_degrees)),
            self.base_twist + other.base_twist)

    @classmethod
    def zero(cls, factors):
        return cls((0,) * factors, 0)


@dataclass(frozen=True)
class GradedLineDegree:
    """Isomorphism data of a graded line bundle on P^m: its grading (the
    Euler characteristic of the pushed-forward bundle) and the degree of
    the underlying line bundle."""
    rank: int
    degree: int


def cohomology_dims(n, d):
    """[h^0, ..., h^n] for O(d) on P^n.

    Cohomology is concentrated at the ends: global sections for d >= 0 and,
    by Serre duality, top cohomology for d <= -n-1.
    """
    if n < 1:
        raise ValueError("projective space dimension must be >= 1")
    dims = [0] * (n + 1)
    if d >= 0:
        dims[0] = comb(n + d, n)
    if d <= -n - 1:
        dims[n] = comb(-d - 1, n)
    return dims


def chi_projective_space(n, d):
    """chi(P^n, O(d)) = C(n+d, n) as a polynomial in d (may be negative)."""
    num = 1
    for i in range(1, n + 1):
        num *= d + i
    chi = Fraction(num, 1)
    for i in range(1, n + 1):
        chi /= i
    assert chi.denominator == 1
    return int(chi)


def fiber_cohomology_dims(fam, bundle):
    """Graded dimensions of H^*(fiber, O(d)) by the Kunneth formula."""
    total = [1]
    for n, d in zip(fam.fiber, bundle.fiber_degrees):
        factor = cohomology_dims(n, d)
        merged = [0] * (len(total) + len(factor) - 1)
        for i, a in enumerate(total):
            if a == 0:
                continue
            for j, b in enumerate(factor):
                merged[i + j] += a * b
        total = merged
    return total


def det_Rf_degree(fam, bundle):
    """Determinant of cohomology of O(d; e) along the product family.

    Rf_* O(d; e) = H^*(fiber, O(d)) (x) O(e); each H^k contributes h^k
    copies of O(e) with alternating exponent (-1)^k, so the rank is the
    fiber Euler characteristic and the degree is e times that.
    """
    if len(bundle.fiber_degrees) != len(fam.fiber):
        raise UnsupportedFamily(
            "bundle multidegree does not match the number of fiber factors")
    dims = fiber_cohomology_dims(fam, bundle)
    chi = sum((-1) ** k * h for k, h in enumerate(dims))
    return GradedLineDegree(rank=chi, degree=bundle.base_twist * chi)


def deligne_pairing_degree(fam, bundles):
    """Degree of the pairing of n+1 line bundles, with its rank check.

    The pairing is the alternating tensor product over subsets I of
    {0..n} of det Rf_*(tensor of the L_i, i in I), with exponent
    (-1)^{n+1-|I|}.  Returns (degree, alternating_rank_sum); the rank sum
    must vanish, the pairing being an honest ungraded line bundle.
    """
    n = fam.fiber_dimension
    if len(bundles) != n + 1:
        raise WrongBundleCount(
            f"a fiber of dimension {n} pairs exactly {n + 1} line bundles, "
            f"got {len(bundles)}")
    t = len(fam.fiber)
    degree = 0
    rank_sum = 0
    for size in range(n + 2):
        sign = (-1) ** (n + 1 - size)
        for subset in combinations(range(n + 1), size):
            total = MultidegreeLineBundle.zero(t)
            for i in subset:
                total = total + bundles[i]
            data = det_Rf_degree(fam, total)
            degree += sign * data.degree
            rank_sum += sign * data.rank
    return degree, rank_sum


def pairing_tower(fam, bound=None):
    """The total space of the family as a tower: base level first, then
    the fiber factors."""
    dims = [fam.base] + list(fam.fiber)
    if bound is None:
        bound = sum(dims)
    return Tower.product_of_projective_spaces(dims, bound=bound)


def pairing_degree_by_pushforward(fam, bundles, tower=None):
    """The direct-image degree: integral over the total space of the
    product of the first Chern classes, against the base hyperplane power
    that reads off a divisor's degree."""
    if tower is None:
        tower = pairing_tower(fam)
    product = tower.const(1)
    for bundle in bundles:
        coeffs = [bundle.base_twist] + list(bundle.fiber_degrees)
        product = product * tower.line_class(coeffs)
    product = product * tower.xi(1) ** (fam.base - 1)
    value = integrate(product)
    assert value.denominator == 1
    return int(value)


def c1_pairing_check(fam, bundles, tower=None):
    """Exact agreement of the alternating-chi degree with the symbolic
    pushforward degree, plus the vanishing of the alternating rank sum."""
    degree, rank_sum = deligne_pairing_degree(fam, bundles)
    pushed = pairing_degree_by_pushforward(fam, bundles, tower=tower)
    return {
        "degree": degree,
        "rank_sum": rank_sum,
        "pushforward_degree": pushed,
        "match": degree == pushed and rank_sum == 0,
    }
