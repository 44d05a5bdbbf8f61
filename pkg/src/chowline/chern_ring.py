"""The graded ring of formal Chern classes of a declared set of bundles.

A setup declares finitely many constant-rank bundles.  Each rank-r bundle
contributes r Chern-root variables of degree 1, and every class is stored
internally as a polynomial in the roots, symmetric within each bundle's
block.  This makes the splitting principle a tautology: the Whitney
formula, duality, twisting by a line bundle and the Segre recurrence all
become literal polynomial identities, checkable by exact equality, and
rank triviality (c_k(E) = 0 for k > rk E) is structural rather than an
imposed relation.

The Chern-monomial presentation (polynomials in symbols c_k(E)) is a
display layer produced by ``to_chern_basis``; the root representation
remains the canonical form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

from .errors import Truncated, UnknownBundle
from .poly import Poly
from .symfun import elem_sym, series_invert, to_chern_basis


@dataclass(frozen=True)
class BundleDecl:
    """A named vector bundle of constant positive rank."""
    name: str
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(
                f"bundle {self.name!r} must have rank >= 1; model rank-0 "
                "summands as the empty virtual sum")


class Setup:
    """A geometric setup: named bundles, relative dimension and truncation.

    The truncation bound D must be at least n+1 so that the degree used for
    pairing computations is representable.
    """

    def __init__(self, bundles, relative_dimension=0, truncation=8):
        decls = []
        for b in bundles:
            if isinstance(b, BundleDecl):
                decls.append(b)
            else:
                decls.append(BundleDecl(*b))
        names = [b.name for b in decls]
        if len(set(names)) != len(names):
            raise ValueError("bundle names must be unique within a setup")
        if relative_dimension < 0:
            raise ValueError("relative dimension must be >= 0")
        if truncation < relative_dimension + 1:
            raise ValueError(
                "truncation must be at least relative_dimension + 1")
        self.bundles = {b.name: b for b in decls}
        self.relative_dimension = relative_dimension
        self.truncation = truncation
        self.grades = {}
        for b in decls:
            for i in range(1, b.rank + 1):
                self.grades[self._root_name(b.name, i)] = 1

    @staticmethod
    def _root_name(bundle, index):
        return f"{bundle}.{index}"

    def declare(self, name, rank):
        """A copy of this setup with one more bundle."""
        return Setup(list(self.bundles.values()) + [BundleDecl(name, rank)],
                     self.relative_dimension, self.truncation)

    def rank(self, name):
        if name not in self.bundles:
            raise UnknownBundle(f"bundle {name!r} is not declared")
        return self.bundles[name].rank

    def root_vars(self, name):
        rank = self.rank(name)
        return [self._root_name(name, i) for i in range(1, rank + 1)]

    def roots(self, name):
        return tuple(Poly.var(v, self.grades, self.truncation)
                     for v in self.root_vars(name))

    def zero(self):
        return ChernSeries(self, Poly.zero(self.grades, self.truncation))

    def const(self, value):
        return ChernSeries(self, Poly.const(value, self.grades, self.truncation))

    def series(self, poly):
        return ChernSeries(self, poly)

    # -- serialization -----------------------------------------------------

    @classmethod
    def from_dict(cls, data):
        bundles = [BundleDecl(b["name"], int(b["rank"]))
                   for b in data.get("bundles", [])]
        return cls(bundles,
                   relative_dimension=int(data.get("relative_dimension", 0)),
                   truncation=int(data.get("truncation", 8)))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dict(self):
        return {
            "bundles": [{"name": b.name, "rank": b.rank}
                        for b in self.bundles.values()],
            "relative_dimension": self.relative_dimension,
            "truncation": self.truncation,
        }


class ChernSeries:
    """A truncated graded element of the formal intersection ring."""

    __slots__ = ("setup", "poly")

    def __init__(self, setup, poly):
        self.setup = setup
        self.poly = poly

    def _coerce(self, other):
        if isinstance(other, ChernSeries):
            return other.poly
        return other

    def __add__(self, other):
        return ChernSeries(self.setup, self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ChernSeries(self.setup, self.poly - self._coerce(other))

    def __rsub__(self, other):
        return ChernSeries(self.setup, self._coerce(other) - self.poly)

    def __mul__(self, other):
        return ChernSeries(self.setup, self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n):
        return ChernSeries(self.setup, self.poly ** n)

    def __neg__(self):
        return ChernSeries(self.setup, -self.poly)

    def __eq__(self, other):
        return self.poly == self._coerce(other)

    def is_zero(self):
        return self.poly.is_zero()

    def graded_part(self, k):
        return ChernSeries(self.setup, self.poly.graded_part(k))

    def alternate_signs(self):
        return ChernSeries(self.setup, self.poly.alternate_signs())

    def inverse(self):
        return ChernSeries(self.setup, series_invert(self.poly))

    def evaluate(self, values):
        return self.poly.evaluate(values)

    def chern_basis(self):
        """Presentation in the Chern-monomial symbols c_k(bundle)."""
        blocks = [(name, self.setup.root_vars(name))
                  for name in self.setup.bundles]
        return to_chern_basis(self.poly, blocks)

    def __str__(self):
        return str(self.chern_basis())

    def __repr__(self):
        return f"ChernSeries({self})"


# -- operations --------------------------------------------------------------


def chern_class(setup, name, k):
    """c_k(E): the k-th elementary symmetric polynomial of E's roots.

    c_0 = 1, and c_k = 0 identically for k > rk E.
    """
    if k < 0:
        raise ValueError("Chern class degree must be >= 0")
    vars_ = setup.root_vars(name)
    return ChernSeries(
        setup, elem_sym(k, vars_, setup.grades, setup.truncation))


def total_chern_class(setup, name):
    total = setup.const(1)
    for k in range(1, setup.rank(name) + 1):
        total = total + chern_class(setup, name, k)
    return total


def whitney_expand(setup, first, second, k):
    """The Whitney expansion sum_i c_i(first) * c_{k-i}(second).

    Evaluated on the concatenation of the two root blocks this equals
    c_k(first + second), i.e. e_k of the combined roots.
    """
    total = setup.zero()
    for i in range(k + 1):
        total = total + chern_class(setup, first, i) * chern_class(setup, second, k - i)
    return total


def dual_class(setup, name, k):
    """c_k of the dual bundle: (-1)^k c_k(E), equal to e_k of the negated roots."""
    sign = 1 if k % 2 == 0 else -1
    return chern_class(setup, name, k) * sign


def tensor_line(setup, name, line, k):
    """c_k(E (x) L) for a line bundle L, expanded in c_i(E) and c_1(L).

    The coefficient of c_{k-i}(E) c_1(L)^i is binom(r-k+i, i), which is
    what expanding e_k over the shifted roots x_j + l yields (cf. Fulton,
    Intersection Theory, Remark 3.2.3(b)).
    """
    r = setup.rank(name)
    if setup.rank(line) != 1:
        raise UnknownBundle(f"{line!r} must be a declared line bundle")
    c1L = chern_class(setup, line, 1)
    total = setup.zero()
    for i in range(k + 1):
        coeff = comb(r - k + i, i) if r - k + i >= 0 else 0
        if coeff:
            total = total + chern_class(setup, name, k - i) * (c1L ** i) * coeff
    return total


def tensor_line_oracle(setup, name, line, k):
    """e_k of the shifted roots {x_j + l}: the splitting-principle value of
    c_k(E (x) L).  Kept separate so the closed formula has an independent
    check."""
    ell = chern_class(setup, line, 1)
    shifted = [ChernSeries(setup, Poly.var(v, setup.grades, setup.truncation)) + ell
               for v in setup.root_vars(name)]
    # e_k of explicit ring elements, by dynamic programming over
    # prod_j (1 + t x_j): coefficient of t^k.
    layers = [setup.const(1)] + [setup.zero()] * k
    for x in shifted:
        for i in range(min(k, len(shifted)), 0, -1):
            layers[i] = layers[i] + layers[i - 1] * x
    return layers[k]


def segre_class(setup, name, k, fulton=False):
    """Segre class s_k(E).

    In the Fulton convention s(E) = 1/c(E), computed degree by degree from
    s_k = -sum_{j>=1} c_j s_{k-j}.  The default convention carries an extra
    (-1)^k per degree, so that the recurrence
    sum_{i=0}^k (-1)^i s_i c_{k-i} = 0 holds for k >= 1 and c_1 = s_1.
    """
    if k < 0:
        raise ValueError("Segre class degree must be >= 0")
    if k == 0:
        return setup.const(1)
    s = [setup.const(1)]
    for m in range(1, k + 1):
        acc = setup.zero()
        for j in range(1, m + 1):
            acc = acc - chern_class(setup, name, j) * s[m - j]
        s.append(acc)
    if fulton:
        return s[k]
    return s[k] * (1 if k % 2 == 0 else -1)


def chern_from_segre(setup, name, k, fulton=False):
    """c_k recovered from Segre classes through the defining recurrence.

    Default convention: c_k = sum_{i=1}^{k} (-1)^{i+1} s_i c_{k-i}; in the
    1/c convention the signs disappear into the s_i themselves.  Equals
    chern_class(setup, name, k) identically.
    """
    if k == 0:
        return setup.const(1)
    total = setup.zero()
    for i in range(1, k + 1):
        term = (segre_class(setup, name, i, fulton=fulton)
                * chern_from_segre(setup, name, k - i, fulton=fulton))
        if fulton:
            sign = -1
        else:
            sign = 1 if i % 2 == 1 else -1
        total = total + term * sign
    return total


def first_chern_det(setup, virtual):
    """c_1(det V) = c_1(V) for a virtual bundle, additive in every sum.

    Accepts a VirtualBundle expression; the first Chern class is the
    coefficient-weighted sum of all roots.
    """
    total = setup.zero()
    for mult, roots in virtual.summands(setup.roots):
        for root in roots:
            total = total + ChernSeries(setup, root) * mult
    return total


def integrate_formal(series, degree):
    """Extract the homogeneous component of the given degree.

    Components beyond the truncation bound were never computed and cannot
    be recovered, so asking for them raises Truncated.
    """
    if degree > series.setup.truncation:
        raise Truncated(
            f"degree {degree} exceeds the truncation bound "
            f"{series.setup.truncation}")
    return series.graded_part(degree)
