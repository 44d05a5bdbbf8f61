"""Intersection rings of split projective-bundle towers and pushforward.

A tower is built over a point by repeatedly taking P(E) for E a direct sum
of line classes on the previous level.  Writing xi_j for the tautological
first Chern class introduced at level j and r_j for the rank of the j-th
bundle, the intersection ring is

    Q[xi_1, ..., xi_J] / ( prod_{l in lines_j} (xi_j + l) = 0 ),

with the finite monomial basis xi_j^{a_j}, 0 <= a_j <= r_j - 1.  The
pushforward along the top projection sends a reduced class to its
coefficient of xi_J^{r-1}; equivalently pi_*(xi^{r-1+k}) = s_k(E) with
s = 1/c (the sign-free Segre convention, which is what makes the
projection formula coefficient-free here).

Splitting to sums of line classes loses no generality for identity
checking (splitting principle) and keeps every ring finite-dimensional.
"""

from __future__ import annotations


from .charclass import (
    VirtualBundle,
    chern_character_spec,
    evaluate_class_in_ring,
    todd_spec,
    todd_star_spec,
)
from .errors import UnequalBundles, UnsupportedFamily
from .poly import Poly


def xi_name(level):
    return f"xi{level}"


class Tower:
    """An iterated projective bundle over a point.

    ``levels`` is a list; entry j (0-based) describes the bundle E_j on the
    part of the tower below it, as a list of line classes.  Each line class
    is a coefficient vector over (xi_1, ..., xi_j): level 0 lines have no
    coefficients (lines on a point are trivial).
    """

    def __init__(self, levels, bound=None):
        self.line_coeffs = []
        for j, lines in enumerate(levels):
            if not lines:
                raise ValueError(f"level {j} needs at least one line class")
            for coeffs in lines:
                if len(coeffs) != j:
                    raise ValueError(
                        f"a line class on level {j} takes {j} coefficients, "
                        f"got {len(coeffs)}")
            self.line_coeffs.append([list(map(int, c)) for c in lines])
        self.ranks = [len(lines) for lines in self.line_coeffs]
        self.dimension = sum(r - 1 for r in self.ranks)
        self.bound = self.dimension if bound is None else bound
        self.grades = {xi_name(j + 1): 1 for j in range(len(self.ranks))}
        self._line_polys = [
            [self._linear_form(coeffs) for coeffs in lines]
            for lines in self.line_coeffs
        ]
        # c_i(E_j) reduced in the ring below level j+1, computed bottom-up.
        self._level_chern = []
        for j, lines in enumerate(self._line_polys):
            cs = []
            for i in range(len(lines) + 1):
                raw = _elementary_of(lines, i, self.grades, self.bound)
                cs.append(self._reduce_poly(raw, top=j))
            self._level_chern.append(cs)

    # -- construction helpers ------------------------------------------

    @classmethod
    def projective_space(cls, n, bound=None):
        """P^n as the projectivization of the trivial rank-(n+1) bundle."""
        return cls([[[] for _ in range(n + 1)]], bound=bound)

    @classmethod
    def product_of_projective_spaces(cls, dims, bound=None):
        """P^{d_1} x P^{d_2} x ... as a tower of trivial projectivizations."""
        levels = []
        for j, d in enumerate(dims):
            levels.append([[0] * j for _ in range(d + 1)])
        return cls(levels, bound=bound)

    @classmethod
    def from_dict(cls, data, bound=None):
        return cls([lvl["lines"] for lvl in data["levels"]], bound=bound)

    def to_dict(self):
        return {"levels": [{"lines": [list(c) for c in lines]}
                           for lines in self.line_coeffs]}

    # -- ring elements ---------------------------------------------------

    def _linear_form(self, coeffs):
        p = Poly.zero(self.grades, self.bound)
        for i, c in enumerate(coeffs):
            if c:
                p = p + Poly.var(xi_name(i + 1), self.grades, self.bound) * c
        return p

    def xi(self, level):
        """The tautological class of the given level (1-based)."""
        if not 1 <= level <= len(self.ranks):
            raise ValueError(f"no level {level} in this tower")
        return TowerClass(self, Poly.var(xi_name(level), self.grades, self.bound))

    def line_class(self, coeffs):
        """The class sum_i coeffs[i] * xi_{i+1}."""
        coeffs = list(coeffs)
        if len(coeffs) > len(self.ranks):
            raise ValueError("more coefficients than tower levels")
        coeffs = coeffs + [0] * (len(self.ranks) - len(coeffs))
        return TowerClass(self, self._linear_form(coeffs))

    def const(self, value):
        return TowerClass(self, Poly.const(value, self.grades, self.bound))

    def zero(self):
        return TowerClass(self, Poly.zero(self.grades, self.bound))

    def from_poly(self, poly):
        return TowerClass(self, self._reduce_poly(poly))

    def drop_top(self):
        if not self.line_coeffs:
            raise ValueError("cannot remove a level from the point")
        return Tower(self.line_coeffs[:-1], bound=self.bound)

    def level_chern(self, j, i):
        """c_i of the level-j bundle (0-based level), reduced."""
        cs = self._level_chern[j]
        if i >= len(cs):
            return Poly.zero(self.grades, self.bound)
        return cs[i]

    # -- reduction ---------------------------------------------------------

    def _reduce_poly(self, poly, top=None):
        """Reduce modulo the Grothendieck relations of levels 1..top.

        Rewrites xi_j^{r_j} -> -sum_{i>=1} c_i(E_{j-1}) xi_j^{r_j - i}
        until every exponent of xi_j is below r_j.  Each rewrite lowers the
        exponent vector lexicographically (top level most significant), so
        the loop terminates.
        """
        levels = len(self.ranks) if top is None else top
        for j in range(levels, 0, -1):
            name = xi_name(j)
            r = self.ranks[j - 1]
            cs = self._level_chern[j - 1]
            while True:
                excess = {}
                for mono, coeff in poly.terms.items():
                    exps = dict(mono)
                    e = exps.get(name, 0)
                    if e >= r:
                        excess[mono] = (coeff, exps, e)
                if not excess:
                    break
                replacement = Poly.zero(self.grades, self.bound)
                keep = {m: c for m, c in poly.terms.items() if m not in excess}
                poly = Poly(keep, self.grades, self.bound)
                for mono, (coeff, exps, e) in excess.items():
                    rest = dict(exps)
                    rest.pop(name)
                    base = Poly.make({tuple(sorted(rest.items())): coeff},
                                     self.grades, self.bound)
                    rewritten = Poly.zero(self.grades, self.bound)
                    xi = Poly.var(name, self.grades, self.bound)
                    for i in range(1, r + 1):
                        c_i = cs[i] if i < len(cs) else Poly.zero(self.grades, self.bound)
                        if c_i.is_zero():
                            continue
                        rewritten = rewritten - c_i * xi ** (r - i)
                    replacement = replacement + base * rewritten * xi ** (e - r)
                poly = poly + replacement
        return poly


class TowerClass:
    """A class in a tower's intersection ring, kept in reduced form."""

    __slots__ = ("tower", "poly")

    def __init__(self, tower, poly):
        self.tower = tower
        self.poly = poly

    def _coerce(self, other):
        if isinstance(other, TowerClass):
            return other.poly
        return other

    def __add__(self, other):
        return TowerClass(self.tower, self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return TowerClass(self.tower, self.poly - self._coerce(other))

    def __neg__(self):
        return TowerClass(self.tower, -self.poly)

    def __mul__(self, other):
        product = self.poly * self._coerce(other)
        return TowerClass(self.tower, self.tower._reduce_poly(product))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = self.tower.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return self.poly == self._coerce(other)

    def is_zero(self):
        return self.poly.is_zero()

    def graded_part(self, k):
        return TowerClass(self.tower, self.poly.graded_part(k))

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"TowerClass({self.poly})"


def push_level(tclass):
    """Pushforward along the projection that forgets the top level.

    For a reduced class sum_k a_k xi^k with xi the top tautological class
    and r the top rank, the image is a_{r-1}: the Segre terms s_{k-r+1}
    vanish for k < r-1 and reduction has already eliminated k >= r.
    """
    tower = tclass.tower
    if not tower.ranks:
        raise ValueError("cannot push forward from the point")
    below = tower.drop_top()
    name = xi_name(len(tower.ranks))
    r = tower.ranks[-1]
    kept = {}
    for mono, coeff in tclass.poly.terms.items():
        exps = dict(mono)
        if exps.pop(name, 0) == r - 1:
            kept[tuple(sorted(exps.items()))] = coeff
    return TowerClass(below, Poly.make(kept, below.grades, below.bound))


def integrate(tclass):
    """Push down to the point; zero unless the class has top degree."""
    current = tclass
    while current.tower.ranks:
        current = push_level(current)
    return current.poly.constant_term()


def segre_pushforward(tower, exponent):
    """pi_*(xi^{r-1+k}) computed through the reduction: the Segre class
    s_k(E) of the top bundle in the 1/c convention."""
    top = len(tower.ranks)
    return push_level(tower.xi(top) ** exponent)


def tangent_todd(tower):
    """td of the tower's tangent bundle, from the relative Euler sequences.

    Each level contributes T_j = pi^* E_{j-1} (x) O_j(1) - O, whose roots
    are l + xi_j over the line classes l of that level.
    """
    td_series_spec = todd_spec(tower.bound)
    total = Poly.const(1, tower.grades, tower.bound)
    for j, lines in enumerate(tower._line_polys):
        xi = Poly.var(xi_name(j + 1), tower.grades, tower.bound)
        for line in lines:
            total = total * td_series_spec.series.apply_to(line + xi)
    return tower.from_poly(total)


def relative_tangent(tower, base_levels):
    """The relative tangent bundle of the projection to the first
    ``base_levels`` levels, as a virtual bundle over the tower."""
    total = VirtualBundle.zero()
    for j in range(base_levels, len(tower.ranks)):
        xi = Poly.var(xi_name(j + 1), tower.grades, tower.bound)
        for line in tower._line_polys[j]:
            total = total + VirtualBundle.line_class(line + xi)
        total = total - VirtualBundle.trivial()
    return total


def evaluate_on_tower(spec, virtual, tower):
    """Evaluate a characteristic class of a virtual bundle whose leaves are
    line classes on the tower."""
    poly = evaluate_class_in_ring(spec, virtual, tower.grades, tower.bound)
    return tower.from_poly(poly)


def euler_characteristic(tower, virtual):
    """chi(X, V) = integral of ch(V) td(T_X), exact rational."""
    chv = evaluate_on_tower(chern_character_spec(tower.bound), virtual, tower)
    return integrate(chv * tangent_todd(tower))


def symmetry_sign(tower, lines, i, j):
    """Sign of swapping entries i and j of a pairing with L_i = L_j.

    The sign is (-1)^kappa with kappa the degree of the product of the
    other n first Chern classes over the n-dimensional fiber tower.
    """
    if i == j or not (0 <= i < len(lines)) or not (0 <= j < len(lines)):
        raise ValueError("indices must be distinct slots of the pairing")
    li = tower.line_class(lines[i]).poly
    lj = tower.line_class(lines[j]).poly
    if li != lj:
        raise UnequalBundles(
            "the swapped line classes must be equal for the sign formula")
    product = tower.const(1)
    for k, coeffs in enumerate(lines):
        if k == i:
            continue
        product = product * tower.line_class(coeffs)
    kappa = integrate(product)
    if kappa.denominator != 1:
        raise AssertionError("relative degree must be an integer")
    return -1 if int(kappa) % 2 else 1


def grr_codim1_report(fam, bundle):
    """Compare the two sides of the degree-level Riemann-Roch identity for
    a product family X = fiber x P^1 -> P^1.

    The left side is the degree of det Rf_* L from the cohomological
    oracle; the right side is the degree of the codimension-one part of
    f_*(ch(L) td*(Omega_f)) computed symbolically on the tower.  Returns a
    dict with both degrees and the verdict.
    """
    from . import dcoh  # local import: dcoh also consumes this module

    if fam.base != 1:
        raise UnsupportedFamily(
            "degree comparison needs a one-dimensional base")
    lhs = dcoh.det_Rf_degree(fam, bundle).degree

    dims = [fam.base] + list(fam.fiber)
    bound = sum(dims) + 1
    tower = Tower.product_of_projective_spaces(dims, bound=bound)
    coeffs = [bundle.base_twist] + list(bundle.fiber_degrees)
    line = VirtualBundle.line_class(tower.line_class(coeffs).poly)

    omega = relative_tangent(tower, base_levels=1).dual()
    integrand = (
        evaluate_on_tower(chern_character_spec(bound), line, tower)
        * evaluate_on_tower(todd_star_spec(bound), omega, tower))

    pushed = integrand
    for _ in range(len(fam.fiber)):
        pushed = push_level(pushed)
    rhs = integrate(pushed.graded_part(1))
    if rhs.denominator != 1:
        raise AssertionError("determinant degree must be an integer")
    return {"lhs_degree": lhs, "rhs_degree": int(rhs), "equal": lhs == int(rhs)}


def _elementary_of(elements, k, grades, bound):
    """e_k of explicit ring elements, via the coefficient of t^k in
    prod (1 + t x)."""
    if k == 0:
        return Poly.const(1, grades, bound)
    if k > len(elements):
        return Poly.zero(grades, bound)
    layers = [Poly.const(1, grades, bound)] + [
        Poly.zero(grades, bound) for _ in range(k)]
    for x in elements:
        for i in range(k, 0, -1):
            layers[i] = layers[i] + layers[i - 1] * x
    return layers[k]
