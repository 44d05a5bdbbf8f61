"""Invariant-level computations for symmetric monoidal groupoids.

A commutative Picard category is classified up to equivalence by the
triple (pi0, pi1, eps): the group of objects up to isomorphism, the
automorphisms of the unit, and the sign homomorphism eps: pi0 -> pi1
induced by the self-symmetries c_{X,X}, which is of order dividing 2.

This module computes that triple for inputs given at the skeleton level:
a finite presentation of the object monoid, and automorphism groups
sampled along a user-declared cofinal chain with translation
homomorphisms between them.  pi0 is the group completion of the monoid;
pi1 is the stabilized value of the chain (the module refuses to
extrapolate: a chain that does not visibly stabilize is an error); eps is
solved from the supplied symmetry elements as an integer linear system,
with the order-2 constraint imposed rather than assumed.

Everything reduces to exact integer linear algebra via the Smith normal
form, which is implemented here with full transformation matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    ChainNotStabilized,
    InvalidSymmetryData,
    NonHomomorphicTranslation,
    NotAHomomorphism,
    UnderdeterminedSign,
)
from .poly import Poly


# ---------------------------------------------------------------------------
# integer linear algebra
# ---------------------------------------------------------------------------

def xgcd(a, b):
    """Extended gcd: returns (x, y, g) with x*a + y*b == g >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] += a * Bt[j]
    return out


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def integer_determinant(matrix):
    """Fraction-free determinant (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def smith_normal_form(matrix):
    """Smith normal form with transforms: U @ M @ V = D.

    Returns (diagonal, U, V) where ``diagonal`` lists d_1, ..., d_r with
    the divisibility chain d_1 | d_2 | ... (zeros trailing), and U, V are
    unimodular.  The cokernel of M (rows = generators) is
    Z^{rows - #nonzero} (+) sum_i Z/d_i.
    """
    M = [list(map(int, row)) for row in matrix]
    m = len(M)
    n = len(M[0]) if M else 0
    U = identity_matrix(m)
    V = identity_matrix(n)

    def row_combine(i1, i2, j):
        # Zero out M[i2][j] against pivot M[i1][j] by unimodular row ops.
        a, b = M[i1][j], M[i2][j]
        if b == 0:
            return
        if a == 0:
            M[i1], M[i2] = M[i2], M[i1]
            U[i1], U[i2] = U[i2], U[i1]
            return
        if b % a == 0:
            q = b // a
            for jj in range(n):
                M[i2][jj] -= q * M[i1][jj]
            for jj in range(m):
                U[i2][jj] -= q * U[i1][jj]
            return
        x, y, g = xgcd(a, b)
        ag, bg = a // g, b // g
        for jj in range(n):
            s, t = M[i1][jj], M[i2][jj]
            M[i1][jj] = x * s + y * t
            M[i2][jj] = -bg * s + ag * t
        for jj in range(m):
            s, t = U[i1][jj], U[i2][jj]
            U[i1][jj] = x * s + y * t
            U[i2][jj] = -bg * s + ag * t

    def col_combine(j1, j2, i):
        a, b = M[i][j1], M[i][j2]
        if b == 0:
            return
        if a == 0:
            for row in M:
                row[j1], row[j2] = row[j2], row[j1]
            for row in V:
                row[j1], row[j2] = row[j2], row[j1]
            return
        if b % a == 0:
            q = b // a
            for row in M:
                row[j2] -= q * row[j1]
            for row in V:
                row[j2] -= q * row[j1]
            return
        x, y, g = xgcd(a, b)
        ag, bg = a // g, b // g
        for row in M:
            s, t = row[j1], row[j2]
            row[j1] = x * s + y * t
            row[j2] = -bg * s + ag * t
        for row in V:
            s, t = row[j1], row[j2]
            row[j1] = x * s + y * t
            row[j2] = -bg * s + ag * t

    rank_bound = min(m, n)
    for k in range(rank_bound):
        # Bring a nonzero entry of the trailing submatrix to (k, k).
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if M[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        if i != k:
            M[k], M[i] = M[i], M[k]
            U[k], U[i] = U[i], U[k]
        if j != k:
            for row in M:
                row[k], row[j] = row[j], row[k]
            for row in V:
                row[k], row[j] = row[j], row[k]
        while True:
            for i in range(k + 1, m):
                row_combine(k, i, k)
            if all(M[k][j] == 0 for j in range(k + 1, n)):
                break
            for j in range(k + 1, n):
                col_combine(k, j, k)
            if all(M[i][k] == 0 for i in range(k + 1, m)):
                break

    # Divisibility: fix diagonal pairs by explicit 2x2 transformations.
    diag_len = rank_bound
    for i in range(diag_len):
        for j in range(i + 1, diag_len):
            a, b = M[i][i], M[j][j]
            if a == 0 and b != 0:
                M[i][i], M[j][j] = b, 0
                U[i], U[j] = U[j], U[i]
                for row in V:
                    row[i], row[j] = row[j], row[i]
                continue
            if b == 0 or a == 0 or b % a == 0:
                continue
            x, y, g = xgcd(a, b)
            l = a * b // g
            # [[x, y], [-b/g, a/g]] @ diag(a, b) @ [[1, -y*b/g], [1, x*a/g]]
            # equals diag(g, l); both factors are unimodular.
            bg, ag = b // g, a // g
            for jj in range(m):
                s, t = U[i][jj], U[j][jj]
                U[i][jj] = x * s + y * t
                U[j][jj] = -bg * s + ag * t
            for row in V:
                s, t = row[i], row[j]
                row[i] = s + t
                row[j] = -y * bg * s + x * ag * t
            M[i][i], M[j][j] = g, l

    diagonal = []
    for i in range(diag_len):
        d = M[i][i]
        if d < 0:
            d = -d
            for jj in range(m):
                U[i][jj] = -U[i][jj]
        diagonal.append(d)
    return diagonal, U, V


def solve_integer_system(matrix, rhs):
    """A solution x of matrix @ x = rhs over the integers, or None.

    With U A V = D, the system becomes D y = U b and x = V y.
    """
    m = len(matrix)
    n = len(matrix[0]) if matrix else 0
    if len(rhs) != m:
        raise ValueError("right-hand side length mismatch")
    if n == 0:
        return [] if all(b == 0 for b in rhs) else None
    diagonal, U, V = smith_normal_form(matrix)
    c = mat_vec(U, list(rhs))
    y = [0] * n
    for i in range(m):
        d = diagonal[i] if i < len(diagonal) else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            if i < n:
                y[i] = c[i] // d
    return mat_vec(V, y)


def lattice_contains(columns, vector):
    """Is ``vector`` an integer combination of the given columns?"""
    if not columns:
        return all(x == 0 for x in vector)
    matrix = [[col[i] for col in columns] for i in range(len(vector))]
    return solve_integer_system(matrix, vector) is not None


def cokernel_invariants(matrix, generators):
    """(free_rank, torsion) of Z^generators / column span of ``matrix``.

    ``matrix`` has ``generators`` rows; torsion lists the invariant
    factors > 1 in divisibility order.
    """
    if generators == 0:
        return 0, []
    if not matrix or not matrix[0]:
        return generators, []
    diagonal, _, _ = smith_normal_form(matrix)
    nonzero = [d for d in diagonal if d != 0]
    torsion = [d for d in nonzero if d != 1]
    return generators - len(nonzero), torsion


# ---------------------------------------------------------------------------
# finitely generated abelian groups
# ---------------------------------------------------------------------------

class FGAbelianGroup:
    """Z^g modulo the columns of a relation matrix.

    Elements are integer vectors of length g; two vectors represent the
    same element iff their difference lies in the relation lattice.
    Isomorphism type is carried by (free rank, invariant factors).
    """

    def __init__(self, generators, relations=()):
        self.generators = int(generators)
        self.relations = [list(map(int, r)) for r in relations]
        for r in self.relations:
            if len(r) != self.generators:
                raise ValueError("relation length must equal generator count")
        self.free_rank, self.torsion = cokernel_invariants(
            self._relation_matrix(), self.generators)

    def _relation_matrix(self):
        return [[r[i] for r in self.relations] for i in range(self.generators)]

    @classmethod
    def free(cls, rank):
        return cls(rank, [])

    @classmethod
    def trivial(cls):
        return cls(0, [])

    @classmethod
    def cyclic(cls, order):
        """Z for order 0, else Z/order."""
        if order == 0:
            return cls.free(1)
        return cls(1, [[order]])

    @classmethod
    def from_invariants(cls, free_rank, torsion):
        g = free_rank + len(torsion)
        relations = []
        for i, d in enumerate(torsion):
            rel = [0] * g
            rel[free_rank + i] = d
            relations.append(rel)
        return cls(g, relations)

    def invariants(self):
        return self.free_rank, tuple(self.torsion)

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def isomorphic(self, other):
        return self.invariants() == other.invariants()

    __eq__ = isomorphic

    def __hash__(self):
        return hash(self.invariants())

    def element_is_zero(self, vector):
        if len(vector) != self.generators:
            raise ValueError("element length must equal generator count")
        return lattice_contains(self.relations, list(vector))

    def elements_equal(self, a, b):
        return self.element_is_zero([x - y for x, y in zip(a, b)])

    def hom(self, other):
        """Hom(self, other) as an abstract f.g. abelian group.

        Hom distributes over the cyclic decompositions:
        Hom(Z, Z/e) = Z/e, Hom(Z/d, Z/e) = Z/gcd(d, e),
        Hom(Z/d, Z) = 0, Hom(Z, Z) = Z.
        """
        from math import gcd
        free = self.free_rank * other.free_rank
        torsion = []
        torsion.extend(list(other.torsion) * self.free_rank)
        for d in self.torsion:
            for e in other.torsion:
                g = gcd(d, e)
                if g > 1:
                    torsion.append(g)
        return FGAbelianGroup.from_invariants(free, sorted(torsion))

    def order(self):
        """Number of elements (None when infinite)."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FGAbelianGroup({self})"


def homomorphism_defined(source, target, matrix):
    """Does ``matrix`` (target-generators x source-generators) send the
    relations of ``source`` into those of ``target``?"""
    if len(matrix) != target.generators:
        raise ValueError("matrix row count must match target generators")
    for row in matrix:
        if len(row) != source.generators:
            raise ValueError("matrix column count must match source generators")
    for rel in source.relations:
        image = mat_vec(matrix, rel)
        if not target.element_is_zero(image):
            return False
    return True


def homomorphism_is_isomorphism(source, target, matrix):
    """Isomorphism test for a map given on presentation generators.

    Surjectivity says the columns of the matrix together with the target
    relations span Z^(target generators).  A surjection between abstractly
    isomorphic finitely generated abelian groups is an isomorphism
    (such groups are Hopfian), so surjectivity plus equal invariants
    suffices.
    """
    if not homomorphism_defined(source, target, matrix):
        raise NotAHomomorphism("matrix does not respect the relations")
    if source.invariants() != target.invariants():
        return False
    columns = [[row[j] for row in matrix] for j in range(source.generators)]
    columns += [list(r) for r in target.relations]
    stacked = [[col[i] for col in columns] for i in range(target.generators)]
    free, torsion = cokernel_invariants(stacked, target.generators)
    return free == 0 and not torsion


def equivalence_check(pi0_map, pi1_map, source, target):
    """Weak-equivalence criterion: a functor of Picard categories is an
    equivalence iff it induces isomorphisms on pi0 and pi1."""
    ok0 = homomorphism_is_isomorphism(source.pi0, target.pi0, pi0_map)
    ok1 = homomorphism_is_isomorphism(source.pi1, target.pi1, pi1_map)
    return ok0 and ok1


# ---------------------------------------------------------------------------
# monoids and group completion
# ---------------------------------------------------------------------------

@dataclass
class MonoidPresentation:
    """A finitely presented commutative monoid: N^generators modulo the
    congruence generated by relations u = v."""
    generators: int
    relations: list = field(default_factory=list)

    def __post_init__(self):
        for u, v in self.relations:
            if len(u) != self.generators or len(v) != self.generators:
                raise ValueError("relation vectors must match generator count")


def grothendieck_group(monoid):
    """Group completion: Z^g modulo the differences u - v.

    Formal differences of monoid elements form a group in which each
    congruence u = v becomes the relation u - v = 0.
    """
    relations = [[a - b for a, b in zip(u, v)] for u, v in monoid.relations]
    return FGAbelianGroup(monoid.generators, relations)


# ---------------------------------------------------------------------------
# Picardification invariants
# ---------------------------------------------------------------------------

@dataclass
class GroupoidSkeleton:
    """Skeleton data of a symmetric monoidal groupoid along a cofinal chain.

    ``chain_groups[k]`` is the automorphism group at the chain point
    m_0 + k*s (monoid-element vectors ``chain_start`` and ``chain_step``),
    with ``translations[k]`` the homomorphism from sample k to sample k+1
    given on presentation generators.  ``symmetry[k]`` is the image of the
    self-symmetry c_{m,m} at sample k, written in the colimit, i.e. as an
    element of the last chain group.  Automorphism groups must be supplied
    abelian(ized).
    """
    monoid: MonoidPresentation
    chain_start: list
    chain_step: list
    chain_groups: list
    translations: list
    symmetry: list

    def __post_init__(self):
        g = self.monoid.generators
        if len(self.chain_start) != g or len(self.chain_step) != g:
            raise ValueError("chain vectors must match the generator count")
        if len(self.chain_groups) < 2:
            raise ChainNotStabilized(
                "need at least two chain samples to detect stabilization")
        if len(self.translations) != len(self.chain_groups) - 1:
            raise ValueError("need one translation per consecutive pair")
        if len(self.symmetry) != len(self.chain_groups):
            raise ValueError("need one symmetry element per chain sample")


@dataclass
class PicardInvariants:
    """(pi0, pi1, eps): eps is a matrix from pi0 presentation generators to
    pi1 presentation coordinates; 2*eps = 0 in pi1."""
    pi0: FGAbelianGroup
    pi1: FGAbelianGroup
    eps: list
    rational: bool = False

    def eps_is_zero(self):
        if not self.eps or self.pi1.generators == 0:
            return True
        for j in range(self.pi0.generators):
            column = [self.eps[i][j] for i in range(self.pi1.generators)]
            if not self.pi1.element_is_zero(column):
                return False
        return True

    def eps_of(self, element):
        """Value of eps on a pi0 element (vector over pi0 generators)."""
        if self.pi1.generators == 0:
            return []
        return mat_vec(self.eps, list(element))

    def describe(self):
        return {
            "pi0": str(self.pi0),
            "pi1": str(self.pi1),
            "eps_zero": self.eps_is_zero(),
        }


def picardify(skeleton):
    """Compute (pi0, pi1, eps) for a groupoid skeleton.

    pi0 is the group completion of the object monoid.  pi1 is the
    stabilized chain value: the last two samples must have identical
    invariant factors and an isomorphic connecting translation, otherwise
    ChainNotStabilized is raised.  eps is solved exactly from the symmetry
    samples, subject to the monoid relations and 2*eps = 0; inconsistent
    data raises InvalidSymmetryData, and samples whose classes do not
    generate pi0 raise UnderdeterminedSign.
    """
    pi0 = grothendieck_group(skeleton.monoid)

    groups = skeleton.chain_groups
    for k, T in enumerate(skeleton.translations):
        if not homomorphism_defined(groups[k], groups[k + 1], T):
            raise NonHomomorphicTranslation(
                f"translation {k} does not respect the relations")

    last, prev = groups[-1], groups[-2]
    if prev.invariants() != last.invariants():
        raise ChainNotStabilized(
            "the last two chain samples have different invariant factors: "
            f"{prev} vs {last}")
    if not homomorphism_is_isomorphism(prev, last, skeleton.translations[-1]):
        raise ChainNotStabilized(
            "the last translation is not an isomorphism")
    pi1 = last

    eps = _solve_sign_homomorphism(skeleton, pi0, pi1)
    return PicardInvariants(pi0, pi1, eps)


def _solve_sign_homomorphism(skeleton, pi0, pi1):
    g = pi0.generators
    p = pi1.generators
    if p == 0 or g == 0:
        return [[0] * g for _ in range(p)]

    samples = []
    for k in range(len(skeleton.chain_groups)):
        vec = [a + k * b for a, b in zip(skeleton.chain_start,
                                         skeleton.chain_step)]
        value = list(map(int, skeleton.symmetry[k]))
        if len(value) != p:
            raise ValueError(
                "symmetry elements must be written in the last chain group")
        samples.append((vec, value))

    # Determinacy: two candidate signs differ by a homomorphism that kills
    # every sample class and is itself of order 2, i.e. an element of
    # Hom(H, pi1[2]) for H = pi0 / <sample classes>.  That group vanishes
    # iff pi1 has no 2-torsion or H/2H = 0.
    span_cols = [vec for vec, _ in samples]
    span_cols += [[a - b for a, b in zip(u, v)]
                  for u, v in skeleton.monoid.relations]
    span_matrix = [[col[i] for col in span_cols] for i in range(g)]
    h_free, h_torsion = cokernel_invariants(span_matrix, g)
    pi1_has_two_torsion = any(d % 2 == 0 for d in pi1.torsion)
    h_mod_two_nonzero = h_free > 0 or any(d % 2 == 0 for d in h_torsion)
    if pi1_has_two_torsion and h_mod_two_nonzero:
        raise UnderdeterminedSign(
            "the chain classes do not pin down the sign homomorphism: "
            "a nonzero order-2 homomorphism vanishes on all of them")

    # Unknowns: the g*p entries of eps, plus one lattice slack vector per
    # congruence constraint.  Each constraint contributes p equations.
    constraints = []  # (coefficient vector over pi0 generators, rhs in Z^p)
    for vec, value in samples:
        constraints.append((vec, value))
    for u, v in skeleton.monoid.relations:
        constraints.append(([a - b for a, b in zip(u, v)], [0] * p))
    for i in range(g):
        unit = [0] * g
        unit[i] = 2
        constraints.append((unit, [0] * p))

    rel_cols = pi1.relations  # columns of the pi1 relation lattice
    r = len(rel_cols)
    n_unknowns = g * p + len(constraints) * r
    rows = []
    rhs = []
    for c_index, (coeffs, target) in enumerate(constraints):
        for row_i in range(p):
            row = [0] * n_unknowns
            for col_j in range(g):
                # entry eps[row_i][col_j] has unknown index row_i*g + col_j
                row[row_i * g + col_j] = coeffs[col_j]
            for rel_index in range(r):
                slack = g * p + c_index * r + rel_index
                row[slack] = rel_cols[rel_index][row_i]
            rows.append(row)
            rhs.append(target[row_i])
    solution = solve_integer_system(rows, rhs)
    if solution is None:
        raise InvalidSymmetryData(
            "no order-2 homomorphism matches the supplied symmetry elements")
    return [[solution[i * g + j] for j in range(g)] for i in range(p)]


def rationalize(invariants):
    """Tensor pi0 and pi1 with Q: torsion dies, eps becomes zero.

    The result is recorded as dimensions of Q-vector spaces (free groups
    with the rational flag set); rationalizing twice is the same as once.
    """
    pi0 = FGAbelianGroup.free(invariants.pi0.free_rank)
    pi1 = FGAbelianGroup.free(invariants.pi1.free_rank)
    eps = [[0] * pi0.generators for _ in range(pi1.generators)]
    return PicardInvariants(pi0, pi1, eps, rational=True)


def nat_transform_torsor(source, target):
    """The torsor of natural transformations between parallel functors of
    Picard categories: Hom(pi0(source), pi1(target))."""
    return source.pi0.hom(target.pi1)


# ---------------------------------------------------------------------------
# Grayson-Quillen pair product
# ---------------------------------------------------------------------------

_FORMAL_BOUND = 64


def formal_object(name):
    """A formal object class: a monomial generator of the object semiring."""
    return Poly.var(name, {name: 1}, _FORMAL_BOUND)


def formal_zero():
    return Poly.zero({}, _FORMAL_BOUND)


def gq_pair_product(pair_a, pair_b):
    """Product of difference pairs in the completed object ring.

    (A, A') * (B, B') = (A@B' + A'@B, A@B + A'@B'), so that the class
    (second - first) multiplies like (A' - A)(B' - B).
    """
    a, a2 = pair_a
    b, b2 = pair_b
    return (a * b2 + a2 * b, a * b + a2 * b2)


def pair_class(pair):
    """The class second - first of a difference pair."""
    first, second = pair
    return second - first
