import random
from fractions import Fraction

import pytest

from chowline.charclass import (
    CharClassSpec,
    VirtualBundle,
    borel_serre_check,
    ch,
    ch_lambda_minus_one,
    ch_tensor_check,
    evaluate_class,
    lambda_minus_one,
    restriction_normal_bundle_check,
    td,
    td_star,
)
from chowline.chern_ring import BundleDecl, Setup, chern_class
from chowline.errors import MalformedVirtualBundle, TruncationTooLow
from chowline.poly import PowerSeries
from chowline.symfun import exp_series, series_invert


def make_setup(truncation=6, **ranks):
    return Setup([BundleDecl(n, r) for n, r in ranks.items()], 0, truncation)


O = VirtualBundle.trivial()


# -------------------------------------------------------------------- ch/td

def test_ch_of_trivial_line_is_one():
    s = make_setup(E=2)
    assert ch(O, s) == s.const(1)


def test_ch_of_line_exp_expansion():
    s = make_setup(truncation=2, L=1)
    c1 = chern_class(s, "L", 1)
    expected = s.const(1) + c1 + c1 * c1 * Fraction(1, 2)
    assert ch(VirtualBundle.bundle("L"), s) == expected


def test_td_degree_one():
    s = make_setup(E=3)
    half_c1 = chern_class(s, "E", 1) * Fraction(1, 2)
    assert td(VirtualBundle.bundle("E"), s).graded_part(1) == half_c1


def test_rank_term():
    s = make_setup(E=3)
    assert ch(VirtualBundle.bundle("E"), s).graded_part(0) == s.const(3)


# ----------------------------------------------------------------- td_star

def test_td_star_degree_one_sign():
    s = make_setup(E=2)
    E = VirtualBundle.bundle("E")
    assert td_star(E, s).graded_part(1) == -chern_class(s, "E", 1) * Fraction(1, 2)


def test_td_star_of_trivial():
    s = make_setup(E=1)
    assert td_star(O, s) == s.const(1)


def test_td_star_equals_td_of_dual():
    s = make_setup(E=3)
    E = VirtualBundle.bundle("E")
    assert td_star(E, s) == td(E.dual(), s)
    assert td_star(E, s) == td(E, s).alternate_signs()


# ------------------------------------------------------------- lambda_{-1}

def test_ch_lambda_minus_one_rank_one():
    s = make_setup(truncation=4, L=1)
    got = ch_lambda_minus_one(s, "L")
    x = chern_class(s, "L", 1)
    # 1 - e^x = -x - x^2/2 - x^3/6 - x^4/24
    expected = (-x - x ** 2 * Fraction(1, 2) - x ** 3 * Fraction(1, 6)
                - x ** 4 * Fraction(1, 24))
    assert got == expected


def test_ch_lambda_minus_one_agrees_with_virtual_sum():
    for r in (1, 2, 3):
        s = make_setup(truncation=6, E=r)
        assert ch_lambda_minus_one(s, "E") == ch(lambda_minus_one(s, "E"), s)


def test_ch_lambda_minus_one_lowest_term_is_top_chern():
    s = make_setup(truncation=6, E=2)
    got = ch_lambda_minus_one(s, "E")
    assert got.graded_part(0).is_zero()
    assert got.graded_part(1).is_zero()
    assert got.graded_part(2) == chern_class(s, "E", 2)


# -------------------------------------------------------------- Borel-Serre

def test_borel_serre_small_ranks():
    for r in (1, 2):
        s = make_setup(truncation=6, E=r)
        ok, residual = borel_serre_check(s, "E")
        assert ok, str(residual)


def test_borel_serre_zero_bundle():
    # lambda_{-1}(0) = Lambda^0(0) = O; both sides are the constant 1.
    s = make_setup(truncation=6, E=1)
    zero = VirtualBundle.zero()
    assert ch(zero.lam(0), s) == s.const(1)
    assert td(zero.dual(), s) == s.const(1)


def test_borel_serre_rank_one_termwise():
    s = make_setup(truncation=4, L=1)
    ok, residual = borel_serre_check(s, "L")
    assert ok, str(residual)


def test_borel_serre_truncation_too_low():
    s = Setup([BundleDecl("E", 3)], 0, 2)
    with pytest.raises(TruncationTooLow):
        borel_serre_check(s, "E")


def test_restriction_normal_bundle_small_ranks():
    for r in (1, 2):
        s = make_setup(truncation=6, E=r)
        assert restriction_normal_bundle_check(s, "E")


# ---------------------------------------------------------- multiplicativity

def test_ch_tensor_trivial():
    s = make_setup(E=2)
    assert ch_tensor_check(s, O, O)


def test_ch_tensor_lines():
    s = make_setup(truncation=6, L=1, M=1)
    assert ch_tensor_check(s, VirtualBundle.bundle("L"), VirtualBundle.bundle("M"))


def test_ch_tensor_rank_two_by_line():
    s = make_setup(truncation=4, E=2, L=1)
    assert ch_tensor_check(s, VirtualBundle.bundle("E"), VirtualBundle.bundle("L"))


# ------------------------------------------------------ structural properties

def random_virtual_tree(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        return VirtualBundle.bundle(rng.choice(names))
    op = rng.choice(["sum", "tensor", "dual", "scale"])
    if op == "sum":
        return (random_virtual_tree(rng, names, depth - 1)
                + random_virtual_tree(rng, names, depth - 1))
    if op == "tensor":
        return (random_virtual_tree(rng, names, depth - 1)
                * random_virtual_tree(rng, names, depth - 1))
    if op == "dual":
        return random_virtual_tree(rng, names, depth - 1).dual()
    return rng.choice([-1, 2]) * random_virtual_tree(rng, names, depth - 1)


def test_additive_classes_are_additive():
    rng = random.Random(3)
    s = make_setup(truncation=4, A=1, B=2)
    spec = CharClassSpec("additive", exp_series(4))
    for _ in range(15):
        v = random_virtual_tree(rng, ["A", "B"], 2)
        w = random_virtual_tree(rng, ["A", "B"], 2)
        assert evaluate_class(spec, v + w, s) == (
            evaluate_class(spec, v, s) + evaluate_class(spec, w, s))


def test_multiplicative_classes_multiply_and_invert():
    rng = random.Random(4)
    s = make_setup(truncation=4, A=1, B=2)
    spec = CharClassSpec(
        "multiplicative", PowerSeries([1, Fraction(1, 2), Fraction(1, 3),
                                       Fraction(-1, 5), 1]))
    for _ in range(15):
        v = random_virtual_tree(rng, ["A", "B"], 2)
        w = random_virtual_tree(rng, ["A", "B"], 2)
        assert evaluate_class(spec, v + w, s) == (
            evaluate_class(spec, v, s) * evaluate_class(spec, w, s))
        assert evaluate_class(spec, -v, s).poly == series_invert(
            evaluate_class(spec, v, s).poly)


def test_lambda_filtration_shadow():
    # ch(Lambda^k (A + B)) = sum_i ch(Lambda^i A) ch(Lambda^{k-i} B).
    s = make_setup(truncation=5, A=2, B=2)
    A, B = VirtualBundle.bundle("A"), VirtualBundle.bundle("B")
    for k in range(5):
        lhs = ch((A + B).lam(k), s)
        rhs = s.zero()
        for i in range(k + 1):
            rhs = rhs + ch(A.lam(i), s) * ch(B.lam(k - i), s)
        assert lhs == rhs


def test_duality_flips_signs_degreewise():
    s = make_setup(truncation=5, E=3)
    E = VirtualBundle.bundle("E")
    chE = ch(E, s)
    chdual = ch(E.dual(), s)
    for k in range(6):
        assert chdual.graded_part(k) == chE.graded_part(k) * ((-1) ** k)


def test_lambda_of_virtual_difference_rejected():
    s = make_setup(truncation=4, A=1, B=1)
    v = VirtualBundle.bundle("A") - VirtualBundle.bundle("B")
    with pytest.raises(MalformedVirtualBundle):
        ch(v.lam(2), s)


def test_lambda_rank_limit():
    s = make_setup(truncation=4, E=5)
    E = VirtualBundle.bundle("E")
    with pytest.raises(MalformedVirtualBundle):
        ch((E + E).lam(2), s)


def test_det_of_virtual_sum():
    s = make_setup(truncation=4, E=2, L=1)
    E, L = VirtualBundle.bundle("E"), VirtualBundle.bundle("L")
    v = (E - L).det()
    expected = chern_class(s, "E", 1) - chern_class(s, "L", 1)
    assert ch(v, s).graded_part(1) == expected


def test_rank_function():
    s = make_setup(truncation=4, E=3, L=1)
    E, L = VirtualBundle.bundle("E"), VirtualBundle.bundle("L")
    assert (E * E).rank(s.rank) == 9
    assert (E - L).rank(s.rank) == 2
    assert E.lam(2).rank(s.rank) == 3
    assert E.det().rank(s.rank) == 1
    assert O.rank(s.rank) == 1
