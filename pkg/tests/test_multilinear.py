import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filippov.exactlin import GF, Subspace, det
from filippov.indices import sort_sign, wedge_basis
from filippov.multilinear import (
    BinAlgebra,
    WellDefinednessError,
    ad_extend,
    basic_leibniz_tensor,
    basic_leibniz_wedge,
    basic_lie,
    check_dagger,
    check_jacobi,
    check_leibniz,
    circle,
    circle_algebra,
    commutator_check,
    format_wedge,
    innder_iso_check,
    is_skew,
    jacobiator,
    kernel_K,
    killing_form,
    leibniz_bracket,
    parse_wedge,
    quotient_algebra,
    random_wedge,
    subspace_W,
    tensor,
    wedge,
)
from filippov.nlie import make_abelian, make_filiform5, make_Vn
from filippov.suite import FLEET, build

SMALL = ["Vn:3", "filiform5", "centralext:Vn:3", "abelian:3:3", "fnw2:4:3", "dsum:filiform5:abelian:1:3", "Vn:4"]


# --- independent oracle: wedges as {sorted tuple: coeff} -----------------------

def o_ad(L, x, y):
    """ad_x(y) for wedge dicts, expanded term by term with the bracket table."""
    out = {}
    for xs, a in x.items():
        for ys, b in y.items():
            for pos, yi in enumerate(ys):
                for k, c in L.basis_bracket(xs + (yi,)).items():
                    s, key = sort_sign(ys[:pos] + (k,) + ys[pos + 1:])
                    if s:
                        out[key] = out.get(key, 0) + s * a * b * c
    return {k: v for k, v in out.items() if v}


def o_sub(x, y, f=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) - f * v
    return {k: v for k, v in out.items() if v}


def o_circle(L, x, y):
    return {k: Fraction(v, 2) for k, v in o_sub(o_ad(L, x, y), o_ad(L, y, x)).items()}


def o_jacobiator(L, a, b, c):
    t = o_circle(L, a, o_circle(L, b, c))
    t = o_sub(t, o_circle(L, c, o_circle(L, a, b)), -1)
    return o_sub(t, o_circle(L, b, o_circle(L, c, a)), -1)


def as_dict(L, w):
    basis = wedge_basis(L.dim, L.n - 1)
    return {basis[i]: c for i, c in enumerate(w.coords) if c}


def triples(spec):
    L = build(spec)
    rng = random.Random(spec)
    return L, [(random_wedge(L, rng), random_wedge(L, rng), random_wedge(L, rng)) for _ in range(10)]


# --- worked values ----------------------------------------------------------------

def test_ad_extend_tensor_v3():
    L = make_Vn(3)
    got = ad_extend(L, tensor(L, {(0, 1): 1}), tensor(L, {(2, 2): 1}))
    assert got == tensor(L, {(3, 2): 1, (2, 3): 1})


def test_ad_extend_repeated_factor_is_zero():
    L = make_Vn(3)
    assert not any(ad_extend(L, tensor(L, {(1, 1): 1}), tensor(L, {(0, 2): 1})).coords)


def test_ad_extend_filiform_orientation():
    L = make_filiform5()
    got = ad_extend(L, wedge(L, {(2, 1): 1}), wedge(L, {(0, 3): 1}))
    assert got == wedge(L, {(0, 4): -1})


def test_leibniz_bracket_v3():
    L = make_Vn(3)
    assert leibniz_bracket(L, wedge(L, {(0, 1): 1}), wedge(L, {(0, 2): 1})) == wedge(L, {(0, 3): 1})
    x = wedge(L, {(0, 1): 1})
    assert as_dict(L, leibniz_bracket(L, x, x)) == o_ad(L, as_dict(L, x), as_dict(L, x))


def test_leibniz_bracket_abelian_is_zero():
    L = make_abelian(4, 3)
    assert not any(leibniz_bracket(L, wedge(L, {(0, 1): 1}), wedge(L, {(2, 3): 1})).coords)


def test_filiform_counterexample_value():
    L = make_filiform5()
    a, b, c = (parse_wedge(L, s) for s in ("x1^x4", "x1^x2", "x3^x2"))
    J = jacobiator(L, a, b, c)
    assert J == wedge(L, {(3, 4): Fraction(-1, 4)})
    assert format_wedge(L, J) == "-1/4 * x4^x5"
    assert as_dict(L, J) == o_jacobiator(L, *(as_dict(L, w) for w in (a, b, c)))


def test_parse_wedge_signs_and_errors():
    L = make_filiform5()
    assert parse_wedge(L, "x3^x2") == wedge(L, {(1, 2): -1})
    assert not any(parse_wedge(L, "x2^x2").coords)
    for bad in ("x1", "x1^x9", "y1^x2", "x1^^x2"):
        with pytest.raises(ValueError):
            parse_wedge(L, bad)


def test_circle_rejected_in_characteristic_two():
    L = make_Vn(3, GF(2))
    x = wedge(L, {(0, 1): 1})
    with pytest.raises(ValueError):
        circle(L, x, x)


# --- properties -------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_circle_skew_and_matches_oracle(spec, seed):
    L = build(spec)
    rng = random.Random(seed)
    x, y = random_wedge(L, rng), random_wedge(L, rng)
    xy, yx = circle(L, x, y), circle(L, y, x)
    assert xy.coords == tuple(-c for c in yx.coords)
    assert not any(circle(L, x, x).coords)
    assert as_dict(L, xy) == o_circle(L, as_dict(L, x), as_dict(L, y))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_jacobiator_symmetries(spec, seed):
    L = build(spec)
    rng = random.Random(seed)
    a, b, c = (random_wedge(L, rng) for _ in range(3))
    J = jacobiator(L, a, b, c)
    assert jacobiator(L, b, c, a) == J
    assert not any(jacobiator(L, a, a, b).coords)
    assert as_dict(L, J) == o_jacobiator(L, *(as_dict(L, w) for w in (a, b, c)))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10**6))
def test_dagger_on_random_triples(spec, seed):
    L = build(spec)
    rng = random.Random(seed)
    assert check_dagger(L, *(random_wedge(L, rng) for _ in range(3))).passed


def test_dagger_with_zero_argument():
    L = make_filiform5()
    zero = wedge(L, {})
    rep = check_dagger(L, zero, parse_wedge(L, "x1^x2"), parse_wedge(L, "x3^x4"))
    assert rep.passed and rep.details["value"] == "0"


def test_v3_circle_equals_leibniz_on_basis():
    L = make_Vn(3)
    basis = [wedge(L, {x: 1}) for x in wedge_basis(4, 2)]
    for x in basis:
        for y in basis:
            assert circle(L, x, y) == leibniz_bracket(L, x, y)


@pytest.mark.parametrize("spec", ["Vn:3", "filiform5"])
def test_commutator_identity(spec):
    assert commutator_check(build(spec)).passed


# --- K and W ----------------------------------------------------------------------

def test_kernel_and_w_dimensions():
    V3 = make_Vn(3)
    assert kernel_K(V3).dim() == 10
    assert subspace_W(V3).dim() == 10
    assert kernel_K(V3) == subspace_W(V3)
    ab = make_abelian(3, 3)
    assert kernel_K(ab).dim() == 9
    for d in range(1, 6):
        assert subspace_W(make_abelian(d, 3)).dim() == d * (d + 1) // 2
    fil = make_filiform5()
    assert kernel_K(fil).contains(subspace_W(fil))
    assert kernel_K(fil).dim() > subspace_W(fil).dim()


def test_w_for_higher_arity_is_projection_kernel():
    from math import comb
    L = make_Vn(4)
    assert subspace_W(L).dim() == 5 ** 3 - comb(5, 3)


@pytest.mark.parametrize("spec", SMALL)
def test_w_inside_k(spec):
    L = build(spec)
    assert kernel_K(L).contains(subspace_W(L))


# --- binary algebras --------------------------------------------------------------

@pytest.mark.parametrize("spec", FLEET)
def test_basic_algebras_on_fleet(spec):
    L = build(spec)
    assert check_leibniz(basic_leibniz_tensor(L)).passed
    assert check_leibniz(basic_leibniz_wedge(L)).passed
    C = basic_lie(L)
    assert is_skew(C).passed and check_jacobi(C).passed


def test_basic_lie_v3_looks_like_so4():
    C = basic_lie(make_Vn(3))
    assert C.dim == 6
    assert det(killing_form(C)) != 0
    assert det(killing_form(basic_lie(make_Vn(4)))) != 0


def test_basic_leibniz_filiform_wedge():
    BW = basic_leibniz_wedge(make_filiform5())
    assert BW.dim == 10
    assert check_leibniz(BW).passed
    assert not is_skew(BW).passed


def test_basic_leibniz_abelian_is_zero():
    assert basic_leibniz_tensor(make_abelian(3, 3)).is_zero()


def test_left_and_right_leibniz():
    B = basic_leibniz_tensor(make_Vn(3))
    assert check_leibniz(B.opposite(), side="right").passed
    with pytest.raises(ValueError):
        check_leibniz(B, side="middle")


def test_circle_algebra_jacobi():
    fil = circle_algebra(make_filiform5())
    rep = check_jacobi(fil)
    assert not rep.passed and rep.witness is not None
    L = make_filiform5()
    a, b, c = (parse_wedge(L, s) for s in ("x1^x4", "x1^x2", "x3^x2"))
    assert any(jacobiator(L, a, b, c).coords)
    assert check_jacobi(circle_algebra(build("fnw2:4:3"))).passed


def test_zero_algebra_passes_everything():
    Z = BinAlgebra(3)
    assert is_skew(Z).passed and check_jacobi(Z).passed and check_leibniz(Z).passed
    assert killing_form(Z) == [[0] * 3 for _ in range(3)]


def test_checkers_find_witnesses():
    # e1 e1 = e2 is neither skew nor Leibniz-consistent with e1 e2 = e1
    A = BinAlgebra(2, {(0, 0): {1: 1}, (0, 1): {0: 1}})
    assert not is_skew(A).passed
    rep = check_leibniz(A)
    assert not rep.passed and set(rep.witness) == {"x", "y", "z", "residual"}
    with pytest.raises(ValueError):
        killing_form(A)


def test_quotient_requires_an_ideal():
    A = basic_leibniz_tensor(make_Vn(3))
    S = Subspace([[1] + [0] * 15], 16)
    with pytest.raises(WellDefinednessError):
        quotient_algebra(A, S)


def test_innder_iso():
    assert innder_iso_check(make_Vn(3)).passed
    rep = innder_iso_check(make_filiform5())
    assert not rep.passed and rep.details["consistent"]
    ab = innder_iso_check(make_abelian(3, 3))
    assert ab.details["consistent"] and ab.details["K_dim"] == 9
