from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qheis.expr import ExprError, build_element
from qheis.pbw import (PBWElement, TensorElement, apply_counit, counit, embed, flip,
                       normal_order_mul, tensor)
from qheis.presets import Preset
from qheis.series import TruncatedSeries

T = (3, 3)


def gens(t=T):
    return {g: PBWElement.generator(g, t) for g in ("E", "Ap", "N", "A")}


def el(expr, t=T):
    return build_element(expr, t)


def test_a_ap_relation():
    g = gens()
    assert g["A"] * g["Ap"] - g["Ap"] * g["A"] == el("(* (sinh_over h E) (exp (* w Ap)))")


def test_n_relations():
    g = gens()
    assert g["A"] * g["N"] == g["N"] * g["A"] + g["A"]
    assert g["N"] * g["Ap"] - g["Ap"] * g["N"] == el("(expm1_over w Ap)")
    # the nilpotent expansion starts A+ + (w/2) A+^2
    diff = g["N"] * g["Ap"] - g["Ap"] * g["N"]
    assert diff.coefficient((0, 2, 0, 0)) == TruncatedSeries.w(T) / 2


def test_normal_order_mul_matches_operator():
    g = gens()
    assert normal_order_mul(g["A"], g["Ap"]) == g["A"] * g["Ap"]


@st.composite
def pbw_elements(draw, t=T):
    g = gens(t)
    out = PBWElement.scalar(draw(st.integers(-2, 2)), t)
    for _ in range(draw(st.integers(1, 3))):
        word = draw(st.lists(st.sampled_from(list(g)), min_size=1, max_size=3))
        term = PBWElement.one(t)
        for name in word:
            term = term * g[name]
        scalar = draw(st.sampled_from([1, -1, 2, Fraction(1, 2)]))
        param = draw(st.sampled_from(["1", "h", "w"]))
        if param == "h":
            term = term * TruncatedSeries.h(t)
        elif param == "w":
            term = term * TruncatedSeries.w(t)
        out = out + term * scalar
    return out


@given(pbw_elements(), pbw_elements(), pbw_elements())
def test_associativity(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(pbw_elements())
def test_e_is_central(x):
    E = gens()["E"]
    assert (E * x - x * E).is_zero()


def test_specialisation_to_one_parameter_relations():
    std = gens((4, 1))
    assert std["N"] * std["Ap"] - std["Ap"] * std["N"] == std["Ap"]
    assert std["A"] * std["Ap"] - std["Ap"] * std["A"] == el("(sinh_over h E)", (4, 1))
    non = gens((1, 4))
    assert non["A"] * non["Ap"] - non["Ap"] * non["A"] == el("(* E (exp (* w Ap)))", (1, 4))
    assert non["N"] * non["A"] - non["A"] * non["N"] == -non["A"]


def test_coproduct_examples():
    hopf = Preset("two-parameter", (4, 4)).hopf
    t = (4, 4)
    E = PBWElement.generator("E", t)
    assert hopf.coproduct(E) == el("(+ (tensor E 1) (tensor 1 E))", t)
    expected = el("(+ (tensor A (* (exp (* h E)) (exp (* w Ap)))) (tensor (exp (- (* h E))) A)"
                  " (* w (tensor (* (exp (- (* h E))) N) (* (sinh_over h E) (exp (* w Ap))))))", t)
    assert hopf.coproduct(PBWElement.generator("A", t)) == expected
    assert hopf.coproduct(PBWElement.one(t)) == TensorElement.one(2, t)


def test_antipode_and_counit_examples():
    t = (4, 4)
    hopf = Preset("two-parameter", t).hopf
    g = gens(t)
    assert hopf.antipode(g["E"]) == -g["E"]
    assert hopf.antipode(g["A"]) == el("(+ (- (* A (exp (- (* w Ap))))) (* w N (sinh_over h E) (exp (- (* w Ap)))))", t)
    assert hopf.antipode(PBWElement.one(t)) == PBWElement.one(t)
    assert counit(g["N"]).is_zero()
    assert counit(1 + 3 * TruncatedSeries.h(t) * g["A"]) == TruncatedSeries.one(t)
    assert counit(g["A"] * g["Ap"]).is_zero()


def test_tensor_products_and_embedding():
    g = gens()
    one = PBWElement.one(T)
    assert tensor(g["A"], one) * tensor(one, g["Ap"]) == tensor(g["A"], g["Ap"])
    x = tensor(g["N"], g["A"])
    assert TensorElement.one(2, T) * x == x
    assert tensor(g["A"], one) * tensor(g["Ap"], one) == tensor(g["A"] * g["Ap"], one)
    assert embed(x, "12") == tensor(g["N"], g["A"], one)
    assert embed(x, "13") == tensor(g["N"], one, g["A"])
    assert embed(TensorElement.one(2, T), "23") == TensorElement.one(3, T)
    assert flip(x) == tensor(g["A"], g["N"])
    assert apply_counit(tensor(g["N"] + 2, g["A"]), 0) == 2 * g["A"]


def test_build_element_examples():
    F = el("(exp (* w (tensor N Ap)))", (2, 2))
    assert F == TensorElement.one(2, (2, 2)) + el("(* w (tensor N Ap))", (2, 2))
    half = "(* 1/2 (expm1_over w (- Ap)))"
    C = el(f"(+ (* N (sinh_over h E)) (* {half} A) (* A {half}))", T)
    for g in gens().values():
        assert (C * g - g * C).is_zero()
    assert Preset("two-parameter", (1, 1)).R == TensorElement.one(2, (1, 1))


def test_build_element_errors_carry_positions():
    with pytest.raises(ExprError):
        build_element("(exp N)", T)
    with pytest.raises(ExprError):
        build_element("(+ E", T)
