import pytest
from hypothesis import given, strategies as st

from qheis.rtt import (RELATIONS, GroupAlgebraElement, TruncationError, check_confluence,
                       check_group_hopf, check_reductions, check_rtt, is_normal,
                       mutation_report, normal_form, r9_matrix, relations, rtt_residual)
from qheis.series import TruncatedSeries

SYS = relations((3, 3))
ONE = TruncatedSeries.one((3, 3))
H, W = TruncatedSeries.h((3, 3)), TruncatedSeries.w((3, 3))


def word(wd, c=None):
    return GroupAlgebraElement.word(wd, SYS, c)


def test_beta_alpha_rule():
    assert word("ba") == word("ab") - word("a", 2 * H) - word("aa", W)


def test_g_inverse():
    assert word("gG") == word("") and word("Gg") == word("")


def test_delta_g_rule():
    assert word("dg") == word("gd") - word("gg", W) + word("g", W)


def test_rtt_relation_all_entries():
    rep = check_rtt((3, 3))
    assert rep.passed
    res = rtt_residual(SYS)
    assert len(res) == 9 and all(len(row) == 9 for row in res)


def test_r9_is_upper_unitriangular():
    R = r9_matrix((3, 3))
    assert all(R[i][i] == ONE for i in range(9))
    assert all(R[i][j].is_zero() for i in range(9) for j in range(i))


@pytest.mark.parametrize("name", RELATIONS)
def test_each_relation_is_needed(name):
    assert mutation_report()[name] > 0


def test_w_terms_are_needed():
    assert not check_rtt(w_terms=False).passed


def test_undeformed_point_is_commutative():
    t = (2, 2)
    sys0 = relations(t, w_terms=False, h_terms=False)
    R = [[TruncatedSeries.one(t) if i == j else TruncatedSeries.zero(t) for j in range(9)] for i in range(9)]
    assert all(x.is_zero() for row in rtt_residual(sys0, R) for x in row)
    x = GroupAlgebraElement.word("dgba", sys0)
    assert set(x.terms) == {"abgd"}


def test_confluence_sampled():
    assert check_confluence(samples=100, seed=3).passed


@given(st.text("abgGd", max_size=6))
def test_normal_form_is_strategy_independent(wd):
    left = normal_form({wd: ONE}, SYS, "leftmost")
    right = normal_form({wd: ONE}, SYS, "rightmost")
    assert GroupAlgebraElement(left, SYS, reduce=False) == GroupAlgebraElement(right, SYS, reduce=False)
    assert all(is_normal(k) for k in left)


@given(st.text("abgGd", max_size=3), st.text("abgGd", max_size=3), st.text("abgGd", max_size=3))
def test_product_is_associative(x, y, z):
    a, b, c = word(x), word(y), word(z)
    assert (a * b) * c == a * (b * c)


def test_group_hopf_structure():
    rep = check_group_hopf((3, 3))
    assert rep.passed, rep.details


def test_reductions_to_one_parameter_groups():
    assert check_reductions().passed


def test_truncation_mismatch():
    other = GroupAlgebraElement.word("a", relations((2, 2)))
    with pytest.raises(TruncationError):
        word("a") + other


def test_unknown_relation():
    with pytest.raises(ValueError):
        relations(drop=("nope",))
