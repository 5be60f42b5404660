import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qheis.classical import (BASIS, NAMED_R, ClassicalR, LieElement, check_cybe,
                             check_spectral_cybe, cybe_residual, h, lie_bracket, r_two_parameter, w)

small = st.integers(-3, 3)
vectors = st.lists(small, min_size=4, max_size=4).map(LieElement.from_list)


def test_structure_constants():
    a, ap, n, e = (LieElement.basis(x) for x in ("a", "a+", "n", "e"))
    assert lie_bracket(a, ap).coeffs == e.coeffs
    assert lie_bracket(n, a).coeffs == (a * -1).coeffs
    assert lie_bracket(n, ap).coeffs == ap.coeffs
    assert lie_bracket(e, a).is_zero()


@given(vectors, vectors, vectors)
def test_jacobi(x, y, z):
    total = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) \
        + lie_bracket(z, lie_bracket(x, y))
    assert total.is_zero()


@given(vectors, vectors)
def test_antisymmetry(x, y):
    assert (lie_bracket(x, y) + lie_bracket(y, x)).is_zero()


@pytest.mark.parametrize("name", sorted(NAMED_R))
def test_named_r_matrices_solve_cybe(name):
    assert check_cybe(name).passed


def test_single_term_is_not_a_solution():
    r = ClassicalR.from_terms({("a", "a+"): 1})
    assert cybe_residual(r)


def test_residual_is_quadratic():
    r = ClassicalR.from_terms({("a", "a+"): 1, ("n", "n"): 1})
    base = cybe_residual(r)
    scaled = cybe_residual(r.scale(3))
    assert base and set(base) == set(scaled)
    assert all(sp.simplify(scaled[k] - 9 * base[k]) == 0 for k in base)


def test_two_parameter_specialisations():
    r = r_two_parameter()
    only_h = r.coeffs.subs(w, 0)
    only_w = r.coeffs.subs(h, 0)
    assert only_h[BASIS.index("a"), BASIS.index("a+")] == 2 * h
    assert only_w[BASIS.index("n"), BASIS.index("a+")] == w
    assert not cybe_residual(ClassicalR(only_h)) and not cybe_residual(ClassicalR(only_w))


def test_spectral_cybe_at_trivial_point():
    assert check_spectral_cybe(1, 1).passed


def test_spectral_cybe_fails_off_trivial_point():
    rep = check_spectral_cybe(2, 3)
    assert rep.residual_term_count == 3
    assert "residual" in rep.details
