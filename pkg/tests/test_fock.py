import json
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from qheis.fock import (FockMatrix, RepParams, check_rep_relations, check_w_grading,
                        colored_ybe_residual, compare_formula_oracle, f_coeff, f_coeff_bruteforce,
                        pi3_block_matrix, pi3_evaluate, pi3_generators, pi3_rmatrix, pi3_rmatrix_json,
                        rep_generators, rmatrix_formula_matrix, rmatrix_inverse_formula,
                        rmatrix_inverse_oracle, rmatrix_oracle, ribbon_spectrum)
from qheis.presets import Preset


def test_cutoff_must_be_at_least_two():
    with pytest.raises(ValueError):
        RepParams(0.1, 0.1, 1, 0, D=1)


def test_generators_on_low_states():
    p = RepParams(h=0.0, w=0.0, e=1.0, n=0.5, D=4)
    g = rep_generators(p)
    assert g["A"].data[0, 1] == pytest.approx(1.0)
    assert g["Ap"].data[1, 0] == pytest.approx(1.0)
    assert np.allclose(np.diag(g["N"].data), [0.5, 1.5, 2.5, 3.5])
    assert np.allclose(g["B"].data, g["Ap"].data)


def test_s_reduces_to_e_at_h_zero():
    assert RepParams(0, 0.3, 1.7, 0).s == 1.7
    assert RepParams(0.2, 0, 1.0, 0).s == pytest.approx(math.sinh(0.2) / 0.2)


def test_two_state_cutoff_is_vacuous():
    rep = check_rep_relations(RepParams(0.1, 0.2, 1, 0, D=2))
    assert rep.passed and rep.details["state"] == "vacuous"


GRID = [(0.1, 0.2, 1.0, 0.0), (0.3, -0.1, 0.5, 1.5), (0.05, 0.5, 2.0, -1.0),
        (0.2, 0.0, 1.0, 0.25), (0.0, 0.4, 1.3, 0.0), (0.1 + 0.05j, 0.2j, 0.7, 0.5)]


@pytest.mark.parametrize("h,w,e,n", GRID)
def test_rep_relations(h, w, e, n):
    assert check_rep_relations(RepParams(h, w, e, n, D=12), tol=1e-10).passed


def test_f_coeff_example():
    assert f_coeff(2, 2) == Fraction(11, 12)
    assert f_coeff(0, 0) == 1 and f_coeff(0, 3) == 0


@given(st.integers(0, 5), st.integers(0, 5))
def test_f_coeff_recursion_matches_bruteforce(k, s):
    assert f_coeff(k, s) == f_coeff_bruteforce(k, s)


PAIRS = [
    (RepParams(0.1, 0.2, 1.0, 0.0, D=6), RepParams(0.1, 0.2, 0.5, 1.0, D=6)),
    (RepParams(0.3, -0.1, 0.7, 0.5, D=6), RepParams(0.3, -0.1, 1.2, -0.5, D=6)),
    (RepParams(0.2, 0.0, 1.0, 0.0, D=6), RepParams(0.2, 0.0, 0.4, 0.3, D=6)),
]


@pytest.mark.parametrize("p1,p2", PAIRS)
def test_closed_forms_match_oracle(p1, p2):
    rep = compare_formula_oracle(p1, p2)
    assert rep.passed, rep.details


def test_inverse_needs_wider_summation():
    p1, p2 = PAIRS[0]
    D = p1.D
    oracle = rmatrix_inverse_oracle(p1, p2).data
    worst = 0.0
    for r1 in range(D):
        for r2 in range(D):
            for r1p in range(D):
                for r2p in range(D):
                    if r1p + r2p >= r1 + r2 and r1p + r2p <= D - 1:
                        lit = rmatrix_inverse_formula(p1, p2, r1, r2, r1p, r2p, literal_bounds=True)
                        worst = max(worst, abs(lit - oracle[r1p * D + r2p, r1 * D + r2]))
    assert worst > 1e-3


def test_oracle_is_upper_triangular_in_degree():
    p1, p2 = PAIRS[0]
    R = rmatrix_oracle(p1, p2).data
    D = p1.D
    for col in range(D * D):
        for row in range(D * D):
            if sum(divmod(row, D)) < sum(divmod(col, D)):
                assert R[row, col] == 0


@pytest.mark.parametrize("p1,p2", PAIRS[:2])
def test_w_grading(p1, p2):
    assert check_w_grading(p1, p2).passed


def test_colored_ybe():
    ps = [RepParams(0.1, 0.2, e, n, D=5) for e, n in ((1.0, 0.0), (0.5, 1.0), (0.8, -0.3))]
    assert colored_ybe_residual(*ps) < 1e-10


def test_ribbon_spectrum_half_weight_is_one():
    rep = ribbon_spectrum(RepParams(0.3, 0.2, 1.0, 0.5, D=10))
    assert rep.passed
    assert rep.details["eigenvalue"] == pytest.approx(1.0)


def test_ribbon_spectrum_vacuum_weight():
    rep = ribbon_spectrum(RepParams(0.3, 0.1, 1.0, 0.0, D=10))
    assert rep.passed
    assert rep.details["eigenvalue"] == pytest.approx(math.exp(-0.3))


@given(st.floats(-0.4, 0.4), st.floats(-0.5, 0.5), st.floats(0.2, 2.0), st.floats(-2, 2))
def test_ribbon_spectrum_property(h, w, e, n):
    assert ribbon_spectrum(RepParams(h, w, e, n, D=8), tol=1e-8).passed


def test_pi3_generators_relations():
    g = pi3_generators()
    A, Ap, E, N = g["A"], g["Ap"], g["E"], g["N"]
    assert A * Ap - Ap * A == E
    assert N * A - A * N == -A
    assert N * Ap - Ap * N == Ap


def test_pi3_rmatrix_block_form():
    assert (pi3_rmatrix() - pi3_block_matrix()).is_zero_matrix


def test_pi3_from_pbw_element():
    R = Preset("two-parameter", (4, 4)).R
    assert (pi3_evaluate(R) - pi3_block_matrix()).applyfunc(sp.expand).is_zero_matrix


def test_pi3_json():
    data = json.loads(pi3_rmatrix_json())
    assert len(data["entries"]) == 9 and data["entries"][1][5] == "2*h"


def test_fock_matrix_export():
    m = rmatrix_formula_matrix(*(p.with_(D=3) for p in PAIRS[0]))
    assert isinstance(m, FockMatrix)
    data = json.loads(m.to_json())
    assert data["dims"] == [3, 3] and len(data["entries"]) == 9
    lines = m.to_csv().splitlines()
    assert lines[0] == "row,col,re,im" and len(lines) > 9
