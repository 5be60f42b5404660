import pytest

from qheis.pbw import PBWElement
from qheis.presets import PRESETS, Preset, TwistFrame
from qheis.verify import (check_casimir, check_hopf_axioms, check_n_series,
                          check_preset_degeneration, check_quasitriangular, check_qybe,
                          check_rmatrix_forms, check_spectral_qybe, check_twist_conditions,
                          check_u_ribbon, check_v_element)


@pytest.mark.parametrize("preset", PRESETS)
def test_hopf_axioms(preset):
    assert check_hopf_axioms(preset, (3, 3)).passed


def test_hopf_axioms_two_parameter_at_4_4():
    rep = check_hopf_axioms("two-parameter", (4, 4))
    assert rep.passed and rep.truncation == (4, 4)


def test_trivial_truncation_is_undeformed():
    for check in (check_hopf_axioms, check_quasitriangular, check_qybe):
        assert check("two-parameter", (1, 1)).passed


@pytest.mark.parametrize("preset", PRESETS)
def test_quasitriangular_and_qybe(preset):
    assert check_quasitriangular(preset, (3, 3)).passed
    assert check_qybe(preset, (3, 3)).passed


def test_standard_qybe_deeper_in_h():
    assert check_qybe("standard-h", (4, 1)).passed
    assert check_quasitriangular("nonstandard-w", (1, 4)).passed


def test_effective_truncation_is_recorded():
    rep = check_qybe("standard-h", (3, 3))
    assert rep.truncation == (3, 3)
    assert Preset("standard-h", (3, 3)).truncation == (3, 1)


def test_spectral_qybe_trivial_point():
    assert check_spectral_qybe(1, 1).passed


def test_spectral_qybe_fails_away_from_one():
    # the spectral R(u) is not a solution once e^u != 1; residual starts at order 2
    rep = check_spectral_qybe(2, 3)
    assert rep.residual_term_count == 242
    assert rep.details["lowest_residual_order"] == 2


def test_twist_conditions():
    rep = check_twist_conditions((3, 3))
    assert rep.passed
    assert {"cocycle", "cocycle_inverse", "F_inverse"} <= set(rep.details["parts"])


def test_rmatrix_product_form_equals_twist_form():
    assert check_rmatrix_forms((3, 3)).passed


def test_v_element():
    rep = check_v_element((3, 3))
    assert rep.passed
    assert rep.details["parts"]["v_inverse_S_v"] == 0


@pytest.mark.parametrize("preset", PRESETS)
def test_u_ribbon_everything_but_printed_antipode(preset):
    rep = check_u_ribbon(preset, (3, 3))
    parts = dict(rep.details["parts"])
    parts.pop("S_u")
    assert all(v == 0 for v in parts.values()), parts
    # the antipode of u with prefactor e^{-2hE} e^{-2wA+} holds in every preset
    assert rep.details["S_u_with_exp_minus_2wAp_residual_terms"] == 0


def test_printed_antipode_of_u_needs_doubled_w():
    # literal prefactor e^{-2hE} e^{-wA+} leaves residual terms whenever w is live
    assert check_u_ribbon("standard-h", (3, 3)).details["parts"]["S_u"] == 0
    assert check_u_ribbon("two-parameter", (3, 3)).details["parts"]["S_u"] > 0
    assert check_u_ribbon("nonstandard-w", (3, 3)).details["parts"]["S_u"] > 0


def test_u_closed_form_at_h_zero():
    # at h = 0 the u element is e^{w A+}
    p = Preset("nonstandard-w", (1, 4))
    assert p.u_closed == p.element("(exp (* w Ap))")


def test_twisted_ribbon_parts():
    parts = check_u_ribbon("two-parameter", (3, 3)).details["parts"]
    for key in ("theta_F_equals_theta", "S_F_theta_F", "u_F_first_form", "theta_h_ribbon"):
        assert parts[key] == 0


@pytest.mark.parametrize("preset", PRESETS)
def test_casimir(preset):
    assert check_casimir(preset, (3, 3)).passed


def test_n_series_and_degeneration():
    assert check_n_series((4, 4)).passed
    assert check_preset_degeneration((4, 4)).passed


def test_twist_frame_F_inverse():
    tf = TwistFrame((3, 3))
    assert (tf.F * tf.F_inv - tf.F.one_like()).is_zero()


def test_report_json_shape():
    rep = check_qybe("two-parameter", (2, 2))
    d = rep.to_dict(include_time=False)
    assert set(d) >= {"check", "preset", "K_h", "K_w", "residual_terms", "pass"}
    assert "ms" not in d and "ms" in rep.to_dict()
