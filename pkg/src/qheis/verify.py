"""Exact verification of the Hopf, quasitriangular, twist and ribbon identities.

Every check expands both sides in the PBW engine at a fixed truncation and
counts the terms of the difference; a check passes when that count is zero.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .expr import build_element
from .pbw import (GENERATORS, Element, PBWElement, TensorElement, apply_counit, embed,
                  flip, multiply_slots, permute, tensor)
from .presets import PRESETS, Preset, TwistFrame, effective_truncation
from .report import CheckReport, Residuals
from .series import TruncatedSeries, Truncation

ARITY3_TRUNCATION: Truncation = (3, 3)
ARITY2_TRUNCATION: Truncation = (4, 4)


def _gens(t: Truncation) -> dict[str, PBWElement]:
    return {g: PBWElement.generator(g, t) for g in GENERATORS}


def _m_s_id(hopf, x: TensorElement) -> PBWElement:
    """m (S (x) id)(x)."""
    return multiply_slots(hopf.antipode(x, 0), 0, 1)


def _m_id_s(hopf, x: TensorElement) -> PBWElement:
    return multiply_slots(hopf.antipode(x, 1), 0, 1)


def _apply_both(fn, x: TensorElement) -> TensorElement:
    return fn(fn(x, 0), 1)


def _start(name: str, preset: str, truncation: Truncation) -> Residuals:
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")
    return Residuals(name, preset, tuple(truncation))


# ---------------------------------------------------------------------------
# Hopf axioms
# ---------------------------------------------------------------------------

def check_hopf_axioms(preset: str = "two-parameter",
                      truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    """Coassociativity, counit, antipode axioms on generators; (anti)homomorphy on pairs."""
    res = _start("hopf_axioms", preset, truncation)
    p = Preset(preset, truncation)
    hopf, t = p.hopf, p.truncation
    gens = _gens(t)
    one = PBWElement.one(t)
    for name, g in gens.items():
        d = hopf.coproduct(g)
        res.equal(f"coassoc[{name}]", hopf.coproduct(d, 0), hopf.coproduct(d, 1))
        res.equal(f"counit_left[{name}]", hopf.counit(d, 0), g)
        res.equal(f"counit_right[{name}]", hopf.counit(d, 1), g)
        eps = hopf.counit(g)
        res.equal(f"antipode_left[{name}]", _m_s_id(hopf, d), one * eps)
        res.equal(f"antipode_right[{name}]", _m_id_s(hopf, d), one * eps)
        res.equal(f"antipode_inverse[{name}]", hopf.antipode(p.hopf_inverse.antipode(g)), g)
    for (n1, g1), (n2, g2) in product(gens.items(), repeat=2):
        xy = g1 * g2
        res.equal(f"delta_hom[{n1},{n2}]", hopf.coproduct(xy),
                  hopf.coproduct(g1) * hopf.coproduct(g2))
        res.equal(f"antipode_antihom[{n1},{n2}]", hopf.antipode(xy),
                  hopf.antipode(g2) * hopf.antipode(g1))
        res.equal(f"counit_hom[{n1},{n2}]", hopf.counit(xy),
                  hopf.counit(g1) * hopf.counit(g2))
    return res.report()


def check_quasitriangular(preset: str = "two-parameter",
                          truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    """R Delta(g) = Delta'(g) R, (Delta (x) id)R = R13 R23, (id (x) Delta)R = R13 R12."""
    res = _start("quasitriangular", preset, truncation)
    p = Preset(preset, truncation)
    hopf, R = p.hopf, p.R
    for name, g in _gens(p.truncation).items():
        d = hopf.coproduct(g)
        res.equal(f"intertwine[{name}]", R * d, flip(d) * R)
    r12, r13, r23 = embed(R, "12"), embed(R, "13"), embed(R, "23")
    res.equal("delta_first", hopf.coproduct(R, 0), r13 * r23)
    res.equal("delta_second", hopf.coproduct(R, 1), r13 * r12)
    res.add("invertible", R * R.inverse() - R.one_like())
    return res.report()


def qybe_residual(R: TensorElement) -> TensorElement:
    r12, r13, r23 = embed(R, "12"), embed(R, "13"), embed(R, "23")
    return r12 * r13 * r23 - r23 * r13 * r12


def check_qybe(preset: str = "two-parameter",
               truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    res = _start("qybe", preset, truncation)
    res.add("R12R13R23-R23R13R12", qybe_residual(Preset(preset, truncation).R))
    return res.report()


def spectral_qybe_residual(x_u, x_v, truncation: Truncation = ARITY3_TRUNCATION) -> TensorElement:
    p = Preset("two-parameter", truncation)
    x_u, x_v = Fraction(x_u), Fraction(x_v)
    r12 = embed(p.R_spectral(x_u), "12")
    r13 = embed(p.R_spectral(x_u * x_v), "13")
    r23 = embed(p.R_spectral(x_v), "23")
    return r12 * r13 * r23 - r23 * r13 * r12


def check_spectral_qybe(x_u=1, x_v=1, truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    """R12(u) R13(u+v) R23(v) = R23(v) R13(u+v) R12(u) with e^u = x_u, e^v = x_v."""
    res = _start("spectral_qybe", "two-parameter", truncation)
    res.info["x_u"] = str(Fraction(x_u))
    res.info["x_v"] = str(Fraction(x_v))
    diff = spectral_qybe_residual(x_u, x_v, truncation)
    res.add("spectral_ybe", diff)
    if diff:
        lowest = min(k[0] + k[1] for k in diff.terms)
        res.info["lowest_residual_order"] = lowest
    return res.report()


# ---------------------------------------------------------------------------
# twist, v element
# ---------------------------------------------------------------------------

def check_twist_conditions(truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    """Cocycle and counit conditions on F over the standard coproduct; F conjugation."""
    res = _start("twist_conditions", "two-parameter", truncation)
    fr = TwistFrame(tuple(truncation))
    hopf, F, Fi = fr.hopf, fr.F, fr.F_inv
    res.add("F_inverse", F * Fi - F.one_like())
    res.equal("cocycle", hopf.coproduct(F, 0) * embed(F, "12"),
              hopf.coproduct(F, 1) * embed(F, "23"))
    res.equal("cocycle_inverse", embed(Fi, "12") * hopf.coproduct(Fi, 0),
              embed(Fi, "23") * hopf.coproduct(Fi, 1))
    for label, x in (("F", F), ("F_inv", Fi)):
        left, right = apply_counit(x, 0), apply_counit(x, 1)
        res.equal(f"counit_sym[{label}]", left, right)
        res.add(f"counit_unit[{label}]", left - left.one_like())
    target = Preset("two-parameter", truncation).hopf
    for name, g in _gens(fr.truncation).items():
        # Delta_{h,w}(g) = F^-1 Delta_h(g) F, written without the inverse
        res.equal(f"conjugation[{name}]", F * target.coproduct(g), hopf.coproduct(g) * F)
        res.equal(f"counit_equal[{name}]", target.counit(g), hopf.counit(g))
    return res.report()


def check_rmatrix_forms(truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    """(sigma F)^-1 R^h F equals the four-factor product form term by term."""
    res = _start("rmatrix_forms", "two-parameter", truncation)
    fr = TwistFrame(tuple(truncation))
    twisted = flip(fr.F_inv) * fr.R * fr.F
    res.equal("twisted_vs_product", twisted, Preset("two-parameter", truncation).R)
    return res.report()


def check_v_element(truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    """v = m(S (x) id)F and v^-1 = m(id (x) S)F^-1, their closed forms and properties."""
    res = _start("v_element", "two-parameter", truncation)
    fr = TwistFrame(tuple(truncation))
    hopf, F, Fi, t = fr.hopf, fr.F, fr.F_inv, fr.truncation
    one = PBWElement.one(t)
    v = _m_s_id(hopf, F)
    vi = _m_id_s(hopf, Fi)
    res.equal("v_closed", v, fr.v_closed)
    res.equal("v_inverse_closed", vi, fr.v_inverse_closed)
    res.equal("v_v_inverse", v * vi, one)
    res.equal("v_inverse_v", vi * v, one)
    ewp = build_element("(exp (* w Ap))", t)
    vsv = vi * hopf.antipode(v)
    res.equal("v_inverse_S_v", vsv, ewp)
    target = Preset("two-parameter", truncation)
    for name, g in _gens(t).items():
        res.equal(f"twisted_antipode[{name}]", target.hopf.antipode(g), vi * hopf.antipode(g) * v)
        res.equal(f"S_squared_id[{name}]", hopf.antipode(hopf.antipode(g)), g)
        # S_F^2(a) = v^-1 S(v) a S(v^-1) v
        s2 = target.hopf.antipode(target.hopf.antipode(g))
        res.equal(f"S_F_squared[{name}]", s2, vsv * g * hopf.antipode(vi) * v)
    res.add("counit_v", hopf.counit(v) - 1)
    F21i = flip(Fi)
    res.equal("coproduct_v", hopf.coproduct(v),
              _apply_both(hopf.antipode, F21i) * tensor(v, v) * Fi)
    s2_Fi = _apply_both(hopf.antipode, _apply_both(hopf.antipode, Fi))
    res.equal("coproduct_vSv", hopf.coproduct(vsv), F * tensor(vsv, vsv) * s2_Fi)
    res.equal("grouplike_vSv", target.hopf.coproduct(vsv), tensor(vsv, vsv))
    return res.report()


# ---------------------------------------------------------------------------
# u and the ribbon element
# ---------------------------------------------------------------------------

def u_element(p: Preset) -> PBWElement:
    """u = m(S (x) id)(R_21)."""
    return _m_s_id(p.hopf, flip(p.R))


def u_inverse_element(p: Preset) -> PBWElement:
    """u^-1 = m(S^-1 (x) id)(R_21^-1)."""
    return _m_s_id(p.hopf_inverse, flip(p.R).inverse())


def check_u_ribbon(preset: str = "two-parameter",
                   truncation: Truncation = ARITY3_TRUNCATION) -> CheckReport:
    res = _start("u_ribbon", preset, truncation)
    p = Preset(preset, truncation)
    hopf, R, t = p.hopf, p.R, p.truncation
    one = PBWElement.one(t)
    S = hopf.antipode
    u = u_element(p)
    ui = u_inverse_element(p)
    res.equal("u_closed", u, p.u_closed)
    res.equal("u_inverse_closed", ui, p.u_inverse_closed)
    res.equal("u_u_inverse", u * ui, one)
    res.equal("u_inverse_u", ui * u, one)
    res.add("counit_u", hopf.counit(u) - 1)
    for name, g in _gens(t).items():
        res.equal(f"S2_conjugation[{name}]", S(S(g)) * u, u * g)
    rr = flip(R) * R
    uu = tensor(u, u)
    du = hopf.coproduct(u)
    res.equal("coproduct_u_left", rr * du, uu)
    res.equal("coproduct_u_right", du * rr, uu)
    suS = u * S(u)
    res.equal("uSu_commute", suS, S(u) * u)
    res.equal("coproduct_uSu", rr * rr * hopf.coproduct(suS), tensor(suS, suS))
    # the stated prefactor e^{-2hE} e^{-w A+}; the expansion gives e^{-2w A+}
    lead = build_element("(* (exp (* -2 h E)) (exp (- (* w Ap))))", t)
    res.equal("S_u", S(u), lead * u)
    lead2 = build_element("(* (exp (* -2 h E)) (exp (* -2 w Ap)))", t)
    res.info["S_u_with_exp_minus_2wAp_residual_terms"] = len((S(u) - lead2 * u).terms)

    theta = p.theta_closed
    res.equal("theta_inverse", theta * p.theta_inverse_closed, one)
    res.equal("theta_squared", theta * theta, suS)
    res.equal("S_theta", S(theta), theta)
    res.add("counit_theta", hopf.counit(theta) - 1)
    res.equal("coproduct_theta", rr * hopf.coproduct(theta), tensor(theta, theta))
    for name, g in _gens(t).items():
        res.add(f"theta_central[{name}]", theta.commutator(g))

    if preset == "two-parameter":
        fr = TwistFrame(t)
        uh = _m_s_id(fr.hopf, flip(fr.R))
        res.equal("u_h_closed", uh, fr.u_h)
        v = fr.v_closed
        vi = fr.v_inverse_closed
        res.equal("u_F_first_form", u, vi * fr.hopf.antipode(v) * uh)
        # the second form uses S^-1, which equals S for the untwisted structure
        second = vi * uh * fr.hopf.antipode(v)
        res.info["u_F_second_form_residual_terms"] = len((u - second).terms)
        theta_h = build_element("(exp (- (* h E)))", t) * uh
        res.equal("theta_F_equals_theta", theta, theta_h)
        res.equal("S_F_theta_F", S(theta_h), theta_h)
        hr = fr.R
        hrr = flip(hr) * hr
        res.equal("theta_h_ribbon", hrr * fr.hopf.coproduct(theta_h), tensor(theta_h, theta_h))
    return res.report()


# ---------------------------------------------------------------------------
# Casimir, N series, preset degeneration
# ---------------------------------------------------------------------------

def check_casimir(preset: str = "two-parameter",
                  truncation: Truncation = ARITY2_TRUNCATION) -> CheckReport:
    res = _start("casimir", preset, truncation)
    p = Preset(preset, truncation)
    c = p.casimir
    for name, g in _gens(p.truncation).items():
        res.add(f"commutator[{name}]", c.commutator(g))
    return res.report()


def n_series_partial(K: int, truncation: Truncation) -> PBWElement:
    """2h sum_{k<K} e^{-(2k+1)hE}."""
    t = truncation
    total = PBWElement.one(t) * 0
    for k in range(K):
        total = total + build_element(f"(exp (* {-(2 * k + 1)} h E))", t)
    return total * TruncatedSeries.monomial(1, 0, 2, truncation=t)


def check_n_series(truncation: Truncation = ARITY2_TRUNCATION, terms: int = 4) -> CheckReport:
    """Partial sums of the inverse-sinh series telescope exactly.

    sinh(hE)/h * 2h sum_{k<K} e^{-(2k+1)hE} = 1 - e^{-2KhE}, so the element
    B A [sinh(hE)/h]^-1 is approached by B A times the partial sums.
    """
    res = _start("n_series", "two-parameter", truncation)
    t = tuple(truncation)
    s = build_element("(sinh_over h E)", t)
    ba = build_element("(* (- (expm1_over w (- Ap))) A)", t)
    for K in range(1, terms + 1):
        partial = n_series_partial(K, t)
        tail = build_element(f"(exp (* {-2 * K} h E))", t)
        res.equal(f"telescope[{K}]", s * partial, PBWElement.one(t) - tail)
        res.equal(f"BA_partial[{K}]", ba * partial * s, ba - ba * tail)
    return res.report()


def check_preset_degeneration(truncation: Truncation = ARITY2_TRUNCATION) -> CheckReport:
    """The two-parameter data at K_w = 1 (K_h = 1) equals the standard (nonstandard) preset."""
    res = _start("preset_degeneration", "two-parameter", truncation)
    kh, kw = truncation
    for other, t in (("standard-h", (kh, 1)), ("nonstandard-w", (1, kw))):
        big, small = Preset("two-parameter", t), Preset(other, t)
        for name, g in _gens(t).items():
            res.equal(f"{other}:coproduct[{name}]", big.hopf.coproduct(g), small.hopf.coproduct(g))
            res.equal(f"{other}:antipode[{name}]", big.hopf.antipode(g), small.hopf.antipode(g))
        res.equal(f"{other}:R", big.R, small.R)
        res.equal(f"{other}:casimir", big.casimir, small.casimir)
        res.equal(f"{other}:u", big.u_closed, small.u_closed)
        res.equal(f"{other}:theta", big.theta_closed, small.theta_closed)
    return res.report()


def run_all(truncation3: Truncation = ARITY3_TRUNCATION,
            truncation2: Truncation = ARITY2_TRUNCATION) -> list[CheckReport]:
    out = []
    for preset in PRESETS:
        out.append(check_hopf_axioms(preset, truncation3))
        out.append(check_quasitriangular(preset, truncation3))
        out.append(check_qybe(preset, truncation3))
        out.append(check_u_ribbon(preset, truncation3))
        out.append(check_casimir(preset, truncation2))
    out.append(check_twist_conditions(truncation3))
    out.append(check_rmatrix_forms(truncation3))
    out.append(check_v_element(truncation3))
    out.append(check_n_series(truncation2))
    out.append(check_preset_degeneration(truncation2))
    return out
