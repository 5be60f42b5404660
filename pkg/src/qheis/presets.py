"""Named Hopf structures and distinguished elements.

Three presets share the relation engine of :mod:`qheis.pbw`:

``two-parameter``
    U_{h,w}(H(4)) itself.
``standard-h``
    U_h(H(4)); w is absent, so the effective truncation is (K_h, 1).
``nonstandard-w``
    U_w(H(4)); h is absent, effective truncation (1, K_w).

Each preset writes its coproduct, antipode and universal R from its own
defining formulas.  ``twist_frame`` is the standard algebra presented inside
the w-truncated ring through the generator B = (1 - e^{-w A+})/w; the twist
F = e^{w N (x) A+} carries it to the two-parameter structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial

from .expr import build_element
from .pbw import HopfStructure, PBWElement, TensorElement
from .series import Truncation, TruncatedSeries

PRESETS = ("standard-h", "nonstandard-w", "two-parameter")

# shared sub-expressions
_B = "(- (expm1_over w (- Ap)))"           # (1 - e^{-w A+})/w
_S = "(sinh_over h E)"                     # sinh(hE)/h
_EHE = "(exp (* h E))"
_EMHE = "(exp (- (* h E)))"
_EWP = "(exp (* w Ap))"
_EMWP = "(exp (- (* w Ap)))"


def _primitive(g: str) -> str:
    return f"(+ (tensor {g} 1) (tensor 1 {g}))"


_FORMULAS = {
    "two-parameter": {
        "coproduct": {
            "E": _primitive("E"),
            "Ap": _primitive("Ap"),
            "N": f"(+ (tensor N {_EWP}) (tensor 1 N))",
            "A": f"(+ (tensor A (* {_EHE} {_EWP})) (tensor {_EMHE} A)"
                 f" (* w (tensor (* {_EMHE} N) (* {_S} {_EWP}))))",
        },
        "antipode": {
            "E": "(- E)",
            "Ap": "(- Ap)",
            "N": f"(- (* N {_EMWP}))",
            "A": f"(+ (- (* A {_EMWP})) (* w N {_S} {_EMWP}))",
        },
        "antipode_inverse": {
            "E": "(- E)",
            "Ap": "(- Ap)",
            "N": f"(- (* {_EMWP} N))",
            "A": f"(+ (- (* {_EMWP} A)) (* w {_S} {_EMWP} N))",
        },
        "R": f"(* (exp (- (* w (tensor Ap N)))) (exp (* -2 h (tensor E N)))"
             f" (exp (* 2 h (tensor (* {_EHE} A) {_B}))) (exp (* w (tensor N Ap))))",
        "casimir": f"(+ (* N {_S}) (* (expm1_over w (- Ap)) 1/2 A) (* A 1/2 (expm1_over w (- Ap))))",
    },
    "standard-h": {
        "coproduct": {
            "E": _primitive("E"),
            "Ap": _primitive("Ap"),
            "N": _primitive("N"),
            "A": f"(+ (tensor A {_EHE}) (tensor {_EMHE} A))",
        },
        "antipode": {"E": "(- E)", "Ap": "(- Ap)", "N": "(- N)", "A": "(- A)"},
        "antipode_inverse": {"E": "(- E)", "Ap": "(- Ap)", "N": "(- N)", "A": "(- A)"},
        "R": f"(* (exp (* -2 h (tensor E N))) (exp (* 2 h (tensor (* {_EHE} A) Ap))))",
        "casimir": f"(- (* N {_S}) (* 1/2 (+ (* Ap A) (* A Ap))))",
    },
    "nonstandard-w": {
        "coproduct": {
            "E": _primitive("E"),
            "Ap": _primitive("Ap"),
            "N": f"(+ (tensor N {_EWP}) (tensor 1 N))",
            "A": f"(+ (tensor A {_EWP}) (tensor 1 A) (* w (tensor N (* E {_EWP}))))",
        },
        "antipode": {
            "E": "(- E)",
            "Ap": "(- Ap)",
            "N": f"(- (* N {_EMWP}))",
            "A": f"(+ (- (* A {_EMWP})) (* w N E {_EMWP}))",
        },
        "antipode_inverse": {
            "E": "(- E)",
            "Ap": "(- Ap)",
            "N": f"(- (* {_EMWP} N))",
            "A": f"(+ (- (* {_EMWP} A)) (* w E {_EMWP} N))",
        },
        "R": "(* (exp (- (* w (tensor Ap N)))) (exp (* w (tensor N Ap))))",
        "casimir": "(+ (* N E) (* (expm1_over w (- Ap)) 1/2 A) (* A 1/2 (expm1_over w (- Ap))))",
    },
}

# U_h written with B in place of A+, over the w-truncated ring
_TWIST_FRAME = {
    "coproduct": {
        "E": _primitive("E"),
        "Ap": f"(- (log1p_over w (- (+ (tensor {_B} 1) (tensor 1 {_B})))))",
        "N": _primitive("N"),
        "A": f"(+ (tensor A {_EHE}) (tensor {_EMHE} A))",
    },
    "antipode": {"E": "(- E)", "Ap": f"(- (log1p_over w {_B}))", "N": "(- N)", "A": "(- A)"},
    "R": f"(* (exp (* -2 h (tensor E N))) (exp (* 2 h (tensor (* {_EHE} A) {_B}))))",
}


def effective_truncation(preset: str, truncation: Truncation) -> Truncation:
    kh, kw = truncation
    if preset == "standard-h":
        return (kh, 1)
    if preset == "nonstandard-w":
        return (1, kw)
    if preset == "two-parameter":
        return (kh, kw)
    raise ValueError(f"unknown preset {preset!r}; expected one of {PRESETS}")


def _hopf(name: str, spec: dict, t: Truncation, antipode: str = "antipode") -> HopfStructure:
    return HopfStructure(
        name, t,
        {g: build_element(e, t) for g, e in spec["coproduct"].items()},
        {g: build_element(e, t) for g, e in spec[antipode].items()},
    )


def ordered_exp_sum(t: Truncation, lowering: str, sign: int) -> PBWElement:
    """sum_l (sign 2h)^l / l! e^{sign h l E} X^l A^l  with X given by ``lowering``.

    This is the ordered sum that appears in the closed forms of u and theta.
    """
    x = build_element(lowering, t)
    a = PBWElement.generator("A", t)
    ehe = build_element(f"(exp (* {sign} h E))", t)
    total = PBWElement.zero_like(PBWElement.one(t))
    l = 0
    kh = t[0]
    while l < kh:
        c = TruncatedSeries.monomial(l, 0, Fraction((2 * sign) ** l, factorial(l)), truncation=t)
        total = total + (ehe ** l) * (x ** l) * (a ** l) * c
        l += 1
    return total


@dataclass
class Preset:
    """A preset at a requested truncation; the algebra lives at ``truncation``."""

    name: str
    requested: Truncation
    truncation: Truncation = field(init=False)

    def __post_init__(self):
        self.truncation = effective_truncation(self.name, self.requested)
        self._spec = _FORMULAS[self.name]

    @cached_property
    def hopf(self) -> HopfStructure:
        return _hopf(self.name, self._spec, self.truncation)

    @cached_property
    def hopf_inverse(self) -> HopfStructure:
        """Same coproduct, with the inverse antipode in place of S."""
        return _hopf(self.name, self._spec, self.truncation, "antipode_inverse")

    @cached_property
    def R(self) -> TensorElement:
        return build_element(self._spec["R"], self.truncation)

    def R_spectral(self, x) -> TensorElement:
        """R with its A (x) B factor scaled by x, the formal value of e^u."""
        if self.name != "two-parameter":
            raise ValueError("the spectral R-matrix is defined for the two-parameter preset")
        x = Fraction(x)
        expr = (f"(* (exp (- (* w (tensor Ap N)))) (exp (* -2 h (tensor E N)))"
                f" (exp (* 2 {x} h (tensor (* {_EHE} A) {_B}))) (exp (* w (tensor N Ap))))")
        return build_element(expr, self.truncation)

    @cached_property
    def casimir(self) -> PBWElement:
        return build_element(self._spec["casimir"], self.truncation)

    def generators(self) -> dict[str, PBWElement]:
        return {g: PBWElement.generator(g, self.truncation) for g in ("E", "Ap", "N", "A")}

    def element(self, expr: str):
        return build_element(expr, self.truncation)

    @cached_property
    def u_closed(self) -> PBWElement:
        """Closed form of u = m(S (x) id)(R_21)."""
        t = self.truncation
        e2hen = build_element("(exp (* 2 h E N))", t)
        if self.name == "standard-h":
            return ordered_exp_sum(t, "Ap", -1) * e2hen
        return build_element(_EWP, t) * ordered_exp_sum(t, _B, -1) * e2hen

    @cached_property
    def u_inverse_closed(self) -> PBWElement:
        t = self.truncation
        em2hen = build_element("(exp (* -2 h E N))", t)
        if self.name == "standard-h":
            return ordered_exp_sum(t, "Ap", 1) * em2hen
        return ordered_exp_sum(t, _B, 1) * em2hen * build_element(_EMWP, t)

    @cached_property
    def theta_closed(self) -> PBWElement:
        t = self.truncation
        e2hen = build_element("(exp (* 2 h E N))", t)
        lowering = "Ap" if self.name == "standard-h" else _B
        return build_element(_EMHE, t) * ordered_exp_sum(t, lowering, -1) * e2hen

    @cached_property
    def theta_inverse_closed(self) -> PBWElement:
        t = self.truncation
        em2hen = build_element("(exp (* -2 h E N))", t)
        lowering = "Ap" if self.name == "standard-h" else _B
        return build_element(_EHE, t) * ordered_exp_sum(t, lowering, 1) * em2hen


@dataclass
class TwistFrame:
    """U_h over the w-ring (A+ entering through B), with F = e^{w N (x) A+}."""

    truncation: Truncation

    @cached_property
    def hopf(self) -> HopfStructure:
        return _hopf("standard-h/B", _TWIST_FRAME, self.truncation)

    @cached_property
    def R(self) -> TensorElement:
        return build_element(_TWIST_FRAME["R"], self.truncation)

    @cached_property
    def F(self) -> TensorElement:
        return build_element("(exp (* w (tensor N Ap)))", self.truncation)

    @cached_property
    def F_inv(self) -> TensorElement:
        return build_element("(exp (- (* w (tensor N Ap))))", self.truncation)

    @cached_property
    def v_closed(self) -> PBWElement:
        """sum_k (-w)^k/k! N^k (A+)^k."""
        t = self.truncation
        n, p = PBWElement.generator("N", t), PBWElement.generator("Ap", t)
        total = PBWElement.one(t) * 0
        for k in range(t[1]):
            c = TruncatedSeries.monomial(0, k, Fraction((-1) ** k, factorial(k)), truncation=t)
            total = total + (n ** k) * (p ** k) * c
        return total

    @cached_property
    def v_inverse_closed(self) -> PBWElement:
        """sum_k N^k (ln(2 - e^{-w A+}))^k / k!."""
        t = self.truncation
        n = PBWElement.generator("N", t)
        lg = build_element(f"(log1p (* w {_B}))", t)  # ln(2 - e^{-wA+}) = ln(1 + w B)
        total = PBWElement.one(t) * 0
        k = 0
        term = PBWElement.one(t)
        while term:
            total = total + (n ** k) * term * Fraction(1, factorial(k))
            k += 1
            term = term * lg
        return total

    @cached_property
    def u_h(self) -> PBWElement:
        t = self.truncation
        return ordered_exp_sum(t, _B, -1) * build_element("(exp (* 2 h E N))", t)

    @cached_property
    def theta_h(self) -> PBWElement:
        return build_element(_EMHE, self.truncation) * self.u_h
