"""The Lie algebra H(4), classical r-matrices and the classical Yang-Baxter equation.

Basis order is (n, e, a+, a) with [a, a+] = e, [n, a] = -a, [n, a+] = a+ and
e central. Coefficients are sympy expressions, so deformation parameters stay
formal and one residual computation covers every parameter value.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import sympy as sp

from .report import CheckReport

BASIS = ("n", "e", "a+", "a")
N, E, AP, A = range(4)

h, w, mu, nu = sp.symbols("h w mu nu")

# structure constants: _BRACKET[(i, j)] = {k: c} for [x_i, x_j] = sum c x_k
_BRACKET: dict[tuple[int, int], dict[int, int]] = {
    (A, AP): {E: 1},
    (AP, A): {E: -1},
    (N, A): {A: -1},
    (A, N): {A: 1},
    (N, AP): {AP: 1},
    (AP, N): {AP: -1},
}


def _sym(c):
    if isinstance(c, Fraction):
        return sp.Rational(c.numerator, c.denominator)
    return sp.sympify(c)


@dataclass(frozen=True)
class LieElement:
    coeffs: tuple

    @classmethod
    def basis(cls, name: str) -> "LieElement":
        c = [sp.Integer(0)] * 4
        c[BASIS.index(name)] = sp.Integer(1)
        return cls(tuple(c))

    @classmethod
    def from_list(cls, values) -> "LieElement":
        if len(values) != 4:
            raise ValueError("a Lie element needs four coefficients")
        return cls(tuple(_sym(v) for v in values))

    def __add__(self, other: "LieElement") -> "LieElement":
        return LieElement(tuple(sp.expand(x + y) for x, y in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c) -> "LieElement":
        c = _sym(c)
        return LieElement(tuple(sp.expand(c * x) for x in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(sp.expand(x) == 0 for x in self.coeffs)

    def __str__(self):
        parts = [f"({sp.sstr(c)})*{BASIS[i]}" for i, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(parts) if parts else "0"


def lie_bracket(x: LieElement, y: LieElement) -> LieElement:
    out = [sp.Integer(0)] * 4
    for (i, j), image in _BRACKET.items():
        cij = x.coeffs[i] * y.coeffs[j]
        if cij == 0:
            continue
        for k, c in image.items():
            out[k] += c * cij
    return LieElement(tuple(sp.expand(v) for v in out))


@dataclass
class ClassicalR:
    """sum_{xy} c[x][y] x (x) y over the basis (n, e, a+, a)."""

    coeffs: sp.Matrix

    @classmethod
    def from_terms(cls, terms: dict[tuple[str, str], object]) -> "ClassicalR":
        m = sp.zeros(4, 4)
        for (x, y), c in terms.items():
            m[BASIS.index(x), BASIS.index(y)] += _sym(c)
        return cls(m.applyfunc(sp.expand))

    def scale(self, c) -> "ClassicalR":
        return ClassicalR((self.coeffs * _sym(c)).applyfunc(sp.expand))

    def __add__(self, other: "ClassicalR") -> "ClassicalR":
        return ClassicalR((self.coeffs + other.coeffs).applyfunc(sp.expand))


Tensor3 = dict[tuple[int, int, int], sp.Expr]


def _add(out: Tensor3, key, value):
    out[key] = out.get(key, 0) + value


def cybe_triple_residual(r12: ClassicalR, r13: ClassicalR, r23: ClassicalR) -> Tensor3:
    """[r12, r13] + [r12, r23] + [r13, r23] with independent r in each slot pair."""
    out: Tensor3 = {}
    m12, m13, m23 = r12.coeffs, r13.coeffs, r23.coeffs
    for i, j, k, l in product(range(4), repeat=4):
        # [r12, r13] = sum [x_i, x_k] (x) x_j (x) x_l
        c = m12[i, j] * m13[k, l]
        if c != 0:
            for p, s in _BRACKET.get((i, k), {}).items():
                _add(out, (p, j, l), s * c)
        # [r12, r23] = sum x_i (x) [x_j, x_k] (x) x_l
        c = m12[i, j] * m23[k, l]
        if c != 0:
            for p, s in _BRACKET.get((j, k), {}).items():
                _add(out, (i, p, l), s * c)
        # [r13, r23] = sum x_i (x) x_k (x) [x_j, x_l]
        c = m13[i, j] * m23[k, l]
        if c != 0:
            for p, s in _BRACKET.get((j, l), {}).items():
                _add(out, (i, k, p), s * c)
    expanded = {key: sp.factor(sp.expand(v)) for key, v in out.items()}
    return {key: v for key, v in expanded.items() if v != 0}


def cybe_residual(r: ClassicalR) -> Tensor3:
    return cybe_triple_residual(r, r, r)


# r-matrices -----------------------------------------------------------------

def r_standard() -> ClassicalR:
    """a (x) a+ - e (x) n."""
    return ClassicalR.from_terms({("a", "a+"): 1, ("e", "n"): -1})


def r_symmetric_standard() -> ClassicalR:
    """a (x) a+ - (e (x) n + n (x) e)/2."""
    half = Fraction(1, 2)
    return ClassicalR.from_terms({("a", "a+"): 1, ("e", "n"): -half, ("n", "e"): -half})


def r_nonstandard() -> ClassicalR:
    """n (x) a+ - a+ (x) n."""
    return ClassicalR.from_terms({("n", "a+"): 1, ("a+", "n"): -1})


def r_mu_nu(m=mu, n=nu) -> ClassicalR:
    """mu (a (x) e - e (x) a) + nu (a+ (x) e - e (x) a+)."""
    return ClassicalR.from_terms({("a", "e"): m, ("e", "a"): -m, ("a+", "e"): n, ("e", "a+"): -n})


def r_two_parameter(hh=h, ww=w) -> ClassicalR:
    """2h (a (x) a+ - e (x) n) + w (n (x) a+ - a+ (x) n)."""
    return r_standard().scale(2 * _sym(hh)) + r_nonstandard().scale(ww)


def r_spectral(x, hh=h, ww=w) -> ClassicalR:
    """w (n (x) a+ - a+ (x) n) + 2h (x a (x) a+ - e (x) n) with x = e^u."""
    x = _sym(x)
    return ClassicalR.from_terms({("n", "a+"): ww, ("a+", "n"): -ww,
                                  ("a", "a+"): 2 * _sym(hh) * x, ("e", "n"): -2 * _sym(hh)})


NAMED_R = {
    "standard": r_standard,
    "symmetric-standard": r_symmetric_standard,
    "nonstandard": r_nonstandard,
    "mu-nu": r_mu_nu,
    "two-parameter": r_two_parameter,
}


def spectral_cybe_residual(x_u, x_v) -> Tensor3:
    x_u, x_v = _sym(x_u), _sym(x_v)
    return cybe_triple_residual(r_spectral(x_u), r_spectral(x_u * x_v), r_spectral(x_v))


def render_tensor3(t: Tensor3) -> str:
    if not t:
        return "0"
    return " + ".join(f"({sp.sstr(v)})*{BASIS[i]}(x){BASIS[j]}(x){BASIS[k]}"
                      for (i, j, k), v in sorted(t.items()))


def check_cybe(name: str) -> CheckReport:
    start = time.perf_counter()
    res = cybe_residual(NAMED_R[name]())
    return CheckReport(f"cybe[{name}]", "classical", None, len(res),
                       time.perf_counter() - start,
                       details={"residual": render_tensor3(res)} if res else {})


def check_spectral_cybe(x_u, x_v) -> CheckReport:
    start = time.perf_counter()
    res = spectral_cybe_residual(x_u, x_v)
    return CheckReport("spectral_cybe", "classical", None, len(res), time.perf_counter() - start,
                       details={"x_u": str(x_u), "x_v": str(x_v),
                                **({"residual": render_tensor3(res)} if res else {})})
