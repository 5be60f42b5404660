"""Numeric representations: the Fock modules V_{e,n} and the 3-dimensional pi_3.

Fock operators live on the states |0>, ..., |D-1>. Operators that only raise
the degree are exact after truncation; anything that lowers after raising can
lose contributions from states beyond the cutoff, so each check states the
band of boundary states it ignores.

Two-site operators use the index ``r_first * D + r_second``.  The R-matrix
maps V_{e1,n1} (x) V_{e2,n2} to V_{e2,n2} (x) V_{e1,n1}: a column is
``(r1, r2)`` with r1 in V_{e1}, a row is ``(r1', r2')`` with r1' in V_{e2}.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, sqrt

import numpy as np
import sympy as sp

from .report import CheckReport

DEFAULT_TOL = 1e-10


# ---------------------------------------------------------------------------
# parameters and matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RepParams:
    """Representation labels (e, n), deformation values (h, w) and cutoff D."""

    h: complex
    w: complex
    e: complex
    n: complex
    D: int = 12

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D < 2:
            raise ValueError(f"cutoff D must be an integer >= 2, got {self.D!r}")

    @property
    def s(self) -> complex:
        """sinh(h e)/h, equal to e at h = 0."""
        h, e = complex(self.h), complex(self.e)
        if h == 0:
            return e
        return cmath.sinh(h * e) / h

    @property
    def sqrt_s(self) -> complex:
        return cmath.sqrt(self.s)

    def with_(self, **kw) -> "RepParams":
        fields = dict(h=self.h, w=self.w, e=self.e, n=self.n, D=self.D)
        fields.update(kw)
        return RepParams(**fields)


@dataclass
class FockMatrix:
    """A truncated operator; ``dims`` lists the cutoff of each tensor factor."""

    data: np.ndarray
    dims: tuple[int, ...]
    label: str = ""
    band: int = 0  # boundary states (per factor) where truncation artifacts may appear
    warnings: list[str] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def to_json(self) -> str:
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(self.data)]
        return json.dumps({"label": self.label, "dims": list(self.dims), "entries": rows})

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf)
        wr.writerow(["row", "col", "re", "im"])
        for (i, j), z in np.ndenumerate(np.asarray(self.data)):
            if z != 0:
                wr.writerow([i, j, repr(float(z.real)), repr(float(z.imag))])
        return buf.getvalue()


def nilpotent_exp(m: np.ndarray, scale: complex = 1.0) -> np.ndarray:
    """exp(scale m) for a nilpotent m, summed exactly until the powers vanish."""
    out = np.eye(m.shape[0], dtype=complex)
    term = out
    for k in range(1, m.shape[0] + 1):
        term = term @ m * (scale / k)
        if not term.any():
            break
        out = out + term
    return out


# ---------------------------------------------------------------------------
# pi_{e,n}
# ---------------------------------------------------------------------------

def _lowering(p: RepParams) -> np.ndarray:
    D = p.D
    a = np.zeros((D, D), dtype=complex)
    for r in range(1, D):
        a[r - 1, r] = p.sqrt_s * sqrt(r)
    return a


def _b_operator(p: RepParams) -> np.ndarray:
    """(1 - e^{-w A+})/w acting as sqrt(s) sqrt(r+1) |r+1>."""
    D = p.D
    b = np.zeros((D, D), dtype=complex)
    for r in range(D - 1):
        b[r + 1, r] = p.sqrt_s * sqrt(r + 1)
    return b


def _aplus_from_b(b: np.ndarray, w: complex) -> np.ndarray:
    """A+ = sum_k w^k B^{k+1}/(k+1), exact under truncation since B raises."""
    out = np.zeros_like(b)
    power = b.copy()
    k = 0
    while power.any():
        out = out + power * (w ** k / (k + 1))
        power = power @ b
        k += 1
    return out


def rep_generators(p: RepParams) -> dict[str, FockMatrix]:
    """A, A+, B := (1 - e^{-wA+})/w, E and N on V_{e,n} truncated at D."""
    D = p.D
    b = _b_operator(p)
    mats = {
        "A": _lowering(p),
        "Ap": _aplus_from_b(b, complex(p.w)),
        "B": b,
        "E": np.eye(D, dtype=complex) * complex(p.e),
        "N": np.diag([r + complex(p.n) for r in range(D)]).astype(complex),
    }
    return {k: FockMatrix(v, (D,), k) for k, v in mats.items()}


REP_BAND = 2


def check_rep_relations(p: RepParams, tol: float = DEFAULT_TOL) -> CheckReport:
    """Defining relations on states r < D - 2; D = 2 leaves nothing to test."""
    start = time.perf_counter()
    g = {k: v.data for k, v in rep_generators(p).items()}
    D, w, s = p.D, complex(p.w), p.s
    interior = D - REP_BAND
    details: dict = {"tol": tol, "band": REP_BAND, "interior_states": max(interior, 0)}
    if interior <= 0:
        details["state"] = "vacuous"
        return CheckReport("rep_relations", "two-parameter", None, 0,
                           time.perf_counter() - start, details=details)
    A, Ap, B, E, N = g["A"], g["Ap"], g["B"], g["E"], g["N"]
    ewp = nilpotent_exp(Ap, w)
    I = np.eye(D, dtype=complex)
    if w == 0:
        expm1_over_w = Ap
    else:
        expm1_over_w = (ewp - I) / w
    residuals = {
        "[A,Ap]": A @ Ap - Ap @ A - s * ewp,
        "[N,Ap]": N @ Ap - Ap @ N - expm1_over_w,
        "[N,A]": N @ A - A @ N + A,
        "[E,A]": E @ A - A @ E,
        "[E,Ap]": E @ Ap - Ap @ E,
        "B_closed_form": B - _b_from_aplus(Ap, w),
    }
    worst = {}
    failing = 0
    for name, r in residuals.items():
        err = float(np.abs(r[:interior, :interior]).max())
        worst[name] = err
        failing += err >= tol
    details["max_abs"] = worst
    details["h"], details["w"], details["e"], details["n"], details["D"] = (
        complex(p.h), w, complex(p.e), complex(p.n), D)
    return CheckReport("rep_relations", "two-parameter", None, int(failing),
                       time.perf_counter() - start, details=details)


def _b_from_aplus(ap: np.ndarray, w: complex) -> np.ndarray:
    """(1 - e^{-w A+})/w from the matrix of A+ by its power series."""
    out = np.zeros_like(ap)
    power = ap.copy()
    k = 1
    while power.any():
        out = out + power * ((-1) ** (k + 1) * w ** (k - 1) / factorial(k))
        power = power @ ap
        k += 1
    return out


# ---------------------------------------------------------------------------
# w-graded matrices
# ---------------------------------------------------------------------------

class GradedMatrix:
    """Matrix polynomial sum_k w^k C_k; ``coeffs`` has shape (K, n, n)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: np.ndarray):
        self.coeffs = coeffs

    @classmethod
    def constant(cls, m: np.ndarray, K: int) -> "GradedMatrix":
        c = np.zeros((K,) + m.shape, dtype=complex)
        c[0] = m
        return cls(c)

    @property
    def K(self) -> int:
        return self.coeffs.shape[0]

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        K = self.K
        out = np.zeros_like(self.coeffs)
        nz = [k for k in range(K) if self.coeffs[k].any()]
        nz2 = [k for k in range(K) if other.coeffs[k].any()]
        for i in nz:
            for j in nz2:
                if i + j < K:
                    out[i + j] += self.coeffs[i] @ other.coeffs[j]
        return GradedMatrix(out)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        return GradedMatrix(self.coeffs + other.coeffs)

    def scale(self, c: complex) -> "GradedMatrix":
        return GradedMatrix(self.coeffs * c)

    def shift(self, d: int) -> "GradedMatrix":
        """Multiply by w^d."""
        out = np.zeros_like(self.coeffs)
        if d < self.K:
            out[d:] = self.coeffs[: self.K - d]
        return GradedMatrix(out)

    def evaluate(self, w: complex) -> np.ndarray:
        out = np.zeros(self.coeffs.shape[1:], dtype=complex)
        for k in reversed(range(self.K)):
            out = out * w + self.coeffs[k]
        return out

    def is_nilpotent_zero(self) -> bool:
        return not self.coeffs.any()

    def exp(self) -> "GradedMatrix":
        """exp of a nilpotent graded matrix (finite series)."""
        n = self.coeffs.shape[1]
        out = GradedMatrix.constant(np.eye(n, dtype=complex), self.K)
        term = out
        for k in range(1, n * self.K + 2):
            term = (term @ self).scale(1.0 / k)
            if term.is_nilpotent_zero():
                break
            out = out + term
        return out

    def degrees(self, tol: float = 0.0) -> dict[tuple[int, int], list[int]]:
        """For each nonzero entry, the w-degrees carrying a coefficient above tol."""
        out: dict[tuple[int, int], list[int]] = {}
        mags = np.abs(self.coeffs)
        for k, i, j in zip(*np.nonzero(mags > tol)):
            out.setdefault((int(i), int(j)), []).append(int(k))
        return out


def _graded_aplus(b: np.ndarray, K: int) -> GradedMatrix:
    c = np.zeros((K,) + b.shape, dtype=complex)
    power = b.copy()
    k = 0
    while power.any() and k < K:
        c[k] = power / (k + 1)
        power = power @ b
        k += 1
    return GradedMatrix(c)


def _kron(x: GradedMatrix, y: GradedMatrix) -> GradedMatrix:
    K = x.K
    n = x.coeffs.shape[1] * y.coeffs.shape[1]
    out = np.zeros((K, n, n), dtype=complex)
    for i in range(K):
        if not x.coeffs[i].any():
            continue
        for j in range(K - i):
            if y.coeffs[j].any():
                out[i + j] += np.kron(x.coeffs[i], y.coeffs[j])
    return GradedMatrix(out)


def _swap(D1: int, D2: int) -> np.ndarray:
    """sigma: V1 (x) V2 -> V2 (x) V1 as a (D2 D1) x (D1 D2) permutation."""
    P = np.zeros((D1 * D2, D1 * D2))
    for a, b in product(range(D1), range(D2)):
        P[b * D1 + a, a * D2 + b] = 1
    return P


def _universal_factors(first: RepParams, second: RepParams, K: int):
    """Graded images of the R factors on first (x) second."""
    D1, D2 = first.D, second.D
    I1, I2 = np.eye(D1), np.eye(D2)
    b1, b2 = _b_operator(first), _b_operator(second)
    a1 = _lowering(first)
    n1 = np.diag([r + complex(first.n) for r in range(D1)])
    n2 = np.diag([r + complex(second.n) for r in range(D2)])
    ap1, ap2 = _graded_aplus(b1, K), _graded_aplus(b2, K)
    const = lambda m: GradedMatrix.constant(m.astype(complex), K)  # noqa: E731
    h, e1 = complex(first.h), complex(first.e)
    return {
        "ApN": _kron(ap1, const(n2)).shift(1),            # w A+ (x) N
        "NAp": _kron(const(n1), ap2).shift(1),            # w N (x) A+
        "EN": np.kron(I1 * e1, n2),                       # E (x) N, diagonal
        "AB": const(np.kron(a1 * cmath.exp(h * e1), b2)),  # e^{hE} A (x) B
        "h": h,
    }


def _diag_exp(m: np.ndarray, scale: complex) -> np.ndarray:
    return np.diag(np.exp(scale * np.diag(m)))


def graded_rmatrix_oracle(p1: RepParams, p2: RepParams) -> GradedMatrix:
    """e^{2h e1 n2} sigma (pi1 (x) pi2)(R) with w kept formal."""
    D = max(p1.D, p2.D)
    K = 2 * D
    f = _universal_factors(p1, p2, K)
    h = f["h"]
    left = f["ApN"].scale(-1).exp()
    diag = GradedMatrix.constant(_diag_exp(f["EN"], -2 * h), K)
    mid = f["AB"].scale(2 * h).exp()
    right = f["NAp"].exp()
    R = left @ diag @ mid @ right
    pref = cmath.exp(2 * h * complex(p1.e) * complex(p2.n))
    sigma = GradedMatrix.constant(_swap(p1.D, p2.D).astype(complex), K)
    return (sigma @ R).scale(pref)


def graded_rmatrix_inverse_oracle(p1: RepParams, p2: RepParams) -> GradedMatrix:
    """e^{-2h e2 n1} (pi2 (x) pi1)(R^-1) sigma, the inverse of the (e2, e1) R-matrix.

    Exact on rows of total degree <= D - 1 (the first factor raises before the
    A (x) B factor lowers).
    """
    D = max(p1.D, p2.D)
    K = 2 * D
    f = _universal_factors(p2, p1, K)
    h = f["h"]
    left = f["NAp"].scale(-1).exp()
    mid = f["AB"].scale(-2 * h).exp()
    diag = GradedMatrix.constant(_diag_exp(f["EN"], 2 * h), K)
    right = f["ApN"].exp()
    Rinv = left @ mid @ diag @ right
    pref = cmath.exp(-2 * h * complex(p2.e) * complex(p1.n))
    sigma = GradedMatrix.constant(_swap(p1.D, p2.D).astype(complex), K)
    return (Rinv @ sigma).scale(pref)


def rmatrix_oracle(p1: RepParams, p2: RepParams) -> FockMatrix:
    """Independent evaluation of the R-matrix by represented exponentials."""
    data = graded_rmatrix_oracle(p1, p2).evaluate(complex(p1.w))
    return FockMatrix(data, (p2.D, p1.D), "R_oracle")


def rmatrix_inverse_oracle(p1: RepParams, p2: RepParams) -> FockMatrix:
    data = graded_rmatrix_inverse_oracle(p1, p2).evaluate(complex(p1.w))
    return FockMatrix(data, (p2.D, p1.D), "Rinv_oracle")


# ---------------------------------------------------------------------------
# closed-form matrix elements
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def f_coeff(k: int, s: int) -> Fraction:
    """Coefficient of w^s B^{k+s} in (A+)^k: sum over compositions of s into k parts
    of prod 1/(i_j + 1). The empty composition makes f_0^0 = 1 and f_0^s = 0 for s > 0.
    """
    if k < 0 or s < 0:
        raise ValueError("f_k^s needs non-negative indices")
    if k == 0:
        return Fraction(1) if s == 0 else Fraction(0)
    return sum((f_coeff(k - 1, s - i) / (i + 1) for i in range(s + 1)), Fraction(0))


def f_coeff_bruteforce(k: int, s: int) -> Fraction:
    """Enumerate compositions directly (oracle for f_coeff)."""
    if k == 0:
        return Fraction(1) if s == 0 else Fraction(0)
    total = Fraction(0)
    for parts in product(range(s + 1), repeat=k):
        if sum(parts) == s:
            term = Fraction(1)
            for i in parts:
                term /= i + 1
            total += term
    return total


@lru_cache(maxsize=None)
def phi(m: int, x: complex) -> complex:
    return sum(complex(f_coeff(k, m - k)) / factorial(k) * x ** k for k in range(m + 1))


@lru_cache(maxsize=None)
def phi_bar(m: int, x: complex) -> complex:
    return sum((-1) ** k * complex(f_coeff(k, m - k)) / factorial(k) * x ** k for k in range(m + 1))


def _common(p1: RepParams, p2: RepParams, r1, r2, r1p, r2p) -> complex:
    w = complex(p1.w)
    dw = r1p + r2p - r1 - r2
    if dw < 0:
        return 0j
    wfac = w ** dw if dw else 1.0
    return (wfac * p1.sqrt_s ** (r2p - r1) * p2.sqrt_s ** (r1p - r2)
            * sqrt(factorial(r1p) * factorial(r2p) / (factorial(r1) * factorial(r2))))


def rmatrix_formula(p1: RepParams, p2: RepParams, r1: int, r2: int, r1p: int, r2p: int) -> complex:
    """Closed-form element <r1', r2'| R(e1, e2) |r1, r2>."""
    base = _common(p1, p2, r1, r2, r1p, r2p)
    if base == 0:
        return 0j
    h, e1 = complex(p1.h), complex(p1.e)
    x1, x2 = r1 + complex(p1.n), r1p + complex(p2.n)
    two_h_s1 = 2 * h * p1.s
    total = 0j
    for s in range(max(r1 - r2p, 0), min(r1, r1p - r2) + 1):
        total += (comb(r1, s) * phi(r1p - r2 - s, x1) * phi_bar(r2p - r1 + s, x2)
                  * two_h_s1 ** s * cmath.exp(h * (s - 2 * r1p) * e1))
    return base * total


def rmatrix_inverse_formula(p1: RepParams, p2: RepParams, r1: int, r2: int, r1p: int, r2p: int,
                            literal_bounds: bool = False) -> complex:
    """Closed-form element <r1', r2'| R^-1(e1, e2) |r1, r2>.

    The summation runs over s in [max(r2 - r1', 0), r2' - r1]. With
    ``literal_bounds`` the upper limit is additionally capped at r2, which drops
    genuine contributions (see the oracle comparison in the tests).
    """
    base = _common(p1, p2, r1, r2, r1p, r2p)
    if base == 0:
        return 0j
    h, e2 = complex(p2.h), complex(p2.e)
    x1, x2 = r1 + complex(p1.n), r1p + complex(p2.n)
    two_h_s2 = 2 * h * p2.s
    hi = r2p - r1
    if literal_bounds:
        hi = min(hi, r2)
    total = 0j
    for s in range(max(r2 - r1p, 0), hi + 1):
        total += ((-1) ** s * comb(r1p + s, s) * phi(r1p - r2 + s, x1) * phi_bar(r2p - r1 - s, x2)
                  * two_h_s2 ** s * cmath.exp(h * (s + 2 * r1) * e2))
    return base * total


def rmatrix_formula_w0(p1: RepParams, p2: RepParams, r1, r2, r1p, r2p) -> complex:
    """The w = 0 element with its degree-conservation delta."""
    if r1p + r2p != r1 + r2 or r2p > r1 or r2 > r1p:
        return 0j
    h, e1, e2 = complex(p1.h), complex(p1.e), complex(p2.e)
    k = r1p - r2
    prod_ = (2 * h * p1.s) * (2 * h * p2.s)
    return (sqrt(comb(r1, r2p) * comb(r1p, r2)) * cmath.exp(-h * (r1p + r2) * e1)
            * cmath.sqrt(prod_) ** k)


def rmatrix_inverse_formula_w0(p1: RepParams, p2: RepParams, r1, r2, r1p, r2p) -> complex:
    if r1p + r2p != r1 + r2 or r1p > r2 or r1 > r2p:
        return 0j
    h, e2 = complex(p1.h), complex(p2.e)
    k = r2 - r1p
    prod_ = (2 * h * p1.s) * (2 * h * p2.s)
    return (sqrt(comb(r2, r1p) * comb(r2p, r1)) * (-1) ** k * cmath.exp(h * (r2p + r1) * e2)
            * cmath.sqrt(prod_) ** k)


def _formula_matrix(fn, p1: RepParams, p2: RepParams, D: int | None = None, **kw) -> np.ndarray:
    D1 = D or p1.D
    D2 = D or p2.D
    out = np.zeros((D2 * D1, D1 * D2), dtype=complex)
    for r1, r2, r1p, r2p in product(range(D1), range(D2), range(D2), range(D1)):
        out[r1p * D1 + r2p, r1 * D2 + r2] = fn(p1, p2, r1, r2, r1p, r2p, **kw)
    return out


def rmatrix_formula_matrix(p1: RepParams, p2: RepParams) -> FockMatrix:
    return FockMatrix(_formula_matrix(rmatrix_formula, p1, p2), (p2.D, p1.D), "R_formula")


def rmatrix_inverse_formula_matrix(p1: RepParams, p2: RepParams) -> FockMatrix:
    return FockMatrix(_formula_matrix(rmatrix_inverse_formula, p1, p2), (p2.D, p1.D), "Rinv_formula")


def _total_degree_mask(D1: int, D2: int, limit: int) -> np.ndarray:
    deg = np.array([a + b for a, b in product(range(D1), range(D2))])
    return deg <= limit


def compare_formula_oracle(p1: RepParams, p2: RepParams, tol: float = DEFAULT_TOL) -> CheckReport:
    """Entrywise comparison of closed forms against the represented exponentials."""
    start = time.perf_counter()
    if p1.D != p2.D:
        raise ValueError("formula/oracle comparison needs equal cutoffs")
    D = p1.D
    rows_ok = _total_degree_mask(D, D, D - 1)
    fR = rmatrix_formula_matrix(p1, p2).data
    oR = rmatrix_oracle(p1, p2).data
    fI = rmatrix_inverse_formula_matrix(p1, p2).data
    oI = rmatrix_inverse_oracle(p1, p2).data
    err_R = float(np.abs(fR - oR).max())
    err_I = float(np.abs((fI - oI)[rows_ok]).max())
    details = {"tol": tol, "D": D, "max_abs_R": err_R, "max_abs_R_inverse": err_I,
               "inverse_rows": "total degree <= D-1",
               "inverse_summation": "s in [max(r2 - r1', 0), r2' - r1] (printed upper limit also caps at r2)"}
    failing = int(err_R >= tol) + int(err_I >= tol)
    if complex(p1.w) == 0 and complex(p2.w) == 0:
        gR = _formula_matrix(rmatrix_formula_w0, p1, p2)
        gI = _formula_matrix(rmatrix_inverse_formula_w0, p1, p2)
        details["max_abs_w0_R"] = float(np.abs(gR - oR).max())
        details["max_abs_w0_R_inverse"] = float(np.abs((gI - oI)[rows_ok]).max())
        failing += int(details["max_abs_w0_R"] >= tol) + int(details["max_abs_w0_R_inverse"] >= tol)
    return CheckReport("rmatrix_formula_vs_oracle", "two-parameter", None, failing,
                       time.perf_counter() - start, details=details)


def check_w_grading(p1: RepParams, p2: RepParams, rel_tol: float = 1e-12) -> CheckReport:
    """Each nonzero entry of R and R^-1 is a single power w^(r1'+r2'-r1-r2)."""
    start = time.perf_counter()
    D = p1.D
    bad = 0
    checked = 0
    rows_ok = _total_degree_mask(D, D, D - 1)
    for label, g in (("R", graded_rmatrix_oracle(p1, p2)), ("Rinv", graded_rmatrix_inverse_oracle(p1, p2))):
        scale = max(float(np.abs(g.coeffs).max()), 1.0)
        for (row, col), degs in g.degrees(rel_tol * scale).items():
            if label == "Rinv" and not rows_ok[row]:
                continue
            r1p, r2p = divmod(row, D)
            r1, r2 = divmod(col, D)
            checked += 1
            if degs != [r1p + r2p - r1 - r2]:
                bad += 1
    return CheckReport("w_grading", "two-parameter", None, bad, time.perf_counter() - start,
                       details={"entries_checked": checked})


# ---------------------------------------------------------------------------
# colored Yang-Baxter relation on three Fock modules
# ---------------------------------------------------------------------------

def _embed_pair(R: np.ndarray, left: int, right: int) -> np.ndarray:
    return np.kron(np.kron(np.eye(left), R), np.eye(right))


def colored_ybe_residual(p1: RepParams, p2: RepParams, p3: RepParams) -> float:
    """max |R_1^{e2,e3} R_2^{e1,e3} R_1^{e1,e2} - R_2^{e1,e2} R_1^{e1,e3} R_2^{e2,e3}|
    over outputs of total degree <= D - 1."""
    D = p1.D
    R12 = rmatrix_formula_matrix(p1, p2).data
    R13 = rmatrix_formula_matrix(p1, p3).data
    R23 = rmatrix_formula_matrix(p2, p3).data
    lhs = _embed_pair(R23, 1, D) @ _embed_pair(R13, D, 1) @ _embed_pair(R12, 1, D)
    rhs = _embed_pair(R12, D, 1) @ _embed_pair(R13, 1, D) @ _embed_pair(R23, D, 1)
    deg = np.array([a + b + c for a, b, c in product(range(D), repeat=3)])
    rows = deg <= D - 1
    return float(np.abs((lhs - rhs)[rows]).max())


# ---------------------------------------------------------------------------
# ribbon element and u on V_{e,n}
# ---------------------------------------------------------------------------

def _ordered_sum(p: RepParams, sign: int) -> np.ndarray:
    """sum_l (sign 2h)^l / l! e^{sign h l e} B^l A^l."""
    h, e = complex(p.h), complex(p.e)
    A, B = _lowering(p), _b_operator(p)
    out = np.zeros((p.D, p.D), dtype=complex)
    Al = np.eye(p.D, dtype=complex)
    Bl = np.eye(p.D, dtype=complex)
    for l in range(p.D):
        out = out + (sign * 2 * h) ** l / factorial(l) * cmath.exp(sign * h * l * e) * (Bl @ Al)
        Al = Al @ A
        Bl = Bl @ B
    return out


def theta_matrix(p: RepParams, inverse: bool = False) -> np.ndarray:
    h, e = complex(p.h), complex(p.e)
    N = np.array([r + complex(p.n) for r in range(p.D)])
    if inverse:
        return cmath.exp(h * e) * _ordered_sum(p, 1) @ np.diag(np.exp(-2 * h * e * N))
    return cmath.exp(-h * e) * _ordered_sum(p, -1) @ np.diag(np.exp(2 * h * e * N))


def u_matrix(p: RepParams, inverse: bool = False) -> np.ndarray:
    h, e, w = complex(p.h), complex(p.e), complex(p.w)
    N = np.array([r + complex(p.n) for r in range(p.D)])
    ap = _aplus_from_b(_b_operator(p), w)
    if inverse:
        return _ordered_sum(p, 1) @ np.diag(np.exp(-2 * h * e * N)) @ nilpotent_exp(ap, -w)
    return nilpotent_exp(ap, w) @ _ordered_sum(p, -1) @ np.diag(np.exp(2 * h * e * N))


def u_expected(p: RepParams, inverse: bool = False) -> np.ndarray:
    """Action on |r> with t = e^{h e}: u raises with w^l, u^-1 has two terms."""
    h, e, w, n = complex(p.h), complex(p.e), complex(p.w), complex(p.n)
    t = cmath.exp(h * e)
    root = p.sqrt_s  # sqrt((t - 1/t) / 2h) without cancellation
    D = p.D
    out = np.zeros((D, D), dtype=complex)
    for r in range(D):
        if inverse:
            out[r, r] = cmath.exp(-2 * n * h * e)
            if r + 1 < D:
                out[r + 1, r] = -w * t ** (-2 * n) * p.sqrt_s * sqrt(r + 1)
        else:
            for l in range(D - r):
                out[r + l, r] = (cmath.exp(2 * n * h * e) * w ** l * root ** l
                                 * sqrt(factorial(r + l) / factorial(r)))
    return out


def ribbon_spectrum(p: RepParams, tol: float = DEFAULT_TOL) -> CheckReport:
    """theta acts as the scalar e^{(2n-1)he}; theta^-1 as its reciprocal."""
    start = time.perf_counter()
    th = theta_matrix(p)
    thi = theta_matrix(p, inverse=True)
    value = complex(th[0, 0])
    expected = cmath.exp((2 * complex(p.n) - 1) * complex(p.h) * complex(p.e))
    I = np.eye(p.D)
    errs = {
        "theta_scalar": float(np.abs(th - value * I).max()),
        "theta_value": abs(value - expected),
        "theta_inverse": float(np.abs(thi - I / expected).max()),
        "u_action": float(np.abs(u_matrix(p) - u_expected(p)).max()),
        "u_inverse_action": float(np.abs(u_matrix(p, True) - u_expected(p, True)).max()),
    }
    failing = sum(v >= tol for v in errs.values())
    return CheckReport("ribbon_spectrum", "two-parameter", None, int(failing),
                       time.perf_counter() - start,
                       details={"eigenvalue": value, "expected": expected, "max_abs": errs,
                                "tol": tol, "assumption": "t = e^{h e}"})


# ---------------------------------------------------------------------------
# pi_3
# ---------------------------------------------------------------------------

def pi3_generators() -> dict[str, sp.Matrix]:
    z = sp.zeros(3, 3)
    A, Ap, E, N = z.copy(), z.copy(), z.copy(), z.copy()
    A[0, 1] = 1
    Ap[1, 2] = 1
    E[0, 2] = 1
    N[1, 1] = 1
    return {"A": A, "Ap": Ap, "E": E, "N": N}


def _sym_exp(m: sp.Matrix) -> sp.Matrix:
    out = sp.eye(m.shape[0])
    term = sp.eye(m.shape[0])
    for k in range(1, m.shape[0] + 2):
        term = (term * m / k).applyfunc(sp.expand)
        if term.is_zero_matrix:
            return out
        out = out + term
    raise ValueError("argument is not nilpotent")


def pi3_rmatrix() -> sp.Matrix:
    """(pi_3 (x) pi_3)(R) in kron(first, second) layout, exact in h, w."""
    h, w = sp.symbols("h w")
    g = pi3_generators()
    kron = sp.kronecker_product
    ehe = _sym_exp(h * g["E"])
    b = (sp.eye(3) - _sym_exp(-w * g["Ap"])) / w
    b = b.applyfunc(sp.simplify)
    R = (_sym_exp(-w * kron(g["Ap"], g["N"])) * _sym_exp(-2 * h * kron(g["E"], g["N"]))
         * _sym_exp(2 * h * kron(ehe * g["A"], b)) * _sym_exp(w * kron(g["N"], g["Ap"])))
    return R.applyfunc(sp.expand)


def pi3_block_matrix() -> sp.Matrix:
    """The stated 9x9 block form: rows of blocks (I, 2h A+, -2h N), (0, I + w A+, -w N), (0, 0, I)."""
    h, w = sp.symbols("h w")
    g = pi3_generators()
    I, Z = sp.eye(3), sp.zeros(3, 3)
    return sp.BlockMatrix([[I, 2 * h * g["Ap"], -2 * h * g["N"]],
                           [Z, I + w * g["Ap"], -w * g["N"]],
                           [Z, Z, I]]).as_explicit()


def pi3_evaluate(x, h_val=None, w_val=None) -> sp.Matrix:
    """Evaluate a PBW tensor element in pi_3 (x) ... with symbolic h, w."""
    h, w = sp.symbols("h w")
    g = pi3_generators()
    order = ("E", "Ap", "N", "A")
    out = None
    for key, c in x.terms.items():
        a, b, monos = key[0], key[1], key[2:]
        mats = []
        for m in monos:
            mat = sp.eye(3)
            for name, k in zip(order, m):
                mat = mat * g[name] ** k
            mats.append(mat)
        term = mats[0]
        for mm in mats[1:]:
            term = sp.kronecker_product(term, mm)
        term = term * sp.Rational(c.numerator, c.denominator) * h ** a * w ** b
        out = term if out is None else out + term
    return out.applyfunc(sp.expand)


def pi3_rmatrix_json() -> str:
    R = pi3_rmatrix()
    return json.dumps({"rep": "pi3", "layout": "kron(first, second)",
                       "entries": [[sp.sstr(R[i, j]) for j in range(9)] for i in range(9)]})
