"""Braid words, the colored braid representation on Fock modules, the Turaev
partial-trace conditions and the Markov-trace link invariant.

Grammar::

    braid  := [ "B" INT ":" ] word
    word   := item ( WS item )*
    item   := "s" INT [ "^-1" ]

Without a header the strand count is one more than the largest generator index.
"""

from __future__ import annotations

import cmath
import json
import re
import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .fock import (
    DEFAULT_TOL,
    FockMatrix,
    GradedMatrix,
    RepParams,
    rmatrix_formula,
    rmatrix_inverse_formula,
)
from .report import CheckReport


class BraidParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class BraidWord:
    m: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("a braid needs at least one strand")
        for i, sign in self.letters:
            if not 1 <= i < self.m:
                raise ValueError(f"generator s{i} out of range for B{self.m}")
            if sign not in (1, -1):
                raise ValueError("letter signs are +1 or -1")

    @property
    def writhe(self) -> int:
        return sum(sign for _, sign in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.m, other.m), self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.m, tuple((i, -s) for i, s in reversed(self.letters)))

    def cyclic_shift(self, k: int = 1) -> "BraidWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.m, self.letters[k:] + self.letters[:k])

    def stabilize(self, sign: int = 1) -> "BraidWord":
        """x in B_m  ->  x s_m^{sign} in B_{m+1}."""
        return BraidWord(self.m + 1, self.letters + ((self.m, sign),))

    def free_reduce(self) -> "BraidWord":
        out: list[tuple[int, int]] = []
        for i, s in self.letters:
            if out and out[-1] == (i, -s):
                out.pop()
            else:
                out.append((i, s))
        return BraidWord(self.m, tuple(out))

    def __str__(self) -> str:
        items = " ".join(f"s{i}" + ("^-1" if s < 0 else "") for i, s in self.letters)
        return f"B{self.m}: {items}".rstrip()


_HEADER = re.compile(r"\s*B(\d+)\s*:")
_ITEM = re.compile(r"s(\d+)(\^-1)?")


def parse_braid(text: str) -> BraidWord:
    pos = 0
    m = None
    head = _HEADER.match(text)
    if head:
        m = int(head.group(1))
        if m < 1:
            raise BraidParseError("strand count must be positive", head.start(1))
        pos = head.end()
    letters: list[tuple[int, int]] = []
    positions: list[int] = []
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        if letters and not text[pos - 1].isspace():
            raise BraidParseError("items must be separated by whitespace", pos)
        item = _ITEM.match(text, pos)
        if not item:
            raise BraidParseError(f"unexpected {text[pos]!r}", pos)
        index = int(item.group(1))
        if index == 0:
            raise BraidParseError("generator index 0 is not allowed", pos)
        letters.append((index, -1 if item.group(2) else 1))
        positions.append(pos)
        pos = item.end()
    if m is None:
        m = 1 + max((i for i, _ in letters), default=0)
    for (i, _), at in zip(letters, positions):
        if i >= m:
            raise BraidParseError(f"generator s{i} out of range for B{m}", at)
    return BraidWord(m, tuple(letters))


# ---------------------------------------------------------------------------
# representation
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _pair_matrix(p1: RepParams, p2: RepParams, sign: int) -> np.ndarray:
    """R(e1, e2) or R^-1(e1, e2) on V1 (x) V2 -> V2 (x) V1, cutoff p1.D."""
    D = p1.D
    fn = rmatrix_formula if sign > 0 else rmatrix_inverse_formula
    out = np.zeros((D * D, D * D), dtype=complex)
    for r1, r2, r1p, r2p in product(range(D), repeat=4):
        if r1p + r2p >= r1 + r2:
            out[r1p * D + r2p, r1 * D + r2] = fn(p1, p2, r1, r2, r1p, r2p)
    return out


@lru_cache(maxsize=64)
def _pair_graded(p1: RepParams, p2: RepParams, sign: int) -> GradedMatrix:
    """The same letter with w kept formal: entry degree is r1'+r2'-r1-r2."""
    D = p1.D
    K = 2 * D - 1
    unit = (p1.with_(w=1), p2.with_(w=1))
    base = _pair_matrix(*unit, sign)
    coeffs = np.zeros((K, D * D, D * D), dtype=complex)
    for r1, r2, r1p, r2p in product(range(D), repeat=4):
        d = r1p + r2p - r1 - r2
        if d >= 0:
            coeffs[d, r1p * D + r2p, r1 * D + r2] = base[r1p * D + r2p, r1 * D + r2]
    return GradedMatrix(coeffs)


def _colors(params: RepParams | Sequence[RepParams], m: int) -> list[RepParams]:
    if isinstance(params, RepParams):
        return [params] * m
    params = list(params)
    if len(params) != m:
        raise ValueError(f"need {m} strand parameters, got {len(params)}")
    if len({p.D for p in params}) != 1:
        raise ValueError("all strands share one cutoff")
    return params


def _convergence_warnings(colors: list[RepParams]) -> list[str]:
    out = []
    for k, p in enumerate(colors):
        if (complex(p.h) * complex(p.e)).real <= 0:
            out.append(f"strand {k + 1}: Re(h e) <= 0, outside the trace convergence regime")
    return out


def _letter_sequence(word: BraidWord, colors: list[RepParams]):
    """Yield (i, sign, c_i, c_{i+1}) in word order; colors flow from the right."""
    current = list(colors)
    steps = []
    for i, sign in reversed(word.letters):
        a, b = current[i - 1], current[i]
        steps.append((i, sign, a, b))
        current[i - 1], current[i] = b, a
    return list(reversed(steps)), current


def _embed(mat: np.ndarray, i: int, m: int, D: int) -> np.ndarray:
    left = np.eye(D ** (i - 1))
    right = np.eye(D ** (m - i - 1))
    return np.kron(np.kron(left, mat), right)


def _right_multiply(out: np.ndarray, mat: np.ndarray, i: int, m: int, D: int) -> np.ndarray:
    """out @ (1 (x) mat (x) 1) without forming the Kronecker product."""
    n = out.shape[0]
    t = out.reshape(n, D ** (i - 1), D * D, D ** (m - i - 1))
    return np.einsum("alpr,pq->alqr", t, mat, optimize=True).reshape(n, -1)


def braid_rep(word: BraidWord, params: RepParams | Sequence[RepParams]) -> FockMatrix:
    """rho_m(x): product of letter matrices in word order on V^{(x) m}."""
    colors = _colors(params, word.m)
    D = colors[0].D
    steps, _ = _letter_sequence(word, colors)
    out = np.eye(D ** word.m, dtype=complex)
    for i, sign, a, b in steps:
        out = _right_multiply(out, _pair_matrix(a, b, sign), i, word.m, D)
    return FockMatrix(out, (D,) * word.m, f"rho({word})", warnings=_convergence_warnings(colors))


def braid_rep_graded(word: BraidWord, params: RepParams | Sequence[RepParams]) -> GradedMatrix:
    colors = _colors(params, word.m)
    D = colors[0].D
    steps, _ = _letter_sequence(word, colors)
    K = word.m * (D - 1) + 1
    n = D ** word.m
    out = GradedMatrix.constant(np.eye(n, dtype=complex), K)
    for i, sign, a, b in steps:
        g = _pair_graded(a, b, sign)
        c = np.zeros((K, n, n), dtype=complex)
        for d in range(min(K, g.K)):
            if g.coeffs[d].any():
                c[d] = _embed(g.coeffs[d], i, word.m, D)
        out = out @ GradedMatrix(c)
    return out


def interior_rows(m: int, D: int) -> np.ndarray:
    """States of total Fock degree <= D - 1, where products of letters are exact."""
    deg = np.array([sum(r) for r in product(range(D), repeat=m)])
    return deg <= D - 1


def braid_relation_residual(params: Sequence[RepParams], m: int = 3, i: int = 1) -> float:
    """max |rho(s_i s_{i+1} s_i) - rho(s_{i+1} s_i s_{i+1})| on interior rows."""
    lhs = braid_rep(BraidWord(m, ((i, 1), (i + 1, 1), (i, 1))), params).data
    rhs = braid_rep(BraidWord(m, ((i + 1, 1), (i, 1), (i + 1, 1))), params).data
    rows = interior_rows(m, params[0].D if not isinstance(params, RepParams) else params.D)
    return float(np.abs((lhs - rhs)[rows]).max())


def inverse_pair_residual(params: Sequence[RepParams]) -> float:
    """max |rho(s1 s1^-1) - 1| and |rho(s1^-1 s1) - 1| on interior rows."""
    colors = list(params)
    D = colors[0].D
    rows = interior_rows(2, D)
    worst = 0.0
    for letters in (((1, 1), (1, -1)), ((1, -1), (1, 1))):
        mat = braid_rep(BraidWord(2, letters), colors).data
        worst = max(worst, float(np.abs((mat - np.eye(D * D))[rows]).max()))
    return worst


def check_braid_relations(params: Sequence[RepParams], tol: float = 1e-9) -> CheckReport:
    start = time.perf_counter()
    colors = list(params)
    errs = {
        "braid_relation": braid_relation_residual(colors),
        "inverse_pair": inverse_pair_residual(colors[:2]),
    }
    failing = sum(v >= tol for v in errs.values())
    return CheckReport("braid_relations", "two-parameter", None, int(failing),
                       time.perf_counter() - start,
                       details={"max_abs": errs, "tol": tol, "rows": "total degree <= D-1"})


# ---------------------------------------------------------------------------
# Turaev enhancement
# ---------------------------------------------------------------------------

def partial_trace_second(mat: np.ndarray, D: int, upto: int | None = None) -> np.ndarray:
    """(id (x) Tr)(mat) for an operator on V (x) V, summing j < upto."""
    upto = D if upto is None else upto
    t = mat.reshape(D, D, D, D)[:, :upto, :, :upto]
    return np.einsum("kjij->ki", t)


def check_turaev(p: RepParams, tol: float = 1e-6, interior: int | None = None) -> CheckReport:
    """Turaev partial-trace conditions with mu = id, a = e^{he}, b = e^{-he}.

    Partial traces over the second factor are truncated at D; the tail is
    estimated by the change from D - 2 to D.  Rows and columns are restricted
    to states below ``interior`` (default D // 4).
    """
    start = time.perf_counter()
    D = p.D
    k = interior if interior is not None else max(D // 4, 1)
    h, e = complex(p.h), complex(p.e)
    a, b = cmath.exp(h * e), cmath.exp(-h * e)
    R = _pair_matrix(p, p, 1)
    Rinv = _pair_matrix(p, p, -1)
    details: dict = {"a": a, "b": b, "mu": "id", "interior": k, "tol": tol, "D": D}
    failing = 0

    mu = np.eye(D * D)
    mu_residual = float(np.abs(mu @ R - R @ mu).max())
    details["mu_commutes"] = mu_residual
    failing += mu_residual != 0

    for name, mat, target in (("trace_R", R, a * b), ("trace_R_inverse", Rinv, b / a)):
        full = partial_trace_second(mat, D)[:k, :k]
        short = partial_trace_second(mat, D, D - 2)[:k, :k]
        tail = float(np.abs(full - short).max())
        diag = float(np.abs(np.diag(full) - target).max())
        off = float(np.abs(full - np.diag(np.diag(full))).max())
        details[name] = {"diagonal_error": diag, "off_diagonal_max": off, "tail": tail}
        failing += (diag >= tol) + (off >= tol) + (tail >= tol)
    return CheckReport("turaev", "two-parameter", None, int(failing),
                       time.perf_counter() - start, details=details)


# ---------------------------------------------------------------------------
# link invariant
# ---------------------------------------------------------------------------

@dataclass
class InvariantResult:
    braid: str
    m: int
    writhe: int
    value: complex
    D: int
    tail_estimate: float
    w_used: complex
    converged: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"braid": self.braid, "m": self.m, "writhe": self.writhe,
                "P": [self.value.real, self.value.imag], "D": self.D,
                "tail": self.tail_estimate, "converged": self.converged,
                "w": [self.w_used.real, self.w_used.imag], "notes": self.notes}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def markov_trace(word: BraidWord, p: RepParams) -> complex:
    """q^{e(m - writhe)} Tr rho(x) at the cutoff of p, with q = e^h."""
    rho = braid_rep(word, p).data
    pref = cmath.exp(complex(p.h) * complex(p.e) * (word.m - word.writhe))
    return complex(pref * np.trace(rho))


def link_invariant(word: BraidWord, p: RepParams, tol: float = 1e-6) -> InvariantResult:
    if p.D < 4:
        raise ValueError("the tail estimate compares cutoffs D and D-2; need D >= 4")
    value = markov_trace(word, p)
    lower = markov_trace(word, p.with_(D=p.D - 2))
    tail = abs(value - lower)
    notes = ["q = e^h, so q^{e k} = e^{h e k}"] + _convergence_warnings([p] * word.m)
    return InvariantResult(str(word), word.m, word.writhe, value, p.D, tail,
                           complex(p.w), tail < tol, notes)


def trace_is_w_free(word: BraidWord, p: RepParams) -> tuple[bool, int]:
    """In w-graded form every diagonal entry of rho(x) has no w^{k>0} part.

    Returns the verdict and the number of diagonal entries inspected.
    """
    g = braid_rep_graded(word, p)
    diag = np.stack([np.diag(g.coeffs[k]) for k in range(g.K)])
    return bool(not diag[1:].any()), diag.shape[1]


def markov_two_partial_trace(word: BraidWord, p: RepParams, sign: int,
                             interior: int | None = None) -> dict:
    """(id (x) Tr_last) rho(x s_m^{sign}) against a^{sign} b rho(x) on low states.

    Compares the diagonal (degree-preserving) part; the strictly raising
    remainder never reaches a trace.
    """
    D = p.D
    k = interior if interior is not None else max(D // 4, 1)
    h, e = complex(p.h), complex(p.e)
    factor = cmath.exp(h * e * (sign - 1))
    big = braid_rep(word.stabilize(sign), p).data
    small = braid_rep(word, p).data
    n = D ** word.m
    t = big.reshape(n, D, n, D)
    reduced = np.einsum("ajbj->ab", t)
    short = np.einsum("ajbj->ab", t[:, : D - 2, :, : D - 2])
    rows = np.array([max(r) < k for r in product(range(D), repeat=word.m)])
    deg = np.array([sum(r) for r in product(range(D), repeat=word.m)])
    same = deg[:, None] == deg[None, :]
    mask = rows[:, None] & rows[None, :] & same
    err = float(np.abs((reduced - factor * small)[mask]).max())
    tail = float(np.abs((reduced - short)[mask]).max())
    return {"error": err, "tail": tail, "interior": k}
