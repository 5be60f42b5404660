"""The dual quantum group: functions on H(4) generated by the entries of

    T = [[1, alpha, beta], [0, g, delta], [0, 0, 1]],   g = e^gamma.

Words over the letters ``a`` (alpha), ``b`` (beta), ``g``, ``G`` (g^-1) and
``d`` (delta) are brought to the normal order a* b* (g|G)* d* by a rewriting
system whose rules follow from the commutation relations written with g:

    [alpha, beta]  = 2h alpha + w alpha^2     [alpha, delta] = w alpha g
    [beta, g]      = -w alpha g               [g, delta]     = w g (g - 1)
    [beta, delta]  = [alpha, g] = 0           g G = G g = 1
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

import sympy as sp

from .report import CheckReport
from .series import DEFAULT_TRUNCATION, TruncatedSeries

RANK = {"a": 0, "b": 1, "g": 2, "G": 2, "d": 3}

# relation names used by the mutation test; each covers the rules it generates
RELATIONS = ("alpha-beta", "alpha-delta", "beta-g", "g-delta", "beta-delta", "alpha-g")


@dataclass
class RewriteSystem:
    """Rules ``yx -> sum c word`` for out-of-order adjacent letter pairs."""

    truncation: tuple[int, int]
    rules: dict[str, list[tuple[TruncatedSeries, str]]]
    dropped: tuple[str, ...] = ()

    def reducible(self, pair: str) -> bool:
        return pair in self.rules


def relations(truncation=(3, 3), drop: Iterable[str] = (), w_terms: bool = True,
              h_terms: bool = True) -> RewriteSystem:
    """The rewriting system; ``drop`` deletes whole relations, ``w_terms=False``
    deletes every w-correction."""
    t = truncation
    one = TruncatedSeries.one(t)
    h = TruncatedSeries.h(t) if h_terms else TruncatedSeries.zero(t)
    w = TruncatedSeries.w(t) if w_terms else TruncatedSeries.zero(t)
    drop = tuple(drop)
    unknown = set(drop) - set(RELATIONS)
    if unknown:
        raise ValueError(f"unknown relations {sorted(unknown)}")
    table = {
        "alpha-beta": {"ba": [(one, "ab"), (-2 * h, "a"), (-w, "aa")]},
        "alpha-g": {"ga": [(one, "ag")], "Ga": [(one, "aG")]},
        "alpha-delta": {"da": [(one, "ad"), (-w, "ag")]},
        "beta-g": {"gb": [(one, "bg"), (w, "ag")], "Gb": [(one, "bG"), (-w, "aG")]},
        "beta-delta": {"db": [(one, "bd")]},
        "g-delta": {"dg": [(one, "gd"), (-w, "gg"), (w, "g")],
                    "dG": [(one, "Gd"), (w, ""), (-w, "G")]},
    }
    rules: dict[str, list[tuple[TruncatedSeries, str]]] = {"gG": [(one, "")], "Gg": [(one, "")]}
    for name, block in table.items():
        if name in drop:
            continue
        for lhs, rhs in block.items():
            rules[lhs] = [(c, word) for c, word in rhs if not c.is_zero()]
    return RewriteSystem(t, rules, drop)


class TruncationError(ValueError):
    pass


class GroupAlgebraElement:
    """Linear combination of words with TruncatedSeries coefficients."""

    __slots__ = ("terms", "system")

    def __init__(self, terms: Mapping[str, TruncatedSeries], system: RewriteSystem,
                 reduce: bool = True, strategy: str = "leftmost"):
        self.system = system
        clean = {wd: c for wd, c in terms.items() if not c.is_zero()}
        self.terms = normal_form(clean, system, strategy) if reduce else clean

    @classmethod
    def word(cls, word: str, system: RewriteSystem, coeff=None) -> "GroupAlgebraElement":
        c = coeff if coeff is not None else TruncatedSeries.one(system.truncation)
        if not isinstance(c, TruncatedSeries):
            c = TruncatedSeries.const(c, system.truncation)
        return cls({word: c}, system)

    @classmethod
    def zero(cls, system: RewriteSystem) -> "GroupAlgebraElement":
        return cls({}, system, reduce=False)

    def _check(self, other: "GroupAlgebraElement"):
        if other.system.truncation != self.system.truncation:
            raise TruncationError(
                f"truncations differ: {self.system.truncation} vs {other.system.truncation}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for wd, c in other.terms.items():
            out[wd] = out[wd] + c if wd in out else c
        return GroupAlgebraElement(out, self.system, reduce=False)

    def __neg__(self):
        return GroupAlgebraElement({wd: -c for wd, c in self.terms.items()}, self.system, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: TruncatedSeries) -> "GroupAlgebraElement":
        return GroupAlgebraElement({wd: v * c for wd, v in self.terms.items()}, self.system, reduce=False)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        out: dict[str, TruncatedSeries] = {}
        for (w1, c1), (w2, c2) in product(self.terms.items(), other.terms.items()):
            wd = w1 + w2
            c = c1 * c2
            out[wd] = out[wd] + c if wd in out else c
        return GroupAlgebraElement(out, self.system)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgebraElement) and (self - other).is_zero()

    def __len__(self) -> int:
        return sum(len(c) for c in self.terms.values())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{wd or '1'}" for wd, c in sorted(self.terms.items()))


def group_mul(x: GroupAlgebraElement, y: GroupAlgebraElement) -> GroupAlgebraElement:
    return x * y


def _find(word: str, system: RewriteSystem, strategy: str) -> int:
    positions = range(len(word) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    for i in positions:
        if word[i:i + 2] in system.rules:
            return i
    return -1


def normal_form(terms: Mapping[str, TruncatedSeries], system: RewriteSystem,
                strategy: str = "leftmost", trace: list | None = None) -> dict[str, TruncatedSeries]:
    """Rewrite until no rule applies; ``strategy`` picks which redex to contract."""
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    done: dict[str, TruncatedSeries] = {}
    pending = dict(terms)
    while pending:
        word, coeff = pending.popitem()
        i = _find(word, system, strategy)
        if i < 0:
            done[word] = done[word] + coeff if word in done else coeff
            continue
        if trace is not None:
            trace.append((word, i))
        pre, post = word[:i], word[i + 2:]
        for c, rhs in system.rules[word[i:i + 2]]:
            new = pre + rhs + post
            val = coeff * c
            pending[new] = pending[new] + val if new in pending else val
    return {wd: c for wd, c in done.items() if not c.is_zero()}


def is_normal(word: str) -> bool:
    ranks = [RANK[ch] for ch in word]
    if ranks != sorted(ranks):
        return False
    return "gG" not in word and "Gg" not in word


# ---------------------------------------------------------------------------
# T-matrix and the RTT relation
# ---------------------------------------------------------------------------

def t_matrix(system: RewriteSystem) -> list[list[GroupAlgebraElement]]:
    E = lambda wd: GroupAlgebraElement.word(wd, system)  # noqa: E731
    Z = GroupAlgebraElement.zero(system)
    return [[E(""), E("a"), E("b")], [Z, E("g"), E("d")], [Z, Z, E("")]]


def t_inverse(system: RewriteSystem) -> list[list[GroupAlgebraElement]]:
    E = lambda wd: GroupAlgebraElement.word(wd, system)  # noqa: E731
    Z = GroupAlgebraElement.zero(system)
    return [[E(""), -E("Ga"), -E("b") + E("Gad")], [Z, E("G"), -E("Gd")], [Z, Z, E("")]]


def _sym_to_series(expr, t) -> TruncatedSeries:
    h, w = sp.symbols("h w")
    poly = sp.Poly(sp.expand(expr), h, w)
    out = TruncatedSeries.zero(t)
    for (a, b), c in poly.terms():
        c = sp.Rational(c)
        out = out + TruncatedSeries.monomial(a, b, int(c.p), t) / int(c.q)
    return out


def r9_matrix(truncation=(3, 3), R=None) -> list[list[TruncatedSeries]]:
    """The represented R-matrix on C^3 (x) C^3 as series entries."""
    if R is None:
        from .fock import pi3_block_matrix
        R = pi3_block_matrix()
    return [[_sym_to_series(R[i, j], truncation) for j in range(9)] for i in range(9)]


def rtt_residual(system: RewriteSystem | None = None, R9=None) -> list[list[GroupAlgebraElement]]:
    """Entries of R T1 T2 - T2 T1 R in normal form."""
    system = system or relations()
    t = system.truncation
    R = R9 if R9 is not None else r9_matrix(t)
    T = t_matrix(system)
    idx = [(i, k) for i in range(3) for k in range(3)]
    t12 = [[T[i][j] * T[k][l] for (j, l) in idx] for (i, k) in idx]
    t21 = [[T[k][l] * T[i][j] for (j, l) in idx] for (i, k) in idx]
    out = []
    for I in range(9):
        row = []
        for J in range(9):
            acc = GroupAlgebraElement.zero(system)
            for K in range(9):
                if not R[I][K].is_zero():
                    acc = acc + t12[K][J].scale(R[I][K])
                if not R[K][J].is_zero():
                    acc = acc - t21[I][K].scale(R[K][J])
            row.append(acc)
        out.append(row)
    return out


def check_rtt(truncation=(3, 3), drop: Iterable[str] = (), w_terms: bool = True) -> CheckReport:
    start = time.perf_counter()
    system = relations(truncation, drop, w_terms)
    res = rtt_residual(system)
    nonzero = [(i, j) for i in range(9) for j in range(9) if not res[i][j].is_zero()]
    terms = sum(len(res[i][j]) for i, j in nonzero)
    details = {"nonzero_entries": len(nonzero), "dropped": list(drop), "w_terms": w_terms}
    return CheckReport("rtt", "two-parameter", tuple(truncation), terms,
                       time.perf_counter() - start, details=details)


def mutation_report(truncation=(3, 3)) -> dict[str, int]:
    """Nonzero RTT entries after deleting each relation (and all w-terms)."""
    out = {}
    for name in RELATIONS:
        out[name] = check_rtt(truncation, drop=(name,)).details["nonzero_entries"]
    out["w-terms"] = check_rtt(truncation, w_terms=False).details["nonzero_entries"]
    return out


def check_confluence(truncation=(3, 3), samples: int = 200, max_len: int = 6,
                     seed: int = 0) -> CheckReport:
    """Leftmost and rightmost reduction give the same normal form."""
    start = time.perf_counter()
    system = relations(truncation)
    rng = random.Random(seed)
    one = TruncatedSeries.one(truncation)
    bad = 0
    for _ in range(samples):
        word = "".join(rng.choice("abgGd") for _ in range(rng.randint(0, max_len)))
        left = normal_form({word: one}, system, "leftmost")
        right = normal_form({word: one}, system, "rightmost")
        diff = GroupAlgebraElement(left, system, reduce=False) - GroupAlgebraElement(right, system, reduce=False)
        bad += len(diff)
    # conjugating each relation by g must again reduce to zero
    for lhs, rhs in system.rules.items():
        if lhs in ("gG", "Gg"):
            continue
        for a, b in (("G", "g"), ("g", "G")):
            x = GroupAlgebraElement.word(a + lhs + b, system)
            y = GroupAlgebraElement.zero(system)
            for c, wd in rhs:
                y = y + GroupAlgebraElement.word(a + wd + b, system, c)
            bad += len(x - y)
    return CheckReport("rtt_confluence", "two-parameter", tuple(truncation), bad,
                       time.perf_counter() - start, details={"samples": samples, "seed": seed})


# ---------------------------------------------------------------------------
# Hopf structure
# ---------------------------------------------------------------------------

@dataclass
class TensorGroupElement:
    """Element of A (x) A as {(word1, word2): coefficient}, both sides normal."""

    terms: dict[tuple[str, str], TruncatedSeries]
    system: RewriteSystem

    @classmethod
    def pure(cls, x: GroupAlgebraElement, y: GroupAlgebraElement) -> "TensorGroupElement":
        out = {}
        for (w1, c1), (w2, c2) in product(x.terms.items(), y.terms.items()):
            out[(w1, w2)] = c1 * c2
        return cls(out, x.system)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorGroupElement({k: c for k, c in out.items() if not c.is_zero()}, self.system)

    def __neg__(self):
        return TensorGroupElement({k: -c for k, c in self.terms.items()}, self.system)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorGroupElement({k: v * c for k, v in self.terms.items()}, self.system)

    def __mul__(self, other):
        out: dict[tuple[str, str], TruncatedSeries] = {}
        for ((a1, a2), c1), ((b1, b2), c2) in product(self.terms.items(), other.terms.items()):
            left = normal_form({a1 + b1: c1 * c2}, self.system)
            right = normal_form({a2 + b2: TruncatedSeries.one(self.system.truncation)}, self.system)
            for (l, cl), (r, cr) in product(left.items(), right.items()):
                out[(l, r)] = out[(l, r)] + cl * cr if (l, r) in out else cl * cr
        return TensorGroupElement({k: c for k, c in out.items() if not c.is_zero()}, self.system)

    def __len__(self):
        return sum(len(c) for c in self.terms.values())


def _letter_images(system: RewriteSystem):
    """Coproduct, antipode and counit on the letters, read off from T."""
    T, Ti = t_matrix(system), t_inverse(system)
    pos = {"a": (0, 1), "b": (0, 2), "g": (1, 1), "d": (1, 2)}
    coproduct = {}
    for letter, (i, j) in pos.items():
        acc = TensorGroupElement({}, system)
        for k in range(3):
            acc = acc + TensorGroupElement.pure(T[i][k], T[k][j])
        coproduct[letter] = acc
    G = GroupAlgebraElement.word("G", system)
    coproduct["G"] = TensorGroupElement.pure(G, G)
    antipode = {letter: Ti[i][j] for letter, (i, j) in pos.items()}
    antipode["G"] = GroupAlgebraElement.word("g", system)
    counit = {"a": 0, "b": 0, "g": 1, "G": 1, "d": 0}
    return coproduct, antipode, counit


def _delta_word(word: str, coproduct, system) -> TensorGroupElement:
    one = GroupAlgebraElement.word("", system)
    out = TensorGroupElement.pure(one, one)
    for ch in word:
        out = out * coproduct[ch]
    return out


def _antipode_word(word: str, antipode, system) -> GroupAlgebraElement:
    out = GroupAlgebraElement.word("", system)
    for ch in word:
        out = antipode[ch] * out
    return out


def _counit_word(word: str, counit, t) -> TruncatedSeries:
    val = 1
    for ch in word:
        val *= counit[ch]
    return TruncatedSeries.const(val, t)


def check_group_hopf(truncation=(3, 3)) -> CheckReport:
    """Coproduct from T (x.) T, antipode from T^-1, counit eps(T) = 1, and
    compatibility of each with the relations."""
    start = time.perf_counter()
    system = relations(truncation)
    t = truncation
    parts: dict[str, int] = {}
    T, Ti = t_matrix(system), t_inverse(system)
    E = lambda wd: GroupAlgebraElement.word(wd, system)  # noqa: E731
    pure = TensorGroupElement.pure

    # T S(T) = S(T) T = 1
    bad = 0
    for i, j in product(range(3), repeat=2):
        left = GroupAlgebraElement.zero(system)
        right = GroupAlgebraElement.zero(system)
        for k in range(3):
            left = left + T[i][k] * Ti[k][j]
            right = right + Ti[i][k] * T[k][j]
        target = E("") if i == j else GroupAlgebraElement.zero(system)
        bad += len(left - target) + len(right - target)
    parts["T_inverse"] = bad

    coproduct, antipode, counit = _letter_images(system)
    expected = {
        "a": pure(E("a"), E("g")) + pure(E(""), E("a")),
        "b": pure(E("b"), E("")) + pure(E(""), E("b")) + pure(E("a"), E("d")),
        "g": pure(E("g"), E("g")),
        "d": pure(E("d"), E("")) + pure(E("g"), E("d")),
    }
    parts["coproduct_formulas"] = sum(len(coproduct[k] - v) for k, v in expected.items())
    expected_s = {"a": -E("Ga"), "b": -E("b") + E("Gad"), "g": E("G"), "d": -E("Gd")}
    parts["antipode_formulas"] = sum(len(antipode[k] - v) for k, v in expected_s.items())
    parts["counit_T"] = sum(
        len(_counit_word(k, counit, t) - TruncatedSeries.const(1 if k == "g" else 0, t)) for k in "abgd")

    # coassociativity on letters
    coassoc = 0
    for letter in "abgd":
        d = coproduct[letter]
        lhs: dict = {}
        rhs: dict = {}
        for (w1, w2), c in d.terms.items():
            for (x1, x2), c2 in coproduct_word(w1, coproduct, system).terms.items():
                key = (x1, x2, w2)
                lhs[key] = lhs[key] + c * c2 if key in lhs else c * c2
            for (x1, x2), c2 in coproduct_word(w2, coproduct, system).terms.items():
                key = (w1, x1, x2)
                rhs[key] = rhs[key] + c * c2 if key in rhs else c * c2
        for key in set(lhs) | set(rhs):
            diff = lhs.get(key, TruncatedSeries.zero(t)) - rhs.get(key, TruncatedSeries.zero(t))
            coassoc += len(diff)
    parts["coassociativity"] = coassoc

    # the maps respect every rewriting rule
    hom = anti = eps = 0
    for lhs, rhs in system.rules.items():
        dl = _delta_word(lhs, coproduct, system)
        dr = TensorGroupElement({}, system)
        sl = _antipode_word(lhs, antipode, system)
        sr = GroupAlgebraElement.zero(system)
        el = _counit_word(lhs, counit, t)
        er = TruncatedSeries.zero(t)
        for c, wd in rhs:
            dr = dr + _delta_word(wd, coproduct, system).scale(c)
            sr = sr + _antipode_word(wd, antipode, system).scale(c)
            er = er + _counit_word(wd, counit, t) * c
        hom += len(dl - dr)
        anti += len(sl - sr)
        eps += len(el - er)
    parts["coproduct_homomorphism"] = hom
    parts["antipode_antihomomorphism"] = anti
    parts["counit_homomorphism"] = eps
    return CheckReport("group_hopf", "two-parameter", tuple(t), sum(parts.values()),
                       time.perf_counter() - start, details={"parts": parts})


def coproduct_word(word: str, coproduct, system) -> TensorGroupElement:
    return _delta_word(word, coproduct, system)


def set_g_to_one(x: GroupAlgebraElement) -> GroupAlgebraElement:
    out: dict[str, TruncatedSeries] = {}
    for wd, c in x.terms.items():
        key = wd.replace("g", "").replace("G", "")
        out[key] = out[key] + c if key in out else c
    return GroupAlgebraElement(out, x.system)


def commutator_words(system: RewriteSystem, x: str, y: str) -> GroupAlgebraElement:
    X = GroupAlgebraElement.word(x, system)
    Y = GroupAlgebraElement.word(y, system)
    return X * Y - Y * X


def check_reductions(kh: int = 3, kw: int = 3) -> CheckReport:
    """h -> 0 and w -> 0 (with g -> 1) limits of the relations and Hopf maps."""
    start = time.perf_counter()
    parts: dict[str, int] = {}

    # h-limit: keep only h^0
    sys_w = relations((1, kw))
    E = lambda wd, s=sys_w: GroupAlgebraElement.word(wd, s)  # noqa: E731
    w = TruncatedSeries.w((1, kw))
    h_limit = {
        ("a", "b"): E("aa").scale(w),
        ("g", "d"): (E("gg") - E("g")).scale(w),
        ("a", "d"): E("ag").scale(w),
        ("b", "g"): -E("ag").scale(w),
        ("a", "g"): GroupAlgebraElement.zero(sys_w),
        ("b", "d"): GroupAlgebraElement.zero(sys_w),
    }
    parts["h_limit_relations"] = sum(len(commutator_words(sys_w, x, y) - v) for (x, y), v in h_limit.items())

    # w-limit with gamma = 0
    sys_h = relations((kh, 1))
    F = lambda wd, s=sys_h: GroupAlgebraElement.word(wd, s)  # noqa: E731
    h = TruncatedSeries.h((kh, 1))
    w_limit = {
        ("a", "b"): F("a").scale(2 * h),
        ("a", "d"): GroupAlgebraElement.zero(sys_h),
        ("b", "d"): GroupAlgebraElement.zero(sys_h),
    }
    parts["w_limit_relations"] = sum(
        len(set_g_to_one(commutator_words(sys_h, x, y)) - v) for (x, y), v in w_limit.items())

    coproduct, antipode, _ = _letter_images(sys_h)
    pure = TensorGroupElement.pure

    def flat(t: TensorGroupElement) -> TensorGroupElement:
        out = TensorGroupElement({}, sys_h)
        for (w1, w2), c in t.terms.items():
            out = out + pure(set_g_to_one(F(w1)), set_g_to_one(F(w2))).scale(c)
        return out

    expected_d = {
        "a": pure(F("a"), F("")) + pure(F(""), F("a")),
        "b": pure(F("b"), F("")) + pure(F(""), F("b")) + pure(F("a"), F("d")),
        "d": pure(F("d"), F("")) + pure(F(""), F("d")),
    }
    expected_s = {"a": -F("a"), "b": -F("b") + F("ad"), "d": -F("d")}
    parts["w_limit_coproducts"] = sum(len(flat(coproduct[k]) - v) for k, v in expected_d.items())
    parts["w_limit_antipodes"] = sum(len(set_g_to_one(antipode[k]) - v) for k, v in expected_s.items())
    return CheckReport("rtt_reductions", "two-parameter", (kh, kw), sum(parts.values()),
                       time.perf_counter() - start, details={"parts": parts})
