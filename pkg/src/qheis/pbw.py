"""The algebra U_{h,w}(H(4)) on the ordered basis E^i (A+)^j N^k A^l.

Relations, with E central and s = sinh(hE)/h::

    [A, A+] = s e^{w A+},   [N, A+] = (e^{w A+} - 1)/w,   [N, A] = -A

Elements keep their coefficients flattened: a term key is
``(a, b, m_1, ..., m_n)`` meaning ``h^a w^b m_1 (x) ... (x) m_n``.
Setting ``K_w = 1`` (resp. ``K_h = 1``) specialises the relations to the
one-parameter algebras, so one structure-constant table serves every preset.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence

from .series import TruncatedSeries, Truncation, TruncationMismatch
from . import kernel

Monomial = tuple[int, int, int, int]

GENERATORS = ("E", "Ap", "N", "A")
ONE: Monomial = (0, 0, 0, 0)
_GEN_MONO: dict[str, Monomial] = {
    "E": (1, 0, 0, 0),
    "Ap": (0, 1, 0, 0),
    "N": (0, 0, 1, 0),
    "A": (0, 0, 0, 1),
}


class MonomialTable:
    """Structure constants m1 * m2 = sum c h^a w^b m at a fixed truncation."""

    _instances: dict[Truncation, "MonomialTable"] = {}

    def __new__(cls, truncation: Truncation):
        inst = cls._instances.get(truncation)
        if inst is None:
            inst = super().__new__(cls)
            inst.kh, inst.kw = truncation
            inst._products = {}
            inst._a_past_p = {}
            inst._n_past_p = {}
            cls._instances[truncation] = inst
        return inst

    # A^l (A+)^j  ->  {(e, p, q, a, b): c} meaning h^a w^b E^e (A+)^p A^q
    def a_past_p(self, l: int, j: int) -> dict:
        key = (l, j)
        hit = self._a_past_p.get(key)
        if hit is not None:
            return hit
        if l == 0:
            res = {(0, j, 0, 0, 0): Fraction(1)}
        else:
            kh, kw = self.kh, self.kw
            res = {}
            for (e, p, q, a, b), c in self.a_past_p(l - 1, j).items():
                k = (e, p, q + 1, a, b)
                res[k] = res.get(k, 0) + c
                if not p:
                    continue
                # A (A+)^p = (A+)^p A + p s e^{w A+} (A+)^(p-1)
                m = 0
                while a + 2 * m < kh:
                    cm = c * p / factorial(2 * m + 1)
                    n = 0
                    while b + n < kw:
                        k = (e + 2 * m + 1, p - 1 + n, q, a + 2 * m, b + n)
                        res[k] = res.get(k, 0) + cm / factorial(n)
                        n += 1
                    m += 1
            res = {k: v for k, v in res.items() if v}
        self._a_past_p[key] = res
        return res

    # N^k (A+)^p  ->  {(p', d, b): c} meaning w^b (A+)^p' N^d
    def n_past_p(self, k: int, p: int) -> dict:
        key = (k, p)
        hit = self._n_past_p.get(key)
        if hit is not None:
            return hit
        if k == 0:
            res = {(p, 0, 0): Fraction(1)}
        else:
            kw = self.kw
            res = {}
            for (q, d, b), c in self.n_past_p(k - 1, p).items():
                t = (q, d + 1, b)
                res[t] = res.get(t, 0) + c
                if not q:
                    continue
                # [N, (A+)^q] = q (A+)^(q-1) (e^{w A+} - 1)/w
                n = 1
                while b + n - 1 < kw:
                    t = (q - 1 + n, d, b + n - 1)
                    res[t] = res.get(t, 0) + c * q / factorial(n)
                    n += 1
            res = {k: v for k, v in res.items() if v}
        self._n_past_p[key] = res
        return res

    def __call__(self, m1: Monomial, m2: Monomial):
        key = (m1, m2)
        hit = self._products.get(key)
        if hit is not None:
            return hit
        i1, j1, k1, l1 = m1
        i2, j2, k2, l2 = m2
        acc: dict[tuple, Fraction] = {}
        for (e, p, q, a, b), c in self.a_past_p(l1, j2).items():
            for (p2, d, b2), c2 in self.n_past_p(k1, p).items():
                bb = b + b2
                if bb >= self.kw:
                    continue
                cc = c * c2
                # A^q N^k2 = (N + q)^k2 A^q
                for t in range(k2 + 1):
                    coeff = cc * comb(k2, t) * q ** (k2 - t)
                    if not coeff:
                        continue
                    mk = ((i1 + i2 + e, j1 + p2, d + t, q + l2), a, bb)
                    acc[mk] = acc.get(mk, 0) + coeff
        res = tuple((m, a, b, c) for (m, a, b), c in acc.items() if c)
        self._products[key] = res
        return res


# --------------------------------------------------------------------------
# elements
# --------------------------------------------------------------------------

def _coerce_scalar(c, truncation: Truncation) -> dict:
    """Scalar (int, Fraction, TruncatedSeries) as {(a, b): coeff}."""
    if isinstance(c, TruncatedSeries):
        if c.truncation != truncation:
            raise TruncationMismatch(f"{c.truncation} vs {truncation}")
        return dict(c.items())
    c = Fraction(c)
    return {(0, 0): c} if c else {}


class Element:
    """Shared machinery for PBW elements (arity 1) and tensor elements."""

    __slots__ = ("terms", "arity", "truncation")

    def __init__(self, terms: Mapping, arity: int, truncation: Truncation):
        kh, kw = truncation
        self.arity = arity
        self.truncation = (kh, kw)
        self.terms = {k: Fraction(v) for k, v in terms.items()
                      if v and k[0] < kh and k[1] < kw}

    @classmethod
    def _raw(cls, terms: dict, arity: int, truncation: Truncation) -> "Element":
        # terms already canonical: Fraction values, nonzero, within truncation
        obj = object.__new__(cls)
        obj.arity = arity
        obj.truncation = truncation
        obj.terms = terms
        return obj

    # construction helpers ------------------------------------------------
    def _new(self, terms) -> "Element":
        return _wrap(terms, self.arity, self.truncation)

    @property
    def table(self) -> MonomialTable:
        return MonomialTable(self.truncation)

    def _check(self, other: "Element"):
        if other.truncation != self.truncation:
            raise TruncationMismatch(f"{self.truncation} vs {other.truncation}")
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.one_like() * other
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        kh, kw = self.truncation
        sc = _coerce_scalar(c, self.truncation)
        out: dict = {}
        for k, v in self.terms.items():
            for (da, db), cc in sc.items():
                a, b = k[0] + da, k[1] + db
                if a < kh and b < kw:
                    nk = (a, b) + k[2:]
                    out[nk] = out.get(nk, 0) + v * cc
        return self._new(out)

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            terms = kernel.mul_terms(self.terms, other.terms, self.arity,
                                     self.truncation[0], self.truncation[1], self.table)
            return self._new(terms)
        if isinstance(other, (int, Fraction, TruncatedSeries)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, TruncatedSeries)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def commutator(self, other: "Element") -> "Element":
        return self * other - other * self

    # structure ---------------------------------------------------------------
    def one_like(self) -> "Element":
        return self._new({(0, 0) + (ONE,) * self.arity: Fraction(1)})

    def zero_like(self) -> "Element":
        return self._new({})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.arity == other.arity and self.truncation == other.truncation
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, self.truncation, frozenset(self.terms.items())))

    def constant_part(self) -> "Element":
        """The h^0 w^0 part."""
        return self._new({k: v for k, v in self.terms.items() if k[0] == 0 and k[1] == 0})

    def is_nilpotent(self) -> bool:
        """Every term carries a positive power of h or w."""
        return all(k[0] + k[1] > 0 for k in self.terms)

    def grouped(self) -> dict[tuple, TruncatedSeries]:
        """Map slot-monomial tuple -> TruncatedSeries coefficient."""
        acc: dict[tuple, dict] = {}
        for k, v in self.terms.items():
            acc.setdefault(k[2:], {})[(k[0], k[1])] = v
        return {m: TruncatedSeries(c, self.truncation) for m, c in acc.items()}

    def coefficient(self, *monos: Monomial) -> TruncatedSeries:
        if len(monos) != self.arity:
            raise ValueError(f"expected {self.arity} monomials")
        return TruncatedSeries({(k[0], k[1]): v for k, v in self.terms.items()
                                if k[2:] == tuple(monos)}, self.truncation)

    def truncate(self, truncation: Truncation) -> "Element":
        return _wrap(self.terms, self.arity, truncation)

    # power series in an element ---------------------------------------------
    def exp(self) -> "Element":
        if not self.is_nilpotent():
            raise ValueError("exp needs an argument carrying an explicit h or w factor")
        return _series_sum(self, lambda n: Fraction(1, factorial(n)), start=0)

    def inverse(self) -> "Element":
        """(1 + x)^-1 = sum (-x)^n for elements whose constant part is the unit."""
        rest = self - self.one_like()
        if not rest.is_nilpotent():
            raise ValueError("inverse needs an element of the form 1 + (h, w)-nilpotent")
        return _series_sum(rest, lambda n: Fraction((-1) ** n), start=0)

    def log1p(self) -> "Element":
        if not self.is_nilpotent():
            raise ValueError("log1p needs a nilpotent argument")
        return _series_sum(self, lambda n: Fraction((-1) ** (n + 1), n), start=1)

    def _param_series(self, param: str, coeff: Callable[[int], Fraction],
                      power: Callable[[int], int], start: int) -> "Element":
        """sum_n coeff(n) p^power(n) x^n, stopping once p^power(n) truncates."""
        kh, kw = self.truncation
        limit = kh if param == "h" else kw
        if param not in ("h", "w"):
            raise ValueError(f"unknown parameter {param!r}")
        total = self.zero_like()
        xn = self ** start
        n = start
        while power(n) < limit and xn:
            shift = (power(n), 0) if param == "h" else (0, power(n))
            total = total + xn.scale(TruncatedSeries.monomial(*shift, coeff(n),
                                                               truncation=self.truncation))
            xn = xn * self
            n += 1
        return total

    def sinh_over(self, param: str) -> "Element":
        """sinh(p x)/p."""
        return self._param_series(param, lambda n: Fraction(1, factorial(n)) if n % 2 else Fraction(0),
                                  lambda n: n - 1, start=1)

    def expm1_over(self, param: str) -> "Element":
        """(e^{p x} - 1)/p."""
        return self._param_series(param, lambda n: Fraction(1, factorial(n)),
                                  lambda n: n - 1, start=1)

    def log1p_over(self, param: str) -> "Element":
        """log(1 + p x)/p."""
        return self._param_series(param, lambda n: Fraction((-1) ** (n + 1), n),
                                  lambda n: n - 1, start=1)

    # display -----------------------------------------------------------------
    def __str__(self):
        return render_element(self)

    def __repr__(self):
        kind = type(self).__name__
        return f"{kind}({render_element(self)!r}, truncation={self.truncation})"


def _series_sum(x: Element, coeff: Callable[[int], Fraction], start: int) -> Element:
    total = x.zero_like()
    xn = x ** start
    n = start
    while xn:
        c = coeff(n)
        if c:
            total = total + xn * c
        xn = xn * x
        n += 1
    return total


class PBWElement(Element):
    """Element of U_{h,w}(H(4)) in PBW normal form."""

    __slots__ = ()

    def __init__(self, terms: Mapping = None, truncation: Truncation = (4, 4)):
        super().__init__(terms or {}, 1, truncation)

    @classmethod
    def generator(cls, name: str, truncation: Truncation) -> "PBWElement":
        return cls({(0, 0, _GEN_MONO[name]): 1}, truncation)

    @classmethod
    def one(cls, truncation: Truncation) -> "PBWElement":
        return cls({(0, 0, ONE): 1}, truncation)

    @classmethod
    def scalar(cls, c, truncation: Truncation) -> "PBWElement":
        return cls({(a, b, ONE): v for (a, b), v in _coerce_scalar(c, truncation).items()},
                   truncation)

    @classmethod
    def monomial(cls, mono: Monomial, coeff=1, truncation: Truncation = (4, 4)) -> "PBWElement":
        return cls({(a, b, tuple(mono)): v
                    for (a, b), v in _coerce_scalar(coeff, truncation).items()}, truncation)

    def counit(self) -> TruncatedSeries:
        return counit(self)


class TensorElement(Element):
    """Element of the 2- or 3-fold tensor power, normal-ordered slotwise."""

    __slots__ = ()

    def __init__(self, terms: Mapping = None, arity: int = 2, truncation: Truncation = (4, 4)):
        if arity < 2:
            raise ValueError("TensorElement needs arity >= 2")
        super().__init__(terms or {}, arity, truncation)

    @classmethod
    def one(cls, arity: int, truncation: Truncation) -> "TensorElement":
        return cls({(0, 0) + (ONE,) * arity: 1}, arity, truncation)


def _wrap(terms, arity: int, truncation: Truncation) -> Element:
    """Build from internally produced terms (exact values, in range); drops zeros."""
    terms = {k: v for k, v in terms.items() if v}
    return (PBWElement if arity == 1 else TensorElement)._raw(terms, arity, truncation)


# --------------------------------------------------------------------------
# basic operations
# --------------------------------------------------------------------------

def normal_order_mul(x: PBWElement, y: PBWElement) -> PBWElement:
    return x * y


def tensor_mul(x: TensorElement, y: TensorElement) -> TensorElement:
    return x * y


def tensor(*factors: Element) -> Element:
    """Tensor product of elements (arities add up)."""
    if not factors:
        raise ValueError("need at least one factor")
    trunc = factors[0].truncation
    kh, kw = trunc
    acc = {(0, 0): Fraction(1)}
    for f in factors:
        if f.truncation != trunc:
            raise TruncationMismatch(f"{f.truncation} vs {trunc}")
        nxt = {}
        for k1, v1 in acc.items():
            for k2, v2 in f.terms.items():
                a, b = k1[0] + k2[0], k1[1] + k2[1]
                if a < kh and b < kw:
                    key = (a, b) + k1[2:] + k2[2:]
                    nxt[key] = nxt.get(key, 0) + v1 * v2
        acc = nxt
    arity = sum(f.arity for f in factors)
    return _wrap(acc, arity, trunc)


def permute(x: Element, perm: Sequence[int]) -> Element:
    """Slot permutation: new slot i holds old slot perm[i]."""
    if sorted(perm) != list(range(x.arity)):
        raise ValueError(f"bad permutation {perm} for arity {x.arity}")
    return x._new({(k[0], k[1]) + tuple(k[2 + p] for p in perm): v for k, v in x.terms.items()})


def flip(x: TensorElement) -> TensorElement:
    return permute(x, (1, 0))


_EMBED = {"12": (0, 1), "13": (0, 2), "23": (1, 2)}


def embed(x: TensorElement, slots: str) -> TensorElement:
    """Place a 2-tensor into the given pair of slots of a 3-tensor."""
    if x.arity != 2:
        raise ValueError("embed needs an arity-2 tensor")
    slots = str(slots)
    if slots not in _EMBED:
        raise ValueError(f"slot pair must be one of 12, 13, 23; got {slots!r}")
    i, j = _EMBED[slots]
    out = {}
    for k, v in x.terms.items():
        ms = [ONE, ONE, ONE]
        ms[i], ms[j] = k[2], k[3]
        out[(k[0], k[1]) + tuple(ms)] = v
    return TensorElement(out, 3, x.truncation)


def multiply_slots(x: Element, first: int = 0, second: int = 1) -> Element:
    """Multiply slot ``first`` by slot ``second`` (in that order); arity drops by one.

    The product lands in the position of the lower-numbered slot.
    """
    kh, kw = x.truncation
    table = x.table
    lo, hi = sorted((first, second))
    out: dict = {}
    for k, v in x.terms.items():
        ms = k[2:]
        for m, da, db, c in table(ms[first], ms[second]):
            a, b = k[0] + da, k[1] + db
            if a < kh and b < kw:
                rest = list(ms)
                rest[lo] = m
                del rest[hi]
                key = (a, b) + tuple(rest)
                out[key] = out.get(key, 0) + v * c
    return _wrap(out, x.arity - 1, x.truncation)


def counit(x: PBWElement) -> TruncatedSeries:
    """epsilon kills every generator, so only the identity monomial survives."""
    return x.coefficient(ONE)


def apply_counit(x: Element, slot: int) -> Element:
    out = {}
    for k, v in x.terms.items():
        ms = k[2:]
        if ms[slot] == ONE:
            key = (k[0], k[1]) + ms[:slot] + ms[slot + 1:]
            out[key] = out.get(key, 0) + v
    if x.arity == 1:
        return TruncatedSeries({(k[0], k[1]): v for k, v in out.items()}, x.truncation)
    return _wrap(out, x.arity - 1, x.truncation)


def substitute_slot(x: Element, slot: int, image: Callable[[Monomial], Element],
                    image_arity: int) -> Element:
    """Replace the monomial in ``slot`` by ``image(m)``, an element of ``image_arity``."""
    kh, kw = x.truncation
    out: dict = {}
    for k, v in x.terms.items():
        ms = k[2:]
        img = image(ms[slot])
        for ik, iv in img.terms.items():
            a, b = k[0] + ik[0], k[1] + ik[1]
            if a < kh and b < kw:
                key = (a, b) + ms[:slot] + ik[2:] + ms[slot + 1:]
                out[key] = out.get(key, 0) + v * iv
    return _wrap(out, x.arity - 1 + image_arity, x.truncation)


# --------------------------------------------------------------------------
# Hopf structures
# --------------------------------------------------------------------------

class HopfStructure:
    """Coproduct and antipode given on generators, extended (anti)multiplicatively.

    The counit kills every generator for all structures used here.
    """

    def __init__(self, name: str, truncation: Truncation,
                 coproduct: Mapping[str, TensorElement], antipode: Mapping[str, PBWElement]):
        self.name = name
        self.truncation = truncation
        self._delta_gen = [coproduct[g] for g in GENERATORS]
        self._s_gen = [antipode[g] for g in GENERATORS]
        self._delta_pow: list[list[TensorElement]] = [[TensorElement.one(2, truncation)] for _ in GENERATORS]
        self._s_pow: list[list[PBWElement]] = [[PBWElement.one(truncation)] for _ in GENERATORS]
        self._delta_mono: dict[Monomial, TensorElement] = {}
        self._s_mono: dict[Monomial, PBWElement] = {}

    def __repr__(self):
        return f"HopfStructure({self.name!r}, truncation={self.truncation})"

    @staticmethod
    def _power(cache, gens, g: int, n: int):
        pw = cache[g]
        while len(pw) <= n:
            pw.append(pw[-1] * gens[g])
        return pw[n]

    def coproduct_monomial(self, m: Monomial) -> TensorElement:
        hit = self._delta_mono.get(m)
        if hit is None:
            hit = TensorElement.one(2, self.truncation)
            for g, n in enumerate(m):
                if n:
                    hit = hit * self._power(self._delta_pow, self._delta_gen, g, n)
            self._delta_mono[m] = hit
        return hit

    def antipode_monomial(self, m: Monomial) -> PBWElement:
        hit = self._s_mono.get(m)
        if hit is None:
            hit = PBWElement.one(self.truncation)
            for g in reversed(range(4)):
                if m[g]:
                    hit = hit * self._power(self._s_pow, self._s_gen, g, m[g])
            self._s_mono[m] = hit
        return hit

    def coproduct(self, x: Element, slot: int = 0) -> Element:
        self._require(x)
        return substitute_slot(x, slot, self.coproduct_monomial, 2)

    def antipode(self, x: Element, slot: int = 0) -> Element:
        self._require(x)
        return substitute_slot(x, slot, self.antipode_monomial, 1)

    def counit(self, x: Element, slot: int = 0):
        self._require(x)
        return apply_counit(x, slot)

    def opposite_coproduct(self, x: PBWElement) -> TensorElement:
        return flip(self.coproduct(x))

    def _require(self, x: Element):
        if x.truncation != self.truncation:
            raise TruncationMismatch(f"element at {x.truncation}, structure at {self.truncation}")


def coproduct(x: PBWElement, hopf: HopfStructure) -> TensorElement:
    return hopf.coproduct(x)


def antipode(x: PBWElement, hopf: HopfStructure) -> PBWElement:
    return hopf.antipode(x)


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def render_monomial(m: Monomial) -> str:
    parts = []
    for name, n in zip(GENERATORS, m):
        if n == 1:
            parts.append(name)
        elif n:
            parts.append(f"{name}^{n}")
    return " ".join(parts) if parts else "1"


def render_element(x: Element) -> str:
    from .series import render
    if not x.terms:
        return "0"
    out = []
    for ms, coeff in sorted(x.grouped().items()):
        mono = " (x) ".join(render_monomial(m) for m in ms)
        out.append(f"({render(dict(coeff.items()))}) * {mono}")
    return " + ".join(out)
