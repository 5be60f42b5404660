"""Bivariate truncated power series in the deformation parameters h and w.

A :class:`TruncatedSeries` stores exact rational coefficients of ``h^a w^b``
for ``a < K_h`` and ``b < K_w``. Everything in the symbolic layer uses it as
its scalar ring.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

Truncation = tuple[int, int]

DEFAULT_TRUNCATION: Truncation = (4, 4)


class TruncationMismatch(ValueError):
    pass


def _check_truncation(t: Truncation) -> Truncation:
    kh, kw = t
    if kh < 0 or kw < 0:
        raise ValueError(f"truncation orders must be non-negative, got {t}")
    return (int(kh), int(kw))


class TruncatedSeries:
    """Sparse exact series sum c_ab h^a w^b, truncated at (K_h, K_w).

    Values are immutable; arithmetic returns new objects.

    >>> t = (3, 3)
    >>> h, w = TruncatedSeries.h(t), TruncatedSeries.w(t)
    >>> str((1 + h) * (1 - h))
    '1 - h^2'
    """

    __slots__ = ("_coeffs", "_trunc", "_hash")

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None,
                 truncation: Truncation = DEFAULT_TRUNCATION):
        kh, kw = _check_truncation(truncation)
        clean: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for (a, b), c in coeffs.items():
                if a < 0 or b < 0:
                    raise ValueError(f"negative exponent {(a, b)}")
                if a >= kh or b >= kw:
                    continue
                c = Fraction(c)
                if c:
                    clean[(a, b)] = clean.get((a, b), 0) + c
            clean = {k: v for k, v in clean.items() if v}
        self._coeffs = clean
        self._trunc = (kh, kw)
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, truncation: Truncation = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls({(0, 0): c}, truncation)

    @classmethod
    def zero(cls, truncation: Truncation = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls({}, truncation)

    @classmethod
    def one(cls, truncation: Truncation = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls({(0, 0): 1}, truncation)

    @classmethod
    def h(cls, truncation: Truncation = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls({(1, 0): 1}, truncation)

    @classmethod
    def w(cls, truncation: Truncation = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls({(0, 1): 1}, truncation)

    @classmethod
    def monomial(cls, a: int, b: int, c=1,
                 truncation: Truncation = DEFAULT_TRUNCATION) -> "TruncatedSeries":
        return cls({(a, b): c}, truncation)

    # accessors ----------------------------------------------------------
    @property
    def truncation(self) -> Truncation:
        return self._trunc

    @property
    def coeffs(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def items(self) -> Iterable[tuple[tuple[int, int], Fraction]]:
        return self._coeffs.items()

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def constant(self) -> Fraction:
        return self._coeffs.get((0, 0), Fraction(0))

    def order(self) -> int:
        """Lowest total degree a + b carrying a nonzero coefficient."""
        if not self._coeffs:
            raise ValueError("the zero series has no order")
        return min(a + b for a, b in self._coeffs)

    def truncate(self, truncation: Truncation) -> "TruncatedSeries":
        return TruncatedSeries(self._coeffs, truncation)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other._trunc != self._trunc:
                raise TruncationMismatch(f"{self._trunc} vs {other._trunc}")
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.const(other, self._trunc)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries(out, self._trunc)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({k: -v for k, v in self._coeffs.items()}, self._trunc)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries({k: v * other for k, v in self._coeffs.items()}, self._trunc)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        kh, kw = self._trunc
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._coeffs.items():
            for (a2, b2), c2 in other._coeffs.items():
                a, b = a1 + a2, b1 + b2
                if a < kh and b < kw:
                    out[(a, b)] = out.get((a, b), 0) + c1 * c2
        return TruncatedSeries(out, self._trunc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = TruncatedSeries.one(self._trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        c0 = self.constant
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        x = (self - c0) / c0
        # 1/(c0 (1 + x)) = (1/c0) sum (-x)^n, finite since x is nilpotent
        total = TruncatedSeries.one(self._trunc)
        term = TruncatedSeries.one(self._trunc)
        while True:
            term = term * (-x)
            if not term:
                break
            total = total + term
        return total / c0

    def shift(self, da: int, db: int) -> "TruncatedSeries":
        """Multiply by h^da w^db."""
        return TruncatedSeries({(a + da, b + db): c for (a, b), c in self._coeffs.items()},
                               self._trunc)

    def evaluate(self, h: complex, w: complex) -> complex:
        return sum(complex(c) * h ** a * w ** b for (a, b), c in self._coeffs.items())

    # comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.const(other, self._trunc)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._trunc == other._trunc and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._trunc, frozenset(self._coeffs.items())))
        return self._hash

    # rendering ----------------------------------------------------------
    def __str__(self) -> str:
        return render(self._coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({render(self._coeffs)!r}, truncation={self._trunc})"


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(coeffs: Mapping[tuple[int, int], Fraction]) -> str:
    """Render as ``c * h^a * w^b + ...`` in graded order."""
    if not coeffs:
        return "0"
    parts = []
    for (a, b) in sorted(coeffs, key=lambda k: (k[0] + k[1], k[0], k[1])):
        c = Fraction(coeffs[(a, b)])
        factors = []
        if a:
            factors.append("h" if a == 1 else f"h^{a}")
        if b:
            factors.append("w" if b == 1 else f"w^{b}")
        mag = abs(c)
        if factors:
            body = " * ".join(factors if mag == 1 else [_fmt_rational(mag)] + factors)
        else:
            body = _fmt_rational(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def exp_series(x: TruncatedSeries) -> TruncatedSeries:
    """exp(x) for x with zero constant term; a finite sum under truncation."""
    if x.constant:
        raise ValueError("exp_series needs a series with zero constant term")
    total = TruncatedSeries.one(x.truncation)
    term = total
    n = 0
    while True:
        n += 1
        term = term * x / n
        if not term:
            return total
        total = total + term


def sinh_over(x: TruncatedSeries, param: str) -> TruncatedSeries:
    """sinh(p x)/p = sum p^(2n) x^(2n+1)/(2n+1)!  with p one of 'h', 'w'."""
    if param not in ("h", "w"):
        raise ValueError(f"param must be 'h' or 'w', got {param!r}")
    kh, kw = x.truncation
    total = TruncatedSeries.zero(x.truncation)
    x2 = x * x
    power = x
    n = 0
    while True:
        shift = (2 * n, 0) if param == "h" else (0, 2 * n)
        if shift[0] >= kh or shift[1] >= kw:
            return total
        total = total + power.shift(*shift) / factorial(2 * n + 1)
        power = power * x2
        n += 1
        if not power:
            return total
