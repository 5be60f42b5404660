"""Prefix expression language for building algebra elements.

Grammar::

    expr   := atom | "(" op expr* ")"
    atom   := E | Ap | N | A | h | w | INT | INT/INT | bound name

    (+ x y ...)          sum
    (- x)  (- x y ...)   negation / difference
    (* x y ...)          product, left to right
    (^ x n)              power, n a non-negative integer literal
    (tensor x y ...)     tensor product
    (exp x)              exponential; x must carry a factor h or w in every term
    (log1p x)            log(1 + x); same requirement
    (inv x)              inverse of an element 1 + (nilpotent)
    (sinh_over p x)      sinh(p x)/p      p in {h, w}
    (expm1_over p x)     (e^{p x} - 1)/p
    (log1p_over p x)     log(1 + p x)/p

Scalars (arity-1 elements with only the unit monomial) are promoted to any
tensor arity, so ``(* 2 h (tensor N Ap))`` is valid.

>>> x = build_element("(exp (* w (tensor N Ap)))", (1, 2))
>>> str(x)
'(1) * 1 (x) 1 + (w) * N (x) Ap'
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Union

from .pbw import ONE, Element, PBWElement, TensorElement, tensor
from .series import Truncation

Tree = Union[str, list]

_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


class ExprError(ValueError):
    pass


def parse(text: str) -> Tree:
    """Parse prefix text into nested lists of atom strings."""
    pos = 0
    stack: list[list] = [[]]
    starts: list[int] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ExprError(f"unexpected character at position {pos}")
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1):
            stack.append([])
            starts.append(start)
        elif m.group(2):
            if len(stack) == 1:
                raise ExprError(f"unbalanced ')' at position {start}")
            node = stack.pop()
            starts.pop()
            if not node:
                raise ExprError(f"empty expression at position {start}")
            stack[-1].append(node)
        else:
            stack[-1].append(m.group(3))
        pos = m.end()
    if len(stack) != 1:
        raise ExprError(f"unclosed '(' opened at position {starts[-1]}")
    if len(stack[0]) != 1:
        raise ExprError(f"expected one expression, found {len(stack[0])}")
    return stack[0][0]


def _is_scalar(x: Element) -> bool:
    return x.arity == 1 and all(k[2] == ONE for k in x.terms)


def _promote(x: Element, arity: int) -> Element:
    if x.arity == arity:
        return x
    if _is_scalar(x):
        return TensorElement({(k[0], k[1]) + (ONE,) * arity: v for k, v in x.terms.items()},
                             arity, x.truncation)
    raise ExprError(f"cannot combine arity {x.arity} with arity {arity}")


def _align(*xs: Element) -> list[Element]:
    arity = max(x.arity for x in xs)
    return [_promote(x, arity) for x in xs]


def _param(node: Tree) -> str:
    if node not in ("h", "w"):
        raise ExprError(f"expected parameter h or w, got {node!r}")
    return node


class Builder:
    def __init__(self, truncation: Truncation, bindings: Mapping[str, Element] | None = None):
        self.truncation = truncation
        self.bindings = dict(bindings or {})

    def atom(self, tok: str) -> Element:
        t = self.truncation
        if tok in self.bindings:
            return self.bindings[tok]
        if tok in ("E", "Ap", "N", "A"):
            return PBWElement.generator(tok, t)
        if tok == "h":
            return PBWElement({(1, 0, ONE): 1}, t)
        if tok == "w":
            return PBWElement({(0, 1, ONE): 1}, t)
        if _RATIONAL.match(tok):
            return PBWElement.scalar(Fraction(tok), t)
        raise ExprError(f"unknown symbol {tok!r}")

    def build(self, node: Tree) -> Element:
        if isinstance(node, str):
            return self.atom(node)
        op, *args = node
        if not isinstance(op, str):
            raise ExprError("operator position must hold a symbol")
        method = _OPS.get(op)
        if method is None:
            raise ExprError(f"unknown operator {op!r}")
        return method(self, args)

    # operators -----------------------------------------------------------
    def _sum(self, args):
        xs = _align(*[self.build(a) for a in args])
        total = xs[0]
        for x in xs[1:]:
            total = total + x
        return total

    def _minus(self, args):
        xs = _align(*[self.build(a) for a in args])
        if len(xs) == 1:
            return -xs[0]
        total = xs[0]
        for x in xs[1:]:
            total = total - x
        return total

    def _prod(self, args):
        xs = _align(*[self.build(a) for a in args])
        total = xs[0]
        for x in xs[1:]:
            total = total * x
        return total

    def _pow(self, args):
        if len(args) != 2 or not isinstance(args[1], str) or not args[1].isdigit():
            raise ExprError("(^ x n) needs a non-negative integer literal n")
        return self.build(args[0]) ** int(args[1])

    def _tensor(self, args):
        if len(args) < 2:
            raise ExprError("tensor needs at least two factors")
        return tensor(*[self.build(a) for a in args])

    def _unary(self, args, name):
        if len(args) != 1:
            raise ExprError(f"{name} takes one argument")
        return self.build(args[0])

    def _exp(self, args):
        x = self._unary(args, "exp")
        if not x.is_nilpotent():
            raise ExprError("exp argument must carry an explicit factor of h or w")
        return x.exp()

    def _log1p(self, args):
        x = self._unary(args, "log1p")
        if not x.is_nilpotent():
            raise ExprError("log1p argument must carry an explicit factor of h or w")
        return x.log1p()

    def _inv(self, args):
        x = self._unary(args, "inv")
        try:
            return x.inverse()
        except ValueError as exc:
            raise ExprError(str(exc)) from None

    def _param_op(self, args, name):
        if len(args) != 2:
            raise ExprError(f"{name} takes a parameter and an argument")
        p = _param(args[0])
        return getattr(self.build(args[1]), name)(p)


_OPS = {
    "+": Builder._sum,
    "-": Builder._minus,
    "*": Builder._prod,
    "^": Builder._pow,
    "tensor": Builder._tensor,
    "exp": Builder._exp,
    "log1p": Builder._log1p,
    "inv": Builder._inv,
    "sinh_over": lambda b, a: b._param_op(a, "sinh_over"),
    "expm1_over": lambda b, a: b._param_op(a, "expm1_over"),
    "log1p_over": lambda b, a: b._param_op(a, "log1p_over"),
}


def build_element(expr: Tree, truncation: Truncation,
                  bindings: Mapping[str, Element] | None = None) -> Element:
    """Build a fully expanded, normal-ordered element from text or a parsed tree."""
    tree = parse(expr) if isinstance(expr, str) else expr
    return Builder(truncation, bindings).build(tree)
