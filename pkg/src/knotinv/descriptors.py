"""Invariant descriptors: a small AST naming numerical knot invariants.

Text grammar (whitespace is free between tokens)::

    expr    := term ('+' term)*
    term    := unary ('*' unary)*
    unary   := '-' unary | atom
    atom    := leaf | 'scale(' SCALAR ',' expr ')' | 'const(' SCALAR ')'
             | INTEGER | 'I' | '(' expr ')'
    leaf    := 'a' DIGITS | 'conway_coeff(' k ')'
             | 'jones_deriv(' n ';' t0 ')' | 'alexander_deriv(' n ';' t0 ')'
             | 'conway_deriv(' n ';' z0 ')' | 'q_deriv(' n ';' x0 ')'
             | 'homfly_deriv(' m ',' n ';' a0 ',' z0 ')'
             | 'homfly_coeff_deriv(' 2k ',' l ';' a0 ')'
             | 'kauffman_coeff_deriv(' k ',' l ';' a0 ')'

``SCALAR`` is the expression language of :func:`knotinv.scalars.parse_scalar`
(``p/q``, ``I``, decimals, ``sqrt2`` ...).  ``str(d)`` re-parses to ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DescriptorSyntaxError
from .scalars import ScalarParser, format_scalar, normalize


def _fmt(c) -> str:
    return format_scalar(normalize(c))


class Descriptor:
    """Base class; subclasses are frozen dataclasses."""

    #: which two-variable polynomial the node needs: "homfly", "kauffman" or None
    source: str | None = None

    def children(self) -> tuple["Descriptor", ...]:
        return ()

    def leaves(self) -> list["Descriptor"]:
        kids = self.children()
        if not kids:
            return [self]
        out = []
        for k in kids:
            out.extend(k.leaves())
        return out

    def sources(self) -> set[str]:
        return {leaf.source for leaf in self.leaves() if leaf.source}

    def __add__(self, other: "Descriptor") -> "Descriptor":
        return Sum((self, other))

    def __mul__(self, other: "Descriptor") -> "Descriptor":
        return Product((self, other))

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class Const(Descriptor):
    value: object = 1

    def text(self) -> str:
        v = normalize(self.value)
        if isinstance(v, int) and v >= 0:
            return str(v)
        return f"const({_fmt(v)})"


@dataclass(frozen=True, eq=True)
class ConwayCoeff(Descriptor):
    k: int = 2
    source = "homfly"

    def text(self) -> str:
        return f"a{self.k}" if self.k in (2, 4) else f"conway_coeff({self.k})"


@dataclass(frozen=True, eq=True)
class JonesDeriv(Descriptor):
    n: int = 0
    t0: object = 1
    source = "homfly"

    def text(self) -> str:
        return f"jones_deriv({self.n}; {_fmt(self.t0)})"


@dataclass(frozen=True, eq=True)
class AlexanderDeriv(Descriptor):
    n: int = 0
    t0: object = 1
    source = "homfly"

    def text(self) -> str:
        return f"alexander_deriv({self.n}; {_fmt(self.t0)})"


@dataclass(frozen=True, eq=True)
class ConwayDeriv(Descriptor):
    n: int = 0
    z0: object = 0
    source = "homfly"

    def text(self) -> str:
        return f"conway_deriv({self.n}; {_fmt(self.z0)})"


@dataclass(frozen=True, eq=True)
class QDeriv(Descriptor):
    n: int = 0
    x0: object = 1
    source = "kauffman"

    def text(self) -> str:
        return f"q_deriv({self.n}; {_fmt(self.x0)})"


@dataclass(frozen=True, eq=True)
class HomflyDeriv(Descriptor):
    m: int = 0
    n: int = 0
    a0: object = 1
    z0: object = 0
    source = "homfly"

    def text(self) -> str:
        return f"homfly_deriv({self.m},{self.n}; {_fmt(self.a0)},{_fmt(self.z0)})"


@dataclass(frozen=True, eq=True)
class HomflyCoeffDeriv(Descriptor):
    """``P_{2k}^{(l)}(K; a0)``; ``two_k`` is the z-exponent itself."""

    two_k: int = 0
    l: int = 0
    a0: object = 1
    source = "homfly"

    def text(self) -> str:
        return f"homfly_coeff_deriv({self.two_k},{self.l}; {_fmt(self.a0)})"


@dataclass(frozen=True, eq=True)
class KauffmanCoeffDeriv(Descriptor):
    """``F_k^{(l)}(K; a0)``."""

    k: int = 0
    l: int = 0
    a0: object = 1
    source = "kauffman"

    def text(self) -> str:
        return f"kauffman_coeff_deriv({self.k},{self.l}; {_fmt(self.a0)})"


@dataclass(frozen=True, eq=True)
class Sum(Descriptor):
    terms: tuple = ()

    def children(self):
        return tuple(self.terms)

    def text(self) -> str:
        return " + ".join(f"({t.text()})" if isinstance(t, Sum) else t.text() for t in self.terms)


@dataclass(frozen=True, eq=True)
class Product(Descriptor):
    factors: tuple = ()

    def children(self):
        return tuple(self.factors)

    def text(self) -> str:
        return " * ".join(f"({f.text()})" if isinstance(f, (Sum, Product)) else f.text() for f in self.factors)


@dataclass(frozen=True, eq=True)
class Scale(Descriptor):
    c: object = 1
    inner: Descriptor = Const(1)

    def children(self):
        return (self.inner,)

    def text(self) -> str:
        return f"scale({_fmt(self.c)}, {self.inner.text()})"


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

# name -> (number of integer arguments, number of scalar arguments, constructor)
_LEAVES: dict[str, tuple[int, int, Callable]] = {
    "conway_coeff": (1, 0, ConwayCoeff),
    "jones_deriv": (1, 1, JonesDeriv),
    "alexander_deriv": (1, 1, AlexanderDeriv),
    "conway_deriv": (1, 1, ConwayDeriv),
    "q_deriv": (1, 1, QDeriv),
    "homfly_deriv": (2, 2, HomflyDeriv),
    "homfly_coeff_deriv": (2, 1, HomflyCoeffDeriv),
    "kauffman_coeff_deriv": (2, 1, KauffmanCoeffDeriv),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None):
        raise DescriptorSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str, what: str | None = None):
        if self.peek() != ch:
            found = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            self.error(f"expected {what or repr(ch)}, found {found}")
        self.pos += 1

    def ident(self) -> str:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected a nonnegative integer")
        return int(self.text[start : self.pos])

    def scalar(self):
        p = ScalarParser(self.text, self.pos)
        value = p.parse_expr()
        self.pos = p.pos
        return normalize(value)

    # grammar ------------------------------------------------------------
    def expr(self) -> Descriptor:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Descriptor:
        factors = [self.unary()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def unary(self) -> Descriptor:
        if self.peek() == "-":
            self.pos += 1
            return Scale(-1, self.unary())
        return self.atom()

    def atom(self) -> Descriptor:
        c = self.peek()
        if c == "":
            self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if c.isdigit():
            return Const(self.integer())
        start = self.pos
        name = self.ident()
        if not name:
            self.error(f"unexpected character {c!r}")
        if name == "I":
            return Const(normalize(ScalarParser("I").parse_expr()))
        if name[0] == "a" and name[1:].isdigit():
            return ConwayCoeff(int(name[1:]))
        if name == "const":
            self.expect("(")
            value = self.scalar()
            self.expect(")")
            return Const(value)
        if name == "scale":
            self.expect("(")
            coeff = self.scalar()
            self.expect(",", "','")
            inner = self.expr()
            self.expect(")")
            return Scale(coeff, inner)
        if name not in _LEAVES:
            self.error(f"unknown invariant {name!r}", start)
        n_int, n_scalar, ctor = _LEAVES[name]
        self.expect("(")
        ints = [self.integer()]
        for _ in range(n_int - 1):
            self.expect(",", "','")
            ints.append(self.integer())
        scalars = []
        if n_scalar:
            self.expect(";", "';'")
            scalars.append(self.scalar())
            for _ in range(n_scalar - 1):
                self.expect(",", "','")
                scalars.append(self.scalar())
        self.expect(")")
        return ctor(*ints, *scalars)


def parse_descriptor(text: str) -> Descriptor:
    """Parse descriptor text; errors carry the 0-based offending position."""
    p = _Parser(text)
    d = p.expr()
    if p.peek() != "":
        p.error(f"unexpected {p.text[p.pos]!r}")
    return d


def descriptor(x) -> Descriptor:
    """Accept a descriptor or its text form."""
    return x if isinstance(x, Descriptor) else parse_descriptor(x)
