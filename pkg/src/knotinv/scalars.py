"""Exact Gaussian rationals, approximate complex numbers, and their text forms.

A *scalar* is an ``int``, a ``Fraction``, a :class:`Gaussian` (exact) or a
Python ``complex``/``float`` (approximate).  Mixed arithmetic promotes exact to
approximate only when an approximate operand takes part.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import BranchUndefined, DescriptorSyntaxError, PoleAtZero

DEFAULT_TOL = 1e-9


class Gaussian:
    """An exact complex number ``re + im*I`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # construction helpers -------------------------------------------------
    @staticmethod
    def coerce(x) -> "Gaussian":
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int, Fraction)):
            return Gaussian(x, 0)
        raise TypeError(f"cannot treat {x!r} as an exact scalar")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (Gaussian, int, Fraction)):
            o = Gaussian.coerce(other)
            return Gaussian(self.re + o.re, self.im + o.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Gaussian(self.re * other, self.im * other)
        if isinstance(other, Gaussian):
            return Gaussian(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        if not isinstance(other, (Gaussian, int, Fraction)):
            return NotImplemented
        o = Gaussian.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return Gaussian(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        return Gaussian.coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Gaussian(1) / (self**-k)
        result = Gaussian(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        return f"Gaussian({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[int, Fraction, Gaussian, float, complex]

I = Gaussian(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Gaussian))


def normalize(x):
    """Collapse exact values to the simplest type (int, Fraction, Gaussian)."""
    if isinstance(x, Gaussian):
        if x.im == 0:
            x = x.re
        else:
            return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, float):
        return complex(x)
    return x


def is_zero(x, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def scalars_equal(x, y, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(complex(x) - complex(y)) <= tol * max(1.0, abs(complex(y)))


def _exact_sqrt_fraction(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_scalar(x):
    """Principal square root; exact for perfect-square positive rationals.

    Exact negative reals raise ``BranchUndefined``; the caller must pass an
    approximate value to opt into the principal branch there.
    """
    if is_exact(x):
        g = Gaussian.coerce(x)
        if g.im == 0:
            if g.re < 0:
                raise BranchUndefined(f"square root of exact negative real {format_scalar(x)}")
            r = _exact_sqrt_fraction(g.re)
            if r is not None:
                return normalize(r)
            return complex(math.sqrt(g.re))
        return cmath.sqrt(complex(g))
    return cmath.sqrt(complex(x))


def power(x, e: Fraction):
    """``x**e`` for half-integer ``e``; integer ``e`` stays exact on exact ``x``."""
    e = Fraction(e)
    if is_zero(x, 0.0) and e < 0:
        raise PoleAtZero("negative power of zero")
    if e.denominator == 1:
        k = int(e)
        if isinstance(x, Gaussian):
            return x**k
        if isinstance(x, (int, Fraction)):
            return Fraction(x) ** k
        return complex(x) ** k
    if e.denominator != 2:
        raise ValueError("only half-integer exponents are supported")
    root = sqrt_scalar(x)
    return power(root, Fraction(e.numerator))


# ---------------------------------------------------------------------------
# text forms
# ---------------------------------------------------------------------------


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``p/q``, ``q*I``, ``(p+q*I)``; approximate values by repr."""
    if isinstance(x, (int, Fraction)):
        return format_rational(x)
    if isinstance(x, Gaussian):
        if x.im == 0:
            return format_rational(x.re)
        im = "I" if x.im == 1 else ("-I" if x.im == -1 else f"{format_rational(x.im)}*I")
        if x.re == 0:
            return im
        sign = "-" if x.im < 0 else "+"
        mag = "I" if abs(x.im) == 1 else f"{format_rational(abs(x.im))}*I"
        return f"({format_rational(x.re)}{sign}{mag})"
    z = complex(x)
    if z.imag == 0:
        return repr(z.real)
    if z.real == 0:
        return f"{z.imag!r}*I"
    sign = "-" if z.imag < 0 else "+"
    return f"({z.real!r}{sign}{abs(z.imag)!r}*I)"


def scalar_to_json(x):
    """JSON-friendly form: exact values as canonical strings, approximate as [re, im]."""
    if is_exact(x):
        return format_scalar(normalize(x))
    z = complex(x)
    return [z.real, z.imag]


_NAMED = {
    "I": I,
    "sqrt2": complex(math.sqrt(2)),
    "sqrt3": complex(math.sqrt(3)),
    "sqrt5": complex(math.sqrt(5)),
    "sqrt-1": I,
    "sqrt-3": complex(0, math.sqrt(3)),
}


class ScalarParser:
    """Recursive-descent parser for scalar expressions.

    Grammar::

        expr   := ['-'] term (('+' | '-') term)*
        term   := unary (('*' | '/') unary)*
        unary  := '-' unary | atom
        atom   := INTEGER | DECIMAL | 'I' | 'sqrtN' | 'sqrt-N' | '(' expr ')'

    Integers and ``I`` are exact; decimals and ``sqrt`` constants are
    approximate (``sqrt-1`` is the exact ``I``).
    """

    def __init__(self, text: str, pos: int = 0, stop: str = ""):
        self.text = text
        self.pos = pos
        self.stop = stop

    def error(self, msg: str):
        raise DescriptorSyntaxError(msg, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_expr(self):
        value = self.parse_term()
        while self.peek() in ("+", "-") and self.peek() != "":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self):
        value = self.parse_unary()
        while self.peek() in ("*", "/") and self.peek() != "":
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.parse_unary()
            if op == "*":
                value = value * rhs
            else:
                if is_zero(rhs, 0.0):
                    self.error("division by zero")
                value = Fraction(value) / Fraction(rhs) if isinstance(value, int) and isinstance(rhs, int) else value / rhs
        return value

    def parse_unary(self):
        if self.peek() == "-":
            self.pos += 1
            return -self.parse_unary()
        return self.parse_atom()

    def parse_atom(self):
        c = self.peek()
        if c == "":
            self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            value = self.parse_expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if c.isdigit() or c == ".":
            start = self.pos
            while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] in ".eE"):
                if self.text[self.pos] in "eE":
                    nxt = self.text[self.pos + 1 : self.pos + 2]
                    if not (nxt.isdigit() or nxt in "+-"):
                        break
                    self.pos += 1
                self.pos += 1
            token = self.text[start : self.pos]
            if any(ch in token for ch in ".eE"):
                try:
                    return complex(float(token))
                except ValueError:
                    self.error(f"bad number {token!r}")
            return int(token)
        for name in sorted(_NAMED, key=len, reverse=True):
            if self.text.startswith(name, self.pos):
                end = self.pos + len(name)
                if end < len(self.text) and (self.text[end].isalnum() or self.text[end] == "_"):
                    continue
                self.pos = end
                return _NAMED[name]
        self.error(f"unexpected character {c!r}")


def parse_scalar(text: str):
    """Parse a complete scalar expression (see :class:`ScalarParser`)."""
    p = ScalarParser(text)
    value = p.parse_expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("trailing input")
    return normalize(value)
