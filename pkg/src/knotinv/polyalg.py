"""Exact Laurent polynomials over half-integer exponents, plus interpolation.

One class, :class:`LaurentPoly`, covers the one-variable, two-variable and
multi-variable cases; variables are named and ordered.  Exponents live on the
lattice ``(1/2)Z`` and are stored doubled so that keys stay plain integers.
Coefficients are scalars from :mod:`knotinv.scalars`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import IncompleteGrid, PoleAtZero, TooFewValues, UnknownVariable
from .scalars import (
    DEFAULT_TOL,
    format_scalar,
    is_exact,
    is_zero,
    normalize,
    power,
)


def _half(e) -> int:
    """Doubled integer form of a half-integer exponent."""
    e2 = Fraction(e) * 2
    if e2.denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return int(e2)


def _format_exponent(e2: int) -> str:
    if e2 % 2 == 0:
        return str(e2 // 2)
    return f"({e2}/2)"


class LaurentPoly:
    """A finite sum ``sum c * prod(v_i ** e_i)`` with half-integer ``e_i``.

    Zero coefficients are never stored, so equality is structural once the
    variable lists are aligned.
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        data: dict[tuple[int, ...], object] = {}
        for exps, c in (terms or {}).items():
            if isinstance(exps, (int, Fraction)):
                exps = (exps,)
            if len(exps) != len(self.variables):
                raise ValueError("exponent tuple length does not match variables")
            key = tuple(_half(e) for e in exps)
            data[key] = data.get(key, 0) + c
        self._terms = {k: normalize(c) for k, c in data.items() if not _is_zero_coeff(c)}

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p._terms = terms
        return p

    # constructors ---------------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "LaurentPoly":
        return cls._raw((name,), {(2,): 1})

    @classmethod
    def const(cls, c, variables: Sequence[str] = ()) -> "LaurentPoly":
        variables = tuple(variables)
        if _is_zero_coeff(c):
            return cls._raw(variables, {})
        return cls._raw(variables, {(0,) * len(variables): normalize(c)})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence, c=1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): c})

    # inspection -----------------------------------------------------------
    def terms(self) -> dict[tuple[Fraction, ...], object]:
        """Exponent tuples (as Fractions) to coefficients."""
        return {tuple(Fraction(e, 2) for e in k): c for k, c in self._terms.items()}

    def sorted_terms(self) -> list[tuple[tuple[Fraction, ...], object]]:
        return sorted(self.terms().items(), key=lambda kv: kv[0])

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(k) for k in self._terms)

    def constant_value(self):
        """The value of a constant polynomial (0 for the zero polynomial)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), 0)

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._terms.values())

    def _index(self, var: str) -> int:
        try:
            return self.variables.index(var)
        except ValueError:
            raise UnknownVariable(f"unknown variable {var!r}") from None

    def exponents(self, var: str) -> list[Fraction]:
        if var not in self.variables:
            return [Fraction(0)] if self._terms else []
        i = self._index(var)
        return sorted({Fraction(k[i], 2) for k in self._terms})

    def max_degree(self, var: str) -> Fraction:
        exps = self.exponents(var)
        if not exps:
            raise ValueError("zero polynomial has no degree")
        return exps[-1]

    def min_degree(self, var: str) -> Fraction:
        exps = self.exponents(var)
        if not exps:
            raise ValueError("zero polynomial has no degree")
        return exps[0]

    def in_lattice(self, var: str, step) -> bool:
        """True when every exponent of ``var`` is a multiple of ``step``."""
        if var not in self.variables:
            return True
        i = self._index(var)
        s2 = _half(step)
        return all(k[i] % s2 == 0 for k in self._terms)

    def has_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def coefficient(self, var: str, e) -> "LaurentPoly":
        """Coefficient of ``var**e`` as a polynomial in the remaining variables."""
        rest = tuple(v for v in self.variables if v != var)
        if var not in self.variables:
            return self if e == 0 else LaurentPoly._raw(self.variables, {})
        i = self._index(var)
        e2 = _half(e)
        out = {k[:i] + k[i + 1 :]: c for k, c in self._terms.items() if k[i] == e2}
        return LaurentPoly._raw(rest, out)

    def drop_unused(self) -> "LaurentPoly":
        used = [i for i in range(len(self.variables)) if any(k[i] for k in self._terms)]
        return LaurentPoly._raw(
            tuple(self.variables[i] for i in used),
            {tuple(k[i] for i in used): c for k, c in self._terms.items()},
        )

    # alignment ------------------------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-express over a superset ``variables`` of the used variables."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = []
        for i, v in enumerate(self.variables):
            if v in variables:
                pos.append(variables.index(v))
            elif any(k[i] for k in self._terms):
                raise UnknownVariable(f"variable {v!r} is in use")
            else:
                pos.append(None)
        n = len(variables)
        out = {}
        for k, c in self._terms.items():
            nk = [0] * n
            for e, p in zip(k, pos):
                if p is not None:
                    nk[p] = e
            out[tuple(nk)] = c
        return LaurentPoly._raw(variables, out)

    def _align(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        if self.variables == other.variables:
            return self, other
        variables = self.variables + tuple(v for v in other.variables if v not in self.variables)
        return self.with_variables(variables), other.with_variables(variables)

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly.const(x)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other, self.variables)
        a, b = self._align(other)
        out = dict(a._terms)
        for k, c in b._terms.items():
            s = out.get(k, 0) + c
            if _is_zero_coeff(s):
                out.pop(k, None)
            else:
                out[k] = s
        return LaurentPoly._raw(a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if _is_zero_coeff(other):
                return LaurentPoly._raw(self.variables, {})
            return LaurentPoly._raw(self.variables, {k: normalize(c * other) for k, c in self._terms.items()})
        a, b = self._align(other)
        out: dict = {}
        for k1, c1 in a._terms.items():
            for k2, c2 in b._terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw(a.variables, {k: normalize(c) for k, c in out.items() if not _is_zero_coeff(c)})

    __rmul__ = __mul__

    def __pow__(self, e):
        e = Fraction(e)
        if e.denominator == 1 and e >= 0:
            k = int(e)
            result = LaurentPoly.const(1, self.variables)
            base = self
            while k:
                if k & 1:
                    result = result * base
                base = base * base
                k >>= 1
            return result
        if len(self._terms) != 1:
            raise ValueError("negative or fractional powers need a monomial")
        (key, c), = self._terms.items()
        new = [Fraction(x, 2) * e * 2 for x in key]
        if any(n.denominator != 1 for n in new):
            raise ValueError("power leaves the half-integer lattice")
        new_key = tuple(int(n) for n in new)
        return LaurentPoly._raw(self.variables, {new_key: normalize(power(c, e))})

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.const(other)
            except Exception:
                return NotImplemented
        try:
            a, b = self.drop_unused(), other.drop_unused()
            a, b = a._align(b)
        except UnknownVariable:
            return False
        return a._terms == b._terms

    __hash__ = None

    # calculus -------------------------------------------------------------
    def derivative(self, var: str, order: int = 1) -> "LaurentPoly":
        return derivative(self, var, order)

    def evaluate(self, point: Mapping[str, object]):
        return evaluate(self, point)

    def substitute(self, rules: Mapping[str, object]) -> "LaurentPoly":
        return substitute(self, rules)

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.variables!r}, {to_text(self)!r})"


def _is_zero_coeff(c) -> bool:
    if is_exact(c):
        return c == 0
    return c == 0


def to_text(p: LaurentPoly) -> str:
    """Canonical text form: terms by ascending exponent tuple, ``c*a^p*z^q``."""
    if p.is_zero():
        return "0"
    parts = []
    for key in sorted(p._terms):
        c = p._terms[key]
        factors = [format_scalar(c)]
        for v, e2 in zip(p.variables, key):
            if e2:
                factors.append(f"{v}^{_format_exponent(e2)}")
        parts.append("*".join(factors))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def derivative(p: LaurentPoly, var: str, order: int = 1) -> LaurentPoly:
    """Formal ``order``-th partial derivative in ``var``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if var not in p.variables:
        if p.is_constant() and order == 0:
            return p
        if p.is_constant():
            return LaurentPoly._raw(p.variables, {})
        raise UnknownVariable(f"unknown variable {var!r}")
    i = p.variables.index(var)
    terms = p._terms
    for _ in range(order):
        out = {}
        for k, c in terms.items():
            if k[i] == 0:
                continue
            nk = k[:i] + (k[i] - 2,) + k[i + 1 :]
            out[nk] = normalize(c * Fraction(k[i], 2))
        terms = out
    return LaurentPoly._raw(p.variables, terms)


def evaluate(p: LaurentPoly, point: Mapping[str, object]):
    """Value of ``p`` at ``point`` (a mapping variable -> scalar).

    Exact when the point and coefficients are exact and the exponents used are
    integral (or the square roots happen to be rational).
    """
    cache: dict[tuple[int, int], object] = {}
    total = 0
    for key, c in p._terms.items():
        term = c
        for i, e2 in enumerate(key):
            if not e2:
                continue
            v = p.variables[i]
            if v not in point:
                raise UnknownVariable(f"no value for variable {v!r}")
            pw = cache.get((i, e2))
            if pw is None:
                x = point[v]
                if e2 < 0 and is_zero(x, 0.0):
                    raise PoleAtZero(f"{v}=0 is a pole")
                pw = power(x, Fraction(e2, 2))
                cache[(i, e2)] = pw
            term = term * pw
        total = total + term
    return normalize(total)


def substitute(p: LaurentPoly, rules: Mapping[str, object]) -> LaurentPoly:
    """Replace variables by polynomials (or scalars); unlisted variables stay."""
    images = []
    for v in p.variables:
        r = rules.get(v, LaurentPoly.var(v))
        images.append(r if isinstance(r, LaurentPoly) else LaurentPoly.const(r))
    powers: dict[tuple[int, int], LaurentPoly] = {}
    result = LaurentPoly.const(0)
    for key, c in p._terms.items():
        term = LaurentPoly.const(c)
        for i, e2 in enumerate(key):
            if not e2:
                continue
            pw = powers.get((i, e2))
            if pw is None:
                pw = images[i] ** Fraction(e2, 2)
                powers[(i, e2)] = pw
            term = term * pw
        result = result + term
    return result


def series_compose(f: LaurentPoly, g: Sequence, N: int) -> list:
    """Taylor coefficients of ``f(g(x))`` at the expansion point of ``g``.

    ``g`` holds Taylor coefficients ``[g(a), g'(a), g''(a)/2!, ...]``; the
    result has ``N + 1`` entries.
    """
    if len(f.variables) != 1:
        f = f.drop_unused()
    if len(f.variables) > 1:
        raise ValueError("series_compose needs a one-variable polynomial")
    var = f.variables[0] if f.variables else "x"
    g = list(g) + [0] * max(0, N + 1 - len(g))
    g0 = g[0]
    h = [0] + list(g[1 : N + 1])
    out = [0] * (N + 1)
    hk = [1] + [0] * N  # coefficients of h**k, truncated
    for k in range(N + 1):
        if k > 0:
            nxt = [0] * (N + 1)
            for i, a in enumerate(hk):
                if _is_zero_coeff(a):
                    continue
                for j in range(1, N + 1 - i):
                    if not _is_zero_coeff(h[j]):
                        nxt[i + j] = nxt[i + j] + a * h[j]
            hk = nxt
        if all(_is_zero_coeff(a) for a in hk):
            continue
        dk = derivative(f, var, k) if f.variables else (f if k == 0 else LaurentPoly.const(0))
        fk = evaluate(dk, {var: g0})
        if _is_zero_coeff(fk):
            continue
        fk = fk / factorial(k) if not is_exact(fk) else Fraction(1, factorial(k)) * fk
        for i, a in enumerate(hk):
            if not _is_zero_coeff(a):
                out[i] = out[i] + fk * a
    return [normalize(c) for c in out]


# ---------------------------------------------------------------------------
# finite differences and interpolation
# ---------------------------------------------------------------------------


def difference_table(values: Sequence) -> list[list]:
    """Rows of forward differences; row ``k`` holds ``Δ^k`` of ``values``."""
    rows = [list(values)]
    while len(rows[-1]) > 1:
        prev = rows[-1]
        rows.append([normalize(prev[i + 1] - prev[i]) for i in range(len(prev) - 1)])
    return rows


@lru_cache(maxsize=None)
def _binomial_coeffs(k: int, shift: int) -> tuple:
    """Power-basis coefficients of ``C(x - shift, k)``."""
    coeffs = [Fraction(1)]
    for j in range(k):
        # multiply by (x - shift - j)
        c0 = -(shift + j)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            nxt[i] += a * c0
            nxt[i + 1] += a
        coeffs = nxt
    f = factorial(k)
    return tuple(c / f for c in coeffs)


def interp_grid(values: Sequence, var: str = "x", start: int = 0) -> LaurentPoly:
    """Unique polynomial of degree < len(values) through ``(start + i, values[i])``.

    Built in Newton forward form from the difference table, then expanded.
    """
    if not values:
        raise IncompleteGrid("no values to interpolate")
    if any(v is None for v in values):
        raise IncompleteGrid("grid has missing values")
    leading = [row[0] for row in difference_table(values)]
    coeffs = [0] * len(values)
    for k, d in enumerate(leading):
        if _is_zero_coeff(d):
            continue
        for i, b in enumerate(_binomial_coeffs(k, start)):
            if b:
                coeffs[i] = coeffs[i] + d * b
    return LaurentPoly((var,), {(i,): c for i, c in enumerate(coeffs)})


def interp_multigrid(values, n: int, variables: Sequence[str] | None = None, dims: int | None = None) -> LaurentPoly:
    """Tensor-grid interpolation over ``{0..n}^dims``.

    ``values`` is either a mapping from index tuples to scalars or a nested
    list of depth ``dims``.  Differences are taken one axis at a time, then the
    product Newton basis is expanded into monomials.
    """
    grid = _grid_from(values, dims)
    if dims is None:
        dims = len(next(iter(grid))) if grid else 1
    if variables is None:
        variables = tuple(f"x_{i}" for i in range(dims))
    variables = tuple(variables)
    if len(variables) != dims:
        raise ValueError("variables must match grid dimension")
    indices = list(itertools.product(range(n + 1), repeat=dims))
    missing = [ix for ix in indices if ix not in grid]
    if missing:
        raise IncompleteGrid(f"grid is missing {len(missing)} points, e.g. {missing[0]}")
    coef = {ix: grid[ix] for ix in indices}
    for axis in range(dims):
        lines = {}
        for ix in indices:
            lines.setdefault(ix[:axis] + ix[axis + 1 :], []).append(ix)
        for line in lines.values():
            line.sort(key=lambda t: t[axis])
            row = [coef[ix] for ix in line]
            leading = [r[0] for r in difference_table(row)]
            for ix, d in zip(line, leading):
                coef[ix] = d
    out: dict = {}
    for ix, d in coef.items():
        if _is_zero_coeff(d):
            continue
        factors = [_binomial_coeffs(k, 0) for k in ix]
        for exps in itertools.product(*(range(len(f)) for f in factors)):
            b = 1
            for f, e in zip(factors, exps):
                b *= f[e]
            if b:
                out[exps] = out.get(exps, 0) + d * b
    return LaurentPoly(variables, out)


def _grid_from(values, dims):
    if isinstance(values, Mapping):
        return {tuple(k) if not isinstance(k, int) else (k,): v for k, v in values.items()}
    grid = {}

    def walk(obj, prefix):
        if isinstance(obj, (list, tuple)) and (dims is None or len(prefix) < dims):
            for i, item in enumerate(obj):
                walk(item, prefix + (i,))
        else:
            grid[prefix] = obj

    walk(values, ())
    return grid


@dataclass(frozen=True)
class DegreeFit:
    """Result of :func:`finite_diff_degree`: ``FitsDegree(d)`` or ``Exceeds``."""

    fits: bool
    degree: int | None = None

    def __str__(self) -> str:
        return f"FitsDegree({self.degree})" if self.fits else "Exceeds"


def finite_diff_degree(values: Sequence, n: int, tol: float = DEFAULT_TOL) -> DegreeFit:
    """Smallest ``d <= n`` whose ``(d+1)``-th differences vanish, else Exceeds.

    Needs values at arguments ``0..m`` with ``m >= n + 1``.  Approximate values
    are compared against ``tol`` scaled by the magnitude of the data and the
    growth of difference coefficients.
    """
    if len(values) < n + 2:
        raise TooFewValues(f"need at least {n + 2} values for degree {n}, got {len(values)}")
    rows = difference_table(values)
    exact = all(is_exact(v) for v in values)
    scale = max([1.0] + [abs(complex(v)) for v in values])
    for d in range(n + 1):
        row = rows[d + 1]
        if exact:
            ok = all(v == 0 for v in row)
        else:
            bound = tol * scale * 2 ** (d + 1)
            ok = all(abs(complex(v)) <= bound for v in row)
        if ok:
            return DegreeFit(True, d)
    return DegreeFit(False, None)


def poly_from_coefficients(coeffs: Iterable, var: str = "x") -> LaurentPoly:
    return LaurentPoly((var,), {(i,): c for i, c in enumerate(coeffs)})


def coefficients_in(p: LaurentPoly, var: str = "x") -> list:
    """Dense coefficient list ``[c0, c1, ...]`` of a polynomial in one variable."""
    p = p.drop_unused()
    if p.is_zero():
        return []
    if not p.variables:
        return [p.constant_value()]
    if p.variables != (var,):
        raise UnknownVariable(f"expected a polynomial in {var!r}, got {p.variables}")
    top = p.max_degree(var)
    if p.min_degree(var) < 0 or top.denominator != 1:
        raise ValueError("not an ordinary polynomial")
    terms = p.terms()
    return [terms.get((Fraction(i),), 0) for i in range(int(top) + 1)]
