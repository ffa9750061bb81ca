"""HOMFLY and Kauffman polynomials by skein-tree recursion.

Conventions::

    a*P(D+) - a^-1*P(D-) = z*P(D0),        P(unknot) = 1
    L(D+) + L(D-) = x*(L(D0) + L(Dinf)),   L(unknot) = 1,  L(curl of sign s) = a^s * L
    F(D) = a^-writhe(D) * L(D)

Both recursions reduce towards a descending diagram: components are traced
from their smallest edge label, and the first crossing met on its
under-strand is switched (plus smoothed).  Descending diagrams are unlinks.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DiagramTooLarge, NotAKnot
from .knotcore import (
    LinkDiagram,
    UNKNOT,
    connected_sum,
    simplify,
    smooth_crossing,
    switch_crossing,
    writhe,
)
from .polyalg import LaurentPoly, substitute

DEFAULT_MAX_CROSSINGS = 16

_a = LaurentPoly.var("a")
_z = LaurentPoly.var("z")
_x = LaurentPoly.var("x")
_t = LaurentPoly.var("t")
_ONE_AZ = LaurentPoly.const(1, ("a", "z"))
_ONE_AX = LaurentPoly.const(1, ("a", "x"))
_DELTA = (_a - _a ** -1) * _z ** -1  # HOMFLY value of a split unknot
_MU = (_a + _a ** -1) * _x ** -1 - 1  # Kauffman value of a split unknot
_A2 = _a ** 2
_AM2 = _a ** -2
_AM1_Z = _a ** -1 * _z
_A_Z = _a * _z
_T_HALF = _t ** Fraction(1, 2) - _t ** Fraction(-1, 2)


@dataclass(frozen=True)
class KnotSum:
    """A connected sum kept as its list of summand diagrams.

    Polynomials of a ``KnotSum`` are products of the summands' polynomials;
    :meth:`diagram` builds the actual connected-sum diagram when one is needed.
    """

    summands: tuple[LinkDiagram, ...] = ()
    name: str = ""

    def __post_init__(self):
        for D in self.summands:
            if D.component_count != 1:
                raise NotAKnot("connected-sum summands must be knots")

    def diagram(self) -> LinkDiagram:
        D = UNKNOT
        for S in self.summands:
            D = connected_sum(D, S)
        return D

    def __add__(self, other: "KnotSum") -> "KnotSum":
        name = "#".join(n for n in (self.name, other.name) if n)
        return KnotSum(self.summands + other.summands, name)

    def power(self, i: int, name: str | None = None) -> "KnotSum":
        return KnotSum(self.summands * i, name if name is not None else (f"({self.name})^{i}" if i != 1 else self.name))

    @property
    def n_crossings(self) -> int:
        return sum(len(D.crossings) for D in self.summands)

    def __str__(self) -> str:
        return self.name or " # ".join(str(D) for D in self.summands) or "unknot"


KnotLike = Union[LinkDiagram, KnotSum]


def as_knotsum(K: KnotLike, name: str = "") -> KnotSum:
    if isinstance(K, KnotSum):
        return K
    if K.component_count != 1:
        raise NotAKnot(f"diagram has {K.component_count} components")
    return KnotSum((K,) if K.crossings else (), name)


def first_ascending(D: LinkDiagram) -> int | None:
    """First crossing reached on its under-strand, or ``None`` if descending."""
    seen = set()
    for comp in D.traversal:
        for _, c, under in comp:
            if c not in seen:
                if under:
                    return c
                seen.add(c)
    return None


class SkeinEngine:
    """Memoizing evaluator; cache keys are canonical relabelled PD codes.

    Cache entries are written once; concurrent writers store equal values, so
    the only synchronization is a lock around dictionary insertion.
    """

    def __init__(self, max_crossings: int = DEFAULT_MAX_CROSSINGS, use_cache: bool = True):
        self.max_crossings = max_crossings
        self.use_cache = use_cache
        self._homfly_cache: dict = {}
        self._kauffman_cache: dict = {}
        self._lock = threading.Lock()

    def clear(self) -> None:
        with self._lock:
            self._homfly_cache.clear()
            self._kauffman_cache.clear()

    def _check_size(self, D: LinkDiagram) -> None:
        if len(D.crossings) > self.max_crossings:
            raise DiagramTooLarge(
                f"diagram has {len(D.crossings)} crossings, bound is {self.max_crossings}"
            )

    def _store(self, cache: dict, key, value) -> None:
        if self.use_cache:
            with self._lock:
                cache.setdefault(key, value)

    # HOMFLY ----------------------------------------------------------------
    def homfly(self, K: KnotLike) -> LaurentPoly:
        if isinstance(K, KnotSum):
            result = _ONE_AZ
            for D in K.summands:
                result = result * self.homfly(D)
            return result
        self._check_size(K)
        return self._homfly(K).with_variables(("a", "z"))

    def _homfly(self, D: LinkDiagram) -> LaurentPoly:
        D = simplify(D)
        if not D.crossings:
            return _DELTA ** (D.marked_unknots - 1)
        key = D.canonical_key
        if self.use_cache:
            hit = self._homfly_cache.get(key)
            if hit is not None:
                return hit
        c = first_ascending(D)
        if c is None:
            result = _DELTA ** (D.component_count - 1)
        else:
            switched = self._homfly(switch_crossing(D, c))
            smoothed = self._homfly(smooth_crossing(D, c, "oriented"))
            if D.signs[c] > 0:
                result = _AM2 * switched + _AM1_Z * smoothed
            else:
                result = _A2 * switched - _A_Z * smoothed
        self._store(self._homfly_cache, key, result)
        return result

    # Kauffman --------------------------------------------------------------
    def kauffman(self, K: KnotLike) -> LaurentPoly:
        if isinstance(K, KnotSum):
            result = _ONE_AX
            for D in K.summands:
                result = result * self.kauffman(D)
            return result
        self._check_size(K)
        F = _a ** (-writhe(K)) * self._bracket(K)
        return F.with_variables(("a", "x"))

    def _bracket(self, D: LinkDiagram) -> LaurentPoly:
        """Regular-isotopy invariant ``L`` of an unoriented diagram."""
        S = simplify(D)
        kinks = writhe(D) - writhe(S)
        return _a ** kinks * self._bracket_reduced(S)

    def _bracket_reduced(self, D: LinkDiagram) -> LaurentPoly:
        if not D.crossings:
            return _MU ** (D.marked_unknots - 1)
        key = D.canonical_key
        if self.use_cache:
            hit = self._kauffman_cache.get(key)
            if hit is not None:
                return hit
        c = first_ascending(D)
        if c is None:
            result = _a ** writhe(D) * _MU ** (D.component_count - 1)
        else:
            zero = self._bracket(smooth_crossing(D, c, "unoriented-0"))
            inf = self._bracket(smooth_crossing(D, c, "unoriented-inf"))
            other = self._bracket(switch_crossing(D, c))
            result = _x * (zero + inf) - other
        self._store(self._kauffman_cache, key, result)
        return result


default_engine = SkeinEngine()


def homfly(K: KnotLike, engine: SkeinEngine | None = None) -> LaurentPoly:
    """HOMFLY polynomial in ``(a, z)``."""
    return (engine or default_engine).homfly(K)


def kauffman(K: KnotLike, engine: SkeinEngine | None = None) -> LaurentPoly:
    """Kauffman polynomial in ``(a, x)``."""
    return (engine or default_engine).kauffman(K)


def jones_from_homfly(P: LaurentPoly) -> LaurentPoly:
    return substitute(P, {"a": _t, "z": _T_HALF}).with_variables(("t",))


def conway_from_homfly(P: LaurentPoly) -> LaurentPoly:
    return substitute(P, {"a": 1}).with_variables(("z",))


def alexander_from_homfly(P: LaurentPoly) -> LaurentPoly:
    return substitute(P, {"a": 1, "z": _T_HALF}).with_variables(("t",))


def q_from_kauffman(F: LaurentPoly) -> LaurentPoly:
    return substitute(F, {"a": 1}).with_variables(("x",))


def jones(K: KnotLike, engine: SkeinEngine | None = None) -> LaurentPoly:
    return jones_from_homfly(homfly(K, engine))


def conway(K: KnotLike, engine: SkeinEngine | None = None) -> LaurentPoly:
    return conway_from_homfly(homfly(K, engine))


def alexander(K: KnotLike, engine: SkeinEngine | None = None) -> LaurentPoly:
    return alexander_from_homfly(homfly(K, engine))


def qpoly(K: KnotLike, engine: SkeinEngine | None = None) -> LaurentPoly:
    return q_from_kauffman(kauffman(K, engine))


def homfly_coeff(K: KnotLike, two_i: int, engine: SkeinEngine | None = None) -> LaurentPoly:
    """``P_{2i}(K; a)``: the coefficient of ``z**(2i)`` (pass the even index)."""
    if two_i < 0:
        raise ValueError("index must be nonnegative")
    return homfly(K, engine).coefficient("z", two_i).with_variables(("a",))


def kauffman_coeff(K: KnotLike, i: int, engine: SkeinEngine | None = None) -> LaurentPoly:
    """``F_i(K; a)``: the coefficient of ``x**i``."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    return kauffman(K, engine).coefficient("x", i).with_variables(("a",))


def conway_degree(K: KnotLike, engine: SkeinEngine | None = None) -> int:
    """Largest power of ``z`` in the Conway polynomial (0 for the unknot)."""
    C = conway(K, engine)
    if C.is_zero():
        return 0
    return int(C.max_degree("z"))


def check_knot_lattice(P: LaurentPoly, F: LaurentPoly | None = None) -> bool:
    """``P`` in Z[a^±2, z^2] and ``F`` in Z[a^±1, x]."""
    ok = P.has_integer_coefficients() and P.in_lattice("a", 2) and P.in_lattice("z", 2)
    if F is not None:
        ok = ok and F.has_integer_coefficients() and F.in_lattice("a", 1) and F.in_lattice("x", 1)
        ok = ok and (F.is_zero() or F.min_degree("x") >= 0)
    return ok
