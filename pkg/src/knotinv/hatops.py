"""Polynomial-valued invariants by interpolation over connected-sum grids,
and exact rank computations for sets of invariants.

For an invariant ``v`` of declared degree ``n``:

* ``bar``:  ``p(x)`` with ``p(i) = v(L # K^i)``, ``i = 0..n``
* ``star``: ``q(x)`` with ``q(i) = v(K # L^i)``, ``i = 0..n``
* ``hat``:  ``p(x_0..x_k)`` with ``p(i_0..i_k) = v(K^i_0 # L1^i_1 # ... # Lk^i_k)``
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .descriptors import descriptor
from .errors import GridBudgetExceeded, NotAKnot
from .knotcore import LinkDiagram
from .polyalg import LaurentPoly, evaluate, interp_grid, interp_multigrid, to_text
from .scalars import Gaussian, format_scalar, is_exact, normalize, scalar_to_json
from .skein import KnotLike, KnotSum, SkeinEngine
from .vassiliev import eval_invariant

DEFAULT_GRID_BUDGET = 4096


def _as_sum(K: KnotLike, name: str = "") -> KnotSum:
    if isinstance(K, KnotSum):
        return K
    if K.component_count != 1:
        raise NotAKnot(f"diagram has {K.component_count} components")
    return KnotSum((K,) if K.crossings else (), name)


@dataclass
class HatResult:
    descriptor: str
    n: int
    kind: str  # "bar", "star" or "hat"
    knot: str
    patterns: list
    variables: tuple
    polynomial: LaurentPoly
    grid: dict  # index tuple -> value

    def evaluate_at(self, point: Sequence):
        if self.polynomial.is_zero():
            return 0
        return normalize(evaluate(self.polynomial, dict(zip(self.variables, point))))

    def grid_consistent(self) -> bool:
        """Re-evaluating the polynomial at every grid point gives the stored values."""
        for idx, value in self.grid.items():
            got = self.evaluate_at(idx)
            if is_exact(got) and is_exact(value):
                if got != value:
                    return False
            elif abs(complex(got) - complex(value)) > 1e-9 * max(1.0, abs(complex(value))):
                return False
        return True

    def degree_ok(self) -> bool:
        p = self.polynomial.drop_unused()
        for var in p.variables:
            if p.min_degree(var) < 0 or p.max_degree(var) > self.n:
                return False
        return True

    def coefficients(self) -> list:
        """The coefficient set of the interpolating polynomial."""
        return [c for _, c in self.polynomial.sorted_terms()]

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "n": self.n,
            "kind": self.kind,
            "knot": self.knot,
            "patterns": list(self.patterns),
            "variables": list(self.variables),
            "grid": [{"index": list(k), "value": scalar_to_json(v)} for k, v in sorted(self.grid.items())],
            "polynomial": to_text(self.polynomial),
        }

    def __str__(self) -> str:
        return to_text(self.polynomial)


def bar_op(v, n: int, L: KnotLike, K: KnotLike, engine: SkeinEngine | None = None,
           names: tuple[str, str] = ("", "")) -> HatResult:
    """Interpolate ``i -> v(L # K^i)`` on ``i = 0..n``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    v = descriptor(v)
    Ls, Ks = _as_sum(L, names[0]), _as_sum(K, names[1])
    values = [eval_invariant(v, Ls + Ks.power(i), engine) for i in range(n + 1)]
    p = interp_grid(values, "x")
    return HatResult(str(v), n, "bar", str(Ks), [str(Ls)], ("x",), p,
                     {(i,): values[i] for i in range(n + 1)})


def star_op(v, n: int, L: KnotLike, K: KnotLike, engine: SkeinEngine | None = None,
            names: tuple[str, str] = ("", "")) -> HatResult:
    """Interpolate ``i -> v(K # L^i)`` on ``i = 0..n``; ``x = 0`` recovers ``v(K)``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    v = descriptor(v)
    Ls, Ks = _as_sum(L, names[0]), _as_sum(K, names[1])
    values = [eval_invariant(v, Ks + Ls.power(i), engine) for i in range(n + 1)]
    p = interp_grid(values, "x")
    return HatResult(str(v), n, "star", str(Ks), [str(Ls)], ("x",), p,
                     {(i,): values[i] for i in range(n + 1)})


def hat_op(v, n: int, K: KnotLike, patterns: Sequence[KnotLike], engine: SkeinEngine | None = None,
           budget: int = DEFAULT_GRID_BUDGET) -> HatResult:
    """Tensor-grid interpolation of ``v(K^i0 # L1^i1 # ... # Lk^ik)``, ``0 <= i_j <= n``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    v = descriptor(v)
    Ks = _as_sum(K)
    Ps = [_as_sum(L) for L in patterns]
    k = len(Ps)
    size = (n + 1) ** (k + 1)
    if size > budget:
        raise GridBudgetExceeded(f"grid has {size} points, budget is {budget}")
    grid = {}
    for idx in itertools.product(range(n + 1), repeat=k + 1):
        S = Ks.power(idx[0])
        for P, i in zip(Ps, idx[1:]):
            S = S + P.power(i)
        grid[idx] = eval_invariant(v, S, engine)
    variables = tuple(f"x_{j}" for j in range(k + 1))
    p = interp_multigrid(grid, n, variables, dims=k + 1)
    return HatResult(str(v), n, "hat", str(Ks), [str(P) for P in Ps], variables, p, grid)


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------


def _exact(x):
    x = normalize(x)
    if not is_exact(x):
        raise ValueError(f"rank needs exact values, got {format_scalar(x)}")
    return Gaussian.coerce(Fraction(x) if isinstance(x, int) else x)


def _column_rank_profile(M: list[list]) -> list[int]:
    """Pivot columns of fraction-free (Bareiss) elimination.

    Column by column, so the pivots are the lexicographically first set of
    linearly independent columns.
    """
    A = [row[:] for row in M]
    rows = len(A)
    cols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    prev = Gaussian(1)
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) / prev
            A[i][c] = Gaussian(0)
        prev = A[r][c]
        pivots.append(c)
        r += 1
    return pivots


@dataclass
class RankReport:
    invariants: list
    knots: list
    matrix: list
    rank: int
    independent: list  # indices into invariants

    def to_json(self) -> dict:
        return {
            "invariants": self.invariants,
            "knots": self.knots,
            "matrix": [[scalar_to_json(x) for x in row] for row in self.matrix],
            "rank": self.rank,
            "independent": [self.invariants[i] for i in self.independent],
        }

    def __str__(self) -> str:
        return f"rank {self.rank}; independent: {'; '.join(self.invariants[i] for i in self.independent)}"


def rank_report(invariants: Sequence, knots: Sequence[KnotLike], engine: SkeinEngine | None = None,
                names: Sequence[str] | None = None) -> RankReport:
    """Rank of ``M[i][j] = v_j(K_i)`` over exact Gaussian rationals."""
    if not invariants or not knots:
        raise ValueError("need at least one invariant and one knot")
    descs = [descriptor(v) for v in invariants]
    matrix = [[normalize(eval_invariant(v, K, engine)) for v in descs] for K in knots]
    exact = [[_exact(x) for x in row] for row in matrix]
    pivots = _column_rank_profile(exact)
    if names is None:
        names = [str(K) if isinstance(K, KnotSum) else (K.pd_text() if isinstance(K, LinkDiagram) else str(K))
                 for K in knots]
    return RankReport([str(v) for v in descs], list(names), matrix, len(pivots), pivots)
