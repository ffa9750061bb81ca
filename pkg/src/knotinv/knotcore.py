"""Oriented link diagrams in PD notation and the surgeries on them.

Each crossing is a quadruple ``(i, j, k, l)`` of edge labels read
counterclockwise from the incoming under-strand, so ``i`` enters and ``k``
leaves along the under-strand.  The direction of the over-strand is recorded
as the crossing sign: ``+1`` when the over-strand enters at ``l`` and leaves at
``j``, ``-1`` when it enters at ``j`` and leaves at ``l``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, InvalidPD, MalformedPD, NotADoublePoint, NotAKnot

Quad = tuple[int, int, int, int]


def _in_slots(sign: int) -> tuple[int, int]:
    return (0, 3) if sign > 0 else (0, 1)


def _is_in(slot: int, sign: int) -> bool:
    if slot == 0:
        return True
    if slot == 2:
        return False
    return (slot == 3) == (sign > 0)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Quad, ...] = ()
    signs: tuple[int, ...] = ()
    marked_unknots: int = 0

    def __post_init__(self):
        if len(self.crossings) != len(self.signs):
            raise InvalidPD("one sign per crossing is required")
        _validate(self.crossings, self.signs)

    # -- derived structure ---------------------------------------------------
    @cached_property
    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        occ: dict[int, list[tuple[int, int]]] = {}
        for c, quad in enumerate(self.crossings):
            for slot, e in enumerate(quad):
                occ.setdefault(e, []).append((c, slot))
        return occ

    @cached_property
    def _successor(self) -> dict[int, tuple[int, int, bool]]:
        """edge -> (next edge, crossing at its head, passes under there)."""
        succ = {}
        for c, (quad, s) in enumerate(zip(self.crossings, self.signs)):
            for p in _in_slots(s):
                succ[quad[p]] = (quad[(p + 2) % 4], c, p == 0)
        return succ

    @cached_property
    def traversal(self) -> tuple[tuple[tuple[int, int, bool], ...], ...]:
        """Components as sequences of ``(edge, head crossing, under?)``.

        Components are ordered by their smallest label and each starts at it.
        """
        succ = self._successor
        seen: set[int] = set()
        comps = []
        for start in sorted(succ):
            if start in seen:
                continue
            comp = []
            e = start
            while e not in seen:
                seen.add(e)
                nxt, c, under = succ[e]
                comp.append((e, c, under))
                e = nxt
            comps.append(tuple(comp))
        return tuple(comps)

    @property
    def edges(self) -> list[int]:
        return sorted(self.occurrences)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    def components(self) -> list[list[int]]:
        """Edge cycles of the traced components (marked unknots excluded)."""
        return [[e for e, _, _ in comp] for comp in self.traversal]

    @property
    def component_count(self) -> int:
        return len(self.traversal) + self.marked_unknots

    @property
    def is_knot(self) -> bool:
        return self.component_count == 1

    def sign(self, idx: int) -> int:
        self._check_index(idx)
        return self.signs[idx]

    def _check_index(self, idx: int) -> None:
        if not isinstance(idx, int) or not 0 <= idx < len(self.crossings):
            raise IndexOutOfRange(f"crossing index {idx} out of range for {len(self.crossings)} crossings")

    def pd_text(self) -> str:
        return " ".join(f"X[{i},{j},{k},{l}]" for i, j, k, l in self.crossings)

    def to_json(self) -> dict:
        return {"pd": [list(q) for q in self.crossings], "unknots": self.marked_unknots}

    def __str__(self) -> str:
        text = self.pd_text() or "(no crossings)"
        return f"{text} + {self.marked_unknots} unknot(s)" if self.marked_unknots else text

    # -- relabelling ----------------------------------------------------------
    def relabel(self) -> "LinkDiagram":
        """Labels ``1..n`` in traversal order; crossing order is kept."""
        mapping = {}
        for comp in self.traversal:
            for e, _, _ in comp:
                mapping[e] = len(mapping) + 1
        quads = tuple(tuple(mapping[e] for e in q) for q in self.crossings)
        return LinkDiagram(quads, self.signs, self.marked_unknots)

    @cached_property
    def canonical_key(self) -> tuple:
        """Hashable code equal for diagrams that differ by this relabelling."""
        mapping = {}
        for comp in self.traversal:
            for e, _, _ in comp:
                mapping[e] = len(mapping) + 1
        items = sorted(
            (tuple(mapping[e] for e in q), s) for q, s in zip(self.crossings, self.signs)
        )
        return (tuple(items), self.marked_unknots)


def _validate(crossings: Sequence[Quad], signs: Sequence[int]) -> None:
    heads: dict[int, int] = {}
    tails: dict[int, int] = {}
    for quad, s in zip(crossings, signs):
        if len(quad) != 4:
            raise InvalidPD(f"crossing {quad} is not a quadruple")
        if s not in (1, -1):
            raise InvalidPD(f"crossing sign must be +1 or -1, got {s}")
        for slot, e in enumerate(quad):
            if not isinstance(e, int) or e <= 0:
                raise InvalidPD(f"edge labels must be positive integers, got {e!r}")
            target = heads if _is_in(slot, s) else tails
            target[e] = target.get(e, 0) + 1
    labels = set(heads) | set(tails)
    for e in sorted(labels):
        if heads.get(e, 0) + tails.get(e, 0) != 2:
            raise InvalidPD(f"edge label {e} is used {heads.get(e, 0) + tails.get(e, 0)} time(s), expected 2")
        if heads.get(e, 0) != 1:
            raise InvalidPD(f"edge {e} has inconsistent orientation")


UNKNOT = LinkDiagram((), (), 1)


def unknot() -> LinkDiagram:
    return UNKNOT


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]")


def parse_pd_quads(text: str) -> list[Quad]:
    quads = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and (text[pos].isspace() or text[pos] == ","):
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise MalformedPD(f"expected X[a,b,c,d] at position {pos}")
        quad = tuple(int(g) for g in m.groups())
        if any(e <= 0 for e in quad):
            raise MalformedPD(f"edge labels must be positive at position {pos}")
        quads.append(quad)
        pos = m.end()
    return quads


def parse_pd(text: str, marked_unknots: int = 0) -> LinkDiagram:
    """Parse ``X[a,b,c,d]`` tokens into a validated diagram."""
    quads = parse_pd_quads(text)
    return from_pd(quads, marked_unknots)


def from_pd(quads: Iterable[Sequence[int]], marked_unknots: int = 0) -> LinkDiagram:
    """Build a diagram from bare quadruples, inferring over-strand directions.

    Directions are propagated from the fixed under-strand slots (every edge has
    one head and one tail).  Where that leaves a choice, the usual labelling
    rule decides: the over-strand runs from ``l`` to ``j`` when ``j == l + 1``
    or ``l - j > 1``.
    """
    quads = [tuple(int(e) for e in q) for q in quads]
    if marked_unknots < 0:
        raise InvalidPD("marked_unknots must be nonnegative")
    if not quads and marked_unknots == 0:
        raise InvalidPD("empty diagram")
    counts: dict[int, int] = {}
    for q in quads:
        if len(q) != 4:
            raise MalformedPD(f"crossing {q} is not a quadruple")
        for e in q:
            if e <= 0:
                raise InvalidPD(f"edge labels must be positive integers, got {e}")
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, k in counts.items() if k != 2)
    if bad:
        raise InvalidPD(f"edge label(s) {bad} not used exactly twice")
    occ: dict[int, list[tuple[int, int]]] = {}
    for c, q in enumerate(quads):
        for slot, e in enumerate(q):
            occ.setdefault(e, []).append((c, slot))
    signs: list[int | None] = [None] * len(quads)

    def status(c: int, slot: int):
        if slot in (0, 2):
            return slot == 0
        if signs[c] is None:
            return None
        return _is_in(slot, signs[c])

    def other(c: int, slot: int) -> tuple[int, int]:
        a, b = occ[quads[c][slot]]
        return b if a == (c, slot) else a

    while any(s is None for s in signs):
        progress = True
        while progress:
            progress = False
            for c, s in enumerate(signs):
                if s is not None:
                    continue
                for slot in (1, 3):
                    oc, os_ = other(c, slot)
                    st = status(oc, os_)
                    if st is None:
                        continue
                    here_in = not st
                    signs[c] = 1 if here_in == (slot == 3) else -1
                    progress = True
                    break
        for c, s in enumerate(signs):
            if s is None:
                _, j, _, l = quads[c]
                signs[c] = 1 if (j - l == 1 or l - j > 1) else -1
                break
    try:
        return LinkDiagram(tuple(quads), tuple(signs), marked_unknots)
    except InvalidPD as exc:
        raise InvalidPD(f"not a traceable diagram: {exc}") from None


def from_braid(word: Sequence[int], strands: int | None = None) -> LinkDiagram:
    """Closure of a braid word (generator ``g`` or ``-g``, 1-based, read bottom-up)."""
    if strands is None:
        strands = max([abs(g) for g in word] + [0]) + 1
    pos_label = list(range(1, strands + 1))
    next_label = strands + 1
    quads: list[list[int]] = []
    signs: list[int] = []
    for g in word:
        a = abs(g) - 1
        if not 0 <= a < strands - 1 or g == 0:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        bl, br = pos_label[a], pos_label[a + 1]
        tl, tr = next_label, next_label + 1
        next_label += 2
        if g > 0:
            quads.append([br, tr, tl, bl])
            signs.append(1)
        else:
            quads.append([bl, br, tr, tl])
            signs.append(-1)
        pos_label[a], pos_label[a + 1] = tl, tr
    closure = {pos_label[p]: p + 1 for p in range(strands)}
    unknots = sum(1 for p in range(strands) if pos_label[p] == p + 1)
    quads = [[closure.get(e, e) for e in q] for q in quads]
    return LinkDiagram(tuple(tuple(q) for q in quads), tuple(signs), unknots).relabel() if quads else LinkDiagram((), (), unknots)


# ---------------------------------------------------------------------------
# surgeries
# ---------------------------------------------------------------------------


def _remove_and_join(
    D: LinkDiagram, remove: set[int], groups: Iterable[Iterable[int]]
) -> tuple[list[Quad], list[int], int]:
    """Delete crossings and fuse label groups into single arcs.

    Groups that no longer touch any crossing are closed circles and become
    marked unknots.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for g in groups:
        g = list(g)
        for x in g[1:]:
            ra, rb = find(g[0]), find(x)
            if ra != rb:
                lo, hi = min(ra, rb), max(ra, rb)
                parent[hi] = lo
    keep = [c for c in range(len(D.crossings)) if c not in remove]
    quads = [tuple(find(e) for e in D.crossings[c]) for c in keep]
    signs = [D.signs[c] for c in keep]
    remaining = {e for q in quads for e in q}
    members: dict[int, set[int]] = {}
    for x in list(parent) + [x for g in groups for x in g]:
        members.setdefault(find(x), set()).add(x)
    circles = sum(1 for root in members if root not in remaining)
    return quads, signs, D.marked_unknots + circles


def switch_crossing(D: LinkDiagram, idx: int) -> LinkDiagram:
    """Exchange over and under at crossing ``idx``; its sign flips."""
    D._check_index(idx)
    i, j, k, l = D.crossings[idx]
    quad = (l, i, j, k) if D.signs[idx] > 0 else (j, k, l, i)
    crossings = D.crossings[:idx] + (quad,) + D.crossings[idx + 1 :]
    signs = D.signs[:idx] + (-D.signs[idx],) + D.signs[idx + 1 :]
    return LinkDiagram(crossings, signs, D.marked_unknots)


def mirror(D: LinkDiagram) -> LinkDiagram:
    for idx in range(len(D.crossings)):
        D = switch_crossing(D, idx)
    return D


SMOOTHING_MODES = ("oriented", "unoriented-0", "unoriented-inf")


def smooth_crossing(D: LinkDiagram, idx: int, mode: str = "oriented") -> LinkDiagram:
    """Replace crossing ``idx`` by a smoothing.

    ``unoriented-0`` joins slots (0,1) and (2,3); ``unoriented-inf`` joins
    (0,3) and (1,2).  The oriented smoothing is whichever of the two respects
    the strand directions.  Unoriented results are re-oriented per component.
    """
    D._check_index(idx)
    if mode in ("unoriented-∞", "unoriented-infinity"):
        mode = "unoriented-inf"
    if mode not in SMOOTHING_MODES:
        raise ValueError(f"unknown smoothing mode {mode!r}")
    q = D.crossings[idx]
    if mode == "oriented":
        pairs = ((0, 1), (2, 3)) if D.signs[idx] > 0 else ((0, 3), (1, 2))
    elif mode == "unoriented-0":
        pairs = ((0, 1), (2, 3))
    else:
        pairs = ((0, 3), (1, 2))
    quads, signs, unknots = _remove_and_join(D, {idx}, [[q[a], q[b]] for a, b in pairs])
    if not quads and unknots == 0:
        unknots = 1
    if mode == "oriented":
        return LinkDiagram(tuple(quads), tuple(signs), unknots)
    return reorient(quads, unknots)


def reorient(quads: Sequence[Sequence[int]], marked_unknots: int = 0) -> LinkDiagram:
    """Choose a direction for every component of an unoriented PD code.

    Each component is traced from its smallest label, entering at the
    smallest dart carrying that label.  Quadruples are rotated so that slot 0
    is again the incoming under-strand.
    """
    quads = [tuple(q) for q in quads]
    occ: dict[int, list[tuple[int, int]]] = {}
    for c, q in enumerate(quads):
        for slot, e in enumerate(q):
            occ.setdefault(e, []).append((c, slot))
    under_in: dict[int, int] = {}
    over_in: dict[int, int] = {}
    seen: set[int] = set()
    for start in sorted(occ):
        if start in seen:
            continue
        e = start
        head = min(occ[e])
        while e not in seen:
            seen.add(e)
            c, p = head
            (under_in if p % 2 == 0 else over_in)[c] = p
            out_slot = (p + 2) % 4
            e = quads[c][out_slot]
            a, b = occ[e]
            head = b if a == (c, out_slot) else a
    new_quads = []
    signs = []
    for c, q in enumerate(quads):
        ui, oi = under_in[c], over_in[c]
        if ui == 2:
            q = (q[2], q[3], q[0], q[1])
            oi = (oi + 2) % 4
        new_quads.append(q)
        signs.append(1 if oi == 3 else -1)
    return LinkDiagram(tuple(new_quads), tuple(signs), marked_unknots)


def connected_sum(K: LinkDiagram, L: LinkDiagram, cut: tuple[int, int] | None = None) -> LinkDiagram:
    """Connected sum of two knots, cut at the given edges.

    By default each diagram is cut at the first edge of its first traced
    component (its smallest label).
    """
    for name, D in (("first", K), ("second", L)):
        if D.component_count != 1:
            raise NotAKnot(f"{name} summand has {D.component_count} components")
    if not K.crossings:
        return L.relabel() if L.crossings else UNKNOT
    if not L.crossings:
        return K.relabel()
    eK = cut[0] if cut else K.traversal[0][0][0]
    eL = cut[1] if cut else L.traversal[0][0][0]
    if eK not in K.occurrences or eL not in L.occurrences:
        raise IndexOutOfRange("cut edge is not an edge of the diagram")
    offset = max(K.occurrences)
    lq = [[e + offset for e in q] for q in L.crossings]
    kq = [list(q) for q in K.crossings]
    x = offset + max(L.occurrences) + 1
    y = x + 1

    def head_tail(D, e):
        h = t = None
        for c, slot in D.occurrences[e]:
            if _is_in(slot, D.signs[c]):
                h = (c, slot)
            else:
                t = (c, slot)
        return h, t

    kh, kt = head_tail(K, eK)
    lh, lt = head_tail(L, eL)
    kq[kt[0]][kt[1]] = x
    lq[lh[0]][lh[1]] = x
    lq[lt[0]][lt[1]] = y
    kq[kh[0]][kh[1]] = y
    D = LinkDiagram(tuple(map(tuple, kq + lq)), K.signs + L.signs, 0)
    return D.relabel()


def self_sum(K: LinkDiagram, i: int) -> LinkDiagram:
    """``K`` summed with itself ``i`` times; ``i = 0`` gives the unknot."""
    if K.component_count != 1:
        raise NotAKnot(f"diagram has {K.component_count} components")
    if i < 0:
        raise ValueError("i must be nonnegative")
    D = UNKNOT
    for _ in range(i):
        D = connected_sum(D, K)
    return D


def writhe(D: LinkDiagram) -> int:
    return sum(D.signs)


# ---------------------------------------------------------------------------
# Reidemeister simplification
# ---------------------------------------------------------------------------


def _r1_at(D: LinkDiagram, c: int):
    q = D.crossings[c]
    for p in range(4):
        if q[p] == q[(p + 1) % 4]:
            return p
    return None


def _r2_at(D: LinkDiagram, c1: int):
    occ = D.occurrences
    q1 = D.crossings[c1]
    for p1 in range(4):
        a, b = occ[q1[p1]]
        c2, s2 = b if a == (c1, p1) else a
        if c2 == c1:
            continue
        f = D.crossings[c2][(s2 + 1) % 4]
        fa, fb = occ[f]
        back = fb if fa == (c2, (s2 + 1) % 4) else fa
        if back != (c1, (p1 - 1) % 4):
            continue
        if p1 % 2 != s2 % 2:
            continue  # alternating bigon, not an R2 face
        return p1, c2, s2
    return None


def simplify(D: LinkDiagram) -> LinkDiagram:
    """Remove R1 kinks and R2 bigons until none remain.

    Scans crossings from the lowest index each round; R1 is tried before R2
    at a given crossing.  Labels are merged, never renumbered.
    """
    while D.crossings:
        for c in range(len(D.crossings)):
            p = _r1_at(D, c)
            if p is not None:
                q = D.crossings[c]
                group = [q[(p + 2) % 4], q[p], q[(p + 3) % 4]]
                quads, signs, unknots = _remove_and_join(D, {c}, [group])
                break
            r2 = _r2_at(D, c)
            if r2 is not None:
                p1, c2, s2 = r2
                q1, q2 = D.crossings[c], D.crossings[c2]
                groups = [
                    [q1[(p1 + 2) % 4], q1[p1], q2[(s2 + 2) % 4]],
                    [q1[(p1 + 1) % 4], q1[(p1 - 1) % 4], q2[(s2 + 3) % 4]],
                ]
                quads, signs, unknots = _remove_and_join(D, {c, c2}, groups)
                break
        else:
            return D
        D = LinkDiagram(tuple(quads), tuple(signs), unknots)
    return D


# ---------------------------------------------------------------------------
# singular diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingularDiagram:
    base: LinkDiagram
    double_points: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "double_points", frozenset(self.double_points))
        for idx in self.double_points:
            self.base._check_index(idx)

    @property
    def n_double_points(self) -> int:
        return len(self.double_points)

    def resolutions(self) -> list[tuple[int, LinkDiagram]]:
        """All ``2**d`` resolutions as ``(number of negative choices, diagram)``."""
        points = sorted(self.double_points)
        out = []
        for choice in product((1, -1), repeat=len(points)):
            D = self.base
            for idx, s in zip(points, choice):
                if D.signs[idx] != s:
                    D = switch_crossing(D, idx)
            out.append((sum(1 for s in choice if s < 0), D))
        return out


def singularize(K: LinkDiagram | SingularDiagram, idx: int) -> SingularDiagram:
    """Mark crossing ``idx`` as a double point."""
    if isinstance(K, SingularDiagram):
        K.base._check_index(idx)
        return SingularDiagram(K.base, K.double_points | {idx})
    K._check_index(idx)
    return SingularDiagram(K, frozenset({idx}))


def resolve(S: SingularDiagram, idx: int, sign: int) -> SingularDiagram:
    """Replace double point ``idx`` by a crossing of the given sign."""
    S.base._check_index(idx)
    if idx not in S.double_points:
        raise NotADoublePoint(f"crossing {idx} is not a double point")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    base = S.base if S.base.signs[idx] == sign else switch_crossing(S.base, idx)
    return SingularDiagram(base, S.double_points - {idx})
