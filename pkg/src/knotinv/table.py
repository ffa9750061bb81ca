"""Knot table ingestion (JSON lines) and knot-name resolution.

Each line holds ``{"name": ..., "pd": [[a,b,c,d], ...], "unknots": k}``.
Names may be combined: ``3_1#4_1`` is a connected sum, ``3_1^3`` a
three-fold self sum, and ``unknot`` is accepted for ``0_1``.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DomainError, DuplicateName, MalformedEntry, UnknownKnot
from .knotcore import LinkDiagram, from_pd
from .skein import KnotSum, as_knotsum

TABLE_ENV = "KNOTTABLE"


@dataclass(frozen=True)
class KnotTableEntry:
    name: str
    pd: tuple[tuple[int, int, int, int], ...]
    unknots: int = 0

    def diagram(self) -> LinkDiagram:
        return from_pd(self.pd, self.unknots)


class KnotTable:
    """Ordered name -> diagram mapping with parsed diagrams cached."""

    def __init__(self, entries: list[KnotTableEntry], source: str = ""):
        self.entries = list(entries)
        self.source = source
        self._by_name = {e.name: e for e in self.entries}
        self._diagrams: dict[str, LinkDiagram] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def diagram(self, name: str) -> LinkDiagram:
        if name not in self._by_name:
            raise UnknownKnot(f"unknown knot {name!r}")
        if name not in self._diagrams:
            self._diagrams[name] = self._by_name[name].diagram()
        return self._diagrams[name]

    def knot(self, expr: str) -> KnotSum:
        """Resolve ``NAME``, ``NAME^k`` and ``A#B#...`` to a :class:`KnotSum`."""
        expr = expr.strip()
        if not expr:
            raise UnknownKnot("empty knot name")
        total = KnotSum((), "")
        for part in expr.split("#"):
            part = part.strip()
            m = re.fullmatch(r"(.+?)\^(\d+)", part)
            base, k = (m.group(1).strip(), int(m.group(2))) if m else (part, 1)
            if base == "unknot":
                base = "0_1" if "0_1" in self else base
            if base == "unknot":
                piece = KnotSum((), "unknot")
            else:
                piece = as_knotsum(self.diagram(base), base)
            total = total + piece.power(k, part)
        return KnotSum(total.summands, expr)


def _parse_entry(raw: str, lineno: int) -> KnotTableEntry:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedEntry(lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise MalformedEntry(lineno, "entry is not an object")
    name = obj.get("name")
    if not isinstance(name, str) or not name:
        raise MalformedEntry(lineno, "missing or empty 'name'")
    if "pd" not in obj:
        raise MalformedEntry(lineno, "missing 'pd'")
    pd = obj["pd"]
    if not isinstance(pd, list) or not all(
        isinstance(q, list) and len(q) == 4 and all(isinstance(x, int) and not isinstance(x, bool) and x > 0 for x in q)
        for q in pd
    ):
        raise MalformedEntry(lineno, "'pd' must be a list of four positive integers per crossing")
    unknots = obj.get("unknots", 0)
    if not isinstance(unknots, int) or isinstance(unknots, bool) or unknots < 0:
        raise MalformedEntry(lineno, "'unknots' must be a nonnegative integer")
    entry = KnotTableEntry(name, tuple(tuple(q) for q in pd), unknots)
    try:
        D = entry.diagram()
    except DomainError as exc:
        raise MalformedEntry(lineno, str(exc)) from None
    if D.component_count != 1:
        raise MalformedEntry(lineno, f"{name} has {D.component_count} components")
    return entry


def parse_table(text: str, source: str = "") -> KnotTable:
    entries = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        entry = _parse_entry(raw, lineno)
        if entry.name in seen:
            raise DuplicateName(f"line {lineno}: duplicate knot name {entry.name!r}")
        seen.add(entry.name)
        entries.append(entry)
    return KnotTable(entries, source)


def load_table(path: str | os.PathLike | None = None) -> KnotTable:
    """Load a table file; ``None`` means ``$KNOTTABLE`` or the bundled table.

    A missing file raises the builtin ``FileNotFoundError``.
    """
    if path is None:
        path = os.environ.get(TABLE_ENV)
    if path is None:
        text = resources.files("knotinv").joinpath("data/knots.jsonl").read_text()
        return parse_table(text, "<bundled>")
    p = Path(path)
    return parse_table(p.read_text(), str(p))


_default: KnotTable | None = None


def default_table() -> KnotTable:
    """The table selected by ``$KNOTTABLE`` (or the bundled one), loaded once."""
    global _default
    if _default is None:
        _default = load_table()
    return _default


def knot(expr: str, table: KnotTable | None = None) -> KnotSum:
    return (table or default_table()).knot(expr)
