"""Knot polynomials, their derivatives, and evidence tests for finite-type invariants."""

from .descriptors import parse_descriptor
from .knotcore import (
    LinkDiagram,
    SingularDiagram,
    connected_sum,
    from_braid,
    from_pd,
    parse_pd,
    resolve,
    self_sum,
    simplify,
    singularize,
    smooth_crossing,
    switch_crossing,
    writhe,
)
from .polyalg import LaurentPoly, derivative, evaluate, finite_diff_degree, interp_grid, substitute, to_text
from .skein import KnotSum, SkeinEngine, alexander, conway, homfly, jones, kauffman, qpoly
from .table import default_table, knot, load_table

__all__ = [
    "KnotSum",
    "LaurentPoly",
    "LinkDiagram",
    "SingularDiagram",
    "SkeinEngine",
    "alexander",
    "connected_sum",
    "conway",
    "default_table",
    "derivative",
    "evaluate",
    "finite_diff_degree",
    "from_braid",
    "from_pd",
    "homfly",
    "interp_grid",
    "jones",
    "kauffman",
    "knot",
    "load_table",
    "parse_descriptor",
    "parse_pd",
    "qpoly",
    "resolve",
    "self_sum",
    "simplify",
    "singularize",
    "smooth_crossing",
    "substitute",
    "switch_crossing",
    "to_text",
    "writhe",
]
