"""Seeded property suites shared by the property tests and the acceptance gate.

Each suite takes a ``random.Random`` and a case count and returns a list of
failure descriptions (empty means every case passed).
"""

from __future__ import annotations

import itertools
import random

from knotinv.knotcore import (
    connected_sum,
    from_braid,
    mirror,
    resolve,
    simplify,
    singularize,
    smooth_crossing,
    switch_crossing,
    writhe,
)
from knotinv.polyalg import LaurentPoly
from knotinv.skein import SkeinEngine
from knotinv.table import default_table
from knotinv.vassiliev import eval_invariant, eval_singular, singular_samples

a = LaurentPoly.var("a")
z = LaurentPoly.var("z")
x = LaurentPoly.var("x")

BILINEAR_INVARIANTS = ("a2", "a2 * a2", "jones_deriv(2; 2)", "q_deriv(1; 1)", "homfly_deriv(1,2; 1,0)")


def _table_knots():
    t = default_table()
    return [t.diagram(e.name) for e in t if e.pd]


def random_braid(rng: random.Random, max_len: int = 9):
    """Closure of a random braid word using every generator at least once."""
    strands = rng.randint(2, 4)
    gens = list(range(1, strands))
    length = rng.randint(len(gens), max(len(gens), max_len))
    word = gens + [rng.choice(gens) for _ in range(length - len(gens))]
    rng.shuffle(word)
    return from_braid([g * rng.choice((1, -1)) for g in word], strands)


def multiplicativity(rng: random.Random, cases: int) -> list[str]:
    knots = _table_knots()
    knots += [mirror(k) for k in knots]
    engine = SkeinEngine()
    failures = []
    for n in range(cases):
        K = rng.choice(knots)
        L = rng.choice([k for k in knots if k.n_crossings + K.n_crossings <= 14])
        cut = (rng.choice(K.edges), rng.choice(L.edges))
        S = connected_sum(K, L, cut)
        if engine.homfly(S) != engine.homfly(K) * engine.homfly(L):
            failures.append(f"case {n}: homfly of {K.pd_text()} # {L.pd_text()}")
        if engine.kauffman(S) != engine.kauffman(K) * engine.kauffman(L):
            failures.append(f"case {n}: kauffman of {K.pd_text()} # {L.pd_text()}")
    return failures


def skein_identity(rng: random.Random, cases: int) -> list[str]:
    engine = SkeinEngine()

    def lam(D):
        # regular-isotopy Kauffman polynomial; independent of the chosen orientation
        return a ** writhe(D) * engine.kauffman(D)

    failures = []
    for n in range(cases):
        D = random_braid(rng)
        c = rng.randrange(D.n_crossings)
        Dp = D if D.signs[c] > 0 else switch_crossing(D, c)
        Dm = switch_crossing(Dp, c)
        D0 = smooth_crossing(Dp, c, "oriented")
        if a * engine.homfly(Dp) - a ** -1 * engine.homfly(Dm) != z * engine.homfly(D0):
            failures.append(f"case {n}: homfly skein at {c} of {D.pd_text()}")
        zero = smooth_crossing(D, c, "unoriented-0")
        inf = smooth_crossing(D, c, "unoriented-inf")
        if lam(D) + lam(switch_crossing(D, c)) != x * (lam(zero) + lam(inf)):
            failures.append(f"case {n}: kauffman skein at {c} of {D.pd_text()}")
    return failures


def simplify_invariance(rng: random.Random, cases: int) -> list[str]:
    engine = SkeinEngine()
    failures = []
    for n in range(cases):
        D = random_braid(rng)
        S = simplify(D)
        if S.n_crossings > D.n_crossings or S.component_count != D.component_count:
            failures.append(f"case {n}: simplify grew {D.pd_text()}")
        if engine.homfly(S) != engine.homfly(D) or engine.kauffman(S) != engine.kauffman(D):
            failures.append(f"case {n}: simplify changed polynomials of {D.pd_text()}")
    return failures


def cache_transparency(rng: random.Random, cases: int) -> list[str]:
    cached = SkeinEngine()
    failures = []
    for n in range(cases):
        D = random_braid(rng)
        plain = SkeinEngine(use_cache=False)
        if cached.homfly(D) != plain.homfly(D) or cached.kauffman(D) != plain.kauffman(D):
            failures.append(f"case {n}: cache changed result for {D.pd_text()}")
    return failures


def _iterated(v, D, points, engine):
    if not points:
        return eval_invariant(v, D, engine)
    p, rest = points[0], points[1:]
    S = singularize(D, p)
    return (_iterated(v, resolve(S, p, 1).base, rest, engine)
            - _iterated(v, resolve(S, p, -1).base, rest, engine))


def resolution_bilinearity(rng: random.Random, cases: int) -> list[str]:
    t = default_table()
    pool = {e.name: t.diagram(e.name) for e in t if e.pd}
    engine = SkeinEngine()
    failures = []
    for n in range(cases):
        d = rng.randint(1, 3)
        sample = singular_samples(d, 1, seed=rng.randrange(2 ** 31), knots=pool, max_crossings=10)[0]
        v = rng.choice(BILINEAR_INVARIANTS)
        order = list(sample.diagram.double_points)
        rng.shuffle(order)
        total = eval_singular(v, sample.diagram, engine)
        if _iterated(v, sample.diagram.base, order, engine) != total:
            failures.append(f"case {n}: {v} on {sample.name} order {order}")
    return failures


SUITES = {
    "multiplicativity": multiplicativity,
    "skein identity": skein_identity,
    "simplify invariance": simplify_invariance,
    "cache transparency": cache_transparency,
    "resolution bilinearity": resolution_bilinearity,
}
