from __future__ import annotations

import itertools
import math
from fractions import Fraction

import pytest

from knotinv.descriptors import ConwayCoeff, HomflyDeriv, JonesDeriv, parse_descriptor
from knotinv.errors import DegenerateG, NotAKnot, PoleAtZero
from knotinv.knotcore import SingularDiagram, parse_pd, resolve, singularize
from knotinv.scalars import I, parse_scalar
from knotinv.vassiliev import (
    BY_CURVATURE,
    INCONCLUSIVE,
    SingularSample,
    criterion_point,
    degree_bound_test,
    derpol_check,
    eval_invariant,
    eval_singular,
    growth_sequence,
    homfly_locus,
    intersect_points,
    singular_samples,
    taylor_criterion,
)


def _pool(table):
    return {e.name: table.diagram(e.name) for e in table if e.pd}


def test_eval_invariant_examples(K, table):
    assert eval_invariant(ConwayCoeff(2), K("3_1")) == 1
    assert eval_invariant(JonesDeriv(2, 1), K("3_1")) == -6
    for entry in table:
        assert eval_invariant(HomflyDeriv(0, 0, 1, 0), K(entry.name)) == 1
    with pytest.raises(NotAKnot):
        eval_invariant("a2", parse_pd("X[4,1,3,2] X[2,3,1,4]"))


def test_eval_invariant_combinators(K):
    T = K("3_1")
    assert eval_invariant("a2 * jones_deriv(3; 1)", T) == 54
    assert eval_invariant("scale(1/2, a2) + 3", T) == Fraction(7, 2)
    assert eval_invariant("scale(I, kauffman_coeff_deriv(4,1; I))", K("unknot")) == 0
    v = eval_invariant("jones_deriv(0; sqrt2)", T)
    s = math.sqrt(2)
    assert abs(v - (-s ** -4 + s ** -3 + s ** -1)) < 1e-12


def test_eval_singular_examples(K):
    T = K("3_1").diagram()
    assert eval_singular("a2", T) == eval_invariant("a2", T)
    S = singularize(T, 0)
    value = eval_singular("a2", S)
    plus = eval_invariant("a2", resolve(S, 0, 1).base)
    minus = eval_invariant("a2", resolve(S, 0, -1).base)
    assert value == plus - minus
    assert abs(value) == 1


def test_degree_bound_examples(table, K):
    pool = _pool(table)
    samples = singular_samples(3, 10, seed=5, knots=pool)
    assert degree_bound_test("a2", 2, samples).verdict == "AllVanish"
    samples = singular_samples(4, 10, seed=6, knots=pool)
    assert degree_bound_test("jones_deriv(3; 1)", 3, samples).verdict == "AllVanish"
    T2 = K("3_1^2").diagram()
    S = SingularDiagram(T2, frozenset(range(6)))
    report = degree_bound_test("jones_deriv(1; 2)", 5, [SingularSample("3_1^2", S, 0)])
    assert report.verdict == "Counterexample"
    assert report.value != 0
    with pytest.raises(ValueError):
        degree_bound_test("a2", 2, [SingularSample("x", singularize(T2, 0), 0)])


def test_samples_are_reproducible(table):
    pool = _pool(table)
    a = singular_samples(3, 5, seed=42, knots=pool)
    b = singular_samples(3, 5, seed=42, knots=pool)
    assert [s.to_json() for s in a] == [s.to_json() for s in b]
    assert all(s.seed == 42 and s.diagram.n_double_points == 3 for s in a)


def test_resolution_bilinearity(table):
    """The alternating sum equals iterated one-point differences in any order."""
    pool = _pool(table)
    for d in (1, 2, 3):
        for sample in singular_samples(d, 4, seed=100 + d, knots=pool):
            S = sample.diagram
            for v in ("a2 * a2", "jones_deriv(2; 2)"):
                total = eval_singular(v, S)
                for order in itertools.permutations(sorted(S.double_points)):
                    assert _iterated(v, S.base, list(order)) == total


def _iterated(v, D, points):
    if not points:
        return eval_invariant(v, D)
    p, rest = points[0], points[1:]
    S = singularize(D, p)
    return _iterated(v, resolve(S, p, 1).base, rest) - _iterated(v, resolve(S, p, -1).base, rest)


def test_growth_examples(K):
    r = growth_sequence("a2", K("unknot"), K("3_1"), i_max=6)
    assert r.values == list(range(7))
    assert str(r.fit) == "FitsDegree(1)"
    r = growth_sequence("jones_deriv(0; 2)", K("unknot"), K("3_1"), i_max=8)
    assert r.values == [Fraction(9, 16) ** i for i in range(9)]
    assert not r.fit.fits and r.verdict == "ExceedsDegree(6)"
    r = growth_sequence("jones_deriv(1; 2)", K("unknot"), K("3_1"), i_max=8, n=3)
    assert r.values == [Fraction(9, 16) ** i * Fraction(-5, 9) * i for i in range(9)]
    assert r.law is not None and r.law.holds
    assert r.law.coefficients == [0, Fraction(-5, 9)]
    assert growth_sequence("a2", K("unknot"), K("3_1"), n=2).values == list(range(7))


def test_certified_points_grow_polynomially(K):
    pairs = [("unknot", "3_1"), ("4_1", "5_2"), ("6_1", "3_1")]
    for base, pattern in pairs:
        for v, n in [("jones_deriv(2; 1)", 2), ("alexander_deriv(2; 1)", 2), ("conway_deriv(4; 0)", 4),
                     ("homfly_coeff_deriv(2,1; -1)", 3)]:
            r = growth_sequence(v, K(base), K(pattern), n=n)
            assert r.fit.fits, (v, base, pattern)


def test_derpol_examples(K):
    r = derpol_check("jones", K("3_1"), 2, 1)
    assert r.verdict == "LawHolds" and r.coefficients == [0, Fraction(-5, 9)]
    r = derpol_check("jones", K("3_1"), 2, 0)
    assert r.verdict == "LawHolds" and r.coefficients == [1]
    r = derpol_check("jones", K("3_1"), 1, 1)
    assert r.verdict == "LawHolds" and r.coefficients == [0, 0]


def test_derpol_zero_base(K):
    # 1 + z^2 vanishes at z = I
    r = derpol_check("conway", K("3_1"), I, 1)
    assert r.verdict == "LawFails"


def test_criterion_examples():
    r = criterion_point((2, 0), (1, 2))
    assert r.verdict == BY_CURVATURE and r.witness == "3_1"
    w = r.evaluated[0]
    assert (w.g, w.g01, w.g02) == (Fraction(7, 16), 0, Fraction(1, 2))
    assert w.g10 != 0
    assert criterion_point((1, 0), (3, 4)).verdict == INCONCLUSIVE
    assert criterion_point((2, Fraction(3, 2)), (1, 1)).verdict == INCONCLUSIVE
    assert criterion_point((I, parse_scalar("sqrt-3")), (1, 1)).verdict == INCONCLUSIVE
    with pytest.raises(PoleAtZero):
        criterion_point((0, 1), (0, 0))


def test_criterion_on_the_real_line():
    for b in (2, 3, Fraction(1, 2), -2):
        assert criterion_point((b, 0), (0, 2)).non_vassiliev
    for b in (1, -1):
        assert criterion_point((b, 0), (0, 2)).verdict == INCONCLUSIVE


def test_criterion_odd_z_order_at_zero_stays_silent():
    # dP/dz vanishes at z = 0 and n is odd, so neither rule applies
    assert criterion_point((2, 0), (1, 1)).verdict == INCONCLUSIVE


def _close(points, expected):
    return len(points) == len(expected) and all(any(abs(p - e) < 1e-8 for p in points) for e in expected)


def test_locus_examples(K):
    r = math.sqrt(2) / 2
    L3 = homfly_locus(K("3_1"))
    assert _close(L3.union, [r, -r, 1, -1])
    L4 = homfly_locus(K("4_1"))
    s = math.sqrt(3) / 2
    expected = [complex(s, 0.5), complex(-s, -0.5), complex(s, -0.5), complex(-s, 0.5), 1, -1, 1j, -1j]
    assert _close(L4.union, expected)
    assert _close(intersect_points(L3.union, L4.union), [1, -1])


def test_taylor_examples():
    sin = [0, 1, 0, Fraction(-1, 6)]
    exp = [1, 1, Fraction(1, 2), Fraction(1, 6)]
    assert taylor_criterion(sin, "jones").verdict == "NotVassiliev"
    assert taylor_criterion(sin, "conway").verdict == "VassilievCoefficients"
    assert taylor_criterion(exp, "q").verdict == "Inconclusive"
    assert taylor_criterion(exp, "jones").verdict == "VassilievCoefficients"
    r = taylor_criterion(exp, "alexander")
    assert r.verdict == "VassilievCoefficients" and "misprint" in r.note
    assert taylor_criterion([2, 1], "q").verdict == "NotVassiliev"
    assert taylor_criterion([3, 1], "conway").verdict == "NotVassiliev"
    with pytest.raises(DegenerateG):
        taylor_criterion([1, 0, 1], "jones")


def test_kanenobu_identity(table, K):
    for entry in table:
        k = K(entry.name)
        assert eval_invariant("q_deriv(1; -2)", k) == eval_invariant("jones_deriv(2; 1)", k)


def test_reports_serialize(K):
    import json

    r = growth_sequence("jones_deriv(1; 2)", K("unknot"), K("3_1"), i_max=5, n=1)
    json.dumps(r.to_json())
    json.dumps(criterion_point((2, 0), (1, 2)).to_json())
    json.dumps(homfly_locus(K("3_1")).to_json())
    json.dumps(derpol_check("jones", K("3_1"), 2, 1).to_json())
    json.dumps(taylor_criterion([0, 1], "jones").to_json())


def test_descriptor_text_accepted(K):
    assert eval_invariant(parse_descriptor("a4"), K("5_1")) == eval_invariant("conway_coeff(4)", K("5_1"))


def test_amphichiral_pattern_hides_growth_of_odd_derivatives_at_minus_one(K):
    # J_{4_1} is palindromic, so J'(-1) = 0 and every J'(-1)(4_1^i) vanishes,
    # while the chiral trefoil shows the growth
    assert eval_invariant("jones_deriv(1; -1)", K("4_1")) == 0
    flat = growth_sequence("jones_deriv(1; -1)", K("unknot"), K("4_1"), i_max=8, n=1)
    assert flat.values == [0] * 9 and flat.fit.fits
    assert not growth_sequence("jones_deriv(1; -1)", K("unknot"), K("3_1"), i_max=8, n=1).fit.fits
