from __future__ import annotations

import json

import pytest

from knotinv.errors import GridBudgetExceeded
from knotinv.hatops import bar_op, hat_op, rank_report, star_op
from knotinv.polyalg import LaurentPoly
from knotinv.vassiliev import eval_invariant

x = LaurentPoly.var("x")


def test_bar_examples(K):
    r = bar_op("a2 * a2", 4, K("unknot"), K("3_1"))
    assert r.polynomial == x * x
    assert r.evaluate_at((1,)) == 1
    assert bar_op("a2", 2, K("4_1"), K("3_1")).polynomial == x - 1
    assert bar_op("1", 3, K("unknot"), K("5_1")).polynomial == LaurentPoly.const(1)


def test_star_examples(K):
    r = star_op("a2", 2, K("3_1"), K("4_1"))
    assert r.polynomial == x - 1
    assert r.evaluate_at((0,)) == -1
    r = star_op("a2 * jones_deriv(3; 1)", 5, K("3_1"), K("unknot"))
    assert r.degree_ok()
    assert r.evaluate_at((1,)) == 54
    assert star_op("const(2/3)", 2, K("3_1"), K("4_1")).evaluate_at((5,)) == pytest.approx(2 / 3)


def test_hat_examples(K):
    r = hat_op("a2", 2, K("unknot"), [K("3_1")])
    assert r.variables == ("x_0", "x_1")
    assert r.polynomial == LaurentPoly.var("x_1")
    assert hat_op("a2", 2, K("3_1"), []).polynomial == LaurentPoly.var("x_0")
    assert hat_op("1", 1, K("3_1"), [K("4_1")]).polynomial == LaurentPoly.const(1)


def test_hat_specializes_to_bar_and_star(K):
    v = "jones_deriv(2; 1) + a4"
    h = hat_op(v, 4, K("4_1"), [K("3_1")])
    bar = bar_op(v, 4, K("3_1"), K("4_1"))
    star = star_op(v, 4, K("3_1"), K("4_1"))
    for i in range(7):
        # x_1 = 1 gives L # K^i; x_0 = 1 gives K # L^i
        assert h.evaluate_at((i, 1)) == bar.evaluate_at((i,))
        assert h.evaluate_at((1, i)) == star.evaluate_at((i,))


def test_additive_invariants_give_affine_results(table, K):
    for name in ("3_1", "4_1", "5_2", "6_2"):
        for v, n in (("a2", 2), ("jones_deriv(3; 1)", 3)):
            for r in (bar_op(v, n, K("5_1"), K(name)), star_op(v, n, K("5_1"), K(name))):
                p = r.polynomial.drop_unused()
                assert all(p.max_degree(var) <= 1 for var in p.variables)


def test_recovery_and_grid_consistency(table, K):
    for v, n in (("a2 * a2", 4), ("jones_deriv(2; 1)", 2)):
        for name in ("3_1", "4_1", "5_1"):
            bar = bar_op(v, n, K("unknot"), K(name))
            star = star_op(v, n, K("4_1"), K(name))
            value = eval_invariant(v, K(name))
            assert bar.evaluate_at((1,)) == value
            assert star.evaluate_at((0,)) == value
            assert bar.grid_consistent() and star.grid_consistent()
            assert bar.degree_ok() and star.degree_ok()


def test_grid_budget(K):
    with pytest.raises(GridBudgetExceeded):
        hat_op("a2", 4, K("3_1"), [K("4_1")] * 5)
    with pytest.raises(GridBudgetExceeded):
        hat_op("a2", 2, K("3_1"), [K("4_1")], budget=8)


def test_hat_json(K):
    r = hat_op("a2", 2, K("unknot"), [K("3_1")])
    data = json.loads(json.dumps(r.to_json()))
    assert data["polynomial"] == "1*x_1^1"
    assert len(data["grid"]) == 9


def test_rank_examples(K):
    assert rank_report(["1", "a2"], [K("unknot"), K("3_1")]).rank == 2
    r = rank_report(["a2", "scale(2, a2)"], [K("3_1"), K("4_1"), K("5_2")])
    assert r.rank == 1 and r.independent == [0]
    six = ["1", "a2", "jones_deriv(3; 1)", "a2 * a2", "a4", "jones_deriv(4; 1)"]
    names = ["unknot", "3_1", "4_1", "5_1", "5_2", "6_1"]
    r = rank_report(six, [K(n) for n in names], names=names)
    assert r.rank == 6 and r.independent == list(range(6))
    json.dumps(r.to_json())


def test_rank_independent_subset_is_first(K):
    r = rank_report(["a2", "a2 + 1", "1", "a4"], [K(n) for n in ("unknot", "3_1", "4_1", "5_1")])
    assert r.rank == 3 and r.independent == [0, 1, 3]


def test_rank_rejects_inexact_values(K):
    with pytest.raises(ValueError):
        rank_report(["jones_deriv(0; sqrt2)"], [K("3_1")])
