import itertools
import math

import pytest
from hypothesis import given

from conftest import dyadic_weight
from maslov import (
    NEG_INF,
    FiniteFunction,
    FiniteSpace,
    MetricSpace,
    metric_closure,
    odot,
    oplus,
    pointwise_max,
    product_space,
    space,
    weight_distance,
)


class TestSemiring:
    def test_oplus_examples(self):
        assert oplus(3, 5) == 5
        assert oplus(NEG_INF, -2) == -2
        assert oplus(0, 0) == 0

    def test_odot_examples(self):
        assert odot(2, 3) == 5
        assert odot(NEG_INF, 7) == NEG_INF
        assert odot(0, -1.25) == -1.25

    @given(dyadic_weight, dyadic_weight, dyadic_weight)
    def test_semiring_laws(self, a, b, c):
        assert oplus(a, b) == oplus(b, a)
        assert odot(a, b) == odot(b, a)
        assert oplus(oplus(a, b), c) == oplus(a, oplus(b, c))
        assert odot(odot(a, b), c) == odot(a, odot(b, c))
        assert odot(a, oplus(b, c)) == oplus(odot(a, b), odot(a, c))
        assert oplus(a, a) == a
        assert oplus(a, NEG_INF) == a
        assert odot(a, 0.0) == a
        assert odot(a, NEG_INF) == NEG_INF

    def test_rejects_nan_and_plus_inf(self):
        with pytest.raises(ValueError):
            oplus(float("nan"), 0)
        with pytest.raises(ValueError):
            odot(float("inf"), 0)


class TestWeightDistance:
    def test_examples(self):
        assert weight_distance(NEG_INF, 0) == 1
        assert weight_distance(0, 0) == 0
        assert weight_distance(math.log(2), math.log(3)) == pytest.approx(1, abs=1e-12)

    @given(dyadic_weight, dyadic_weight, dyadic_weight)
    def test_metric_axioms(self, a, b, c):
        assert weight_distance(a, b) == weight_distance(b, a)
        assert weight_distance(a, a) == 0
        assert (weight_distance(a, b) == 0) == (a == b)
        assert weight_distance(a, c) <= weight_distance(a, b) + weight_distance(b, c) + 1e-15


class TestFiniteSpace:
    def test_order_and_lookup(self):
        X = FiniteSpace(("b", "a"))
        assert X.points == ("b", "a")
        assert X.index("a") == 1
        assert "b" in X and "z" not in X

    def test_rejects_bad_spaces(self):
        with pytest.raises(ValueError):
            FiniteSpace(())
        with pytest.raises(ValueError):
            FiniteSpace(("a", "a"))

    def test_product_is_row_major(self):
        X, Y = space("ab"), space("uv")
        P = product_space(X, Y)
        assert P.points == (("a", "u"), ("a", "v"), ("b", "u"), ("b", "v"))
        assert P.factors == (X, Y)


class TestFiniteFunction:
    def test_rejects_infinite_values(self):
        X = space("ab")
        with pytest.raises(ValueError):
            FiniteFunction(X, (0.0, NEG_INF))

    def test_pointwise_ops(self):
        X = space("ab")
        phi = FiniteFunction(X, (1.0, 4.0))
        psi = FiniteFunction(X, (2.0, 3.0))
        assert pointwise_max(phi, psi).values == (2.0, 4.0)
        assert phi.shift(1.5).values == (2.5, 5.5)


def brute_force_shortest_paths(raw, n):
    """Minimum over all simple paths, as an independent closure oracle."""
    best = [[raw[i][j] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(1, n - 1):
                for mids in itertools.permutations(
                    [m for m in range(n) if m not in (i, j)], k
                ):
                    path = [i, *mids, j]
                    length = sum(raw[a][b] for a, b in zip(path, path[1:]))
                    best[i][j] = min(best[i][j], length)
    return best


class TestMetricClosure:
    def test_shortcut_through_midpoint(self):
        X = space("abc")
        raw = [[0, 1, 5], [1, 0, 1], [5, 1, 0]]
        closed = metric_closure(X, raw)
        expected = brute_force_shortest_paths(raw, 3)
        assert closed.d("a", "c") == 2
        assert [list(row) for row in closed.dist] == expected

    def test_idempotent_on_metrics(self):
        X = space("abc")
        raw = [[0, 1.0, 1.5], [1.0, 0, 1.25], [1.5, 1.25, 0]]
        closed = metric_closure(X, raw)
        assert [list(r) for r in closed.dist] == raw
        assert metric_closure(X, closed.dist).dist == closed.dist

    def test_two_points_unchanged(self):
        X = space("ab")
        assert metric_closure(X, [[0, 4], [4, 0]]).d("a", "b") == 4

    def test_rejects_asymmetric_or_negative(self):
        X = space("ab")
        with pytest.raises(ValueError):
            metric_closure(X, [[0, 1], [2, 0]])
        with pytest.raises(ValueError):
            metric_closure(X, [[0, -1], [-1, 0]])

    def test_random_closures_are_metrics(self):
        import random

        rng = random.Random(4)
        for _ in range(25):
            n = rng.randint(2, 5)
            X = FiniteSpace(tuple(f"p{i}" for i in range(n)))
            raw = [[0.0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    raw[i][j] = raw[j][i] = rng.randrange(1, 9) / 4.0
            closed = metric_closure(X, raw)
            assert isinstance(closed, MetricSpace)  # constructor enforces the axioms
            expected = brute_force_shortest_paths(raw, n)
            assert [list(row) for row in closed.dist] == expected
