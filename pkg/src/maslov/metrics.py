"""Lipschitz-dual pseudometrics between measures on a finite metric space.

dhat_n(μ, ν) is the supremum of |μ(φ) - ν(φ)| over functions φ with
Lipschitz constant at most n.  Two independent evaluators are provided:

* a closed form, max over μ-atoms of the min over ν-atoms of
  (λ_i - κ_j + n·d_ij), symmetrized - the sup is attained at cone
  functions φ = -n·d(x_i, ·), and the Lipschitz constraint caps it from
  above;
* a brute-force grid oracle that sweeps Lipschitz-feasible value vectors.

The oracle gates the closed form in the test suite; the closed form is
what the rest of the library uses.  Both evaluators accept pseudometric
tables at the array level, which is what the iterated (measure-of-measure)
distance needs.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .core import NEG_INF, MetricSpace
from .measures import IdempotentMeasure
from .monad import OuterMeasure

_SLACK_EPS = 1e-9


def maxmin_gap(
    dist: Sequence[Sequence[float]], n: int, lam: Sequence[float], kap: Sequence[float]
) -> float:
    """Closed-form dual gap on raw weight vectors over a (pseudo)distance table."""
    sup_l = [i for i, w in enumerate(lam) if w > NEG_INF]
    sup_k = [j for j, w in enumerate(kap) if w > NEG_INF]
    if not sup_l or not sup_k:
        raise ValueError("weight vectors must each have a finite entry")

    def one_sided(rows, cols, a, b):
        return max(min(a[i] - b[j] + n * dist[i][j] for j in cols) for i in rows)

    return max(one_sided(sup_l, sup_k, lam, kap), one_sided(sup_k, sup_l, kap, lam))


def _check_pair(n: int, X: MetricSpace, mu: IdempotentMeasure, nu: IdempotentMeasure) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError("the Lipschitz class bound n must be a positive integer")
    if mu.space != X.space or nu.space != X.space:
        raise ValueError("measures must live on the metric space's point set")


def dhat(n: int, X: MetricSpace, mu: IdempotentMeasure, nu: IdempotentMeasure) -> float:
    """sup |μ(φ) - ν(φ)| over n-Lipschitz φ, via the closed form."""
    _check_pair(n, X, mu, nu)
    return maxmin_gap(X.dist, n, mu.weights, nu.weights)


def dtilde(n: int, X: MetricSpace, mu: IdempotentMeasure, nu: IdempotentMeasure) -> float:
    """dhat scaled by 1/n; makes the Dirac embedding an exact isometry."""
    return dhat(n, X, mu, nu) / n


def grid_gap(
    dist: Sequence[Sequence[float]],
    n: int,
    lam: Sequence[float],
    kap: Sequence[float],
    *,
    step: float = 0.01,
    radius: float,
    max_cells: int = 4_000_000,
) -> float:
    """Brute-force dual gap: sweep value vectors on a grid of spacing `step`.

    The first point is pinned to value 0 (weak additivity makes the gap
    shift-invariant); the remaining values range over multiples of `step`
    within [-radius, radius].  Lipschitz feasibility is checked with one
    grid-step of additive slack so the rounded optimizer stays on the
    grid; this keeps the oracle within one step of the true supremum.
    """
    m = len(lam)
    if len(kap) != m or len(dist) != m:
        raise ValueError("inconsistent table sizes")
    if m == 1:
        return 0.0
    if step <= 0 or radius <= 0:
        raise ValueError("step and radius must be positive")

    slack = step + _SLACK_EPS
    axes: list[np.ndarray] = []
    for i in range(1, m):
        bound = min(radius + step, n * dist[0][i] + slack)
        k = int(math.floor(bound / step + 1e-9))
        axes.append(np.arange(-k, k + 1, dtype=float) * step)

    cells = 1
    for a in axes:
        cells *= a.size
    if cells > max_cells:
        raise ValueError(f"oracle grid has {cells} cells, above the cap {max_cells}")

    vs: list[np.ndarray] = [np.zeros(())]  # pinned base point
    for i, a in enumerate(axes):
        shape = [1] * (m - 1)
        shape[i] = a.size
        vs.append(a.reshape(shape))

    feasible = np.ones((), dtype=bool)
    for i in range(1, m):
        for j in range(i + 1, m):
            feasible = feasible & (np.abs(vs[i] - vs[j]) <= n * dist[i][j] + slack)

    def evaluate(weights: Sequence[float]) -> np.ndarray:
        acc = None
        for i, w in enumerate(weights):
            if w == NEG_INF:
                continue
            term = vs[i] + w
            acc = term if acc is None else np.maximum(acc, term)
        assert acc is not None
        return acc

    gap = np.abs(evaluate(lam) - evaluate(kap))
    gap = np.where(feasible, gap, -np.inf)
    return float(np.max(gap))


def default_radius(
    n: int, X: MetricSpace, mu: IdempotentMeasure, nu: IdempotentMeasure
) -> float:
    """n times the diameter plus the deepest finite weight in either measure."""
    wmin = min(
        [w for w in mu.weights if w > NEG_INF] + [w for w in nu.weights if w > NEG_INF]
    )
    return n * X.diameter + abs(wmin)


def dhat_oracle(
    n: int,
    X: MetricSpace,
    mu: IdempotentMeasure,
    nu: IdempotentMeasure,
    *,
    step: float = 0.01,
    radius: float | None = None,
    max_cells: int = 4_000_000,
) -> float:
    """Grid-sweep evaluation of the dual gap, independent of the closed form."""
    _check_pair(n, X, mu, nu)
    if radius is None:
        radius = max(default_radius(n, X, mu, nu), step)
    return grid_gap(
        X.dist, n, mu.weights, nu.weights, step=step, radius=radius, max_cells=max_cells
    )


def inner_distance_table(
    n: int, X: MetricSpace, measures: Sequence[IdempotentMeasure]
) -> list[list[float]]:
    """Pairwise dtilde table over a list of measures (a pseudometric)."""
    k = len(measures)
    table = [[0.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            v = dtilde(n, X, measures[i], measures[j])
            table[i][j] = v
            table[j][i] = v
    return table


def outer_dtilde(n: int, X: MetricSpace, M: OuterMeasure, N: OuterMeasure) -> float:
    """The iterated pseudometric one level up: dtilde over (measures, dtilde).

    The ground set is the combined list of inner measures with the dtilde
    pseudometric between them; the same closed form applies because the
    cone-function argument only needs the triangle inequality.
    """
    if M.base != X.space or N.base != X.space:
        raise ValueError("outer measures must live over the metric space's point set")
    points = list(M.inner) + list(N.inner)
    ground = inner_distance_table(n, X, points)
    lam = list(M.weights) + [NEG_INF] * len(N.inner)
    kap = [NEG_INF] * len(M.inner) + list(N.weights)
    return maxmin_gap(ground, n, lam, kap) / n
