"""Tropical convexity: point clouds, the idempotent barycenter, hull tests.

A compact max-plus convex set is represented by a finite generating cloud;
the barycenter of a measure over the cloud is the coordinatewise Maslov
integral of the embedding, i.e. the tropical center of mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .core import NEG_INF, FiniteSpace, Label
from .measures import IdempotentMeasure
from .monad import OuterMeasure, multiply

TropicalPoint = tuple[float, ...]


def _check_point(p: Sequence[float], dim: int | None = None) -> TropicalPoint:
    q = tuple(float(v) for v in p)
    if any(math.isnan(v) or v == math.inf for v in q):
        raise ValueError("coordinates must be reals or -inf")
    if dim is not None and len(q) != dim:
        raise ValueError(f"expected dimension {dim}, got {len(q)}")
    return q


@dataclass(frozen=True)
class PointCloudSpace:
    """A finite space embedded in R^n; every coordinate is finite.

    Barycenters are undefined on -inf coordinates, so clouds reject them.
    """

    space: FiniteSpace
    embed: Mapping[Label, TropicalPoint]

    def __post_init__(self) -> None:
        missing = [p for p in self.space.points if p not in self.embed]
        if missing:
            raise ValueError(f"embedding undefined on {missing!r}")
        dims = set()
        table = {}
        for p in self.space.points:
            q = tuple(float(v) for v in self.embed[p])
            if any(not math.isfinite(v) for v in q):
                raise ValueError("cloud points must have finite coordinates")
            dims.add(len(q))
            table[p] = q
        if len(dims) != 1:
            raise ValueError("inconsistent coordinate dimensions")
        object.__setattr__(self, "embed", table)

    @property
    def dim(self) -> int:
        return len(next(iter(self.embed.values())))

    def point(self, label: Label) -> TropicalPoint:
        return self.embed[label]


def barycenter(cloud: PointCloudSpace, mu: IdempotentMeasure) -> TropicalPoint:
    """Coordinatewise max over the support of (weight + embedded coordinate).

    Equals, coordinate by coordinate, the Maslov integral of the coordinate
    function, and always lies in the tropical span of the support points.
    """
    if mu.space != cloud.space:
        raise ValueError("measure does not live on the cloud's space")
    coords = []
    for k in range(cloud.dim):
        coords.append(
            max(w + cloud.embed[p][k] for p, w in zip(mu.space.points, mu.weights) if w > NEG_INF)
        )
    return tuple(coords)


def algebra_law_check(cloud: PointCloudSpace, M: OuterMeasure) -> bool:
    """Exactly compare mixing-then-averaging with averaging-then-averaging.

    Left side: barycenter of the collapsed measure multiply(M).
    Right side: barycenter of M pushed along the barycenter map, computed
    independently as the coordinatewise max over components.
    """
    if M.base != cloud.space:
        raise ValueError("outer measure does not live over the cloud's space")
    left = barycenter(cloud, multiply(M))
    inner_pts = [barycenter(cloud, m) for m in M.inner]
    right = tuple(
        max(lam + q[k] for lam, q in zip(M.weights, inner_pts) if lam > NEG_INF)
        for k in range(cloud.dim)
    )
    return left == right


def hull_membership(
    generators: Sequence[TropicalPoint], x: Sequence[float]
) -> tuple[bool, tuple[float, ...] | None]:
    """Tropical-span membership by residuation.

    Each generator gets the largest coefficient keeping it below x,
    λ_i = min_k (x_k - g_ik); x belongs to the span iff the combination
    ⊕_i λ_i ⊙ g_i reproduces x exactly, in which case λ is the witness.
    """
    gens = [_check_point(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise ValueError("generators have inconsistent dimensions")
    if any(v == NEG_INF for g in gens for v in g):
        raise ValueError("generators must have finite coordinates")
    q = _check_point(x, dim)
    lam = tuple(min(q[k] - g[k] for k in range(dim)) for g in gens)
    combo = tuple(max(lam[i] + gens[i][k] for i in range(len(gens))) for k in range(dim))
    if combo == q:
        return True, lam
    return False, None


def affine_map_check(
    cloud: PointCloudSpace,
    f: Callable[[TropicalPoint], TropicalPoint],
    mu: IdempotentMeasure,
) -> bool:
    """Whether f commutes with the barycenter on this measure.

    Both sides are computed independently: f applied to the barycenter
    versus the barycenter taken after re-embedding every cloud point
    through f.  Exact for max-plus affine maps such as coordinate
    projections and constant shifts.
    """
    lhs = _check_point(f(barycenter(cloud, mu)))
    moved = PointCloudSpace(cloud.space, {p: f(cloud.embed[p]) for p in cloud.space.points})
    rhs = barycenter(moved, mu)
    return lhs == rhs
