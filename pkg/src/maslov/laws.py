"""Seeded random instance generators and the algebraic law harness.

Weights and function values are drawn from dyadic rationals (quarters) in
small ranges, where float max/+ are exact, so every law below is checked
with exact equality.  Each checker reports the first counterexample it
finds or the number of cases that passed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .convexity import PointCloudSpace, algebra_law_check, barycenter, hull_membership
from .core import NEG_INF, FiniteFunction, FiniteSpace, pointwise_max
from .functor import PointMap, identity_map, lies_in_subspace, pushforward
from .measures import IdempotentMeasure, dirac, integrate, normalize, support
from .monad import (
    ClosedSet,
    OuterMeasure,
    dirac_lift,
    hyperspace_embed,
    hyperspace_square,
    marginal,
    multiply,
    outer_dirac,
    outer_eval,
    tensor,
    tensor_many,
    flatten_measure,
)


@dataclass(frozen=True)
class LawReport:
    name: str
    cases: int
    ok: bool
    counterexample: str | None = None

    @property
    def status(self) -> str:
        return "ok" if self.ok else f"violated: {self.counterexample}"


def _fail(name: str, cases: int, message: str) -> LawReport:
    return LawReport(name=name, cases=cases, ok=False, counterexample=message)


# ---------------------------------------------------------------- generators

def rand_weight(rng: random.Random, ninf_prob: float = 0.2) -> float:
    """A dyadic weight in [-4, 0], or -inf with the given probability."""
    if rng.random() < ninf_prob:
        return NEG_INF
    return -rng.randrange(0, 17) / 4.0


def rand_space(rng: random.Random, max_points: int, prefix: str = "p") -> FiniteSpace:
    n = rng.randint(1, max_points)
    return FiniteSpace(tuple(f"{prefix}{i}" for i in range(n)))


def rand_measure(rng: random.Random, space: FiniteSpace) -> IdempotentMeasure:
    raw = [rand_weight(rng) for _ in space.points]
    if max(raw) == NEG_INF:
        raw[rng.randrange(len(raw))] = -rng.randrange(0, 17) / 4.0
    return normalize(space, raw)


def rand_function(rng: random.Random, space: FiniteSpace) -> FiniteFunction:
    return FiniteFunction(space, tuple(rng.randrange(-16, 17) / 4.0 for _ in space.points))


def rand_map(rng: random.Random, source: FiniteSpace, target: FiniteSpace) -> PointMap:
    return PointMap(source, target, {x: rng.choice(target.points) for x in source.points})


def rand_surjection(rng: random.Random, source: FiniteSpace, target: FiniteSpace) -> PointMap:
    if len(source) < len(target):
        raise ValueError("a surjection needs at least as many source points")
    xs = list(source.points)
    rng.shuffle(xs)
    table = {}
    for x, y in zip(xs, target.points):
        table[x] = y
    for x in xs[len(target):]:
        table[x] = rng.choice(target.points)
    return PointMap(source, target, table)


def rand_outer(rng: random.Random, space: FiniteSpace, max_inner: int = 3) -> OuterMeasure:
    k = rng.randint(1, max_inner)
    inner = tuple(rand_measure(rng, space) for _ in range(k))
    raw = [rand_weight(rng) for _ in range(k)]
    if max(raw) == NEG_INF:
        raw[rng.randrange(k)] = 0.0
    top = max(raw)
    weights = tuple(w - top if w > NEG_INF else NEG_INF for w in raw)
    return OuterMeasure(space, inner, weights)


def rand_nested(
    rng: random.Random, space: FiniteSpace, max_outer: int = 2
) -> list[tuple[float, OuterMeasure]]:
    """A finitely-supported measure over outer measures, normalized."""
    k = rng.randint(1, max_outer)
    raw = [rand_weight(rng) for _ in range(k)]
    if max(raw) == NEG_INF:
        raw[rng.randrange(k)] = 0.0
    top = max(raw)
    return [
        (w - top if w > NEG_INF else NEG_INF, rand_outer(rng, space))
        for w in raw
    ]


def rand_closed_set(rng: random.Random, space: FiniteSpace) -> ClosedSet:
    members = [p for p in space.points if rng.random() < 0.5]
    if not members:
        members = [rng.choice(space.points)]
    return ClosedSet(space, frozenset(members))


def rand_cloud(rng: random.Random, space: FiniteSpace, dim: int = 3) -> PointCloudSpace:
    return PointCloudSpace(
        space,
        {p: tuple(rng.randrange(-16, 17) / 4.0 for _ in range(dim)) for p in space.points},
    )


def separating_family(space: FiniteSpace, scale: float = 4.0) -> list[FiniteFunction]:
    """Indicator-like functions: 0 at one point, -scale elsewhere.

    Scaled past the weight spread they recover atom weights one by one;
    the unscaled family does not separate weights below -1.
    """
    out = []
    for i in range(len(space)):
        out.append(
            FiniteFunction(space, tuple(0.0 if j == i else -scale for j in range(len(space))))
        )
    return out


def function_grid(space: FiniteSpace, values: Sequence[float] = (-2.0, -1.0, 0.0, 1.0)) -> list[FiniteFunction]:
    """Every function with values in a small set; brute-force test family."""
    return [
        FiniteFunction(space, vals)
        for vals in itertools.product(values, repeat=len(space))
    ]


# ------------------------------------------------------------------ checkers

def check_maslov_axioms(rng: random.Random, cases: int, max_points: int = 5) -> LawReport:
    """Normalization, shift homogeneity and max-additivity of the integral."""
    name = "maslov"
    for k in range(cases):
        space = rand_space(rng, max_points)
        mu = rand_measure(rng, space)
        phi = rand_function(rng, space)
        psi = rand_function(rng, space)
        c = rng.randrange(-16, 17) / 4.0
        if integrate(mu, FiniteFunction.constant(space, c)) != c:
            return _fail(name, k, f"mu(c)!=c for mu={mu!r}, c={c}")
        if integrate(mu, phi.shift(c)) != c + integrate(mu, phi):
            return _fail(name, k, f"shift homogeneity fails for mu={mu!r}, c={c}, phi={phi.values}")
        lhs = integrate(mu, pointwise_max(phi, psi))
        rhs = max(integrate(mu, phi), integrate(mu, psi))
        if lhs != rhs:
            return _fail(name, k, f"max-additivity fails for mu={mu!r}")
    return LawReport(name, cases, True)


def check_monad_laws(seed: int = 0, cases: int = 200, max_points: int = 4) -> LawReport:
    """Both unit laws, the defining mixing identity, and associativity."""
    name = "monad"
    rng = random.Random(seed)
    for k in range(cases):
        space = rand_space(rng, max_points)
        mu = rand_measure(rng, space)
        if multiply(outer_dirac(mu)) != mu:
            return _fail(name, k, f"outer unit law fails for {mu!r}")
        if multiply(dirac_lift(mu)) != mu:
            return _fail(name, k, f"inner unit law fails for {mu!r}")

        M = rand_outer(rng, space)
        zeta = multiply(M)
        for phi in separating_family(space) + [rand_function(rng, space)]:
            if integrate(zeta, phi) != outer_eval(M, phi):
                return _fail(name, k, f"mixing identity fails for {M!r} at phi={phi.values}")

        xi = rand_nested(rng, space)
        side_a = multiply(
            OuterMeasure(space, tuple(multiply(M) for _, M in xi), tuple(l for l, _ in xi))
        )
        inner = []
        weights = []
        for lam, M in xi:
            for kap, m in zip(M.weights, M.inner):
                inner.append(m)
                weights.append(lam + kap)
        side_b = multiply(OuterMeasure(space, tuple(inner), tuple(weights)))
        if side_a != side_b:
            return _fail(name, k, f"associativity fails for nested instance over {space.points}")
    return LawReport(name, cases, True)


def check_algebra_laws(rng: random.Random, cases: int, max_points: int = 4, dim: int = 3) -> LawReport:
    """Barycenter laws: unit, mixing compatibility, and span membership."""
    name = "algebra"
    for k in range(cases):
        space = rand_space(rng, max_points)
        cloud = rand_cloud(rng, space, dim)
        for p in space.points:
            if barycenter(cloud, dirac(space, p)) != cloud.point(p):
                return _fail(name, k, f"barycenter of a Dirac differs from the point {p!r}")
        M = rand_outer(rng, space)
        if not algebra_law_check(cloud, M):
            return _fail(name, k, f"barycenter/mixing compatibility fails over {space.points}")
        mu = rand_measure(rng, space)
        member, _ = hull_membership(
            [cloud.point(p) for p in sorted(support(mu), key=space.index)],
            barycenter(cloud, mu),
        )
        if not member:
            return _fail(name, k, f"barycenter escapes the span of the support for {mu!r}")
    return LawReport(name, cases, True)


def check_tensor_laws(rng: random.Random, cases: int, max_points: int = 3) -> LawReport:
    """Tensor marginals recover the factors; tensor is associative."""
    name = "tensor"
    for k in range(cases):
        X = rand_space(rng, max_points, "x")
        Y = rand_space(rng, max_points, "y")
        mu, nu = rand_measure(rng, X), rand_measure(rng, Y)
        t = tensor(mu, nu)
        if marginal(t, 0) != mu or marginal(t, 1) != nu:
            return _fail(name, k, f"tensor marginals fail for {mu!r}, {nu!r}")
        Z = rand_space(rng, max_points, "z")
        tau = rand_measure(rng, Z)
        left = flatten_measure(tensor(tensor(mu, nu), tau))
        right = flatten_measure(tensor(mu, tensor(nu, tau)))
        if left != right or left != tensor_many([mu, nu, tau]):
            return _fail(name, k, "tensor associativity fails")
    return LawReport(name, cases, True)


def check_hyperspace_laws(rng: random.Random, cases: int, max_points: int = 5) -> LawReport:
    """The set-family mixing square commutes; singletons embed as Diracs."""
    name = "hyperspace"
    for k in range(cases):
        space = rand_space(rng, max_points)
        family = [rand_closed_set(rng, space) for _ in range(rng.randint(1, 3))]
        mixed, embedded_union = hyperspace_square(family)
        if mixed != embedded_union:
            return _fail(name, k, f"hyperspace square fails for {family!r}")
        for p in space.points:
            if hyperspace_embed(ClosedSet(space, frozenset([p]))) != dirac(space, p):
                return _fail(name, k, f"singleton embedding differs from Dirac at {p!r}")
    return LawReport(name, cases, True)


def check_functor_laws(rng: random.Random, cases: int, max_points: int = 4) -> LawReport:
    """Identity/composition functoriality and the support image law."""
    name = "functor"
    for k in range(cases):
        X = rand_space(rng, max_points, "x")
        Y = rand_space(rng, max_points, "y")
        Z = rand_space(rng, max_points, "z")
        f = rand_map(rng, X, Y)
        g = rand_map(rng, Y, Z)
        mu = rand_measure(rng, X)
        if pushforward(identity_map(X), mu) != mu:
            return _fail(name, k, "identity law fails")
        if pushforward(g, pushforward(f, mu)) != pushforward(f.then(g), mu):
            return _fail(name, k, "composition law fails")
        if support(pushforward(f, mu)) != frozenset(f.table[x] for x in support(mu)):
            return _fail(name, k, "support image law fails")
    return LawReport(name, cases, True)


def check_preimage_intersection(rng: random.Random, cases: int, max_points: int = 4) -> LawReport:
    """Support containment commutes with preimages and intersections."""
    name = "preimage"
    for k in range(cases):
        X = rand_space(rng, max_points, "x")
        Y = rand_space(rng, max_points, "y")
        f = rand_map(rng, X, Y)
        mu = rand_measure(rng, X)
        B = frozenset(y for y in Y.points if rng.random() < 0.5)
        if lies_in_subspace(pushforward(f, mu), B) != lies_in_subspace(mu, f.preimage(B)):
            return _fail(name, k, f"preimage law fails for B={sorted(B)!r}")
        A1 = frozenset(x for x in X.points if rng.random() < 0.6)
        A2 = frozenset(x for x in X.points if rng.random() < 0.6)
        both = lies_in_subspace(mu, A1) and lies_in_subspace(mu, A2)
        if lies_in_subspace(mu, A1 & A2) != both:
            return _fail(name, k, "intersection law fails")
    return LawReport(name, cases, True)


_CHECKERS: dict[str, Callable[[random.Random, int], LawReport]] = {
    "maslov": lambda rng, cases: check_maslov_axioms(rng, cases),
    "algebra": lambda rng, cases: check_algebra_laws(rng, cases),
    "tensor": lambda rng, cases: check_tensor_laws(rng, cases),
    "hyperspace": lambda rng, cases: check_hyperspace_laws(rng, cases),
    "functor": lambda rng, cases: check_functor_laws(rng, cases),
    "preimage": lambda rng, cases: check_preimage_intersection(rng, cases),
}


def run_all_laws(seed: int = 0, cases: int = 200, max_points: int = 4) -> dict[str, LawReport]:
    """Run every law suite with one seed; deterministic for fixed arguments."""
    reports = {"monad": check_monad_laws(seed=seed, cases=cases, max_points=max_points)}
    for name, checker in _CHECKERS.items():
        reports[name] = checker(random.Random(f"{seed}/{name}"), cases)
    return reports
