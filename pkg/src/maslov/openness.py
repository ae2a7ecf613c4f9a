"""Openness constructions for the measure functor on finite spaces.

Three computational devices live here:

* sequence lifting through a collapse map (one doubled fiber), plus the
  factorization of an arbitrary finite surjection into collapses;
* lifting of couplings through a collapse applied to both coordinates,
  with the two characteristic identities checked exactly;
* the max-marginal coupling correspondence: feasibility, tight-pattern
  enumeration of the (non-convex) feasible set, and an exact best
  approximation gap showing the correspondence admits no continuous
  selection at the canonical two-point instance;

together with a finite-depth Milyutin-style builder producing a
measure-valued selection supported inside fibers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .core import (
    NEG_INF,
    FiniteFunction,
    FiniteSpace,
    Label,
    MetricSpace,
    ProductSpace,
    as_weight,
    product_space,
)
from .functor import PointMap, lift_along_surjection, pushforward
from .measures import IdempotentMeasure, dirac, integrate
from .monad import marginal


class InfeasibleError(ValueError):
    """An instance fails a feasibility precondition (not a schema problem)."""


@dataclass(frozen=True)
class CollapseMap:
    """A surjection collapsing exactly one pair of points; all other fibers are singletons."""

    map: PointMap

    def __post_init__(self) -> None:
        f = self.map
        if len(f.source) != len(f.target) + 1:
            raise ValueError("a collapse map drops exactly one point")
        if not f.is_surjective:
            raise ValueError("a collapse map must be surjective")
        doubled = [y for y in f.target.points if len(f.fiber(y)) == 2]
        if len(doubled) != 1:
            raise ValueError("a collapse map must have exactly one two-point fiber")
        pair = sorted(f.fiber(doubled[0]), key=f.source.index)
        object.__setattr__(self, "_doubled", (pair[0], pair[1]))
        object.__setattr__(self, "_merged", doubled[0])

    @property
    def doubled(self) -> tuple[Label, Label]:
        """The two source points sharing a fiber, in canonical source order."""
        return self._doubled  # type: ignore[attr-defined]

    @property
    def merged_target(self) -> Label:
        return self._merged  # type: ignore[attr-defined]


def lift_open_collapse(
    f: CollapseMap,
    mu0: IdempotentMeasure,
    nu_seq: Sequence[IdempotentMeasure],
    nu0: IdempotentMeasure | None = None,
) -> list[IdempotentMeasure]:
    """Lift a sequence of target measures through a collapse, anchored at μ0.

    The doubled-fiber atom with the larger μ0-weight tracks the image
    weight exactly; the other is clipped at its own μ0-weight.  Every lift
    pushes forward to its ν_k exactly, and the lifts converge to μ0
    (atomwise in the exponential weight metric) whenever ν_k converges to
    the image of μ0.

    `nu0`, when given, must equal the pushforward of μ0 exactly.
    """
    pm = f.map
    if mu0.space != pm.source:
        raise ValueError("anchor measure does not live on the source")
    push0 = pushforward(pm, mu0)
    if nu0 is not None and nu0 != push0:
        raise InfeasibleError("marginal mismatch: nu0 differs from the image of mu0")
    p, q = f.doubled
    if mu0.weight(p) >= mu0.weight(q):
        hi, lo = p, q
    else:
        hi, lo = q, p
    alpha_lo = mu0.weight(lo)
    y1 = pm.table[hi]

    lifts = []
    for nu_k in nu_seq:
        if nu_k.space != pm.target:
            raise ValueError("sequence measures must live on the target")
        beta1 = nu_k.weight(y1)
        weights = []
        for x in pm.source.points:
            if x == hi:
                weights.append(beta1)
            elif x == lo:
                weights.append(min(beta1, alpha_lo))
            else:
                weights.append(nu_k.weight(pm.table[x]))
        mu_k = IdempotentMeasure(pm.source, tuple(weights))
        if pushforward(pm, mu_k) != nu_k:
            raise ValueError("lift failed to reproduce its marginal")
        lifts.append(mu_k)
    return lifts


def factor_surjection(f: PointMap) -> tuple[list[CollapseMap], PointMap]:
    """Factor a finite surjection into single-point collapses and a bijection.

    Returns (collapses, relabel) with f = relabel ∘ c_k ∘ ... ∘ c_1,
    applying c_1 first.  Each collapse merges one non-representative point
    into the first source point of its fiber.
    """
    if not f.is_surjective:
        raise ValueError("only surjections factor into collapses")
    rep = {}
    for y in f.target.points:
        rep[y] = min(f.fiber(y), key=f.source.index)
    extras = [x for x in f.source.points if x != rep[f.table[x]]]

    collapses = []
    current = f.source
    for x in extras:
        mate = rep[f.table[x]]
        smaller = FiniteSpace(tuple(p for p in current.points if p != x))
        table = {p: (mate if p == x else p) for p in current.points}
        collapses.append(CollapseMap(PointMap(current, smaller, table)))
        current = smaller
    relabel = PointMap(current, f.target, {p: f.table[p] for p in current.points})
    return collapses, relabel


def lift_open_surjection(
    f: PointMap,
    mu0: IdempotentMeasure,
    nu_seq: Sequence[IdempotentMeasure],
    nu0: IdempotentMeasure | None = None,
) -> list[IdempotentMeasure]:
    """Lift a sequence through an arbitrary finite surjection.

    Composes the per-collapse lifts along the factorization of f; each
    stage anchors at the pushforward of μ0 reached so far, so the final
    lifts push to ν_k exactly and converge to μ0.
    """
    if mu0.space != f.source:
        raise ValueError("anchor measure does not live on the source")
    if nu0 is not None and nu0 != pushforward(f, mu0):
        raise InfeasibleError("marginal mismatch: nu0 differs from the image of mu0")
    collapses, relabel = factor_surjection(f)
    anchors = [mu0]
    for c in collapses:
        anchors.append(pushforward(c.map, anchors[-1]))
    seq = [lift_along_surjection(relabel, nu_k) for nu_k in nu_seq]
    for c, anchor in zip(reversed(collapses), reversed(anchors[:-1])):
        seq = lift_open_collapse(c, anchor, seq)
    return seq


def bicommutative_lift(
    f: CollapseMap, mu: IdempotentMeasure, nu: IdempotentMeasure
) -> IdempotentMeasure:
    """Lift a coupling through a collapse applied to both coordinates.

    Given μ on the source and a coupling ν on target × target whose first
    marginal equals the image of μ, produce ν' on source × source with

        first marginal of ν' = μ  and  (f × f) image of ν' = ν,

    via the row-capped pullback λ'(x, x') = min(μ(x), ν(f x, f x')).  Both
    identities are checked exactly before returning.
    """
    pm = f.map
    if mu.space != pm.source:
        raise ValueError("measure does not live on the source")
    if not isinstance(nu.space, ProductSpace) or nu.space.factors != (pm.target, pm.target):
        raise ValueError("coupling must live on target × target")
    if marginal(nu, 0) != pushforward(pm, mu):
        raise InfeasibleError("first marginal of the coupling differs from the image of mu")

    prod = product_space(pm.source, pm.source)
    weights = tuple(
        min(mu.weight(x), nu.weight((pm.table[x], pm.table[xp])))
        for (x, xp) in prod.points
    )
    lifted = IdempotentMeasure(prod, weights)

    if marginal(lifted, 0) != mu:
        raise ValueError("lift failed the first-marginal identity")
    both = PointMap(prod, nu.space, {(x, xp): (pm.table[x], pm.table[xp]) for x, xp in prod.points})
    if pushforward(both, lifted) != nu:
        raise ValueError("lift failed the image identity")
    return lifted


def coupling_feasible(
    coupling: IdempotentMeasure, mu1: IdempotentMeasure, mu2: IdempotentMeasure
) -> bool:
    """Whether both marginals of a coupling match the prescribed measures exactly."""
    sp = coupling.space
    if not isinstance(sp, ProductSpace) or len(sp.factors) != 2:
        raise ValueError("a coupling lives on a two-factor product space")
    if sp.factors != (mu1.space, mu2.space):
        raise ValueError("coupling factors differ from the marginal spaces")
    return marginal(coupling, 0) == mu1 and marginal(coupling, 1) == mu2


@dataclass(frozen=True)
class TightPattern:
    """A choice, per finite row and column, of the cell attaining its max.

    Each pattern carves a box out of the feasible set: witness cells are
    pinned to the marginal weights, every other cell ranges below
    min(row weight, column weight).
    """

    rows: tuple[tuple[Label, Label], ...]
    cols: tuple[tuple[Label, Label], ...]
    fixed: tuple[tuple[tuple[Label, Label], float], ...]


_PATTERN_CAP = 4


def tight_patterns(mu1: IdempotentMeasure, mu2: IdempotentMeasure) -> Iterator[TightPattern]:
    """Enumerate the value-consistent tight patterns for two marginals."""
    xs, ys = mu1.space.points, mu2.space.points
    if len(xs) > _PATTERN_CAP or len(ys) > _PATTERN_CAP:
        raise ValueError(f"tight-pattern enumeration is capped at {_PATTERN_CAP}x{_PATTERN_CAP}")
    a = {x: mu1.weight(x) for x in xs}
    b = {y: mu2.weight(y) for y in ys}
    finite_rows = [x for x in xs if a[x] > NEG_INF]
    finite_cols = [y for y in ys if b[y] > NEG_INF]
    row_choices = {x: [y for y in ys if b[y] >= a[x]] for x in finite_rows}
    col_choices = {y: [x for x in xs if a[x] >= b[y]] for y in finite_cols}

    for row_pick in itertools.product(*(row_choices[x] for x in finite_rows)):
        rows = dict(zip(finite_rows, row_pick))
        for col_pick in itertools.product(*(col_choices[y] for y in finite_cols)):
            cols = dict(zip(finite_cols, col_pick))
            fixed: dict[tuple[Label, Label], float] = {}
            ok = True
            for x, y in rows.items():
                fixed[(x, y)] = a[x]
            for y, x in cols.items():
                cell = (x, y)
                if cell in fixed and fixed[cell] != b[y]:
                    ok = False
                    break
                fixed[cell] = b[y]
            if not ok:
                continue
            yield TightPattern(
                rows=tuple(sorted(rows.items(), key=lambda kv: mu1.space.index(kv[0]))),
                cols=tuple(sorted(cols.items(), key=lambda kv: mu2.space.index(kv[0]))),
                fixed=tuple(sorted(fixed.items(), key=lambda kv: (mu1.space.index(kv[0][0]), mu2.space.index(kv[0][1])))),
            )


def pattern_max_coupling(
    pattern: TightPattern, mu1: IdempotentMeasure, mu2: IdempotentMeasure
) -> IdempotentMeasure:
    """The largest coupling inside a pattern's box: free cells at their caps."""
    prod = product_space(mu1.space, mu2.space)
    fixed = dict(pattern.fixed)
    weights = tuple(
        fixed.get((x, y), min(mu1.weight(x), mu2.weight(y))) for (x, y) in prod.points
    )
    return IdempotentMeasure(prod, weights)


def indicator_family(space: FiniteSpace, cap: int = 12) -> list[FiniteFunction]:
    """All {0, -1}-valued test functions on a space (2^|space| of them)."""
    if len(space) > cap:
        raise ValueError(f"indicator family is capped at {cap} points")
    return [
        FiniteFunction(space, values)
        for values in itertools.product((0.0, -1.0), repeat=len(space))
    ]


@dataclass(frozen=True)
class GapResult:
    gap: float
    coupling: IdempotentMeasure
    phi: FiniteFunction


def _box_gap(
    fixed: Mapping[tuple[Label, Label], float],
    caps: Mapping[tuple[Label, Label], float],
    targets: Sequence[float],
    values: Sequence[Mapping[tuple[Label, Label], float]],
) -> tuple[float, dict[tuple[Label, Label], float]]:
    """Exact minimum of max_φ |ν(φ) - target_φ| over one pattern box.

    Parametrize by the allowed deviation t: the largest coupling obeying
    every upper constraint is λ_c(t) = min(cap_c, t + A_c) with
    A_c = min_φ (target_φ - φ_c); it is monotone in t, so the box optimum
    is the least t at which the lower constraints hold, solvable per test
    function in closed form.
    """
    cells = list(caps)
    A = {
        c: min(m - phi[c] for m, phi in zip(targets, values))
        for c in cells
    }
    t_min = 0.0
    for c, v in fixed.items():
        if v > NEG_INF:
            t_min = max(t_min, v - A[c])

    for m, phi in zip(targets, values):
        w_fixed = max((v + phi[c] for c, v in fixed.items() if v > NEG_INF), default=NEG_INF)
        best = m - w_fixed if w_fixed > NEG_INF else math.inf
        for c in cells:
            if c in fixed:
                continue
            u = caps[c]
            if u == NEG_INF:
                continue
            sat = u - A[c]
            t1 = (m - A[c] - phi[c]) / 2.0
            thr = t1 if t1 <= sat else (m - u - phi[c])
            if thr < best:
                best = thr
        t_min = max(t_min, best)

    coupling = {
        c: (fixed[c] if c in fixed else min(caps[c], t_min + A[c]))
        for c in cells
    }
    return t_min, coupling


def coupling_gap(
    mu1: IdempotentMeasure,
    mu2: IdempotentMeasure,
    target: IdempotentMeasure,
    family: Sequence[FiniteFunction] | None = None,
) -> GapResult:
    """Best approximation of a target coupling by feasible couplings.

    Minimizes, over all couplings with the prescribed marginals, the
    maximum over the test family of |ν(φ) - target(φ)|.  The feasible set
    is a union of tight-pattern boxes; each box is solved exactly and the
    best box wins.  The default family is every {0, -1}-valued function on
    the product, which separates support patterns.
    """
    prod = product_space(mu1.space, mu2.space)
    if target.space != prod:
        raise ValueError("target must live on the product of the marginal spaces")
    if family is None:
        family = indicator_family(prod)
    targets = [integrate(target, phi) for phi in family]
    values = [
        {cell: phi(cell) for cell in prod.points}
        for phi in family
    ]
    caps = {
        (x, y): min(mu1.weight(x), mu2.weight(y))
        for (x, y) in prod.points
    }

    best: tuple[float, dict] | None = None
    for pattern in tight_patterns(mu1, mu2):
        solved = _box_gap(dict(pattern.fixed), caps, targets, values)
        if best is None or solved[0] < best[0]:
            best = solved
    if best is None:
        raise InfeasibleError("no feasible coupling for the given marginals")

    gap, table = best
    coupling = IdempotentMeasure(prod, tuple(table[c] for c in prod.points))
    deviations = [abs(integrate(coupling, phi) - m) for phi, m in zip(family, targets)]
    witness = family[max(range(len(family)), key=lambda i: deviations[i])]
    return GapResult(gap=gap, coupling=coupling, phi=witness)


def counterexample_instance(
    l: float,
) -> tuple[IdempotentMeasure, IdempotentMeasure, IdempotentMeasure]:
    """The two-point instance whose marginal perturbations cannot be tracked.

    The target couples (x1,y1) and (x2,y2) with weight 0; the perturbed
    marginals tilt x1 and y2 down by 1/l.  l = inf gives the target's own
    marginals.
    """
    if l < 1:
        raise ValueError("l must be at least 1")
    X = FiniteSpace(("x1", "x2"))
    Y = FiniteSpace(("y1", "y2"))
    eps = as_weight(-1.0 / l)
    mu1 = IdempotentMeasure(X, (eps, 0.0))
    mu2 = IdempotentMeasure(Y, (0.0, eps))
    prod = product_space(X, Y)
    diagonal = (("x1", "y1"), ("x2", "y2"))
    target = IdempotentMeasure(
        prod,
        tuple(0.0 if p in diagonal else NEG_INF for p in prod.points),
    )
    return mu1, mu2, target


def counterexample_gap(l: float) -> float:
    """The exact approximation gap at the perturbed marginals; 1 for every finite l."""
    mu1, mu2, target = counterexample_instance(l)
    return coupling_gap(mu1, mu2, target).gap


@dataclass(frozen=True)
class CoverPair:
    """A pair U ⊆ V of subsets with a weight profile that is 0 on U and ≤ 0 on V."""

    U: frozenset[Label]
    V: frozenset[Label]
    alpha: Mapping[Label, float] | None = None

    def __post_init__(self) -> None:
        U = frozenset(self.U)
        V = frozenset(self.V)
        if not U:
            raise ValueError("U must be nonempty")
        if not U <= V:
            raise ValueError("U must be contained in V")
        given = dict(self.alpha) if self.alpha is not None else {}
        unknown = [k for k in given if k not in V]
        if unknown:
            raise ValueError(f"alpha defined outside V: {unknown!r}")
        alpha = {}
        for v in V:
            w = as_weight(given.get(v, 0.0))
            if w > 0.0:
                raise ValueError("alpha must be nonpositive")
            alpha[v] = w
        for u in U:
            if alpha[u] != 0.0:
                raise ValueError("alpha must be exactly 0 on U")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "alpha", alpha)


@dataclass(frozen=True)
class MilyutinLevel:
    """One refinement stage: a list of cover pairs whose U-sets cover the base."""

    pairs: tuple[CoverPair, ...]

    def __post_init__(self) -> None:
        pairs = tuple(self.pairs)
        if not pairs:
            raise ValueError("a level needs at least one cover pair")
        object.__setattr__(self, "pairs", pairs)


def milyutin_build(
    Y: MetricSpace, levels: Sequence[MilyutinLevel], depth: int
) -> tuple[FiniteSpace, PointMap, dict[Label, IdempotentMeasure]]:
    """Build a fiber-product cover space with a measure-valued selection.

    Each level contributes one disjoint-union copy space of its V-sets;
    the domain X collects, per base point y, the tuples of copies whose
    V-sets contain y.  The selection s(y) is the tensor of the per-level
    fiber measures, so its support sits inside the fiber over y and its
    image is the Dirac measure at y.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if len(levels) < depth:
        raise ValueError(f"need {depth} levels, got {len(levels)}")
    base = Y.space
    used = levels[:depth]
    for i, level in enumerate(used):
        for pair in level.pairs:
            unknown = [p for p in pair.V if p not in base]
            if unknown:
                raise ValueError(f"level {i} mentions unknown points {unknown!r}")
        covered = frozenset().union(*(pair.U for pair in level.pairs))
        if covered != frozenset(base.points):
            raise ValueError(f"level {i} does not cover the base space")

    # Point of X: (y, copy index at level 1, ..., copy index at level depth).
    points: list[Label] = []
    fiber_choices: dict[Label, list[tuple[str, ...]]] = {}
    for y in base.points:
        per_level = []
        for level in used:
            choices = [str(k) for k, pair in enumerate(level.pairs) if y in pair.V]
            if not choices:
                raise ValueError(f"empty fiber over {y!r}")
            per_level.append(choices)
        combos = [tuple(c) for c in itertools.product(*per_level)]
        fiber_choices[y] = combos
        points.extend((y, *combo) for combo in combos)

    X = FiniteSpace(tuple(points))
    f = PointMap(X, base, {p: p[0] for p in X.points})

    selection: dict[Label, IdempotentMeasure] = {}
    for y in base.points:
        weights = []
        for p in X.points:
            if p[0] != y:
                weights.append(NEG_INF)
                continue
            w = 0.0
            for i, k in enumerate(p[1:]):
                w = w + used[i].pairs[int(k)].alpha[y]  # type: ignore[index]
            weights.append(w)
        if max(weights) == NEG_INF:
            raise ValueError(f"empty fiber over {y!r}")
        s_y = IdempotentMeasure(X, tuple(weights))
        if pushforward(f, s_y) != dirac(base, y):
            raise ValueError("selection failed to project to the point it covers")
        selection[y] = s_y
    return X, f, selection
