"""Maps between finite spaces and the induced action on measures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import NEG_INF, FiniteFunction, FiniteSpace, Label
from .measures import IdempotentMeasure


@dataclass(frozen=True)
class PointMap:
    """A total function between finite spaces, stored as a label table."""

    source: FiniteSpace
    target: FiniteSpace
    table: Mapping[Label, Label]

    def __post_init__(self) -> None:
        missing = [p for p in self.source.points if p not in self.table]
        if missing:
            raise ValueError(f"map undefined on {missing!r}")
        extra = [k for k in self.table if k not in self.source]
        if extra:
            raise ValueError(f"map defined on unknown points {extra!r}")
        bad = [v for v in self.table.values() if v not in self.target]
        if bad:
            raise ValueError(f"map values outside the target: {bad!r}")
        object.__setattr__(self, "table", {p: self.table[p] for p in self.source.points})

    def __call__(self, x: Label) -> Label:
        if x not in self.source:
            raise ValueError(f"unknown point {x!r}")
        return self.table[x]

    def then(self, g: "PointMap") -> "PointMap":
        """Composition g ∘ self (apply self first)."""
        if g.source != self.target:
            raise ValueError("composition mismatch: inner target differs from outer source")
        return PointMap(self.source, g.target, {x: g(self(x)) for x in self.source.points})

    def fiber(self, y: Label) -> frozenset[Label]:
        if y not in self.target:
            raise ValueError(f"unknown point {y!r}")
        return frozenset(x for x in self.source.points if self.table[x] == y)

    def preimage(self, B: Iterable[Label]) -> frozenset[Label]:
        bs = frozenset(B)
        unknown = [b for b in bs if b not in self.target]
        if unknown:
            raise ValueError(f"unknown points {unknown!r}")
        return frozenset(x for x in self.source.points if self.table[x] in bs)

    def image(self, A: Iterable[Label] | None = None) -> frozenset[Label]:
        pts = self.source.points if A is None else tuple(A)
        return frozenset(self.table[x] for x in pts)

    @property
    def is_surjective(self) -> bool:
        return self.image() == frozenset(self.target.points)

    @property
    def is_injective(self) -> bool:
        return len(self.image()) == len(self.source)


def identity_map(space: FiniteSpace) -> PointMap:
    return PointMap(space, space, {p: p for p in space.points})


def pushforward(f: PointMap, mu: IdempotentMeasure) -> IdempotentMeasure:
    """The image measure: weight(y) is the max of μ over the fiber f⁻¹(y).

    Satisfies pushforward(f, μ)(φ) = μ(φ ∘ f) for every φ on the target.
    """
    if mu.space != f.source:
        raise ValueError("measure does not live on the source of the map")
    out = [NEG_INF] * len(f.target)
    for x, w in zip(mu.space.points, mu.weights):
        j = f.target.index(f.table[x])
        if w > out[j]:
            out[j] = w
    return IdempotentMeasure(f.target, tuple(out))


def precompose(phi: FiniteFunction, f: PointMap) -> FiniteFunction:
    """φ ∘ f as a function on the source (the dual action on test functions)."""
    if phi.space != f.target:
        raise ValueError("function does not live on the target of the map")
    return FiniteFunction(f.source, tuple(phi(f.table[x]) for x in f.source.points))


def lies_in_subspace(mu: IdempotentMeasure, A: Iterable[Label]) -> bool:
    """Whether the support of μ is contained in the given point set."""
    pts = frozenset(A)
    unknown = [a for a in pts if a not in mu.space]
    if unknown:
        raise ValueError(f"unknown points {unknown!r}")
    return all(w == NEG_INF or p in pts for p, w in zip(mu.space.points, mu.weights))


def lift_along_surjection(f: PointMap, nu: IdempotentMeasure) -> IdempotentMeasure:
    """The maximal lift of ν through a surjection: weight(x) = ν(f(x)).

    Deterministic, assigns every fiber point the full weight of its image;
    pushes forward to ν exactly.
    """
    if not f.is_surjective:
        raise ValueError("lift requires a surjective map")
    if nu.space != f.target:
        raise ValueError("measure does not live on the target of the map")
    return IdempotentMeasure(f.source, tuple(nu.weight(f.table[x]) for x in f.source.points))
