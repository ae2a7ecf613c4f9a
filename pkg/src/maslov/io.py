"""JSON interchange: one document kind per domain object.

Weights serialize as JSON numbers, -inf as the string "-inf" (JSON has no
infinity literal).  Atom tables are dense and listed in canonical point
order, so identical objects always serialize to identical bytes.  Points
of product-like spaces serialize as arrays of labels; since JSON object
keys must be strings, measures over such spaces switch from an atom
object to a list of [point, weight] pairs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .convexity import PointCloudSpace
from .core import (
    NEG_INF,
    FiniteFunction,
    FiniteSpace,
    Label,
    MetricSpace,
    ProductSpace,
    product_space,
)
from .functor import PointMap
from .measures import IdempotentMeasure
from .monad import OuterMeasure
from .openness import CoverPair, MilyutinLevel

KINDS = (
    "space",
    "metric_space",
    "measure",
    "map",
    "function",
    "outer_measure",
    "coupling",
    "cloud",
    "cover_levels",
)


class DocumentError(ValueError):
    """A document fails schema or cross-reference validation."""


def _label_text(label: Label) -> str:
    if isinstance(label, tuple):
        return "(" + "|".join(_label_text(p) for p in label) + ")"
    return str(label)


def _content_name(space: FiniteSpace) -> str:
    """Deterministic fallback name for an anonymous space: its point list."""
    return "{" + ",".join(_label_text(p) for p in space.points) + "}"


def encode_weight(w: float) -> Any:
    return "-inf" if w == NEG_INF else w


def decode_weight(v: Any) -> float:
    if v == "-inf":
        return NEG_INF
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DocumentError(f"weights must be numbers or \"-inf\", got {v!r}")
    w = float(v)
    if math.isnan(w) or w == math.inf:
        raise DocumentError(f"weights must be finite or -inf, got {v!r}")
    return w


def decode_value(v: Any) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise DocumentError(f"function values must be numbers, got {v!r}")
    x = float(v)
    if not math.isfinite(x):
        raise DocumentError(f"function values must be finite, got {v!r}")
    return x


def encode_label(label: Label) -> Any:
    if isinstance(label, tuple):
        return [encode_label(part) for part in label]
    return label


def decode_label(obj: Any) -> Label:
    if isinstance(obj, str):
        return obj
    if isinstance(obj, list) and obj:
        return tuple(decode_label(part) for part in obj)
    raise DocumentError(f"labels must be strings or nonempty arrays, got {obj!r}")


def _try_product(points: Sequence[Label]) -> ProductSpace | None:
    if len(points) < 1 or not all(isinstance(p, tuple) for p in points):
        return None
    arity = {len(p) for p in points}  # type: ignore[arg-type]
    if len(arity) != 1:
        return None
    k = arity.pop()
    if k < 2:
        return None
    factors = []
    for axis in range(k):
        seen: list[Label] = []
        for p in points:
            if p[axis] not in seen:  # type: ignore[index]
                seen.append(p[axis])  # type: ignore[index]
        factors.append(infer_space(seen))
    candidate = product_space(*factors)
    if candidate.points == tuple(points):
        return candidate
    return None


def infer_space(points: Sequence[Label]) -> FiniteSpace:
    """Rebuild a space from an ordered point list, detecting full products."""
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise DocumentError("duplicate points in a space")
    prod = _try_product(pts)
    return prod if prod is not None else FiniteSpace(pts)


@dataclass
class Context:
    """Named spaces shared by a set of documents."""

    spaces: dict[str, FiniteSpace] = field(default_factory=dict)
    metrics: dict[str, MetricSpace] = field(default_factory=dict)

    def register(self, name: str, space: FiniteSpace) -> FiniteSpace:
        known = self.spaces.get(name)
        if known is None:
            self.spaces[name] = space
            return space
        if known.points != space.points:
            raise DocumentError(f"space {name!r} redefined with different points")
        return known

    def resolve(self, ref: Any, points: Sequence[Label] | None = None) -> FiniteSpace:
        """Resolve a space reference: a known name, or a name backed by points."""
        if isinstance(ref, dict):
            name = ref.get("name", "X")
            pts = [decode_label(p) for p in ref.get("points", [])]
            return self.register(str(name), infer_space(pts))
        if not isinstance(ref, str):
            raise DocumentError(f"space references must be names, got {ref!r}")
        if ref in self.spaces:
            space = self.spaces[ref]
            if points is not None and set(points) != set(space.points):
                raise DocumentError(f"table points disagree with space {ref!r}")
            return space
        if points is None:
            raise DocumentError(f"unknown space {ref!r} and no points to derive it from")
        return self.register(ref, infer_space(list(points)))

    def name_of(self, space: FiniteSpace) -> str:
        for name, known in self.spaces.items():
            if known == space:
                return name
        if isinstance(space, ProductSpace):
            return "*".join(self.name_of(f) for f in space.factors)
        return _content_name(space)


def build_context(objs: Sequence[Mapping[str, Any]]) -> Context:
    """First pass over a document set: register every named space."""
    ctx = Context()
    for obj in objs:
        kind = obj.get("kind")
        if kind == "space":
            ctx.register(str(obj.get("name", "X")), infer_space([decode_label(p) for p in obj["points"]]))
        elif kind == "metric_space":
            ms = decode_metric_space(obj, ctx)
            ctx.metrics[str(obj.get("name", "X"))] = ms
    return ctx


def _require(obj: Mapping[str, Any], kind: str, *keys: str) -> None:
    if obj.get("kind") != kind:
        raise DocumentError(f"expected a {kind} document, got kind={obj.get('kind')!r}")
    for key in keys:
        if key not in obj:
            raise DocumentError(f"{kind} document is missing {key!r}")


def _atoms_to_pairs(atoms: Any) -> list[tuple[Label, Any]]:
    if isinstance(atoms, dict):
        return [(decode_label(k), v) for k, v in atoms.items()]
    if isinstance(atoms, list):
        pairs = []
        for entry in atoms:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise DocumentError("atom lists contain [point, weight] pairs")
            pairs.append((decode_label(entry[0]), entry[1]))
        return pairs
    raise DocumentError("atoms must be an object or a list of pairs")


def _pairs_to_atoms(pairs: Sequence[tuple[Label, Any]]) -> Any:
    if all(isinstance(p, str) for p, _ in pairs):
        return {p: v for p, v in pairs}
    return [[encode_label(p), v] for p, v in pairs]


# ------------------------------------------------------------------ measures

def measure_doc(mu: IdempotentMeasure, ctx: Context | None = None) -> dict:
    name = (ctx or Context()).name_of(mu.space)
    pairs = [(p, encode_weight(w)) for p, w in zip(mu.space.points, mu.weights)]
    return {"kind": "measure", "space": name, "atoms": _pairs_to_atoms(pairs)}


def decode_measure(obj: Mapping[str, Any], ctx: Context) -> IdempotentMeasure:
    _require(obj, "measure", "space", "atoms")
    pairs = _atoms_to_pairs(obj["atoms"])
    space = ctx.resolve(obj["space"], [p for p, _ in pairs])
    table = {p: decode_weight(v) for p, v in pairs}
    try:
        return IdempotentMeasure(space, tuple(table[p] for p in space.points))
    except KeyError as exc:
        raise DocumentError(f"atom table missing point {exc.args[0]!r}") from None
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ functions

def function_doc(phi: FiniteFunction, ctx: Context | None = None) -> dict:
    name = (ctx or Context()).name_of(phi.space)
    pairs = [(p, v) for p, v in zip(phi.space.points, phi.values)]
    return {"kind": "function", "space": name, "values": _pairs_to_atoms(pairs)}


def decode_function(obj: Mapping[str, Any], ctx: Context) -> FiniteFunction:
    _require(obj, "function", "space", "values")
    pairs = _atoms_to_pairs(obj["values"])
    space = ctx.resolve(obj["space"], [p for p, _ in pairs])
    table = {p: decode_value(v) for p, v in pairs}
    try:
        return FiniteFunction(space, tuple(table[p] for p in space.points))
    except KeyError as exc:
        raise DocumentError(f"value table missing point {exc.args[0]!r}") from None
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ spaces

def space_doc(space: FiniteSpace, name: str = "X") -> dict:
    return {"kind": "space", "name": name, "points": [encode_label(p) for p in space.points]}


def decode_space(obj: Mapping[str, Any], ctx: Context) -> FiniteSpace:
    _require(obj, "space", "points")
    return ctx.register(str(obj.get("name", "X")), infer_space([decode_label(p) for p in obj["points"]]))


def metric_space_doc(ms: MetricSpace, name: str = "X") -> dict:
    return {
        "kind": "metric_space",
        "name": name,
        "points": [encode_label(p) for p in ms.space.points],
        "dist": [list(row) for row in ms.dist],
    }


def decode_metric_space(obj: Mapping[str, Any], ctx: Context) -> MetricSpace:
    _require(obj, "metric_space", "points", "dist")
    space = ctx.register(str(obj.get("name", "X")), infer_space([decode_label(p) for p in obj["points"]]))
    dist = obj["dist"]
    if not isinstance(dist, list):
        raise DocumentError("dist must be a matrix (list of rows)")
    try:
        return MetricSpace(space, tuple(tuple(decode_value(v) for v in row) for row in dist))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ maps

def map_doc(f: PointMap, ctx: Context | None = None) -> dict:
    ctx = ctx or Context()
    pairs = [(x, encode_label(f.table[x])) for x in f.source.points]
    return {
        "kind": "map",
        "source": ctx.name_of(f.source),
        "target": ctx.name_of(f.target),
        "target_points": [encode_label(y) for y in f.target.points],
        "table": _pairs_to_atoms(pairs),
    }


def decode_map(obj: Mapping[str, Any], ctx: Context) -> PointMap:
    _require(obj, "map", "source", "target", "table")
    pairs = _atoms_to_pairs(obj["table"])
    source = ctx.resolve(obj["source"], [p for p, _ in pairs])
    table = {p: decode_label(v) for p, v in pairs}
    if "target_points" in obj:
        target = ctx.resolve(obj["target"], [decode_label(p) for p in obj["target_points"]])
    else:
        image: list[Label] = []
        for x in source.points:
            if x in table and table[x] not in image:
                image.append(table[x])
        target = ctx.resolve(obj["target"], image)
    try:
        return PointMap(source, target, table)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ outer measures

def outer_doc(M: OuterMeasure, ctx: Context | None = None) -> dict:
    ctx = ctx or Context()
    return {
        "kind": "outer_measure",
        "space": ctx.name_of(M.base),
        "components": [
            {
                "weight": encode_weight(w),
                "atoms": measure_doc(m, ctx)["atoms"],
            }
            for w, m in zip(M.weights, M.inner)
        ],
    }


def decode_outer(obj: Mapping[str, Any], ctx: Context) -> OuterMeasure:
    _require(obj, "outer_measure", "space", "components")
    comps = obj["components"]
    if not isinstance(comps, list) or not comps:
        raise DocumentError("components must be a nonempty list")
    inner = []
    weights = []
    space: FiniteSpace | None = None
    for comp in comps:
        if not isinstance(comp, dict) or "weight" not in comp or "atoms" not in comp:
            raise DocumentError("each component needs weight and atoms")
        pairs = _atoms_to_pairs(comp["atoms"])
        space = ctx.resolve(obj["space"], [p for p, _ in pairs]) if space is None else space
        table = {p: decode_weight(v) for p, v in pairs}
        if set(table) != set(space.points):
            raise DocumentError("component atom table disagrees with the space")
        try:
            inner.append(IdempotentMeasure(space, tuple(table[p] for p in space.points)))
        except ValueError as exc:
            raise DocumentError(f"bad component: {exc}") from None
        weights.append(decode_weight(comp["weight"]))
    try:
        return OuterMeasure(space, tuple(inner), tuple(weights))  # type: ignore[arg-type]
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ couplings

def coupling_doc(mu: IdempotentMeasure, ctx: Context | None = None) -> dict:
    ctx = ctx or Context()
    sp = mu.space
    if not isinstance(sp, ProductSpace) or len(sp.factors) != 2:
        raise DocumentError("couplings live on two-factor products")
    rows, cols = sp.factors
    if not all(isinstance(p, str) for p in itertools.chain(rows.points, cols.points)):
        raise DocumentError("coupling documents need flat factor spaces")
    table = {
        x: {y: encode_weight(mu.weight((x, y))) for y in cols.points}
        for x in rows.points
    }
    return {
        "kind": "coupling",
        "rows": ctx.name_of(rows),
        "cols": ctx.name_of(cols),
        "table": table,
    }


def decode_coupling(obj: Mapping[str, Any], ctx: Context) -> IdempotentMeasure:
    _require(obj, "coupling", "rows", "cols", "table")
    table = obj["table"]
    if not isinstance(table, dict) or not table:
        raise DocumentError("coupling table must be a nonempty nested object")
    row_pts = list(table.keys())
    col_sets = [list(row.keys()) for row in table.values() if isinstance(row, dict)]
    if len(col_sets) != len(row_pts) or any(cs != col_sets[0] for cs in col_sets):
        raise DocumentError("coupling table must be dense with consistent columns")
    rows = ctx.resolve(obj["rows"], row_pts)
    cols = ctx.resolve(obj["cols"], col_sets[0])
    prod = product_space(rows, cols)
    weights = tuple(decode_weight(table[x][y]) for x in rows.points for y in cols.points)
    try:
        return IdempotentMeasure(prod, weights)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ clouds

def cloud_doc(cloud: PointCloudSpace, ctx: Context | None = None) -> dict:
    ctx = ctx or Context()
    pairs = [(p, list(cloud.embed[p])) for p in cloud.space.points]
    return {"kind": "cloud", "space": ctx.name_of(cloud.space), "embed": _pairs_to_atoms(pairs)}


def decode_cloud(obj: Mapping[str, Any], ctx: Context) -> PointCloudSpace:
    _require(obj, "cloud", "space", "embed")
    pairs = _atoms_to_pairs(obj["embed"])
    space = ctx.resolve(obj["space"], [p for p, _ in pairs])
    embed = {}
    for p, coords in pairs:
        if not isinstance(coords, list):
            raise DocumentError("cloud coordinates must be arrays")
        embed[p] = tuple(decode_value(v) for v in coords)
    try:
        return PointCloudSpace(space, embed)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# ------------------------------------------------------------------ cover levels

def cover_levels_doc(levels: Sequence[MilyutinLevel], space: FiniteSpace, name: str = "Y") -> dict:
    return {
        "kind": "cover_levels",
        "space": name,
        "levels": [
            [
                {
                    "U": [encode_label(u) for u in sorted(pair.U, key=_label_text)],
                    "V": [encode_label(v) for v in sorted(pair.V, key=_label_text)],
                    "alpha": _pairs_to_atoms(
                        [
                            (p, encode_weight(pair.alpha[p]))  # type: ignore[index]
                            for p in sorted(pair.alpha, key=_label_text)
                        ]
                    ),
                }
                for pair in level.pairs
            ]
            for level in levels
        ],
    }


def decode_cover_levels(obj: Mapping[str, Any], ctx: Context) -> list[MilyutinLevel]:
    _require(obj, "cover_levels", "levels")
    levels = obj["levels"]
    if not isinstance(levels, list) or not levels:
        raise DocumentError("levels must be a nonempty list")
    out = []
    for level in levels:
        if not isinstance(level, list) or not level:
            raise DocumentError("each level is a nonempty list of cover pairs")
        pairs = []
        for entry in level:
            if not isinstance(entry, dict) or "U" not in entry or "V" not in entry:
                raise DocumentError("each cover pair needs U and V")
            alpha = entry.get("alpha")
            if alpha is not None:
                if not isinstance(alpha, (dict, list)):
                    raise DocumentError("alpha must be an object or a list of pairs")
                alpha = {p: decode_weight(v) for p, v in _atoms_to_pairs(alpha)}
            try:
                pairs.append(
                    CoverPair(
                        frozenset(decode_label(u) for u in entry["U"]),
                        frozenset(decode_label(v) for v in entry["V"]),
                        alpha,
                    )
                )
            except ValueError as exc:
                raise DocumentError(str(exc)) from None
        out.append(MilyutinLevel(tuple(pairs)))
    return out


_DECODERS = {
    "space": decode_space,
    "metric_space": decode_metric_space,
    "measure": decode_measure,
    "map": decode_map,
    "function": decode_function,
    "outer_measure": decode_outer,
    "coupling": decode_coupling,
    "cloud": decode_cloud,
    "cover_levels": decode_cover_levels,
}


def decode(obj: Mapping[str, Any], ctx: Context, expect: str | None = None):
    kind = obj.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    if expect is not None and kind != expect:
        raise DocumentError(f"expected a {expect} document, got {kind!r}")
    return _DECODERS[kind](obj, ctx)


def dumps(doc: Any) -> str:
    """Canonical serialization: stable key order, shortest float repr."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
