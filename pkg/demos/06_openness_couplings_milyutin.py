# Three constructions around open maps: lifting measure sequences through
# collapses, the coupling correspondence that cannot be tracked
# continuously, and fiber-supported measure selections.

from maslov import (
    CollapseMap,
    CoverPair,
    IdempotentMeasure,
    MilyutinLevel,
    PointMap,
    coupling_feasible,
    counterexample_gap,
    counterexample_instance,
    coupling_gap,
    dirac,
    lift_open_collapse,
    metric_closure,
    milyutin_build,
    pushforward,
    space,
    support,
    tensor,
)

# --- lifting a convergent sequence through a collapse ---------------------
src, tgt = space(["x0", "x1", "x2"]), space(["y1", "y2"])
f = CollapseMap(PointMap(src, tgt, {"x0": "y1", "x1": "y1", "x2": "y2"}))
mu0 = IdempotentMeasure(src, (0.0, -1.0, 0.0))
nus = [IdempotentMeasure(tgt, (-1.0 / k, 0.0)) for k in (1, 2, 10, 100)]
for nu_k, mu_k in zip(nus, lift_open_collapse(f, mu0, nus)):
    print("lift of", nu_k.weights, "->", mu_k.weights, "(pushes back:", pushforward(f.map, mu_k) == nu_k, ")")

# --- couplings with prescribed max-marginals ------------------------------
mu1, mu2, target = counterexample_instance(10)
print("tensor coupling feasible:", coupling_feasible(tensor(mu1, mu2), mu1, mu2))

# every feasible coupling is forced to put weight 0 where the target puts
# -inf, so the best approximation stays at gap 1 no matter how small the
# marginal perturbation is
for l in (1, 10, 100):
    print(f"gap at l={l}:", counterexample_gap(l))
print("gap at the target's own marginals:", counterexample_gap(float("inf")))
best = coupling_gap(mu1, mu2, target)
print("witness cell (x2,y1) weight in the best coupling:", best.coupling.weight(("x2", "y1")))

# --- a fiber-product cover space with a measure-valued selection ----------
Y = space("abc")
metric = metric_closure(Y, [[0, 1, 1], [1, 0, 1], [1, 1, 0]])
level = MilyutinLevel(
    (CoverPair(frozenset("ab"), frozenset("ab")), CoverPair(frozenset("bc"), frozenset("bc")))
)
X, proj, s = milyutin_build(metric, [level], 1)
print("cover space:", X.points)
for y in Y.points:
    print(f"s({y}) atoms:", sorted(support(s[y])), " image:", pushforward(proj, s[y]) == dirac(Y, y))
