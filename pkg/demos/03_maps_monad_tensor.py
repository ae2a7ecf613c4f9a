# Measures push forward along maps by taking fiber maxima.  One level up,
# a measure whose atoms are measures collapses by max-plus mixing; tensor
# products and marginals fall out of the same machinery.

from maslov import (
    ClosedSet,
    FuzzySet,
    IdempotentMeasure,
    OuterMeasure,
    PointMap,
    dirac,
    fuzzy_embed,
    hyperspace_embed,
    lift_along_surjection,
    marginal,
    multiply,
    pushforward,
    space,
    tensor,
)

X = space("abc")
Y = space("ab")
f = PointMap(X, Y, {"a": "a", "b": "b", "c": "b"})

mu = IdempotentMeasure(X, (0.0, -1.0, -0.5))
print("pushforward:", pushforward(f, mu))  # b collects max(-1, -0.5)

# lifting through a surjection spreads each weight over the whole fiber
nu = pushforward(f, mu)
print("maximal lift:", lift_along_surjection(f, nu))

# mixing: weight each inner measure, then take atomwise maxima
M = OuterMeasure(X, (dirac(X, "a"), IdempotentMeasure(X, (-2.0, 0.0, -1.0))), (-1.0, 0.0))
print("mixture:", multiply(M))

# tensor = sum-weight coupling; marginals recover the factors exactly
rho = tensor(IdempotentMeasure(Y, (0.0, -1.0)), dirac(space("uv"), "u"))
print("tensor:", rho)
print("first marginal:", marginal(rho, 0))

# nonempty subsets embed as 0/-inf measures; fuzzy sets embed on log scale
print("set {a,b}:", hyperspace_embed(ClosedSet(X, frozenset("ab"))))
print("fuzzy (1, 1/e, 0):", fuzzy_embed(FuzzySet(X, (1.0, 0.36787944117144233, 0.0))))
