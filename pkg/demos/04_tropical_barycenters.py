# Embedding the points of a space in R^n turns measures into tropical
# centers of mass: each barycenter coordinate is the Maslov integral of
# the coordinate function.

from maslov import (
    IdempotentMeasure,
    OuterMeasure,
    PointCloudSpace,
    algebra_law_check,
    barycenter,
    dirac,
    hull_membership,
    space,
)

X = space("pq")
cloud = PointCloudSpace(X, {"p": (0.0, 1.0), "q": (2.0, 0.0)})

print("barycenter of dirac(p):", barycenter(cloud, dirac(X, "p")))
print("barycenter of (0,-1):  ", barycenter(cloud, IdempotentMeasure(X, (0.0, -1.0))))
print("barycenter of (0, 0):  ", barycenter(cloud, IdempotentMeasure(X, (0.0, 0.0))))

# mixing then averaging equals averaging componentwise then averaging
M = OuterMeasure(
    X,
    (IdempotentMeasure(X, (0.0, -1.0)), IdempotentMeasure(X, (-2.0, 0.0))),
    (0.0, -0.5),
)
print("algebra law holds:", algebra_law_check(cloud, M))

# membership in a tropical span via residuation, with an explicit witness
gens = [cloud.point("p"), cloud.point("q")]
inside, witness = hull_membership(gens, barycenter(cloud, IdempotentMeasure(X, (0.0, -1.0))))
print("barycenter in span:", inside, " witness weights:", witness)
print("outside point:", hull_membership([(0.0, 0.0), (1.0, -1.0)], (0.0, -5.0)))
