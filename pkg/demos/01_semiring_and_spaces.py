# Max-plus scalars: addition is max, multiplication is +, and -inf is the zero.
# Working through the arithmetic once by hand makes the rest of the library
# read naturally.

from maslov import NEG_INF, metric_closure, odot, oplus, space, weight_distance

print("oplus(3, 5)      =", oplus(3, 5))        # max
print("oplus(-inf, -2)  =", oplus(NEG_INF, -2))  # -inf is neutral
print("odot(2, 3)       =", odot(2, 3))         # +
print("odot(-inf, 7)    =", odot(NEG_INF, 7))   # -inf absorbs

# Distances between weights live on the exponential scale, where -inf sits
# at 0 and weight 0 sits at 1.
print("weight_distance(-inf, 0) =", weight_distance(NEG_INF, 0))
print("weight_distance(ln2, ln3) =", weight_distance(0.6931471805599453, 1.0986122886681098))

# A finite space is an ordered list of labels; the order fixes every table
# in the library.
X = space("abc")
print("points:", X.points, " index of b:", X.index("b"))

# Raw dissimilarities become a metric by shortest-path closure.  The long
# edge a-c gets replaced by the two-hop route through b.
M = metric_closure(X, [[0, 1, 5], [1, 0, 1], [5, 1, 0]])
print("closed distance a-c:", M.d("a", "c"))
print("diameter:", M.diameter)
