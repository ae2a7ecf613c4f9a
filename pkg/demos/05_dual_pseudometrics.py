# Distances between measures by duality: sup over Lipschitz test functions
# of the integral gap.  The closed form max-min formula is cross-checked
# against a brute-force grid sweep.

from maslov import (
    IdempotentMeasure,
    dhat,
    dhat_oracle,
    dirac,
    dtilde,
    metric_closure,
    space,
)

X = space("ab")
M = metric_closure(X, [[0, 1], [1, 0]])

mu = IdempotentMeasure(X, (0.0, -0.5))
nu = dirac(X, "a")

print("dhat_1(mu, nu)        =", dhat(1, M, mu, nu))
print("grid oracle           =", dhat_oracle(1, M, mu, nu))  # within one step

# after the 1/n rescaling, point measures sit at their ground distance
for n in (1, 2, 3):
    print(f"dtilde_{n}(delta_a, delta_b) =", dtilde(n, M, dirac(X, "a"), dirac(X, "b")))

# the dual distance is only a pseudometric: deep atoms are invisible to
# functions with a small Lipschitz constant
deep1 = IdempotentMeasure(X, (0.0, -5.0))
deep2 = IdempotentMeasure(X, (0.0, -7.0))
print("dhat_1 of distinct measures:", dhat(1, M, deep1, deep2))
print("dhat_8 separates them:      ", dhat(8, M, deep1, deep2))
