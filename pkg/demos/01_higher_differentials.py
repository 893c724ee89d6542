"""Higher differentials of a polynomial, and a brute-force cross-check."""
from kaehleraut.kaehler import (DifferentialContext, enumerate_weight_matrices,
                                higher_differential, taylor_oracle)
from kaehleraut.parser import Naming, parse_polynomial

# one variable, up to order 3
ctx = DifferentialContext(1, 3)
f = parse_polynomial("x^3 - 2*x", Naming.x(1))

for n in range(1, 4):
    d = higher_differential(f, n, ctx)
    print(f"d^{n}f =", d.render(ctx.names()))

# the same coefficients fall out of f(x + dx*t + d2x*t^2 + ...)
for n in range(1, 4):
    assert higher_differential(f, n, ctx) == taylor_oracle(f, n, ctx)
print("matches the Taylor expansion")

# each weight matrix gives one term; for m = 1 they are the partitions of n
for l in enumerate_weight_matrices(1, 4):
    print(l.entries[0], "prefactor 1/%d" % l.factorial_product())

# two variables: every d^n f is homogeneous of weight n
ctx2 = DifferentialContext(2, 2)
g = parse_polynomial("x1^2*x2 + x2", Naming.x(2))
d2 = higher_differential(g, 2, ctx2)
print("d^2g =", d2.render(ctx2.names()))
print("homogeneous:", d2.is_homogeneous(2, ctx2.weights()))
