"""From a truncated series map to a polynomial automorphism, and back."""
from kaehleraut.parser import parse_series_map
from kaehleraut.rep import alpha, alpha_symbolic, recover_series
from kaehleraut.series import compose, invert

phi = parse_series_map(["2*x + x^2 - x^3"], m=1, N=3)
psi = parse_series_map(["x - 3*x^2"], m=1, N=3)

a = alpha(phi)
print("\n".join(a.render()))

# alpha turns composition of series into composition of polynomial maps
assert alpha(compose(phi, psi)) == a @ alpha(psi)
# and inverse into inverse
assert alpha(invert(phi)).base == a.automorphism().inverse
# phi can be read off its image again
assert recover_series(a) == phi
print("homomorphism, inverse and round trip all hold")

# generic coefficients: the image is block triangular in the y's
sym = alpha_symbolic(2, 2)
names = sym.names()
for r, s in ((1, 1), (2, 1), (1, 2), (2, 2)):
    print(f"y{r}_{s} ->", sym.component(r, s).render(names))

# two independent routes give the same answer
alpha(phi, verify=True)
