"""Automorphisms of affine m-space, lifted to m + N*m variables."""
from kaehleraut.ga import (PolyEndo, invert_block_triangular, is_block_triangular,
                           is_elementary, jacobian_determinant)
from kaehleraut.kaehler import DifferentialContext
from kaehleraut.parser import Naming, parse_map_components
from kaehleraut.rep import embed_ga, formal_elementary, lift_endomorphism, linear_embed


def show(names, images):
    for name, image in zip(names, images):
        print(f"  {name} -> {image}")


# an elementary map of the plane
plane = ["x1", "x2"]
f = PolyEndo.of(parse_map_components(["x1", "x2 + x1^2"], Naming.endo(2)))
print("elementary:", is_elementary(f), " jacobian:", jacobian_determinant(f))
print("inverse:")
show(plane, invert_block_triangular(f, 1).inverse.render(plane))

# its lift acts on x and on the differentials d^j x together
names = DifferentialContext(2, 2).names()
lifted = embed_ga(f, 2)
print("lift to N = 2:")
show(names, lifted.forward.render(names))
print("block triangular in blocks of 2:", is_block_triangular(lifted.forward, 2))

# a plain endomorphism can still be lifted, just not as an automorphism
line = DifferentialContext(1, 2).names()
g = PolyEndo.of(parse_map_components(["x + x^2"], Naming.endo(1)))
print("lift of x + x^2:")
show(line, lift_endomorphism(g, 2).render(line))

# the formal subgroups: linear maps, and maps moving one coordinate
print("linear:", linear_embed([[1, 2], [0, 1]], 2).render(plane))
psi = parse_map_components(["x2^2"], Naming.x(2))[0]
print("elementary:", formal_elementary(2, 2, 1, psi).render(plane))
