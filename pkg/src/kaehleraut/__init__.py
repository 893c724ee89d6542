"""Higher differentials of power series and the polynomial automorphisms they induce.

Everything is computed exactly over the rationals.
"""
from .ga import (PolyAutomorphism, PolyEndo, compose_poly, invert_block_triangular, is_block_triangular,
                 is_elementary, is_triangular, jacobian_determinant, jacobian_matrix)
from .kaehler import (DifferentialContext, WeightMatrix, enumerate_weight_matrices, higher_differential,
                      reduce_at_origin, taylor_oracle, universal_derivation)
from .parser import Naming, ParseError, parse_polynomial, parse_series_map, render_polynomial
from .poly import Polynomial
from .rep import (AlphaImage, alpha, alpha_symbolic, embed_ga, formal_elementary, formal_triangular,
                  linear_embed, recover_series)
from .series import NotInvertibleError, TruncatedSeriesMap, compose, invert, random_automorphism

__version__ = "0.1.0"
