"""The representation alpha of truncated series automorphisms as polynomial maps.

For a series map ``phi`` in m variables truncated at order N, ``alpha(phi)``
is the polynomial automorphism of affine (N*m)-space with coordinates
``y_ij`` (the reduction of d^j x_i at the origin) given by

    alpha(phi)(y_rs) = sum over weight matrices l of total s
                       (prod_k |l_k|!) / (prod_ij l_ij!) * a^r_{|l|} * prod y_ij^l_ij

where ``a^r_n`` is the coefficient of ``x^n`` in ``phi_r``. The y slots are
order-major, ``slot(y_ij) = (j-1)*m + (i-1)``, so that alpha images are
block-triangular with m x m blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .ga import PolyAutomorphism, PolyEndo, compose_poly, invert_block_triangular, is_block_triangular
from .kaehler import DifferentialContext, enumerate_weight_matrices, higher_differential, reduce_at_origin
from .poly import DimensionError, Polynomial
from .ring import multinomial_weight
from .series import NotInvertibleError, TruncatedSeriesMap, monomials


class StructureError(ValueError):
    """A polynomial map does not have the shape of an alpha image."""


class ConsistencyError(AssertionError):
    """The coefficient formula and the differential route disagree."""


class InvalidGeneratorError(ValueError):
    pass


@lru_cache(maxsize=None)
def alpha_terms(m: int, N: int, s: int) -> Tuple[Tuple[Fraction, Tuple[int, ...], Tuple[int, ...]], ...]:
    """``(weight, |l|, y exponents)`` for every weight matrix of total s.

    The y exponents index the (N*m)-variable ring of the reduced coordinates.
    """
    ctx = DifferentialContext(m, N)
    out = []
    for l in enumerate_weight_matrices(m, s):
        e = [0] * ctx.y_nvars
        for i, row in enumerate(l.entries, start=1):
            for j, v in enumerate(row, start=1):
                if v:
                    e[ctx.y_only_slot(i, j)] = v
        out.append((multinomial_weight(l), l.row_sums, tuple(e)))
    return tuple(out)


@dataclass(frozen=True)
class AlphaImage:
    """alpha(phi) as a map of affine (N*m)-space, with its source shape."""

    base: PolyEndo
    source_m: int
    source_N: int

    def __post_init__(self):
        if self.base.n != self.source_m * self.source_N:
            raise DimensionError("alpha image must act on N*m variables")

    @property
    def context(self) -> DifferentialContext:
        return DifferentialContext(self.source_m, self.source_N)

    def component(self, r: int, s: int) -> Polynomial:
        """Image of y_rs (1-based)."""
        return self.base.components[self.context.y_only_slot(r, s)]

    def names(self, latex: bool = False) -> List[str]:
        return self.context.y_names(latex)

    def render(self, latex: bool = False) -> List[str]:
        names = self.names(latex)
        return [f"{names[k]} -> {p.render(names, latex)}" for k, p in enumerate(self.base.components)]

    def automorphism(self) -> PolyAutomorphism:
        """The image together with its exact inverse."""
        return invert_block_triangular(self.base, self.source_m)

    def __matmul__(self, other: "AlphaImage") -> "AlphaImage":
        if (self.source_m, self.source_N) != (other.source_m, other.source_N):
            raise DimensionError("alpha images of different shapes")
        return AlphaImage(compose_poly(self.base, other.base), self.source_m, self.source_N)


def _assemble(m: int, N: int, nvars: int, offset: int,
              lookup: Callable[[int, Tuple[int, ...]], Union[Fraction, Polynomial]]) -> List[Polynomial]:
    """Components of alpha in y-slot order, shifted by ``offset`` slots.

    ``lookup(r, n)`` returns a^r_n, either a scalar or a polynomial in the
    same ``nvars``-variable ring (symbolic coefficients).
    """
    comps: List[Optional[Polynomial]] = [None] * (N * m)
    for s in range(1, N + 1):
        terms = alpha_terms(m, N, s)
        for r in range(1, m + 1):
            acc: Dict[Tuple[int, ...], Fraction] = {}
            poly_acc = Polynomial.zero(nvars)
            for weight, n, e in terms:
                a = lookup(r, n)
                full = (0,) * offset + e + (0,) * (nvars - offset - len(e))
                if isinstance(a, Polynomial):
                    if a:
                        poly_acc = poly_acc + a * Polynomial(nvars, {full: weight})
                elif a:
                    acc[full] = acc.get(full, 0) + weight * a
            comps[(s - 1) * m + (r - 1)] = poly_acc + Polynomial(nvars, acc)
    return comps


def alpha_direct(phi: TruncatedSeriesMap) -> AlphaImage:
    """alpha by the closed coefficient formula."""
    m, N = phi.m, phi.N
    comps = _assemble(m, N, N * m, 0, lambda r, n: phi.coefficient(r - 1, n))
    return AlphaImage(PolyEndo(N * m, tuple(comps)), m, N)


def alpha_via_differentials(phi: TruncatedSeriesMap) -> AlphaImage:
    """alpha as the reduction of d^s phi_r at the origin."""
    ctx = DifferentialContext(phi.m, phi.N)
    comps: List[Optional[Polynomial]] = [None] * ctx.y_nvars
    for r in range(1, phi.m + 1):
        for s in range(1, phi.N + 1):
            d = higher_differential(phi.components[r - 1], s, ctx)
            comps[ctx.y_only_slot(r, s)] = reduce_at_origin(d, ctx)
    return AlphaImage(PolyEndo(ctx.y_nvars, tuple(comps)), phi.m, phi.N)


def alpha(phi: TruncatedSeriesMap, verify: bool = False) -> AlphaImage:
    """The polynomial automorphism alpha(phi) of affine (N*m)-space.

    With ``verify=True`` the image is computed both from the coefficient
    formula and from the reduced higher differentials, and the two must
    agree exactly.
    """
    if not phi.is_automorphism():
        raise NotInvertibleError(f"not an automorphism: linear part {phi.linear_part()} is singular")
    image = alpha_direct(phi)
    if verify:
        other = alpha_via_differentials(phi)
        if other != image:
            raise ConsistencyError("coefficient formula and reduced differentials disagree")
    return image


def check_alpha_shape(base: PolyEndo, m: int, N: int) -> None:
    """Raise :class:`StructureError` unless ``base`` looks like an alpha image."""
    if base.n != m * N:
        raise StructureError(f"expected {m * N} components, got {base.n}")
    ctx = DifferentialContext(m, N)
    weights = ctx.y_weights()
    for s in range(1, N + 1):
        for r in range(1, m + 1):
            p = base.components[ctx.y_only_slot(r, s)]
            if not p.is_homogeneous(s, weights):
                raise StructureError(f"image of y{r}_{s} is not of weighted degree {s}")
    if not is_block_triangular(base, m):
        raise StructureError("map is not block-triangular")


def recover_series(image: AlphaImage) -> TruncatedSeriesMap:
    """Read phi back from alpha(phi).

    a^r_n is the coefficient of prod_i y_i1^(n_i) in the image of y_r,|n|:
    its weight matrix sits in the first column, where the prefactor is 1.
    """
    m, N = image.source_m, image.source_N
    check_alpha_shape(image.base, m, N)
    ctx = image.context
    comps = []
    for r in range(1, m + 1):
        terms = {}
        for d in range(1, N + 1):
            target = image.component(r, d)
            for n in monomials(m, d):
                e = [0] * ctx.y_nvars
                for i, k in enumerate(n, start=1):
                    e[ctx.y_only_slot(i, 1)] = k
                c = target.coefficient_of(e)
                if c:
                    terms[n] = c
        comps.append(Polynomial(m, terms))
    return TruncatedSeriesMap(m, N, tuple(comps))


# -- symbolic coefficients ----------------------------------------------------


def coefficient_label(r: int, n: Sequence[int], m: int) -> str:
    """Parseable name of the indeterminate a^r_n: ``a2`` for m = 1, else ``a1_1_0``."""
    if m == 1:
        return f"a{n[0]}"
    return f"a{r}_" + "_".join(str(k) for k in n)


@dataclass(frozen=True)
class SymbolicAlpha:
    """alpha of the generic series map, coefficients kept as indeterminates.

    The polynomials live in a ring whose first ``len(parameters)`` slots are
    the a^r_n and whose remaining slots are the y_ij.
    """

    m: int
    N: int
    parameters: Tuple[Tuple[int, Tuple[int, ...]], ...]
    components: Tuple[Polynomial, ...]
    series: Tuple[Polynomial, ...]

    @property
    def nparams(self) -> int:
        return len(self.parameters)

    def names(self) -> List[str]:
        ctx = DifferentialContext(self.m, self.N)
        return [coefficient_label(r, n, self.m) for r, n in self.parameters] + ctx.y_names()

    def series_names(self) -> List[str]:
        xs = ["x"] if self.m == 1 else [f"x{i}" for i in range(1, self.m + 1)]
        return [coefficient_label(r, n, self.m) for r, n in self.parameters] + xs

    def component(self, r: int, s: int) -> Polynomial:
        return self.components[(s - 1) * self.m + (r - 1)]

    def specialize(self, phi: TruncatedSeriesMap) -> PolyEndo:
        """Substitute the coefficients of a concrete phi for the indeterminates."""
        values = [Polynomial.constant(self.m * self.N, phi.coefficient(r - 1, n)) for r, n in self.parameters]
        ys = [Polynomial.variable(self.m * self.N, k) for k in range(self.m * self.N)]
        return PolyEndo(self.m * self.N, tuple(p.substitute(values + ys) for p in self.components))


def alpha_symbolic(m: int, N: int) -> SymbolicAlpha:
    """alpha of ``phi_r = sum_n a^r_n x^n`` over the ring of the a^r_n."""
    params = tuple((r, n) for r in range(1, m + 1) for d in range(1, N + 1) for n in monomials(m, d))
    index = {p: k for k, p in enumerate(params)}
    P = len(params)
    nvars = P + N * m

    def lookup(r, n):
        return Polynomial.variable(nvars, index[(r, n)])

    comps = _assemble(m, N, nvars, P, lookup)
    series = []
    for r in range(1, m + 1):
        p = Polynomial.zero(P + m)
        for k, (rr, n) in enumerate(params):
            if rr == r:
                e = [0] * (P + m)
                e[k] = 1
                e[P:] = n
                p = p + Polynomial.monomial(e)
        series.append(p)
    return SymbolicAlpha(m, N, params, tuple(comps), tuple(series))


# -- GA_m into GA_{m(N+1)} and subgroup constructors ---------------------------


def embed_ga(phi: Union[PolyEndo, PolyAutomorphism], N: int,
             inverse: Optional[PolyEndo] = None) -> PolyAutomorphism:
    """Lift a polynomial automorphism of k[x_1..x_m] to k[x, d^j x_i].

    x_i goes to phi_i and d^j x_i to d^j phi_i, without reduction at the
    origin. ``phi`` must come with an inverse, either attached, passed in,
    or computable because ``phi`` is triangular.
    """
    if isinstance(phi, PolyAutomorphism):
        auto = phi if inverse is None else PolyAutomorphism(phi.forward, inverse)
    elif inverse is not None:
        auto = PolyAutomorphism(phi, inverse)
    else:
        auto = invert_block_triangular(phi, 1)
    if auto.inverse is None:
        auto = invert_block_triangular(auto.forward, 1)
    return PolyAutomorphism(lift_endomorphism(auto.forward, N), lift_endomorphism(auto.inverse, N))


def lift_endomorphism(f: PolyEndo, N: int) -> PolyEndo:
    """x_i -> f_i, d^j x_i -> d^j f_i for any polynomial endomorphism f."""
    ctx = DifferentialContext(f.n, N)
    comps: List[Optional[Polynomial]] = [None] * ctx.nvars
    for i in range(1, ctx.m + 1):
        comps[ctx.x_slot(i)] = ctx.lift(f.components[i - 1])
        for j in range(1, ctx.N + 1):
            comps[ctx.y_slot(i, j)] = higher_differential(f.components[i - 1], j, ctx)
    return PolyEndo(ctx.nvars, tuple(comps))


def formal_elementary(m: int, N: int, i0: int, psi: Polynomial) -> TruncatedSeriesMap:
    """``x_i0 -> x_i0 + psi``, all other coordinates fixed (i0 is 1-based)."""
    if psi.nvars != m:
        raise DimensionError(f"psi must be a polynomial in {m} variables")
    if not 1 <= i0 <= m:
        raise IndexError(f"i0 = {i0} outside 1..{m}")
    if (i0 - 1) in psi.support():
        raise InvalidGeneratorError(f"psi depends on x{i0}")
    if psi.constant_term():
        raise InvalidGeneratorError("psi has a constant term")
    if psi.total_degree() > N:
        raise InvalidGeneratorError(f"psi has degree above {N}")
    comps = [Polynomial.variable(m, i) for i in range(m)]
    comps[i0 - 1] = comps[i0 - 1] + psi
    return TruncatedSeriesMap(m, N, tuple(comps))


def formal_triangular(components: Sequence[Polynomial], N: int) -> TruncatedSeriesMap:
    """Validated element whose component i depends on x_1..x_i only."""
    m = len(components)
    for i, p in enumerate(components):
        if any(v > i for v in p.support()):
            raise InvalidGeneratorError(f"component {i + 1} depends on a variable after x{i + 1}")
    phi = TruncatedSeriesMap.from_polynomials(components, N)
    if not phi.is_automorphism():
        raise NotInvertibleError("triangular map has a zero diagonal coefficient")
    return phi


def linear_embed(matrix: Sequence[Sequence], N: int) -> TruncatedSeriesMap:
    phi = TruncatedSeriesMap.linear(matrix, N)
    if not phi.is_automorphism():
        raise NotInvertibleError("matrix is singular")
    return phi
