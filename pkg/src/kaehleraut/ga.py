"""Polynomial endomorphisms and automorphisms of affine n-space.

A :class:`PolyEndo` is an n-tuple of polynomials in n variables, read as the
map ``y -> (f_1(y), ..., f_n(y))``. Composition is substitution,
``compose_poly(f, g)_i = f_i(g_1, ..., g_n)``.

Only block-triangular maps are inverted here; that covers every map this
package produces.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import linalg
from .poly import DimensionError, Polynomial
from .series import NotInvertibleError, monomials


@dataclass(frozen=True)
class PolyEndo:
    n: int
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.n:
            raise DimensionError(f"expected {self.n} components, got {len(comps)}")
        for i, p in enumerate(comps):
            if p.nvars != self.n:
                raise DimensionError(f"component {i + 1} lives in {p.nvars} variables, not {self.n}")

    @classmethod
    def identity(cls, n: int) -> "PolyEndo":
        return cls(n, tuple(Polynomial.variable(n, i) for i in range(n)))

    @classmethod
    def of(cls, components: Sequence[Polynomial]) -> "PolyEndo":
        return cls(len(components), tuple(components))

    @classmethod
    def linear(cls, matrix: Sequence[Sequence]) -> "PolyEndo":
        n = len(matrix)
        ys = [Polynomial.variable(n, j) for j in range(n)]
        return cls(n, tuple(sum((y.scale(a) for a, y in zip(row, ys)), Polynomial.zero(n)) for row in matrix))

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __matmul__(self, other: "PolyEndo") -> "PolyEndo":
        return compose_poly(self, other)

    def is_identity(self) -> bool:
        return self == PolyEndo.identity(self.n)

    def is_linear(self) -> bool:
        """Every component is a homogeneous linear form."""
        return all(p.is_homogeneous(1) for p in self.components)

    def degree(self) -> int:
        return max((p.total_degree() for p in self.components), default=-1)

    def render(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [p.render(names) for p in self.components]

    def to_record(self) -> dict:
        return {"kind": "poly_endo", "n": self.n, "components": [p.to_records() for p in self.components]}

    @classmethod
    def from_record(cls, record: dict) -> "PolyEndo":
        if record.get("kind", "poly_endo") != "poly_endo":
            raise ValueError(f"expected a poly_endo record, got {record.get('kind')!r}")
        comps = record["components"]
        n = int(record.get("n", len(comps)))
        return cls(n, tuple(Polynomial.from_records(n, recs) for recs in comps))


def compose_poly(f: PolyEndo, g: PolyEndo) -> PolyEndo:
    """``f o g``."""
    if f.n != g.n:
        raise DimensionError(f"cannot compose maps of affine {f.n}-space and {g.n}-space")
    return PolyEndo(f.n, tuple(p.substitute(g.components) for p in f.components))


@dataclass(frozen=True)
class PolyAutomorphism:
    """A polynomial map together with an optional, verified, inverse."""

    forward: PolyEndo
    inverse: Optional[PolyEndo] = None

    def __post_init__(self):
        if self.inverse is not None:
            ident = PolyEndo.identity(self.forward.n)
            if compose_poly(self.forward, self.inverse) != ident or compose_poly(self.inverse, self.forward) != ident:
                raise NotInvertibleError("supplied inverse does not invert the map")

    @property
    def n(self) -> int:
        return self.forward.n

    @classmethod
    def identity(cls, n: int) -> "PolyAutomorphism":
        ident = PolyEndo.identity(n)
        return cls(ident, ident)

    def compose(self, other: "PolyAutomorphism") -> "PolyAutomorphism":
        inv = None
        if self.inverse is not None and other.inverse is not None:
            inv = compose_poly(other.inverse, self.inverse)
        return PolyAutomorphism(compose_poly(self.forward, other.forward), inv)

    def __matmul__(self, other: "PolyAutomorphism") -> "PolyAutomorphism":
        return self.compose(other)

    def inverted(self) -> "PolyAutomorphism":
        if self.inverse is None:
            raise NotInvertibleError("no inverse known for this map")
        return PolyAutomorphism(self.inverse, self.forward)


def _blocks(n: int, block_size: int) -> List[range]:
    if block_size < 1 or n % block_size:
        raise ValueError(f"dimension {n} is not divisible by block size {block_size}")
    return [range(b, b + block_size) for b in range(0, n, block_size)]


def is_block_triangular(f: PolyEndo, block_size: int) -> bool:
    """Components of block s use only variables from blocks 1..s."""
    for block in _blocks(f.n, block_size):
        limit = block.stop
        for i in block:
            if any(v >= limit for v in f.components[i].support()):
                return False
    return True


def is_triangular(f: PolyEndo) -> bool:
    """Component i uses only variables 1..i."""
    return all(max(p.support(), default=-1) <= i for i, p in enumerate(f.components))


def is_elementary(f: PolyEndo) -> bool:
    """Exactly one component differs from the identity and omits its own variable."""
    moved = [i for i, p in enumerate(f.components) if p != Polynomial.variable(f.n, i)]
    if len(moved) != 1:
        return False
    i = moved[0]
    return i not in (f.components[i] - Polynomial.variable(f.n, i)).support()


def jacobian_matrix(f: PolyEndo) -> List[List[Polynomial]]:
    return [[p.diff(j) for j in range(f.n)] for p in f.components]


def jacobian_determinant(f: PolyEndo) -> Polynomial:
    """Determinant of the Jacobian by expansion over column subsets."""
    jac = jacobian_matrix(f)
    n = f.n
    # minors[S] = det of the first |S| rows restricted to columns S
    minors: Dict[FrozenSet[int], Polynomial] = {frozenset(): Polynomial.one(n)}
    for row in range(n):
        nxt: Dict[FrozenSet[int], Polynomial] = {}
        for cols, minor in minors.items():
            if not minor:
                continue
            for c in range(n):
                if c in cols or not jac[row][c]:
                    continue
                # sign of placing column c after the already chosen ones
                sign = -1 if sum(1 for k in cols if k > c) % 2 else 1
                key = cols | {c}
                term = minor * jac[row][c]
                nxt[key] = nxt.get(key, Polynomial.zero(n)) + (term if sign > 0 else -term)
        minors = nxt
    return minors.get(frozenset(range(n)), Polynomial.zero(n))


def _split_block(p: Polynomial, block: range) -> Tuple[List[Fraction], Polynomial]:
    """Write p = sum_c a_c y_c (c in block) + g(y below block)."""
    n = p.nvars
    lin = [Fraction(0)] * len(block)
    rest: Dict[Tuple[int, ...], Fraction] = {}
    for e, c in p.as_dict().items():
        touched = [v for v in block if e[v]]
        if not touched:
            rest[e] = c
            continue
        if len(touched) == 1 and e[touched[0]] == 1 and sum(e) == 1:
            lin[touched[0] - block.start] = c
            continue
        raise NotInvertibleError("diagonal block is not linear with constant coefficients")
    return lin, Polynomial(n, rest)


def invert_block_triangular(f: PolyEndo, block_size: int) -> PolyAutomorphism:
    """Exact inverse of a block-triangular map with invertible linear diagonal blocks.

    Blocks are solved in order; each is ``A_s y_s + g_s(y_1..y_{s-1})``, so
    ``y_s = A_s^{-1}(z_s - g_s(...))`` with the lower blocks already known.
    """
    if not is_block_triangular(f, block_size):
        raise NotInvertibleError(f"map is not block-triangular with block size {block_size}")
    n = f.n
    inv: List[Optional[Polynomial]] = [None] * n
    zero = Polynomial.zero(n)
    for block in _blocks(n, block_size):
        rows = []
        rests = []
        for i in block:
            lin, rest = _split_block(f.components[i], block)
            rows.append(lin)
            rests.append(rest)
        try:
            a_inv = linalg.inverse(rows)
        except linalg.SingularMatrixError:
            raise NotInvertibleError(f"diagonal block at variables {block.start + 1}..{block.stop} is singular") from None
        images = [inv[v] if v < block.start else zero for v in range(n)]
        rhs = [Polynomial.variable(n, i) - rest.substitute(images) for i, rest in zip(block, rests)]
        for r, i in enumerate(block):
            inv[i] = sum((q.scale(a) for a, q in zip(a_inv[r], rhs)), zero)
    return PolyAutomorphism(f, PolyEndo(n, tuple(inv)))


def random_triangular_automorphism(n: int, degree: int = 3, seed=None, coeff_bound: int = 3) -> PolyAutomorphism:
    """Random element of the triangular group, with its inverse.

    Component i is ``a_i y_i + g_i(y_1..y_{i-1})`` with ``a_i`` a nonzero
    integer and ``g_i`` of degree at most ``degree``, constants allowed.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)

    comps = []
    for i in range(n):
        terms = {}
        for d in range(0, degree + 1):
            for e in monomials(i, d):
                terms[e + (0,) * (n - i)] = rng.randint(-coeff_bound, coeff_bound)
        a = rng.choice([1, -1, 2, -2])
        unit = tuple(int(k == i) for k in range(n))
        comps.append(Polynomial(n, terms) + Polynomial.monomial(unit, a))
    return invert_block_triangular(PolyEndo(n, tuple(comps)), 1)
