"""Automorphisms of the truncated power series ring k[[x_1..x_m]]/(x)^(N+1).

An element is an m-tuple of polynomials without constant term, reduced
modulo all monomials of total degree above N. The group law is
substitution: ``compose(phi, psi)_i = phi_i(psi_1, ..., psi_m)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterator, List, Sequence, Tuple

from . import linalg
from .poly import DimensionError, Polynomial


class NotInvertibleError(ValueError):
    """The map has a singular linear part and is not an automorphism."""


def monomials(m: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """Exponent vectors of total degree ``degree`` in ``m`` variables."""
    for combo in combinations_with_replacement(range(m), degree):
        e = [0] * m
        for i in combo:
            e[i] += 1
        yield tuple(e)


@dataclass(frozen=True)
class TruncatedSeriesMap:
    m: int
    N: int
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        if self.m < 1 or self.N < 1:
            raise ValueError("m and N must be positive")
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.m:
            raise DimensionError(f"expected {self.m} components, got {len(comps)}")
        for i, p in enumerate(comps):
            if p.nvars != self.m:
                raise DimensionError(f"component {i + 1} lives in {p.nvars} variables, not {self.m}")
            if p.constant_term():
                raise ValueError(f"component {i + 1} has a nonzero constant term")
            if p.total_degree() > self.N:
                raise ValueError(f"component {i + 1} has degree above the truncation order {self.N}")

    @classmethod
    def from_polynomials(cls, components: Sequence[Polynomial], N: int) -> "TruncatedSeriesMap":
        """Build a map, silently discarding terms of degree above ``N``."""
        comps = tuple(p.truncate_total_degree(N) for p in components)
        return cls(len(comps), N, comps)

    @classmethod
    def identity(cls, m: int, N: int) -> "TruncatedSeriesMap":
        return cls(m, N, tuple(Polynomial.variable(m, i) for i in range(m)))

    @classmethod
    def linear(cls, matrix: Sequence[Sequence], N: int) -> "TruncatedSeriesMap":
        """The homogeneous linear map ``x -> A x``."""
        m = len(matrix)
        xs = [Polynomial.variable(m, j) for j in range(m)]
        comps = []
        for row in matrix:
            p = Polynomial.zero(m)
            for a, x in zip(row, xs):
                p = p + x.scale(a)
            comps.append(p)
        return cls(m, N, tuple(comps))

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def coefficient(self, r: int, n: Sequence[int]) -> Fraction:
        """Coefficient of ``x^n`` in component ``r`` (0-based)."""
        return self.components[r].coefficient_of(n)

    def linear_part(self) -> List[List[Fraction]]:
        """Entry (i, j) is the coefficient of x_j in component i."""
        m = self.m
        unit = [tuple(int(k == j) for k in range(m)) for j in range(m)]
        return [[p.coefficient_of(unit[j]) for j in range(m)] for p in self.components]

    def jacobian_determinant(self) -> Fraction:
        return linalg.det(self.linear_part())

    def is_automorphism(self) -> bool:
        # over Q a nonzero determinant is a unit
        return self.jacobian_determinant() != 0

    def truncate(self, N: int) -> "TruncatedSeriesMap":
        if N > self.N:
            raise ValueError("cannot raise the truncation order")
        return TruncatedSeriesMap.from_polynomials(self.components, N)

    def compose(self, other: "TruncatedSeriesMap") -> "TruncatedSeriesMap":
        return compose(self, other)

    def __matmul__(self, other: "TruncatedSeriesMap") -> "TruncatedSeriesMap":
        return compose(self, other)

    def render(self, names=None) -> List[str]:
        return [p.render(names) for p in self.components]

    def to_record(self) -> dict:
        return {
            "kind": "series_map",
            "m": self.m,
            "N": self.N,
            "components": [p.to_records() for p in self.components],
        }

    @classmethod
    def from_record(cls, record: dict) -> "TruncatedSeriesMap":
        if record.get("kind", "series_map") != "series_map":
            raise ValueError(f"expected a series_map record, got {record.get('kind')!r}")
        m, N = int(record["m"]), int(record["N"])
        comps = [Polynomial.from_records(m, recs) for recs in record["components"]]
        return cls(m, N, tuple(comps))


def is_automorphism(phi: TruncatedSeriesMap) -> bool:
    return phi.is_automorphism()


def compose(phi: TruncatedSeriesMap, psi: TruncatedSeriesMap) -> TruncatedSeriesMap:
    """``phi o psi``: component i is phi_i(psi_1, ..., psi_m) mod (x)^(N+1)."""
    if (phi.m, phi.N) != (psi.m, psi.N):
        raise DimensionError(f"cannot compose maps of shape (m={phi.m}, N={phi.N}) and (m={psi.m}, N={psi.N})")
    comps = tuple(p.substitute(psi.components, bound=phi.N) for p in phi.components)
    return TruncatedSeriesMap(phi.m, phi.N, comps)


def invert(phi: TruncatedSeriesMap) -> TruncatedSeriesMap:
    """Group inverse, solved degree by degree.

    Start from the inverse linear map. If ``phi o psi = x + e`` where ``e``
    starts in degree d, then replacing ``psi`` by ``psi - A^{-1} e_d``
    kills the degree-d error without touching lower degrees.
    """
    m, N = phi.m, phi.N
    try:
        a_inv = linalg.inverse(phi.linear_part())
    except linalg.SingularMatrixError:
        raise NotInvertibleError(f"linear part {phi.linear_part()} is singular") from None
    xs = [Polynomial.variable(m, i) for i in range(m)]
    psi = [sum((x.scale(a) for a, x in zip(row, xs)), Polynomial.zero(m)) for row in a_inv]
    for d in range(2, N + 1):
        err = [p.substitute(psi, bound=d).homogeneous_part(d) for p in phi.components]
        psi = [
            q - sum((e.scale(a) for a, e in zip(row, err)), Polynomial.zero(m))
            for q, row in zip(psi, a_inv)
        ]
    return TruncatedSeriesMap(m, N, tuple(psi))


def _random_poly(rng: random.Random, m: int, N: int, bound: int, allowed=None) -> Polynomial:
    terms = {}
    for d in range(1, N + 1):
        for e in monomials(m, d):
            if allowed is not None and any(k and i not in allowed for i, k in enumerate(e)):
                continue
            terms[e] = rng.randint(-bound, bound)
    return Polynomial(m, terms)


def random_automorphism(m: int, N: int, seed=None, coeff_bound: int = 3) -> TruncatedSeriesMap:
    """Random element with integer coefficients in ``[-coeff_bound, coeff_bound]``.

    Deterministic for a fixed seed. A singular linear part is resampled.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        phi = TruncatedSeriesMap(m, N, tuple(_random_poly(rng, m, N, coeff_bound) for _ in range(m)))
        if phi.is_automorphism():
            return phi


def random_triangular(m: int, N: int, seed=None, coeff_bound: int = 3) -> TruncatedSeriesMap:
    """Random element whose component i depends only on x_1..x_i."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    comps = []
    for i in range(m):
        p = _random_poly(rng, m, N, coeff_bound, allowed=set(range(i + 1)))
        unit = tuple(int(k == i) for k in range(m))
        if not p.coefficient_of(unit):
            p = p + Polynomial.monomial(unit, rng.choice([-1, 1]) * rng.randint(1, max(coeff_bound, 1)))
        comps.append(p)
    return TruncatedSeriesMap(m, N, tuple(comps))


def random_linear(m: int, N: int, seed=None, coeff_bound: int = 3) -> TruncatedSeriesMap:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        a = [[rng.randint(-coeff_bound, coeff_bound) for _ in range(m)] for _ in range(m)]
        if linalg.det(a):
            return TruncatedSeriesMap.linear(a, N)
