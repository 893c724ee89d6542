"""Higher differentials d^n f of polynomials in x_1..x_m.

The ambient ring of the output is k[x_1..x_m, d^j x_i] with the d^j x_i
stored order-major after the x slots: ``slot(d^j x_i) = m + (j-1)*m + (i-1)``.
Under the weighting deg(d^j x_i) = j, deg(x_i) = 0, every d^n f is
homogeneous of degree n.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .poly import DimensionError, Polynomial


@dataclass(frozen=True)
class WeightMatrix:
    """m x n matrix (l_ij) with sum_ij j * l_ij = n.

    Row i belongs to the variable x_i, column j to the order of d^j x_i.
    """

    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(int(v) for v in row) for row in self.entries))
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise ValueError("weight matrix rows must have equal length")
        if any(v < 0 for row in self.entries for v in row):
            raise ValueError("weight matrix entries must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return self.weighted_total

    @property
    def weighted_total(self) -> int:
        return sum((j + 1) * v for row in self.entries for j, v in enumerate(row))

    @property
    def row_sums(self) -> Tuple[int, ...]:
        """``|l_i|``: how often x_i is differentiated."""
        return tuple(sum(row) for row in self.entries)

    @property
    def total(self) -> int:
        """``||l||``: total order of the partial derivative."""
        return sum(self.row_sums)

    def factorial_product(self) -> int:
        return math.prod(math.factorial(v) for row in self.entries for v in row)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        """1-based access ``l[i, j]``; zero outside the stored columns."""
        i, j = ij
        row = self.entries[i - 1]
        return row[j - 1] if j <= len(row) else 0

    @classmethod
    def from_dict(cls, m: int, n: int, values: Dict[Tuple[int, int], int]) -> "WeightMatrix":
        rows = [[0] * n for _ in range(m)]
        for (i, j), v in values.items():
            rows[i - 1][j - 1] = v
        return cls(tuple(tuple(r) for r in rows))


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    # descending lexicographic
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _weight_matrices(m: int, n: int) -> Tuple[WeightMatrix, ...]:
    out: List[WeightMatrix] = []
    columns: List[Tuple[int, ...]] = [()] * n

    def walk(j: int, remaining: int):
        if j == 0:
            if remaining == 0:
                out.append(WeightMatrix(tuple(tuple(columns[c][i] for c in range(n)) for i in range(m))))
            return
        for count in range(remaining // j, -1, -1):
            for split in _compositions(count, m):
                columns[j - 1] = split
                walk(j - 1, remaining - count * j)

    walk(n, n)
    return tuple(out)


def enumerate_weight_matrices(m: int, n: int) -> List[WeightMatrix]:
    """Every m x n weight matrix of weighted total n, once each.

    The order is deterministic: higher differential orders are filled first,
    larger counts before smaller ones. For m = 1 these are the integer
    partitions of n.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return list(_weight_matrices(m, n))


@dataclass(frozen=True)
class DifferentialTerm:
    """One summand of d^n f: ``prefactor * (partial^orders f) * prod (d^j x_i)^l_ij``."""

    weights: WeightMatrix
    prefactor: Fraction
    derivative_orders: Tuple[int, ...]


def differential_terms(m: int, n: int) -> List[DifferentialTerm]:
    """The universal shape of d^n f for a generic f in m variables."""
    return [
        DifferentialTerm(l, Fraction(1, l.factorial_product()), l.row_sums)
        for l in enumerate_weight_matrices(m, n)
    ]


@dataclass(frozen=True)
class DifferentialContext:
    """Variable layout of k[x_1..x_m, d^j x_i | 1 <= j <= N]."""

    m: int
    N: int

    def __post_init__(self):
        if self.m < 1 or self.N < 1:
            raise ValueError("m and N must be positive")

    @property
    def nvars(self) -> int:
        return self.m + self.N * self.m

    @property
    def y_nvars(self) -> int:
        return self.N * self.m

    def x_slot(self, i: int) -> int:
        return i - 1

    def y_slot(self, i: int, j: int) -> int:
        """Slot of d^j x_i (1-based i and j) in the full ring."""
        return self.m + self.y_only_slot(i, j)

    def y_only_slot(self, i: int, j: int) -> int:
        """Slot of y_ij in the ring of the y variables alone."""
        if not (1 <= i <= self.m and 1 <= j <= self.N):
            raise IndexError(f"no variable y_{i},{j} for m={self.m}, N={self.N}")
        return (j - 1) * self.m + (i - 1)

    def y_index(self, slot: int) -> Tuple[int, int]:
        """Inverse of :meth:`y_only_slot`: ``(i, j)``."""
        j, i = divmod(slot, self.m)
        return i + 1, j + 1

    def weights(self) -> Tuple[int, ...]:
        return (0,) * self.m + self.y_weights()

    def y_weights(self) -> Tuple[int, ...]:
        return tuple(j for j in range(1, self.N + 1) for _ in range(self.m))

    def names(self, latex: bool = False) -> List[str]:
        """Display names: ``x1`` and ``d2x1`` (``x`` and ``d2x`` when m = 1)."""
        if latex:
            xs = ["x" if self.m == 1 else f"x_{{{i}}}" for i in range(1, self.m + 1)]
            ys = [f"d^{{{j}}}{xs[i - 1]}" for j in range(1, self.N + 1) for i in range(1, self.m + 1)]
            return xs + ys
        xs = ["x" if self.m == 1 else f"x{i}" for i in range(1, self.m + 1)]
        ys = [f"d{j}{xs[i - 1]}" for j in range(1, self.N + 1) for i in range(1, self.m + 1)]
        return xs + ys

    def y_names(self, latex: bool = False) -> List[str]:
        """Names of the reduced coordinates: ``y1_2`` (``y2`` when m = 1)."""
        out = []
        for j in range(1, self.N + 1):
            for i in range(1, self.m + 1):
                if latex:
                    out.append(f"y_{{{j}}}" if self.m == 1 else f"y_{{{i},{j}}}")
                else:
                    out.append(f"y{j}" if self.m == 1 else f"y{i}_{j}")
        return out

    def lift(self, f: Polynomial) -> Polynomial:
        """Embed a polynomial in x_1..x_m into the full ring."""
        if f.nvars == self.nvars:
            return f
        if f.nvars != self.m:
            raise DimensionError(f"expected a polynomial in {self.m} variables, got {f.nvars}")
        return f.relabel(self.nvars, list(range(self.m)))

    def y_variable(self, i: int, j: int) -> Polynomial:
        return Polynomial.variable(self.nvars, self.y_slot(i, j))


def _check_order(n: int, ctx: DifferentialContext):
    if not 1 <= n <= ctx.N:
        raise ValueError(f"differential order {n} outside 1..{ctx.N}")


def higher_differential(f: Polynomial, n: int, ctx: DifferentialContext) -> Polynomial:
    """d^n f as a polynomial in the x's and the d^j x_i."""
    _check_order(n, ctx)
    f = ctx.lift(f)
    partials: Dict[Tuple[int, ...], Polynomial] = {}
    total: Dict[Tuple[int, ...], Fraction] = {}
    for term in differential_terms(ctx.m, n):
        orders = term.derivative_orders
        if orders not in partials:
            partials[orders] = f.partial_derivative(orders)
        part = partials[orders]
        if not part:
            continue
        shift = [0] * ctx.nvars
        for i, row in enumerate(term.weights.entries, start=1):
            for j, v in enumerate(row, start=1):
                if v:
                    shift[ctx.y_slot(i, j)] = v
        for e, c in part.as_dict().items():
            ne = tuple(a + b for a, b in zip(e, shift))
            total[ne] = total.get(ne, 0) + c * term.prefactor
    return Polynomial(ctx.nvars, total)


def universal_derivation(f: Polynomial, ctx: DifferentialContext) -> Polynomial:
    """f + d^1 f + ... + d^N f."""
    result = ctx.lift(f)
    for n in range(1, ctx.N + 1):
        result = result + higher_differential(f, n, ctx)
    return result


def taylor_oracle(f: Polynomial, n: int, ctx: DifferentialContext) -> Polynomial:
    """Coefficient of t^n in f(x_i + sum_j d^j x_i * t^j).

    Brute-force expansion with one private auxiliary variable t; shares
    nothing with :func:`higher_differential` beyond polynomial arithmetic.
    """
    _check_order(n, ctx)
    if f.nvars != ctx.m:
        if f.nvars == ctx.nvars and not (f.support() - set(range(ctx.m))):
            f = f.relabel(ctx.m, [i if i < ctx.m else None for i in range(ctx.nvars)])
        else:
            raise DimensionError(f"expected a polynomial in {ctx.m} variables")
    big = ctx.nvars + 1
    t_slot = ctx.nvars
    t = Polynomial.variable(big, t_slot)
    images = []
    for i in range(1, ctx.m + 1):
        img = Polynomial.variable(big, ctx.x_slot(i))
        for j in range(1, ctx.N + 1):
            img = img + Polynomial.variable(big, ctx.y_slot(i, j)) * t ** j
        images.append(img)
    t_only = (0,) * ctx.nvars + (1,)
    expanded = f.substitute(images, bound=n, weights=t_only)
    picked = {e[:t_slot]: c for e, c in expanded.as_dict().items() if e[t_slot] == n}
    return Polynomial(ctx.nvars, picked)


def reduce_at_origin(p: Polynomial, ctx: DifferentialContext) -> Polynomial:
    """Set every x_i to zero; the result lives in the y variables alone."""
    if p.nvars != ctx.nvars:
        raise DimensionError(f"expected a polynomial in {ctx.nvars} variables")
    at_zero = p.evaluate_slots({i: 0 for i in range(ctx.m)})
    return at_zero.relabel(ctx.y_nvars, [None] * ctx.m + list(range(ctx.y_nvars)))
