"""Sparse multivariate polynomials with exact rational coefficients.

Variables are anonymous slots ``0..nvars-1``; names only enter when a
polynomial is rendered or parsed.
"""
from __future__ import annotations

import random
from operator import add
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .ring import coeff, format_coeff, parse_coeff

Exponents = Tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


def _grlex_key(e: Exponents):
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables.

    Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
    pruned. Iteration and rendering use graded lexicographic order, highest
    term first.
    """

    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Sequence[int], object]] = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: Dict[Exponents, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(k) for k in e)
                if len(e) != nvars:
                    raise DimensionError(f"exponent {e} does not have {nvars} entries")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                c = coeff(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            clean = {e: c for e, c in clean.items() if c}
        self._nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponents, Fraction]) -> "Polynomial":
        # terms must already be clean
        p = object.__new__(cls)
        p._nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = coeff(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, slot: int) -> "Polynomial":
        if not 0 <= slot < nvars:
            raise IndexError(f"variable slot {slot} outside 0..{nvars - 1}")
        e = [0] * nvars
        e[slot] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], c=1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): c})

    # -- basic accessors --------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    def terms(self) -> List[Tuple[Exponents, Fraction]]:
        """Terms in canonical (descending graded lex) order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __iter__(self) -> Iterator[Tuple[Exponents, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def as_dict(self) -> Dict[Exponents, Fraction]:
        return dict(self._terms)

    def coefficient_of(self, e: Sequence[int]) -> Fraction:
        e = tuple(e)
        if len(e) != self._nvars:
            raise DimensionError(f"exponent {e} does not have {self._nvars} entries")
        return self._terms.get(e, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def weighted_degree(self, weights: Sequence[int]) -> int:
        return max((_wdeg(e, weights) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int, weights: Optional[Sequence[int]] = None) -> bool:
        w = weights or (1,) * self._nvars
        return all(_wdeg(e, w) == degree for e in self._terms)

    def support(self) -> set:
        """Slots of the variables that actually occur."""
        used = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    def degree_in(self, slot: int) -> int:
        return max((e[slot] for e in self._terms), default=-1)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise DimensionError(f"cannot combine polynomials in {self._nvars} and {other._nvars} variables")
            return other
        return Polynomial.constant(self._nvars, other)

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self._nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self._nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Polynomial", bound: Optional[int] = None,
            weights: Optional[Sequence[int]] = None) -> "Polynomial":
        """Product, optionally dropping terms of (weighted) degree above ``bound``."""
        other = self._coerce(other)
        terms: Dict[Exponents, Fraction] = {}
        if bound is None:
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(map(add, e1, e2))
                    terms[e] = terms.get(e, 0) + c1 * c2
        else:
            w = weights or (1,) * self._nvars
            right = [(e, c, _wdeg(e, w)) for e, c in other._terms.items()]
            for e1, c1 in self._terms.items():
                d1 = _wdeg(e1, w)
                if d1 > bound:
                    continue
                for e2, c2, d2 in right:
                    if d1 + d2 > bound:
                        continue
                    e = tuple(map(add, e1, e2))
                    terms[e] = terms.get(e, 0) + c1 * c2
        return Polynomial._raw(self._nvars, {e: c for e, c in terms.items() if c})

    def scale(self, c) -> "Polynomial":
        c = coeff(c)
        if not c:
            return Polynomial.zero(self._nvars)
        return Polynomial._raw(self._nvars, {e: c * v for e, v in self._terms.items()})

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.one(self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(self._nvars, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- calculus and substitution ----------------------------------------

    def diff(self, slot: int, times: int = 1) -> "Polynomial":
        """``times``-fold formal derivative in variable ``slot``."""
        if times == 0:
            return self
        terms: Dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            k = e[slot]
            if k < times:
                continue
            factor = 1
            for j in range(k - times + 1, k + 1):
                factor *= j
            ne = e[:slot] + (k - times,) + e[slot + 1:]
            terms[ne] = terms.get(ne, 0) + c * factor
        return Polynomial._raw(self._nvars, {e: c for e, c in terms.items() if c})

    def partial_derivative(self, multi_order: Sequence[int]) -> "Polynomial":
        """Iterated partial derivative, ``multi_order[i]`` times in variable ``i``.

        ``multi_order`` may be shorter than ``nvars``; missing slots mean 0.
        """
        if len(multi_order) > self._nvars:
            raise DimensionError("derivative order has more entries than variables")
        p = self
        for slot, k in enumerate(multi_order):
            if k:
                p = p.diff(slot, k)
        return p

    def substitute(self, images: Sequence["Polynomial"], bound: Optional[int] = None,
                   weights: Optional[Sequence[int]] = None) -> "Polynomial":
        """Compose: replace variable ``i`` by ``images[i]``.

        With ``bound`` set, everything of (weighted, in the images' ring)
        degree above ``bound`` is dropped, also in intermediate products.
        """
        if len(images) != self._nvars:
            raise DimensionError(f"need {self._nvars} images, got {len(images)}")
        if not images:
            return Polynomial._raw(0, dict(self._terms))
        target = images[0].nvars
        for q in images:
            if q.nvars != target:
                raise DimensionError("substitution images must share a variable count")
        powers: List[Dict[int, Polynomial]] = [{0: Polynomial.one(target), 1: q} for q in images]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1).mul(images[i], bound, weights)
            return cache[k]

        acc: Dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            term = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term.mul(power(i, k), bound, weights)
                    if not term:
                        break
            for te, tc in term._terms.items():
                acc[te] = acc.get(te, 0) + tc
        result = Polynomial._raw(target, {e: c for e, c in acc.items() if c})
        if bound is not None:
            result = result.truncate_total_degree(bound, weights)
        return result

    def truncate_total_degree(self, bound: int, weights: Optional[Sequence[int]] = None) -> "Polynomial":
        if bound < 0:
            raise ValueError("truncation bound must be nonnegative")
        w = weights or (1,) * self._nvars
        return Polynomial._raw(self._nvars, {e: c for e, c in self._terms.items() if _wdeg(e, w) <= bound})

    truncate = truncate_total_degree

    def homogeneous_part(self, degree: int, weights: Optional[Sequence[int]] = None) -> "Polynomial":
        w = weights or (1,) * self._nvars
        return Polynomial._raw(self._nvars, {e: c for e, c in self._terms.items() if _wdeg(e, w) == degree})

    def evaluate_slots(self, values: Mapping[int, object]) -> "Polynomial":
        """Set the given slots to constants; the variable count is unchanged."""
        values = {i: coeff(v) for i, v in values.items()}
        terms: Dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            ne = list(e)
            for i, v in values.items():
                if e[i]:
                    c = c * v ** e[i]
                    ne[i] = 0
            if c:
                ne = tuple(ne)
                terms[ne] = terms.get(ne, 0) + c
        return Polynomial._raw(self._nvars, {e: c for e, c in terms.items() if c})

    def relabel(self, nvars: int, slot_map: Sequence[int]) -> "Polynomial":
        """Move variable ``i`` to slot ``slot_map[i]`` of an ``nvars``-variable ring.

        Raises if a dropped variable occurs, i.e. if ``slot_map[i]`` is None
        while variable ``i`` is used.
        """
        if len(slot_map) != self._nvars:
            raise DimensionError("slot map must have one entry per variable")
        terms: Dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    j = slot_map[i]
                    if j is None:
                        raise ValueError(f"variable slot {i} occurs but is dropped by relabel")
                    ne[j] += k
            ne = tuple(ne)
            terms[ne] = terms.get(ne, 0) + c
        return Polynomial._raw(nvars, {e: c for e, c in terms.items() if c})

    # -- text and records -------------------------------------------------

    def render(self, names: Optional[Sequence[str]] = None, latex: bool = False) -> str:
        """Canonical text such as ``2*x1^2*x2 + 1/2*x3``."""
        if names is None:
            names = [f"x{i + 1}" for i in range(self._nvars)]
        if not self._terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            body = _render_term(abs(c), e, names, latex)
            if idx == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self._nvars}, {self.render()!r})"

    def to_records(self) -> List[dict]:
        return [{"exp": list(e), "c": format_coeff(c)} for e, c in self.terms()]

    @classmethod
    def from_records(cls, nvars: int, records: Iterable[Mapping]) -> "Polynomial":
        terms: Dict[Exponents, Fraction] = {}
        for rec in records:
            e = tuple(int(k) for k in rec["exp"])
            c = parse_coeff(str(rec["c"]))
            terms[e] = terms.get(e, 0) + c
        return cls(nvars, terms)


def _wdeg(e: Sequence[int], weights: Sequence[int]) -> int:
    return sum(k * w for k, w in zip(e, weights))


def _render_term(c: Fraction, e: Exponents, names: Sequence[str], latex: bool) -> str:
    factors = []
    for i, k in enumerate(e):
        if not k:
            continue
        if latex:
            factors.append(names[i] if k == 1 else f"{{{names[i]}}}^{{{k}}}")
        else:
            factors.append(names[i] if k == 1 else f"{names[i]}^{k}")
    if latex:
        if c.denominator == 1:
            cs = str(c.numerator)
        else:
            cs = f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
        if not factors:
            return cs
        mono = " ".join(factors)
        return mono if c == 1 else f"{cs} {mono}"
    if not factors:
        return format_coeff(c)
    mono = "*".join(factors)
    return mono if c == 1 else f"{format_coeff(c)}*{mono}"


def variables(nvars: int) -> List[Polynomial]:
    """All coordinate polynomials of an ``nvars``-variable ring."""
    return [Polynomial.variable(nvars, i) for i in range(nvars)]


def random_polynomial(nvars: int, degree: int, rng=None, coeff_bound: int = 9,
                      density: float = 0.5, min_degree: int = 0) -> Polynomial:
    """Random integer polynomial of total degree at most ``degree``.

    Each monomial is kept with probability ``density`` and gets a coefficient
    drawn uniformly from ``[-coeff_bound, coeff_bound]``.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    terms = {}
    for e in _exponents_up_to(nvars, degree):
        if sum(e) >= min_degree and rng.random() < density:
            terms[e] = rng.randint(-coeff_bound, coeff_bound)
    return Polynomial(nvars, terms)


def _exponents_up_to(nvars: int, degree: int):
    if nvars == 0:
        yield ()
        return
    for k in range(degree + 1):
        for rest in _exponents_up_to(nvars - 1, degree - k):
            yield (k,) + rest
