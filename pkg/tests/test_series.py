import random
from fractions import Fraction

import pytest

from kaehleraut import linalg
from kaehleraut.poly import DimensionError, Polynomial
from kaehleraut.series import (NotInvertibleError, TruncatedSeriesMap, compose, invert, random_automorphism,
                               random_linear, random_triangular)

GRID = [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)]


def uni(*coeffs, N=2):
    return TruncatedSeriesMap(1, N, (Polynomial(1, {(k,): c for k, c in enumerate(coeffs)}),))


def brute_compose_univariate(outer, inner, N):
    """Coefficient lists; expand sum_k outer[k] * inner^k and cut at degree N."""
    result = [0] * (N + 1)
    power = [1] + [0] * N
    for k, c in enumerate(outer):
        for d in range(N + 1):
            result[d] += c * power[d]
        nxt = [0] * (N + 1)
        for i, a in enumerate(power):
            for j, b in enumerate(inner):
                if i + j <= N:
                    nxt[i + j] += a * b
        power = nxt
    return result


def test_is_automorphism():
    assert uni(0, 1, 1).is_automorphism()
    assert not uni(0, 0, 1).is_automorphism()
    assert not TruncatedSeriesMap.linear([[1, 1], [1, 1]], 2).is_automorphism()


def test_constant_term_rejected():
    with pytest.raises(ValueError):
        uni(1, 1)


def test_compose_examples():
    assert compose(uni(0, 1, 1), uni(0, 1, 1)) == uni(*brute_compose_univariate([0, 1, 1], [0, 1, 1], 2))
    assert compose(uni(0, 1, 1), uni(0, 1, 1)) == uni(0, 1, 2)
    assert compose(uni(0, 1, 1), TruncatedSeriesMap.identity(1, 2)) == uni(0, 1, 1)
    assert compose(uni(0, 1, 1), uni(0, 2)) == uni(0, 2, 4)


def test_compose_shape_mismatch():
    with pytest.raises(DimensionError):
        compose(uni(0, 1, N=2), uni(0, 1, N=3))


def test_invert_examples():
    psi = invert(uni(0, 1, 1))
    assert psi == uni(0, 1, -1)
    assert brute_compose_univariate([0, 1, 1], [0, 1, -1], 2) == [0, 1, 0]
    a = [[2, 1], [1, 1]]
    assert invert(TruncatedSeriesMap.linear(a, 3)) == TruncatedSeriesMap.linear(linalg.inverse(a), 3)
    assert invert(TruncatedSeriesMap.identity(2, 3)) == TruncatedSeriesMap.identity(2, 3)


def test_invert_singular():
    with pytest.raises(NotInvertibleError):
        invert(uni(0, 0, 1))


@pytest.mark.parametrize("m, N", GRID)
def test_group_axioms(m, N):
    rng = random.Random(m * 10 + N)
    ident = TruncatedSeriesMap.identity(m, N)
    for _ in range(15):
        f, g, h = (random_automorphism(m, N, rng) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        assert compose(f, ident) == f == compose(ident, f)
        fi = invert(f)
        assert compose(f, fi) == ident == compose(fi, f)
        assert (compose(f, g).jacobian_determinant()
                == f.jacobian_determinant() * g.jacobian_determinant())


@pytest.mark.parametrize("m, N", [(1, 4), (2, 3)])
def test_truncation_consistency(m, N):
    rng = random.Random(7)
    for _ in range(10):
        f, g = random_automorphism(m, N, rng), random_automorphism(m, N, rng)
        for lower in range(1, N):
            assert compose(f, g).truncate(lower) == compose(f.truncate(lower), g.truncate(lower))


def test_random_is_deterministic_and_bounded():
    a = random_automorphism(2, 3, seed=5, coeff_bound=2)
    assert a == random_automorphism(2, 3, seed=5, coeff_bound=2)
    assert a.is_automorphism()
    for p in a.components:
        for _, c in p:
            assert c.denominator == 1 and abs(c.numerator) <= 2


def test_random_triangular_and_linear_shapes():
    t = random_triangular(3, 2, seed=1)
    for i, p in enumerate(t.components):
        assert max(p.support()) <= i
    assert t.is_automorphism()
    lin = random_linear(3, 2, seed=1)
    assert all(p.is_homogeneous(1) for p in lin.components)


def test_record_round_trip():
    f = random_automorphism(2, 2, seed=3)
    assert TruncatedSeriesMap.from_record(f.to_record()) == f
