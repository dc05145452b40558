import itertools
import math
import random

import pytest
from scipy.stats import chisquare

from flagburnside.field import (
    MAX_MODULUS,
    CapacityError,
    FieldElement,
    FieldParams,
    check_modulus,
    field_inv,
    inv_mod,
    is_prime,
    randbelow,
    sample_nonzero,
    sample_uniform,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def test_primality_matches_trial_division():
    def slow(m):
        return m >= 2 and all(m % d for d in range(2, math.isqrt(m) + 1))

    assert all(is_prime(m) == slow(m) for m in range(2000))
    assert is_prime(1997) and is_prime(20011)
    assert not is_prime(1997 * 20011)


@pytest.mark.parametrize("bad", [0, 1, 4, 9, 20010])
def test_composite_modulus_rejected(bad):
    with pytest.raises(ValueError):
        FieldParams(bad)


def test_modulus_capacity():
    with pytest.raises(CapacityError):
        check_modulus(MAX_MODULUS + 2)
    with pytest.raises(TypeError):
        check_modulus(2.0)


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_field_axioms_exhaustive(q):
    F = FieldParams(q)
    els = list(F.elements())
    zero, one = F(0), F(1)
    for a, b in itertools.product(els, repeat=2):
        assert a + b == b + a
        assert a * b == b * a
        assert (a - b) + b == a
    for a, b, c in itertools.product(els, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in els:
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        if a != zero:
            assert a * a.inverse() == one
            assert a / a == one


def test_field_inv_examples():
    assert int(field_inv(FieldParams(7)(3))) == 5
    assert int(field_inv(FieldParams(2)(1))) == 1
    with pytest.raises(ZeroDivisionError):
        field_inv(FieldParams(5)(0))
    with pytest.raises(ZeroDivisionError):
        inv_mod(0, 5)


def test_element_range_and_mixing_fields():
    with pytest.raises(ValueError):
        FieldElement(7, FieldParams(7))
    with pytest.raises(ValueError):
        FieldParams(5)(1) + FieldParams(7)(1)


def test_randbelow_large_bound():
    rng = random.Random(1)
    k = 3 * 2**200 + 7
    assert all(0 <= randbelow(rng, k) < k for _ in range(200))
    with pytest.raises(ValueError):
        randbelow(rng, 0)


def test_sample_uniform_support_q2():
    rng = random.Random(0)
    F = FieldParams(2)
    assert {int(sample_uniform(F, rng)) for _ in range(200)} == {0, 1}


def test_sample_uniform_q3_five_sigma():
    rng = random.Random(3)
    F = FieldParams(3)
    N = 3 * 10**5
    counts = [0, 0, 0]
    for _ in range(N):
        counts[int(sample_uniform(F, rng))] += 1
    sigma = math.sqrt(N * (1 / 3) * (2 / 3))
    assert all(abs(c - 10**5) < 5 * sigma for c in counts)


def test_sample_uniform_q1997_chi_square():
    rng = random.Random(4)
    q, N = 1997, 10**6
    counts = [0] * q
    for _ in range(N):
        counts[randbelow(rng, q)] += 1
    assert chisquare(counts).pvalue > 1e-3
    bound = 5 * math.sqrt((1 / q) * (1 - 1 / q) / N)
    assert max(abs(c / N - 1 / q) for c in counts) < bound


def test_sample_nonzero():
    rng = random.Random(5)
    assert all(int(sample_nonzero(FieldParams(2), rng)) == 1 for _ in range(50))
    assert all(int(sample_nonzero(FieldParams(5), rng)) != 0 for _ in range(1000))
    F = FieldParams(3)
    N = 3 * 10**5
    ones = sum(int(sample_nonzero(F, rng)) == 1 for _ in range(N))
    sigma = math.sqrt(N / 4)
    assert abs(ones - N / 2) < 5 * sigma
