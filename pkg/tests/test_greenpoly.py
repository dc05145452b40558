from math import factorial, prod

import pytest

from flagburnside.greenpoly import IntPolynomial, eigenline_factor, green, green_eval, poincare_polynomial
from flagburnside.matfq import MatrixOverFq
from flagburnside.oracle import fixed_count
from flagburnside.partitions import (
    Partition,
    b_stat,
    e_set_size,
    hook_count,
    partitions_of,
    remove_box_set,
)
from flagburnside.perm import all_permutations


def P(*parts):
    return Partition(parts)


def test_polynomial_arithmetic():
    a = IntPolynomial((1, 2))
    b = IntPolynomial((0, 0, 1))
    assert (a * b).coefficients == (0, 0, 1, 2)
    assert (a - a).coefficients == ()
    assert (a + b)(3) == 1 + 6 + 9
    q, r = IntPolynomial((-1, 0, 0, 1)).divmod_linear(1)
    assert q.coefficients == (1, 1, 1) and r == 0
    assert IntPolynomial((1, 0, 0)).degree == 0


def test_text_rendering():
    assert green(P(2, 1)).to_text() == "2*q + 1"
    assert green(P(2, 2)).to_text() == "2*q^2 + 3*q + 1"
    assert IntPolynomial((0, -1, 0, 1)).to_text() == "q^3 - q"
    assert IntPolynomial(()).to_text() == "0"


def test_green_examples():
    assert green(P(4)).coefficients == (1,)
    assert green(P(2, 1)).coefficients == (1, 2)
    assert green(P(1, 1, 1)).coefficients == (1, 2, 2, 1)
    assert green_eval(P(1, 1, 1), 2) == 21
    assert green_eval(P(3), 1997) == 1
    assert green_eval(P(2, 1), 2) == 5


def test_green_rejects_empty():
    with pytest.raises(ValueError):
        green(Partition(()))


@pytest.mark.parametrize("n", range(1, 9))
def test_degree_leading_and_positivity(n):
    for lam in partitions_of(n):
        g = green(lam)
        assert g.degree == b_stat(lam)
        assert g.leading_coefficient == hook_count(lam)
        assert all(c >= 0 for c in g.coefficients)
        # value at q=1 is the multinomial n!/prod(lam_i!)
        assert g(1) == factorial(n) // prod(factorial(p) for p in lam.parts)


@pytest.mark.parametrize("n", range(1, 7))
def test_identity_type_is_poincare(n):
    counts = [0] * (n * (n - 1) // 2 + 1)
    for w in all_permutations(n):
        counts[w.length()] += 1
    assert list(green(P(*[1] * n)).coefficients) == counts
    assert poincare_polynomial(n) == green(P(*[1] * n))


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("q", [2, 3])
def test_matches_brute_force_fixed_counts(n, q):
    for lam in partitions_of(n):
        assert fixed_count(MatrixOverFq.jordan(lam, q), n, q) == green_eval(lam, q)


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("q", [2, 3, 5, 1997])
def test_recursion_consistency(n, q):
    for lam in partitions_of(n):
        rhs = sum(e_set_size(lam, mu, q) * green_eval(mu, q) for mu in remove_box_set(lam))
        assert (q - 1) * green_eval(lam, q) == rhs


def test_eigenline_factor():
    assert eigenline_factor(P(1, 1, 1), P(1, 1)).coefficients == (1, 1, 1)
    assert eigenline_factor(P(2, 1), P(2)).coefficients == (0, 1)
