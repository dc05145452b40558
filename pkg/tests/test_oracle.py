from fractions import Fraction

import numpy as np
import pytest

from flagburnside import oracle as O
from flagburnside.matfq import MatrixOverFq
from flagburnside.partitions import Partition
from flagburnside.perm import Permutation, all_permutations

ORDER = [Permutation.parse(x) for x in O.GL3_ORDER]


def W(s):
    return Permutation.parse(s)


@pytest.fixture(scope="module")
def gl3_q2():
    return O.reorder(O.lump(O.exact_transition(3, 2), 3, 2), ORDER)


def test_flag_counts():
    assert len(O.enumerate_flags(2, 2)) == 3
    assert len(O.enumerate_flags(3, 2)) == 21
    assert len(O.enumerate_flags(4, 2)) == 315
    assert len(set(O.enumerate_flags(3, 3))) == 52


def test_enumeration_guard():
    with pytest.raises(O.EnumerationTooLarge):
        O.enumerate_flags(5, 3)


def test_fixed_count_examples():
    assert O.fixed_count(MatrixOverFq.identity(3, 2), 3, 2) == 21
    assert O.fixed_count(MatrixOverFq.jordan(Partition((3,)), 2), 3, 2) == 1
    assert O.fixed_count(MatrixOverFq.jordan(Partition((2, 1)), 2), 3, 2) == 5


def test_trivial_rank_one():
    P = O.exact_transition(1, 5)
    assert P.entries == [[Fraction(1)]]


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)])
def test_flag_kernel_invariants(n, q):
    P = O.exact_transition(n, q)
    assert all(s == 1 for s in P.row_sums())
    assert O.is_reversible(P, O.stationary_flag_weights(n, q, P.labels))
    L = O.lump(P, n, q)
    assert all(s == 1 for s in L.row_sums())
    uniform = [Fraction(1, L.dimension)] * L.dimension
    assert O.is_reversible(L, uniform)
    assert L.left_apply(uniform) == uniform
    assert L.entries == O.lumped_transition(n, q).entries


def test_lumping_detects_disagreement():
    P = O.exact_transition(2, 2)
    # move mass between two flags of the same cell's row without changing row sums
    bad = O.ExactMatrix(P.labels, [row[:] for row in P.entries])
    bad.entries[1][0] += Fraction(1, 10)
    bad.entries[1][1] -= Fraction(1, 10)
    with pytest.raises(O.LumpabilityError):
        O.lump(bad, 2, 2)


def test_n2_chain():
    P = O.lump(O.exact_transition(2, 2), 2, 2)
    assert P.entries == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]


def test_gl3_spot_values(gl3_q2):
    assert gl3_q2.entry(W("123"), W("123")) == Fraction(8, 21)
    assert gl3_q2.entry(W("213"), W("213")) == Fraction(34, 105)
    assert gl3_q2.entry(W("321"), W("213")) == Fraction(2, 21)
    assert gl3_q2.entries[-1] == [Fraction(k, 21) for k in (1, 2, 2, 4, 4, 8)]


def test_gl3_brute_force_matrix_q2(gl3_q2):
    # frozen from the flag-level brute force, independent of the fixture file
    expected = [
        [40, 17, 17, 13, 13, 5],
        [17, 34, 13, 26, 5, 10],
        [17, 13, 34, 5, 26, 10],
        [13, 26, 5, 31, 10, 20],
        [13, 5, 26, 10, 31, 20],
        [5, 10, 10, 20, 20, 40],
    ]
    assert gl3_q2.entries == [[Fraction(x, 105) for x in row] for row in expected]


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_gl3_fixture(q):
    assert O.check_gl3(q, flag_level=(q <= 5))["passed"]


def test_fixture_rows_are_stochastic():
    for q in (2, 3, 101, 20011):
        assert all(s == 1 for s in O.gl3_fixture_matrix(q).row_sums())


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2)])
def test_mallows_row(n, q):
    L = O.lump(O.exact_transition(n, q), n, q)
    assert L.entries[L.index(Permutation.longest(n))] == O.mallows_row(n, q)


def test_spectrum_q2(gl3_q2):
    rep = O.spectrum_checks(gl3_q2, 2)
    assert rep.passed
    assert rep.second_eigenvalue == Fraction(2, 5)
    assert sorted(round(x, 9) for x in rep.numeric_eigenvalues)[:1] == [0.0]


@pytest.mark.parametrize("q,beta", [(3, Fraction(4, 7)), (5, Fraction(8, 11)), (7, Fraction(12, 15))])
def test_spectrum_formula(q, beta):
    rep = O.spectrum_checks(O.lumped_transition(3, q), q)
    assert rep.second_eigenvalue == beta and rep.passed


def test_charpoly_against_numpy():
    rng = np.random.default_rng(0)
    A = rng.integers(-5, 6, size=(5, 5))
    M = O.ExactMatrix(list(range(5)), [[Fraction(int(x)) for x in row] for row in A])
    cp = O.charpoly(M)
    assert np.allclose([float(c) for c in reversed(cp)], np.poly(A))


def test_poly_divmod():
    # (x^2 - 1) / (x - 1) = x + 1
    quot, rem = O.poly_divmod([-1, 0, 1], [-1, 1])
    assert quot == [1, 1] and all(r == 0 for r in rem)


def test_tv_decreases(gl3_q2):
    for start in ORDER:
        curve = O.tv_curve(gl3_q2, start, 40)
        assert all(a >= b for a, b in zip(curve, curve[1:]))
        assert float(curve[-1]) < 1e-9


def test_tv_bounds_q2(gl3_q2):
    r = O.gl3_tv_bounds_hold(2, W("213"), 50, gl3_q2)
    assert r["lower"] and r["upper"]


@pytest.mark.parametrize("q", [2, 3, 5])
def test_tv_bounds_with_half_normalization(q):
    # the reversible-chain bound 4 TV^2 <= beta^(2l) / pi_min uses TV = half the L1 sum
    P = O.lumped_transition(3, q)
    beta = Fraction(2 * q - 2, 2 * q + 1)
    for start in ORDER:
        for l, tv in enumerate(O.tv_curve(P, start, 50, half=True), start=1):
            assert tv * tv <= Fraction(3, 2) * beta ** (2 * l)
            if start not in (W("123"), W("321")):
                assert tv >= beta**l / 2


def test_conductance_examples(gl3_q2):
    rep = O.conductance_bound(gl3_q2)
    P = gl3_q2
    s1, s2s1 = W("213"), W("231")
    out = sum(P.entry(x, z) for x in (s1, s2s1) for z in ORDER if z not in (s1, s2s1))
    assert rep.cell_phi["213,231"] == (out / 6) / Fraction(2, 6)
    assert rep.cell_phi["123"] == 1 - Fraction(8, 21)
    assert rep.mixing_lower_bound > 0


def test_conductance_decreases_with_q():
    phis = [O.conductance_bound(O.lumped_transition(3, q)).phi for q in (2, 3, 5, 7, 11)]
    assert all(a > b for a, b in zip(phis, phis[1:]))
    for q in (2, 3, 5):
        D3 = q**3 + 2 * q**2 + 2 * q + 1
        rep = O.conductance_bound(O.lumped_transition(3, q))
        assert rep.cell_phi["123"] == 1 - Fraction(q**3, D3)


def test_limit_matrix():
    L = O.reorder(O.limit_matrix(3), ORDER)
    h = Fraction(1, 2)
    assert L.entries == [
        [1, 0, 0, 0, 0, 0],
        [0, h, 0, h, 0, 0],
        [0, 0, h, 0, h, 0],
        [0, h, 0, h, 0, 0],
        [0, 0, h, 0, h, 0],
        [0, 0, 0, 0, 0, 1],
    ]


def test_limit_check(gl3_q2):
    rep = O.limit_matrix_check([2, 3, 5, 7, 11])
    # largest off-class entry at q=2 is q^2/(q^3+2q^2+2q+1), rows s2s1 and s1s2 into w0
    assert rep.max_off_class[0] == Fraction(4, 21)
    fixture = O.gl3_fixture_matrix(2)
    assert fixture.entry(W("231"), W("321")) == Fraction(4, 21)
    assert all(a > b for a, b in zip(rep.max_deviation, rep.max_deviation[1:]))
    assert rep.within_factor_two


def test_json_round_trip(gl3_q2):
    data = gl3_q2.to_json()
    assert data["entries"][0][0] == "8/21"
    back = O.ExactMatrix.from_json(data)
    assert back.entries == gl3_q2.entries


def test_stabilizer_scan_matches_structure():
    # |stab_U(F)| from the fixes table equals q^(C(n,2) - l(w))
    for n, q in ((3, 2), (3, 3), (4, 2)):
        T = O.fixed_table(n, q)
        sizes = T.fixes.sum(axis=0)
        for f, s in zip(T.flags, sizes):
            assert s == q ** (n * (n - 1) // 2 - f.w.length())
