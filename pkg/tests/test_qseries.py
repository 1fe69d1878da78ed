from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from unispec.limits import BoundExceeded
from unispec.measures import gl_unipotent_dist
from unispec.partitions import Partition, enumerate_partitions
from unispec.qseries import (
    class_weight,
    euler_inf,
    hl_evaluate,
    hl_evaluate_symmetrized,
    hl_principal,
    poch_inv,
    q_product_range,
)

from strategies import partitions, partitions_up_to, primes


def det(m):
    m = [list(map(Fraction, r)) for r in m]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def schur(lam, xs):
    n = len(xs)
    if len(lam) > n:
        return Fraction(0)
    exps = list(lam) + [0] * (n - len(lam))
    num = [[x ** (exps[j] + n - 1 - j) for j in range(n)] for x in xs]
    den = [[x ** (n - 1 - j) for j in range(n)] for x in xs]
    return det(num) / det(den)


def monomial(lam, xs):
    if len(lam) > len(xs):
        return Fraction(0)
    exps = list(lam) + [0] * (len(xs) - len(lam))
    total = Fraction(0)
    for e in set(permutations(exps)):
        term = Fraction(1)
        for x, k in zip(xs, e):
            term *= Fraction(x) ** k
        total += term
    return total


variables = st.lists(st.integers(-4, 6).map(Fraction), min_size=1, max_size=4)
distinct_variables = st.lists(st.integers(1, 9), min_size=1, max_size=4, unique=True).map(lambda v: [Fraction(x) for x in v])
ts = st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(-1, 2), Fraction(1)])


def schur_tableaux(lam, xs):
    """Schur polynomial as a sum over semistandard fillings; fine at repeated points."""
    n = len(xs)
    cells = list(Partition(lam).cells())
    total = Fraction(0)
    for filling in product(range(n), repeat=len(cells)):
        t = dict(zip(cells, filling))
        rows_ok = all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t)
        cols_ok = all(t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t)
        if rows_ok and cols_ok:
            term = Fraction(1)
            for v in filling:
                term *= xs[v]
            total += term
    return total


def test_poch_values():
    assert poch_inv(2, 0) == 1
    assert poch_inv(2, 2) == Fraction(3, 8)
    assert poch_inv(3, 1) == Fraction(2, 3)


def test_euler_truncations():
    assert euler_inf(2, 3) == (Fraction(21, 64), Fraction(1, 8))
    assert euler_inf(3, 2)[0] == Fraction(16, 27)
    assert float(euler_inf(2, 64)[0]) == pytest.approx(0.2887880951, abs=1e-10)


@given(primes, st.integers(1, 30))
def test_euler_error_bound_holds(p, terms):
    value, err = euler_inf(p, terms)
    far, _ = euler_inf(p, terms + 40)
    assert 0 <= value - far <= err


@pytest.mark.parametrize("p", [1, 0, -3, 2.5])
def test_bad_p(p):
    with pytest.raises(ValueError):
        poch_inv(p, 2)


def test_q_product_range_edges():
    assert q_product_range(2, 3, 2) == 1
    assert q_product_range(2, 0, 3) == 0
    assert q_product_range(2, 1, 2) == Fraction(3, 8)


def test_principal_specialisation_examples():
    assert hl_principal([2], 2) == Fraction(1, 2)
    for p in (2, 3, 5):
        assert hl_principal([1], p) == Fraction(1, p - 1)
        assert hl_principal([], p) == 1


@given(partitions(max_part=5, max_len=4), primes)
def test_shift_by_one_multiplies_by_p_to_the_size(lam, p):
    assert hl_principal(lam, p, shifted=True) == p**lam.size * hl_principal(lam, p)


@given(st.integers(1, 12), primes)
def test_class_weights_sum(n, p):
    total = sum(class_weight(lam, p) for lam in enumerate_partitions(n))
    assert total == 1 / (p**n * poch_inv(p, n))


def test_hl_evaluate_examples():
    assert hl_evaluate([2, 1], [1, 2, 3], Fraction(1, 2)) == Fraction(111, 2)
    assert hl_evaluate([1, 1], [1, 1], Fraction(1, 3)) == 1
    assert hl_evaluate([2], [1, 1], Fraction(1, 2)) == Fraction(5, 2)
    assert hl_evaluate([3], [], Fraction(1, 2)) == 0
    assert hl_evaluate([], [2, 3], Fraction(1, 2)) == 1
    assert hl_evaluate([1, 1, 1], [1, 2], Fraction(1, 2)) == 0


def test_variable_bound():
    with pytest.raises(BoundExceeded):
        hl_evaluate([1], list(range(1, 10)), Fraction(1, 2))
    assert hl_evaluate([1], list(range(1, 10)), Fraction(1, 2), max_vars=9) == 45


@given(partitions_up_to(4), variables)
def test_t_zero_is_schur(lam, xs):
    value = hl_evaluate(lam, xs, 0)
    assert value == schur_tableaux(lam, xs)
    if len(set(xs)) == len(xs):
        assert value == schur(lam, xs)


@given(partitions_up_to(4), variables)
def test_t_one_is_monomial(lam, xs):
    assert hl_evaluate(lam, xs, 1) == monomial(lam, xs)


@given(partitions_up_to(4), distinct_variables, ts)
def test_coset_sum_matches_full_symmetrisation(lam, xs, t):
    if t == 1:
        return
    assert hl_evaluate(lam, xs, t) == hl_evaluate_symmetrized(lam, xs, t)


@given(partitions_up_to(4), variables, ts, st.randoms(use_true_random=False))
def test_symmetric_in_variables(lam, xs, t, rnd):
    shuffled = list(xs)
    rnd.shuffle(shuffled)
    assert hl_evaluate(lam, xs, t) == hl_evaluate(lam, shuffled, t)


@given(partitions_up_to(4), variables, ts, st.integers(-3, 3))
def test_homogeneous_of_degree_size(lam, xs, t, c):
    scaled = [c * x for x in xs]
    assert hl_evaluate(lam, scaled, t) == Fraction(c) ** lam.size * hl_evaluate(lam, xs, t)


@pytest.mark.parametrize("lam", [[1], [2], [1, 1], [2, 1]])
@pytest.mark.parametrize("p", [2, 3])
def test_finite_specialisation_converges_to_closed_form(lam, p):
    target = hl_principal(lam, p)
    gaps = []
    for n_vars in range(len(lam), 11):
        xs = [Fraction(1, p**k) for k in range(1, n_vars + 1)]
        gaps.append(target - hl_evaluate(lam, xs, Fraction(1, p), max_vars=10))
    assert all(g >= 0 for g in gaps)
    assert all(a >= b for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] / target < Fraction(1, p**8)


@given(st.integers(1, 6), primes)
def test_gl_probability_is_hl_at_shifted_point(n, p):
    dist = gl_unipotent_dist(n, p)
    for lam, prob in dist.items():
        assert prob == p**n * poch_inv(p, n) * hl_principal(lam, p) / p ** sum(
            (i - 1) * x for i, x in enumerate(lam, start=1)
        )


def test_convergence_gap_for_all_small_shapes():
    for p in (2, 3):
        for n in range(1, 5):
            for lam in enumerate_partitions(n):
                n_vars = lam.size + 6
                xs = [Fraction(1, p**k) for k in range(1, n_vars + 1)]
                gap = hl_principal(lam, p) - hl_evaluate(lam, xs, Fraction(1, p), max_vars=10)
                assert 0 <= gap < Fraction(1, p**6)


@given(primes, st.integers(0, 25))
def test_poch_decreasing_and_above_the_infinite_product(p, r):
    assert poch_inv(p, r + 1) < poch_inv(p, r)
    value, err = euler_inf(p, r + 30)
    assert poch_inv(p, r) > value


def test_principal_value_from_triangular_routes():
    from unispec.measures import tableau_weight_sum, triangular_probability

    for p in (2, 3, 5):
        for n in range(1, 9):
            for lam in enumerate_partitions(n):
                shifted = triangular_probability(lam, p, "chain") / tableau_weight_sum(lam, p)
                assert p**n * hl_principal(lam, p) == shifted == hl_principal(lam, p, shifted=True)
