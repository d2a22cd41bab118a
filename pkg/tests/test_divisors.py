import math

import pytest
from hypothesis import given, strategies as st

from powergraphs.divisors import (
    MCDSet,
    divisors,
    enumerate_mcd_sets,
    euler_phi,
    factorize,
    is_mcd_chain,
    mcd_sets_by_definition,
    weight,
    weight_of_set,
)
from powergraphs.errors import ResourceError, UsageError


def phi_by_counting(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_phi_examples():
    assert euler_phi(1) == 1
    assert euler_phi(12) == phi_by_counting(12) == 4
    for p in (2, 3, 5, 7, 97):
        assert euler_phi(p) == p - 1


def test_phi_rejects_zero():
    with pytest.raises(UsageError):
        euler_phi(0)


@given(st.integers(1, 3000))
def test_phi_matches_gcd_count(n):
    assert euler_phi(n) == phi_by_counting(n)


def test_factorize_and_divisors():
    assert factorize(12) == ((2, 2), (3, 1))
    assert factorize(1) == ()
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert factorize(999_999_937) == ((999_999_937, 1),)


@given(st.integers(1, 10**6))
def test_factorize_roundtrip(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac) == n
    assert [d for d in range(1, 200) if n % d == 0] == [d for d in divisors(n) if d < 200]


def test_mcd_sets_of_12():
    sets = enumerate_mcd_sets(12)
    assert [s.chain for s in sets] == [(2, 4, 12), (2, 6, 12), (3, 6, 12)]
    assert [s.weight for s in sets] == [7, 7, 8]
    assert [weight_of_set(s) for s in sets] == [7, 7, 8]
    assert mcd_sets_by_definition(12) == [(2, 4, 12), (2, 6, 12), (3, 6, 12)]


@pytest.mark.parametrize("p", [2, 3, 13])
def test_mcd_sets_of_prime(p):
    (only,) = enumerate_mcd_sets(p)
    assert only.chain == (p,)
    assert only.weight == p - 1


def test_mcd_sets_edge_cases():
    assert [s.chain for s in enumerate_mcd_sets(8)] == [(2, 4, 8)]
    assert enumerate_mcd_sets(1) == []
    assert weight(1) == 0


def test_weight_examples():
    assert weight(12) == 8
    for p, k in [(2, 1), (2, 6), (3, 4), (5, 3), (7, 2)]:
        assert weight(p**k) == p**k - 1


def test_mcdset_validates():
    with pytest.raises(UsageError):
        MCDSet(12, (4, 12), 6)  # 4 is not prime
    with pytest.raises(UsageError):
        MCDSet(12, (2, 12), 5)  # ratio 6 is not prime
    with pytest.raises(UsageError):
        MCDSet(12, (3, 6, 12), 9)  # wrong weight


def test_mcd_cap():
    with pytest.raises(ResourceError):
        enumerate_mcd_sets(2 * 3 * 5 * 7 * 11 * 13, cap=100)


def test_prime_step_predicate_matches_definition_up_to_1000():
    for n in range(2, 1001):
        got = [s.chain for s in enumerate_mcd_sets(n)]
        assert got == mcd_sets_by_definition(n), n
        assert all(is_mcd_chain(n, c) for c in got)
