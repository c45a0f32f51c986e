import math
import random
from collections import defaultdict

import numpy as np
import pytest

from totientgaps.arith import ArithSettings, Factorization, divisors, factorize, primes_up_to
from totientgaps.errors import PreconditionError, SieveBudgetExceeded, WorkBudgetExceeded
from totientgaps.totient import (
    inverse_phi,
    is_totient,
    phi,
    phi_from_factorization,
    phi_sieve,
    totient_power_beta,
    totient_power_witness,
    verify_preimage,
    verify_scaled_totient,
)


@pytest.mark.parametrize(
    'n, expected',
    [(1, 1), (2, 1), (9, 6), (12, 4), (36, 12), (97, 96), (1000003 * 1000033, 1000002 * 1000032)],
)
def test_phi(n, expected, settings):
    assert phi(n, settings) == expected


def test_phi_rejects_zero(settings):
    with pytest.raises(PreconditionError):
        phi(0, settings)


def test_phi_from_factorization():
    assert phi_from_factorization(Factorization.from_pairs([(2, 3), (7, 2)])) == 4 * 42


def test_phi_is_multiplicative(settings):
    rng = random.Random(1031)
    checked = 0
    while checked < 1000:
        a, b = rng.randint(1, 10**6), rng.randint(1, 10**6)
        if math.gcd(a, b) != 1:
            continue
        assert phi(a * b, settings) == phi(a, settings) * phi(b, settings)
        checked += 1


@pytest.mark.parametrize('c', [1, 12, 35, 210, 1001, 4096])
def test_phi_times_a_prime(c, settings):
    for p in primes_up_to(200):
        factor = p if c % p == 0 else p - 1
        assert phi(c * p, settings) == phi(c, settings) * factor


def test_preimage_ratio_bound_over_the_sieve(settings):
    values = phi_sieve(10**5, settings)
    n = np.arange(1, 10**5 + 1, dtype=np.int64)
    assert bool((n < 6 * values).all())


def test_phi_sieve_small(settings):
    values = phi_sieve(30, settings)
    assert len(values) == 30
    assert [int(v) for v in values] == [phi(n, settings) for n in range(1, 31)]


def test_phi_sieve_budget():
    with pytest.raises(SieveBudgetExceeded) as excinfo:
        phi_sieve(100, ArithSettings(sieve_limit=10))
    assert excinfo.value.limit == 10


@pytest.mark.slow
def test_phi_matches_sieve_to_a_million(settings):
    values = phi_sieve(10**6, settings)
    for n in range(1, 10**6 + 1):
        assert phi(n, settings) == values[n - 1]


@pytest.mark.parametrize(
    'm, expected',
    [
        (1, (1, 2)),
        (2, (3, 4, 6)),
        (4, (5, 8, 10, 12)),
        (8, (15, 16, 20, 24, 30)),
        (12, (13, 21, 26, 28, 36, 42)),
        (24, (35, 39, 45, 52, 56, 70, 72, 78, 84, 90)),
    ],
)
def test_inverse_phi(m, expected, settings):
    result = inverse_phi(m, settings=settings)
    assert result.preimages == expected
    assert not result.truncated
    for x in result.preimages:
        assert phi_from_factorization(result.factorization_of(x)) == m


@pytest.mark.parametrize('m', [7, 14, 26, 34, 50])
def test_inverse_phi_nontotients(m, settings):
    result = inverse_phi(m, settings=settings)
    assert not result
    assert result.certifies_nontotient


def test_inverse_phi_cap(settings):
    result = inverse_phi(24, cap=3, settings=settings)
    assert len(result) == 3
    assert result.truncated
    assert not result.certifies_nontotient
    assert all(phi(x, settings) == 24 for x in result.preimages)


@pytest.mark.parametrize('m, cap', [(1, 2), (8, 5), (8, 6), (14, 1)])
def test_inverse_phi_cap_covering_every_preimage(m, cap, settings):
    result = inverse_phi(m, cap=cap, settings=settings)
    assert result.preimages == inverse_phi(m, settings=settings).preimages
    assert not result.truncated


def test_inverse_phi_cap_one_below_count(settings):
    result = inverse_phi(8, cap=4, settings=settings)
    assert len(result) == 4
    assert result.truncated


def test_inverse_phi_rejects_bad_input(settings):
    with pytest.raises(PreconditionError):
        inverse_phi(0, settings=settings)
    with pytest.raises(PreconditionError):
        inverse_phi(4, cap=0, settings=settings)


def test_inverse_phi_work_budget():
    with pytest.raises(WorkBudgetExceeded):
        inverse_phi(2**20 * 3**5, settings=ArithSettings(budget=5))


def _buckets(bound, settings):
    buckets = defaultdict(list)
    for n, value in enumerate(phi_sieve(bound, settings), start=1):
        buckets[int(value)].append(n)
    return buckets


def test_inverse_phi_complete_to_a_thousand(settings):
    buckets = _buckets(10**4, settings)
    for m in range(1, 1001):
        assert list(inverse_phi(m, settings=settings).preimages) == buckets.get(m, [])


@pytest.mark.slow
def test_inverse_phi_complete_to_ten_thousand(settings):
    buckets = _buckets(10**5, settings)
    for m in range(1, 10**4 + 1):
        assert list(inverse_phi(m, settings=settings).preimages) == buckets.get(m, [])


def test_inverse_phi_large_power_with_cap(settings):
    result = inverse_phi(28**12, cap=1, settings=settings)
    assert len(result) == 1
    x = result.preimages[0]
    assert verify_preimage(x, result.factorization_of(x), 28**12, settings).ok


def test_is_totient(settings):
    assert is_totient(1, settings)
    assert is_totient(28, settings)
    assert not is_totient(14, settings)
    assert not is_totient(3, settings)


def test_verify_preimage(settings):
    assert verify_preimage(29, Factorization.from_pairs([(29, 1)]), 28, settings).ok
    assert not verify_preimage(29, Factorization.from_pairs([(29, 1)]), 27, settings).ok
    assert not verify_preimage(30, Factorization.from_pairs([(29, 1)]), 28, settings).ok
    assert not verify_preimage(15, Factorization.from_pairs([(15, 1)]), 14, settings).ok


def test_verify_scaled_totient(settings):
    assert verify_scaled_totient(24, 2, settings)
    assert verify_scaled_totient(72, 6, settings)
    assert not verify_scaled_totient(6, 2, settings)
    with pytest.raises(PreconditionError):
        verify_scaled_totient(10, 3, settings)


def test_totient_power_witness(settings):
    eight = factorize(8, settings)
    beta = totient_power_beta(eight, settings)
    assert beta.factors == ()
    assert [totient_power_witness(eight, j, beta) for j in (1, 2, 3)] == [16, 128, 1024]

    twelve = factorize(12, settings)
    beta = totient_power_beta(twelve, settings)
    assert beta.factors == ((2, 1),)
    assert totient_power_witness(twelve, 1, beta) == 36
    for j in range(1, 10):
        assert phi(totient_power_witness(twelve, j, beta), settings) == 12**j


def test_totient_power_witness_names_the_missing_prime(settings):
    d = factorize(28, settings)
    with pytest.raises(PreconditionError) as excinfo:
        totient_power_witness(d, 1, totient_power_beta(d, settings))
    assert excinfo.value.value == 3


@pytest.mark.slow
def test_verify_scaled_totient_exhaustive(settings):
    for n in range(1, 10**4 + 1):
        for j in divisors(factorize(n, settings)):
            radical_divides = all((n // j) % p == 0 for p in factorize(j, settings).primes)
            assert verify_scaled_totient(n, j, settings) == radical_divides
