import math
import random

import pytest

from totientgaps.arith import (
    ArithSettings,
    Certainty,
    Factorization,
    crt,
    divisors,
    factorize,
    is_prime,
    lcm_range,
    primes_up_to,
    primorial,
    radical,
    valuation,
)
from totientgaps.errors import NonCoprimeModuli, PreconditionError, WorkBudgetExceeded


@pytest.mark.parametrize('n', [2, 3, 5, 37, 41, 7919, 1000003, 2**61 - 1])
def test_is_prime_primes(n, settings):
    result = is_prime(n, settings)
    assert result
    assert result.certainty is Certainty.DETERMINISTIC


@pytest.mark.parametrize('n', [0, 1, 4, 561, 1105, 3215031751, 2**32 + 1])
def test_is_prime_composites(n, settings):
    result = is_prime(n, settings)
    assert not result
    assert not result.probable


def test_is_prime_above_64_bits_is_probable(settings):
    result = is_prime(2**89 - 1, settings)
    assert result
    assert result.probable


def test_is_prime_large_composite(settings):
    assert not is_prime((2**61 - 1) * (2**89 - 1), settings)


def test_factorize_small(settings):
    assert factorize(360, settings).factors == ((2, 3), (3, 2), (5, 1))
    assert factorize(1, settings).factors == ()
    assert factorize(97, settings).factors == ((97, 1),)


def test_factorize_needs_rho(settings):
    f = factorize(1000003 * 1000033, settings)
    assert f.factors == ((1000003, 1), (1000033, 1))
    assert f.value == 1000003 * 1000033
    assert not f.probable


def test_factorize_square_cofactor(settings):
    assert factorize(1000003**2 * 12, settings).factors == ((2, 2), (3, 1), (1000003, 2))


def test_factorize_rejects_zero(settings):
    with pytest.raises(PreconditionError):
        factorize(0, settings)


def test_factorize_work_budget():
    with pytest.raises(WorkBudgetExceeded) as excinfo:
        factorize(1000003 * 1000033, ArithSettings(budget=1))
    assert excinfo.value.budget == 1


def test_factorization_helpers():
    f = Factorization.from_pairs([(3, 1), (2, 2), (3, 1)])
    assert f.factors == ((2, 2), (3, 2))
    assert f.value == 36
    assert f.primes == [2, 3]
    assert f.exponent(3) == 2
    assert f.exponent(5) == 0
    assert str(f) == '2^2 * 3^2'
    assert len(f) == 2


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10**4)) == 1229


def test_primorial_and_lcm_range():
    assert primorial(47) == 614889782588491410
    assert primorial(1) == 1
    assert lcm_range(10) == 2520
    assert lcm_range(1) == 1


def test_crt():
    assert crt([(3, 8), (2, 9), (4, 5)]) == (299, 360)
    assert crt([(-1, 4), (-1, 9)]) == (35, 36)
    assert crt([]) == (0, 1)


def test_crt_non_coprime():
    with pytest.raises(NonCoprimeModuli) as excinfo:
        crt([(1, 4), (1, 6)])
    assert excinfo.value.pair == (4, 6)


def test_divisors_valuation_radical(settings):
    assert divisors(factorize(12, settings)) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1, settings)) == [1]
    assert valuation(48, 2) == 4
    assert valuation(48, 5) == 0
    assert radical(72, settings) == 6


@pytest.mark.slow
def test_is_prime_and_factorize_match_the_sieve_to_a_million(settings):
    primes = set(primes_up_to(10**6))
    for n in range(1, 10**6 + 1):
        assert bool(is_prime(n, settings)) == (n in primes)
        f = factorize(n, settings)
        assert f.value == n
        assert all(p in primes for p in f.primes)


def test_is_prime_across_the_table_limit(settings):
    window = range(10**6 - 500, 10**6 + 3000)
    primes = set(primes_up_to(window.stop))
    for n in window:
        result = is_prime(n, settings)
        assert bool(result) == (n in primes)
        assert not result.probable


def test_factorize_above_the_table_limit(settings):
    assert factorize(10**6 + 3, settings).factors == ((10**6 + 3, 1),)
    assert factorize(2 * (10**6 + 3), settings).factors == ((2, 1), (10**6 + 3, 1))
    assert factorize(10**6 * 7, settings).factors == ((2, 6), (5, 6), (7, 1))
    assert factorize(10**6, settings).factors == ((2, 6), (5, 6))


def test_crt_random_coprime_moduli():
    rng = random.Random(4099)
    for _ in range(200):
        moduli = []
        while len(moduli) < 4:
            m = rng.randint(2, 10**6)
            if all(math.gcd(m, other) == 1 for other in moduli):
                moduli.append(m)
        congruences = [(rng.randint(-10**9, 10**9), m) for m in moduli]
        x, modulus = crt(congruences)
        assert modulus == moduli[0] * moduli[1] * moduli[2] * moduli[3]
        assert 0 <= x < modulus
        assert all((x - r) % m == 0 for r, m in congruences)


def test_primorial_steps_by_primes(settings):
    assert primorial(30) == 2 * 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23 * 29
    for n in range(2, 300):
        step = primorial(n) // primorial(n - 1)
        assert step == (n if is_prime(n, settings) else 1)


def test_lcm_range_prime_powers(settings):
    for n in range(1, 60):
        lcm = lcm_range(n)
        assert all(lcm % i == 0 for i in range(1, n + 1))
        assert all(p <= n for p in factorize(lcm, settings).primes)
        for p in primes_up_to(n):
            assert p**valuation(lcm, p) <= n < p**(valuation(lcm, p) + 1)
