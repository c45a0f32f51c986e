"""
Exact integer arithmetic: primality, factorization, sieves and the
Chinese Remainder Theorem. Every other module builds on these.
"""
import enum
import logging
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

import gmpy2
import numpy as np

from totientgaps.errors import NonCoprimeModuli, PreconditionError, WorkBudgetExceeded

logger = logging.getLogger(__name__)


# Miller-Rabin with these bases is exact below 3.3 * 10^24.
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_LIMIT = 2**64

_TRIAL_DIVISION_BOUND = 10**4
# factorize and is_prime read a least prime factor table up to here
SMALL_FACTOR_LIMIT = 10**6


@dataclass(frozen=True)
class ArithSettings:
    prp_rounds: int = 64
    budget: int = 10**7
    seed: int = 0
    sieve_limit: int = 10**8


DEFAULT_SETTINGS = ArithSettings()


class Verdict(enum.Enum):
    PRIME = 'prime'
    COMPOSITE = 'composite'


class Certainty(enum.Enum):
    DETERMINISTIC = 'deterministic'
    PROBABLE = 'probable'


@dataclass(frozen=True)
class PrimalityResult:
    verdict: Verdict
    certainty: Certainty

    def __bool__(self) -> bool:
        return self.verdict is Verdict.PRIME

    @property
    def probable(self) -> bool:
        return self.certainty is Certainty.PROBABLE


@dataclass(frozen=True)
class Factorization:
    """
    Prime factorization as (prime, exponent) pairs, primes strictly
    increasing. `probable` is set when at least one prime was only
    accepted as a strong probable prime.
    """

    factors: Tuple[Tuple[int, int], ...] = ()
    probable: bool = False

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[Tuple[int, int]], probable: bool = False
    ) -> 'Factorization':
        merged: dict = {}
        for p, e in pairs:
            if e < 0:
                raise PreconditionError('negative exponent {} for {}'.format(e, p), p)
            if e:
                merged[int(p)] = merged.get(int(p), 0) + int(e)
        return cls(tuple(sorted(merged.items())), probable)

    @property
    def value(self) -> int:
        result = 1
        for p, e in self.factors:
            result *= p**e
        return result

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return '1'
        return ' * '.join(
            str(p) if e == 1 else '{}^{}'.format(p, e) for p, e in self.factors
        )


def is_prime(n: int, settings: ArithSettings = DEFAULT_SETTINGS) -> PrimalityResult:
    """
    Miller-Rabin primality test.

    Below 2^64 the verdict is exact. Above, `settings.prp_rounds` bases
    are drawn from a generator seeded with (n, seed), so the verdict is
    reproducible but only probable.
    """
    composite = PrimalityResult(Verdict.COMPOSITE, Certainty.DETERMINISTIC)
    prime = PrimalityResult(Verdict.PRIME, Certainty.DETERMINISTIC)

    if n < 2:
        return composite
    if n <= SMALL_FACTOR_LIMIT:
        return prime if _least_prime_factors()[n] == n else composite
    for p in DETERMINISTIC_BASES:
        if n == p:
            return prime
        if n % p == 0:
            return composite

    if n < DETERMINISTIC_LIMIT:
        if all(gmpy2.is_strong_prp(n, a) for a in DETERMINISTIC_BASES):
            return prime
        return composite

    rng = random.Random('{}:{}'.format(n, settings.seed))
    for _ in range(settings.prp_rounds):
        if not gmpy2.is_strong_prp(n, rng.randrange(2, n - 1)):
            return composite
    return PrimalityResult(Verdict.PRIME, Certainty.PROBABLE)


def _brent_rho(n: int, c: int, budget: int) -> Tuple[int, int]:
    """
    One Pollard-Brent run with x -> x^2 + c. Returns a divisor of n
    (possibly n itself on failure) and the iterations spent.
    """
    y, r, q = 2, 1, 1
    m = 128
    g = 1
    x = ys = y
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (gmpy2.powmod(y, 2, n) + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (gmpy2.powmod(y, 2, n) + c) % n
                q = q * abs(x - y) % n
            g = int(gmpy2.gcd(q, n))
            k += m
        spent += r
        r *= 2
        if spent > budget:
            return n, spent

    if g == n:
        while True:
            ys = (gmpy2.powmod(ys, 2, n) + c) % n
            g = int(gmpy2.gcd(abs(x - ys), n))
            if g > 1:
                break
    return g, spent


def _split(n: int, settings: ArithSettings) -> int:
    spent = 0
    c = 1
    while spent <= settings.budget:
        d, used = _brent_rho(n, c, settings.budget - spent)
        spent += used
        if 1 < d < n:
            return d
        c += 1
    raise WorkBudgetExceeded('factorization', n, settings.budget)


def factorize(n: int, settings: ArithSettings = DEFAULT_SETTINGS) -> Factorization:
    """
    Complete factorization of n >= 1. Up to SMALL_FACTOR_LIMIT the least
    prime factor table answers directly; above, trial division by small
    primes, then Pollard-Brent rho on whatever cofactor is left. Every
    cofactor not proven prime by trial division passed `is_prime`.
    """
    if n < 1:
        raise PreconditionError('cannot factor {}'.format(n), n)
    if n <= SMALL_FACTOR_LIMIT:
        return _factor_small(n)

    pairs: List[Tuple[int, int]] = []
    for p in _SMALL_PRIMES:
        if p * p > n:
            # no prime factor below p left, so the cofactor is 1 or prime
            if n > 1:
                pairs.append((n, 1))
                n = 1
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))

    probable = False
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        verdict = is_prime(m, settings)
        if verdict:
            probable = probable or verdict.probable
            pairs.append((m, 1))
            continue

        root = math.isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue

        logger.debug('splitting cofactor %d', m)
        d = _split(m, settings)
        stack.extend((d, m // d))

    return Factorization.from_pairs(pairs, probable)


def primes_up_to(bound: int) -> List[int]:
    """Primes <= bound, ascending, by a sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(bound) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


_SMALL_PRIMES = tuple(primes_up_to(_TRIAL_DIVISION_BOUND))


@lru_cache(maxsize=None)
def _least_prime_factors() -> List[int]:
    table = np.zeros(SMALL_FACTOR_LIMIT + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(SMALL_FACTOR_LIMIT)):
        multiples = table[p * p :: p]
        multiples[multiples == 0] = p
    unset = np.flatnonzero(table == 0)
    table[unset] = unset
    return table.tolist()


def _factor_small(n: int) -> Factorization:
    table = _least_prime_factors()
    pairs = []
    while n > 1:
        p = table[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        pairs.append((p, e))
    return Factorization(tuple(pairs))


def primorial(bound: int) -> int:
    return math.prod(primes_up_to(bound))


def lcm_range(n: int) -> int:
    if n < 1:
        raise PreconditionError('lcm_range needs n >= 1, got {}'.format(n), n)
    return math.lcm(*range(1, n + 1))


def crt(congruences: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """
    Solves x = r_i (mod m_i) for pairwise coprime moduli. Residues may be
    negative. Returns (x, prod m_i) with 0 <= x < prod m_i.
    """
    for i, (_, m) in enumerate(congruences):
        if m < 1:
            raise PreconditionError('modulus must be positive, got {}'.format(m), m)
        for _, other in congruences[i + 1 :]:
            if math.gcd(m, other) != 1:
                raise NonCoprimeModuli(m, other)

    modulus = math.prod(m for _, m in congruences)
    result = 0
    for r, m in congruences:
        if m == 1:
            continue
        rest = modulus // m
        result += r * rest * int(gmpy2.invert(rest, m))
    return result % modulus, modulus


def divisors(factorization: Factorization) -> List[int]:
    result = [1]
    for p, e in factorization:
        result = [d * p**k for d in result for k in range(e + 1)]
    return sorted(result)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise PreconditionError('valuation of 0 is infinite', n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def radical(n: int, settings: ArithSettings = DEFAULT_SETTINGS) -> int:
    return math.prod(factorize(n, settings).primes)
