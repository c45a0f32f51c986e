"""
Euler's totient, the totient sieve, and the complete inverse totient
solver that decides membership in the image of phi.
"""
import logging
from dataclasses import dataclass, field
from itertools import islice
from typing import Dict, Iterator, List, Optional, Set, Tuple

import numpy as np

from totientgaps.arith import (
    DEFAULT_SETTINGS,
    ArithSettings,
    Factorization,
    divisors,
    factorize,
    is_prime,
    primes_up_to,
)
from totientgaps.errors import (
    PreconditionError,
    SieveBudgetExceeded,
    VerificationDefect,
    WorkBudgetExceeded,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TotientPreimages:
    """
    Solutions of phi(x) = target. Unless `truncated`, the list is the
    complete solution set, so an empty, untruncated result certifies
    that target is not a totient.
    """

    target: int
    preimages: Tuple[int, ...]
    truncated: bool = False
    cap: Optional[int] = None
    factorizations: Tuple[Factorization, ...] = field(default=(), repr=False)
    probable_candidates: int = 0

    def __bool__(self) -> bool:
        return bool(self.preimages)

    def __len__(self) -> int:
        return len(self.preimages)

    @property
    def certifies_nontotient(self) -> bool:
        return not self.preimages and not self.truncated

    def factorization_of(self, x: int) -> Factorization:
        return self.factorizations[self.preimages.index(x)]


@dataclass(frozen=True)
class PreimageCheck:
    ok: bool
    probable: int = 0


def phi_from_factorization(factorization: Factorization) -> int:
    result = 1
    for p, e in factorization:
        result *= (p - 1) * p ** (e - 1)
    return result


def phi(n: int, settings: ArithSettings = DEFAULT_SETTINGS) -> int:
    if n < 1:
        raise PreconditionError('phi is defined for n >= 1, got {}'.format(n), n)
    return phi_from_factorization(factorize(n, settings))


def phi_sieve(bound: int, settings: ArithSettings = DEFAULT_SETTINGS) -> np.ndarray:
    """
    phi(1), ..., phi(bound) as an int64 array; entry n - 1 holds phi(n).
    """
    if bound < 1:
        raise PreconditionError('sieve bound must be >= 1, got {}'.format(bound), bound)
    if bound > settings.sieve_limit:
        raise SieveBudgetExceeded(bound, settings.sieve_limit)

    values = np.arange(bound + 1, dtype=np.int64)
    for p in primes_up_to(bound):
        values[p::p] -= values[p::p] // p
    return values[1:]


class _PreimageSearch(object):
    """
    Depth-first walk over prime powers p^e with phi(p^e) dividing the
    remaining quotient, primes taken in decreasing order so that every
    preimage is reached exactly once.
    """

    def __init__(self, target: int, candidates: List[int], settings: ArithSettings) -> None:
        self.target = target
        self.candidates = candidates
        self.settings = settings
        self.states = 0
        # quotient -> smallest start index known to admit no solution
        self.dead: Dict[int, int] = dict()

        odd_primes = [p for p in factorize(target, settings).primes if p != 2]
        self.last_supplier: Dict[int, int] = dict()
        for r in odd_primes:
            self.last_supplier[r] = max(
                (i for i, p in enumerate(candidates) if p == r or (p - 1) % r == 0),
                default=-1,
            )

    def _hopeless(self, rem: int, start: int) -> bool:
        if rem > 1 and rem % 2:
            return True
        if start >= self.dead.get(rem, len(self.candidates) + 1):
            return True
        return any(
            rem % r == 0 and last < start for r, last in self.last_supplier.items()
        )

    def walk(self, rem: int, start: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
        self.states += 1
        if self.states > self.settings.budget:
            raise WorkBudgetExceeded('inverse totient search', self.target, self.settings.budget)

        found = False
        if rem == 1:
            found = True
            yield ()

        if not self._hopeless(rem, start):
            for i in range(start, len(self.candidates)):
                p = self.candidates[i]
                if rem % (p - 1):
                    continue
                q, e = rem // (p - 1), 1
                while True:
                    for tail in self.walk(q, i + 1):
                        found = True
                        yield ((p, e),) + tail
                    if q % p:
                        break
                    q, e = q // p, e + 1

        if not found:
            self.dead[rem] = min(start, self.dead.get(rem, start))


def inverse_phi(
    m: int, cap: Optional[int] = None, settings: ArithSettings = DEFAULT_SETTINGS
) -> TotientPreimages:
    """
    All x with phi(x) = m, sorted. With `cap`, keeps at most that many
    solutions; the result is truncated only if a further one exists.
    """
    if m < 1:
        raise PreconditionError('inverse_phi needs m >= 1, got {}'.format(m), m)
    if cap is not None and cap < 1:
        raise PreconditionError('cap must be positive, got {}'.format(cap), cap)

    candidates: List[int] = []
    probable: Set[int] = set()
    for d in reversed(divisors(factorize(m, settings))):
        verdict = is_prime(d + 1, settings)
        if verdict:
            candidates.append(d + 1)
            if verdict.probable:
                probable.add(d + 1)

    search = _PreimageSearch(m, candidates, settings)
    walk = search.walk(m, 0)
    found = list(walk if cap is None else islice(walk, cap + 1))
    truncated = cap is not None and len(found) > cap
    found = found[:cap]

    solutions = sorted(
        (
            Factorization.from_pairs(
                pairs, probable=any(p in probable for p, _ in pairs)
            )
            for pairs in found
        ),
        key=lambda f: f.value,
    )
    logger.debug(
        'inverse_phi(%d): %d candidates, %d states, %d preimages',
        m, len(candidates), search.states, len(solutions),
    )
    return TotientPreimages(
        target=m,
        preimages=tuple(f.value for f in solutions),
        truncated=truncated,
        cap=cap,
        factorizations=tuple(solutions),
        probable_candidates=len(probable),
    )


def is_totient(m: int, settings: ArithSettings = DEFAULT_SETTINGS) -> bool:
    if m < 1:
        raise PreconditionError('is_totient needs m >= 1, got {}'.format(m), m)
    if m > 1 and m % 2:
        return False
    return bool(inverse_phi(m, cap=1, settings=settings))


def verify_preimage(
    x: int, factorization: Factorization, target: int,
    settings: ArithSettings = DEFAULT_SETTINGS,
) -> PreimageCheck:
    """
    Re-evaluates phi(x) exactly from a claimed factorization: the
    product must equal x and every listed prime must pass is_prime.
    """
    if factorization.value != x:
        return PreimageCheck(False)

    probable = 0
    for p in factorization.primes:
        verdict = is_prime(p, settings)
        if not verdict:
            return PreimageCheck(False)
        probable += verdict.probable
    return PreimageCheck(phi_from_factorization(factorization) == target, probable)


def verify_scaled_totient(n: int, j: int, settings: ArithSettings = DEFAULT_SETTINGS) -> bool:
    """
    True iff every prime of j divides n/j and phi(n/j) * j == phi(n).
    Both conditions are evaluated, even though the first implies the second.
    """
    if j < 1 or n % j:
        raise PreconditionError('{} does not divide {}'.format(j, n), j)

    quotient = n // j
    radical_divides = all(quotient % p == 0 for p in factorize(j, settings).primes)
    scaled = phi(quotient, settings) * j == phi(n, settings)
    return radical_divides and scaled


def totient_power_beta(d_fact: Factorization, settings: ArithSettings = DEFAULT_SETTINGS) -> Factorization:
    """Factorization of the product of p - 1 over the primes p of D."""
    product = 1
    for p in d_fact.primes:
        product *= p - 1
    return factorize(product, settings)


def totient_power_factorization(
    d_fact: Factorization, j: int, beta_fact: Factorization
) -> Factorization:
    """
    x = prod p^(j*alpha(p) - beta(p) + 1) with phi(x) = D^j, where
    D = prod p^alpha(p) and prod (p - 1) = prod p^beta(p).
    """
    if j < 1:
        raise PreconditionError('power must be positive, got {}'.format(j), j)

    d_primes = set(d_fact.primes)
    for p in beta_fact.primes:
        if p not in d_primes:
            raise PreconditionError(
                'prime {} divides the product of p - 1 but not D = {}'.format(p, d_fact.value), p
            )

    pairs = []
    for p, alpha in d_fact:
        e = j * alpha - beta_fact.exponent(p) + 1
        if e < 1:
            raise PreconditionError(
                'exponent of {} would be {} for power {}'.format(p, e, j), p
            )
        pairs.append((p, e))

    x = Factorization.from_pairs(pairs)
    if phi_from_factorization(x) != d_fact.value**j:
        raise VerificationDefect('phi({}) != {}^{}'.format(x, d_fact.value, j))
    return x


def totient_power_witness(d_fact: Factorization, j: int, beta_fact: Factorization) -> int:
    return totient_power_factorization(d_fact, j, beta_fact).value
