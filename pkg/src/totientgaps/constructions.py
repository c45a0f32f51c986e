"""
Constructive machinery: recursive divisibility sets, the heuristic form
collection built on them, witness sets whose pair quotients are totients,
and the CRT witnesses and moduli for totient gaps in progressions.
"""
import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import gmpy2

from totientgaps.arith import DEFAULT_SETTINGS, ArithSettings, Factorization, crt, factorize, primes_up_to
from totientgaps.errors import PreconditionError, VerificationDefect
from totientgaps.forms import FormSystem, LinearForm
from totientgaps.totient import (
    inverse_phi,
    is_totient,
    phi,
    totient_power_beta,
    totient_power_factorization,
    totient_power_witness,
)

logger = logging.getLogger(__name__)


def _pairs(values: Sequence[int]) -> List[Tuple[int, int]]:
    return [(values[i], values[j]) for i in range(len(values)) for j in range(i + 1, len(values))]


def divisibility_holds(n_set: Sequence[int], b: int) -> bool:
    """True iff (n_j - n_i) | n_j and b | n_j / (n_j - n_i) for every i < j."""
    for ni, nj in _pairs(n_set):
        d = nj - ni
        if d <= 0 or nj % d or (nj // d) % b:
            return False
    return True


@dataclass(frozen=True)
class Lemma31Witness:
    """
    Every stage of the recursive construction. `lcm_values` holds the
    lcm of the differences, `m_values` the multiple of it actually used
    (the least one with b*M' above the largest entry) and `k_values` the
    lcm K that sets the shift.
    """

    b: int
    sets: Tuple[Tuple[int, ...], ...]
    lcm_values: Tuple[int, ...] = ()
    m_values: Tuple[int, ...] = ()
    k_values: Tuple[int, ...] = ()

    @property
    def final(self) -> Tuple[int, ...]:
        return self.sets[-1]

    def check(self) -> None:
        for stage in self.sets:
            if stage[0] < 1 or any(x >= y for x, y in zip(stage, stage[1:])):
                raise VerificationDefect('stage {} is not a strictly increasing set of positive integers'.format(stage))
        if not divisibility_holds(self.final, self.b):
            raise VerificationDefect('{} fails the divisibility by {}'.format(self.final, self.b))


def lemma31_construct(b: int, k: int) -> Lemma31Witness:
    """
    Builds n_1 < ... < n_k with b | n_j/(n_j - n_i) for all i < j,
    starting from {2b-1, 2b} and adding one element per stage.
    """
    if b < 1:
        raise PreconditionError('b must be positive, got {}'.format(b), b)
    if k < 2:
        raise PreconditionError('k must be at least 2, got {}'.format(k), k)

    current = [2 * b - 1, 2 * b]
    sets = [tuple(current)]
    lcm_values: List[int] = []
    m_values: List[int] = []
    k_values: List[int] = []

    while len(current) < k:
        m = math.lcm(*(nj - ni for ni, nj in _pairs(current)))
        m_prime = m * (current[-1] // (b * m) + 1)
        big_k = math.lcm(m_prime, *(b * m_prime - n for n in current))
        shift = big_k * b - b * m_prime
        current = [shift + n for n in current] + [big_k * b]

        sets.append(tuple(current))
        lcm_values.append(m)
        m_values.append(m_prime)
        k_values.append(big_k)
        logger.debug('stage %d: M=%d M\'=%d K=%d', len(current), m, m_prime, big_k)

    witness = Lemma31Witness(b, tuple(sets), tuple(lcm_values), tuple(m_values), tuple(k_values))
    witness.check()
    return witness


def heuristic_forms(n_set: Sequence[int], ell: int, b: Optional[int] = None) -> FormSystem:
    """
    The forms in h

        ell*(n_i + h*b*M)/(n_j - n_i) + 1,  ell*(n_j + h*b*M)/(n_j - n_i) + 1

    for every pair i < j, M the lcm of the differences. For ell = 2 the
    first form equals 2(n_j + h*b*M)/(n_j - n_i) - 1. Forms shared by
    several pairs appear once.
    """
    if ell < 1:
        raise PreconditionError('ell must be positive, got {}'.format(ell), ell)
    if len(n_set) < 2 or any(x >= y for x, y in zip(n_set, n_set[1:])) or n_set[0] < 1:
        raise PreconditionError('expected a strictly increasing set of positive integers')

    quotients = []
    for ni, nj in _pairs(n_set):
        d = nj - ni
        if nj % d:
            raise PreconditionError('{} does not divide {}'.format(d, nj), (ni, nj))
        if b is not None and (nj // d) % b:
            raise PreconditionError(
                '{} does not divide {}/({}-{})'.format(b, nj, nj, ni), (ni, nj)
            )
        quotients.append(nj // d)

    if b is None:
        b = math.gcd(*quotients)

    m = math.lcm(*(nj - ni for ni, nj in _pairs(n_set)))
    forms: List[LinearForm] = []
    for ni, nj in _pairs(n_set):
        d = nj - ni
        slope = ell * b * m // d
        for n in (ni, nj):
            form = LinearForm(slope, ell * n // d + 1)
            if form not in forms:
                forms.append(form)
    return FormSystem(tuple(forms))


def dhlk_set_search(
    k: int, ell: int, bound: int, settings: ArithSettings = DEFAULT_SETTINGS
) -> List[Tuple[int, ...]]:
    """
    All 1 < m_1 < ... < m_k <= bound with ell*m_i/(m_j - m_i) and
    ell*m_j/(m_j - m_i) totients for every i < j, in lexicographic order.
    """
    if k < 2:
        raise PreconditionError('k must be at least 2, got {}'.format(k), k)
    if ell < 1:
        raise PreconditionError('ell must be positive, got {}'.format(ell), ell)

    membership: Dict[int, bool] = dict()

    def member(value: int) -> bool:
        if value not in membership:
            membership[value] = is_totient(value, settings)
        return membership[value]

    def pair_ok(mi: int, mj: int) -> bool:
        d = mj - mi
        if (ell * mi) % d:
            return False
        return member(ell * mi // d) and member(ell * mj // d)

    results: List[Tuple[int, ...]] = []

    def extend(chosen: List[int]) -> None:
        if len(chosen) == k:
            results.append(tuple(chosen))
            return
        for m in range(chosen[-1] + 1, bound - (k - len(chosen)) + 2):
            if all(pair_ok(c, m) for c in chosen):
                extend(chosen + [m])

    for first in range(2, bound - k + 2):
        extend([first])

    logger.debug('dhlk_set_search(%d, %d, %d): %d sets', k, ell, bound, len(results))
    return results


@dataclass(frozen=True)
class DhlkCheck:
    holds: bool
    quotients: Dict[Tuple[int, int], Tuple[int, int]] = field(default_factory=dict)
    preimages: Dict[int, int] = field(default_factory=dict)
    failing_pair: Optional[Tuple[int, int]] = None


def dhlk_hypotheses(
    m_set: Sequence[int],
    ell_matrix: Sequence[Sequence[int]],
    settings: ArithSettings = DEFAULT_SETTINGS,
) -> DhlkCheck:
    """
    Checks ell_ij*m_i/(m_j - m_i) and ell_ij*m_j/(m_j - m_i) are totients
    for every i < j, with ell_ij read from the upper triangle of
    `ell_matrix`. Records a preimage for every quotient.
    """
    if len(m_set) < 2 or m_set[0] <= 1 or any(x >= y for x, y in zip(m_set, m_set[1:])):
        raise PreconditionError('expected 1 < m_1 < ... < m_k')

    quotients: Dict[Tuple[int, int], Tuple[int, int]] = dict()
    preimages: Dict[int, int] = dict()
    for i in range(len(m_set)):
        for j in range(i + 1, len(m_set)):
            mi, mj, ell = m_set[i], m_set[j], ell_matrix[i][j]
            d = mj - mi
            if (ell * mi) % d:
                return DhlkCheck(False, quotients, preimages, (mi, mj))
            pair = (ell * mi // d, ell * mj // d)
            quotients[(mi, mj)] = pair
            for value in pair:
                if value in preimages:
                    continue
                result = inverse_phi(value, cap=1, settings=settings)
                if not result:
                    return DhlkCheck(False, quotients, preimages, (mi, mj))
                preimages[value] = result.preimages[0]
    return DhlkCheck(True, quotients, preimages)


def dhlk_difference(
    x: int, y: int, m_i: int, m_j: int, n: int, shift: int,
    settings: ArithSettings = DEFAULT_SETTINGS,
) -> int:
    """phi(x*(m_j*n + shift)) - phi(y*(m_i*n + shift)), evaluated exactly."""
    return phi(x * (m_j * n + shift), settings) - phi(y * (m_i * n + shift), settings)


class Branch(enum.Enum):
    MINUS = 'minus'
    PLUS = 'plus'


@dataclass(frozen=True)
class ApWitness:
    D: int
    a: int
    v1: int
    v2: int
    branch: Branch

    def holds(self) -> bool:
        if math.gcd(self.v1, self.D) != 1 or math.gcd(self.v2, self.D) != 1:
            return False
        sign = -1 if self.branch is Branch.MINUS else 1
        return ((self.v1 + sign) * (self.v2 - 1) - self.a) % self.D == 0


def _minus_pair(p: int, q: int, a: int) -> Tuple[int, int]:
    """(v1 - 1)(v2 - 1) = a mod q = p^alpha, p != 3, both units."""
    if p == 2:
        return 3 % q, (a // 2 + 1) % q
    excluded = {0, 1, (1 - a) % p}
    v2 = next(r for r in range(2, p) if r not in excluded)
    v1 = (1 + a * int(gmpy2.invert(v2 - 1, q))) % q
    return v1, v2


def _prime_power_pair(p: int, q: int, a: int, branch: Branch) -> Tuple[int, int]:
    if p == 3:
        if branch is Branch.MINUS:
            return 2 % q, (a + 1) % q
        return -2 % q, (1 - a) % q
    if branch is Branch.PLUS:
        v1, v2 = _minus_pair(p, q, -a)
        return -v1 % q, v2
    return _minus_pair(p, q, a)


def ap_lemma_solve(D: int, a: int, settings: ArithSettings = DEFAULT_SETTINGS) -> ApWitness:
    """
    Units v1, v2 mod D with (v1 - 1)(v2 - 1) = a or (v1 + 1)(v2 - 1) = a
    (mod D). Solved per prime power and glued by CRT; the power of 3
    fixes the branch and every other prime power follows it.
    """
    if D < 1:
        raise PreconditionError('D must be positive, got {}'.format(D), D)
    if a % 4:
        raise PreconditionError('a must be divisible by 4, got {}'.format(a), a)

    d_fact = factorize(D, settings)
    branch = Branch.PLUS if d_fact.exponent(3) and a % 3 == 2 else Branch.MINUS

    first, second = [], []
    for p, alpha in d_fact:
        q = p**alpha
        v1, v2 = _prime_power_pair(p, q, a, branch)
        first.append((v1, q))
        second.append((v2, q))

    v1, _ = crt(first)
    v2, _ = crt(second)
    witness = ApWitness(D, a, v1, v2, branch)
    if not witness.holds():
        raise VerificationDefect('witness {} fails its congruence'.format(witness))
    return witness


def ap_choose_v(D: int, a: int, witness: ApWitness) -> int:
    """
    v = -v1 (mod D), v > 0 on the minus branch; v = v1 (mod D), v < -1
    on the plus branch. Smallest in absolute value.
    """
    if witness.D != D or (witness.a - a) % D or not witness.holds():
        raise PreconditionError('witness is not valid for D={}, a={}'.format(D, a), witness)

    if witness.branch is Branch.MINUS:
        return -witness.v1 % D or D
    v = witness.v1 % D - D
    while v >= -1:
        v -= D
    return v


@dataclass(frozen=True)
class ApRemarkChoice:
    v: int
    branch: Branch


def ap_remark_choose_v(D: int, a: int) -> ApRemarkChoice:
    """
    The choice for a = 2 (mod 4): v = -a-1 (mod D), v > 0 when
    gcd(a+1, D) = 1, otherwise v = a-1 (mod D), v < -1 when gcd(a-1, D) = 1.
    """
    if D < 1:
        raise PreconditionError('D must be positive, got {}'.format(D), D)
    if math.gcd(a + 1, D) == 1:
        return ApRemarkChoice(-(a + 1) % D or D, Branch.MINUS)
    if math.gcd(a - 1, D) == 1:
        v = (a - 1) % D - D
        while v >= -1:
            v -= D
        return ApRemarkChoice(v, Branch.PLUS)
    raise PreconditionError('neither a+1 nor a-1 is coprime to D={}'.format(D), a)


@dataclass(frozen=True)
class ApModulus:
    d: int
    D: int
    gamma: int
    largest_prime: int
    beta: Factorization
    preimage_table: Dict[int, int] = field(default_factory=dict)


def ap_modulus_build(
    d: int, j_max: int = 49, settings: ArithSettings = DEFAULT_SETTINGS
) -> ApModulus:
    """
    D = d * prod_{p <= P} p^gamma with P the largest prime of d and gamma
    the largest exponent in prod_{p <= P}(p - 1), at least 1. The table
    maps j to x with phi(x) = D^j for j = 1..j_max.
    """
    if d < 2:
        raise PreconditionError('d must be at least 2, got {}'.format(d), d)

    largest = max(factorize(d, settings).primes)
    small = primes_up_to(largest)
    beta = factorize(math.prod(p - 1 for p in small), settings)
    gamma = max([1] + [e for _, e in beta])
    big_d = d * math.prod(p**gamma for p in small)

    d_fact = factorize(big_d, settings)
    table = {j: totient_power_witness(d_fact, j, beta) for j in range(1, j_max + 1)}
    logger.debug('modulus for d=%d: D=%d, gamma=%d', d, big_d, gamma)
    return ApModulus(d, big_d, gamma, largest, beta, table)


def ap_forms_system(D: int, v: int, count: int = 50) -> FormSystem:
    """The forms D^j x - v for j = 1..count."""
    if D < 2:
        raise PreconditionError('D must be at least 2, got {}'.format(D), D)
    return FormSystem(tuple(LinearForm(D**j, -v) for j in range(1, count + 1)))


@dataclass(frozen=True)
class ConditionB:
    """
    Whether D, D^2, ..., D^j_max are all totients. `table` maps j to a
    preimage of D^j or None; `factorizations` holds the factorization of
    every preimage found, for exact re-verification.
    """

    D: int
    table: Dict[int, Optional[int]]
    closed_form: bool
    factorizations: Dict[int, Factorization] = field(default_factory=dict, repr=False, compare=False)
    probable_candidates: int = 0

    @property
    def holds(self) -> bool:
        return all(x is not None for x in self.table.values())


def ap_condition_b(
    D: int, j_max: int = 49, settings: ArithSettings = DEFAULT_SETTINGS
) -> ConditionB:
    """
    Checks D, D^2, ..., D^j_max are totients: by the closed-form witness
    when every prime of prod (p - 1) divides D, else by search.
    """
    if D < 1:
        raise PreconditionError('D must be positive, got {}'.format(D), D)

    d_fact = factorize(D, settings)
    beta = totient_power_beta(d_fact, settings)
    factorizations: Dict[int, Factorization] = dict()
    try:
        for j in range(1, j_max + 1):
            factorizations[j] = totient_power_factorization(d_fact, j, beta)
        return ConditionB(D, dict((j, f.value) for j, f in factorizations.items()), True, factorizations)
    except PreconditionError as e:
        logger.debug('no closed form for D=%d: %s', D, e)

    table: Dict[int, Optional[int]] = dict()
    factorizations.clear()
    probable = 0
    for j in range(1, j_max + 1):
        result = inverse_phi(D**j, cap=1, settings=settings)
        probable += result.probable_candidates
        table[j] = result.preimages[0] if result else None
        if result:
            factorizations[j] = result.factorization_of(result.preimages[0])
    return ConditionB(D, table, False, factorizations, probable)
