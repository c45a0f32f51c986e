"""
One verification per claim with computational content. Every check
re-derives its constants, compares them with the published values and
collects the outcome in a VerificationReport.
"""
import logging
import math
from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from totientgaps.arith import (
    DEFAULT_SETTINGS,
    ArithSettings,
    is_prime,
    lcm_range,
    primes_up_to,
    primorial,
)
from totientgaps.constructions import (
    Branch,
    ap_choose_v,
    ap_condition_b,
    ap_forms_system,
    ap_lemma_solve,
    ap_modulus_build,
    ap_remark_choose_v,
    dhlk_difference,
    dhlk_hypotheses,
)
from totientgaps.errors import InputError, PreconditionError
from totientgaps.forms import FormSystem, LinearForm, avoids, is_admissible, shifted_monic_system
from totientgaps.sink import LoggingSink, ReportSink, Sink
from totientgaps.totient import (
    inverse_phi,
    phi,
    verify_preimage,
    verify_scaled_totient,
)

logger = logging.getLogger(__name__)


THEOREM1_S1 = (41, 43, 47, 53, 67, 71)
THEOREM1_S2 = (59, 61, 67, 71, 73, 83, 89, 101, 103, 107, 109, 113, 127, 131, 137, 139)
THEOREM1_S4_RANGE = (127, 271)
THEOREM1_WITNESSES = {41: 1, 43: 3, 47: 8}
THEOREM1_MAXIMA = {'within_s1': 30, 'within_s2': 80, 'within_s4': 144, 'cross_s1_s2': 82}
THEOREM1_BOUND = 154

PRIMORIAL_47 = 614889782588491410

DHL4_SET = (6, 8, 9, 12)
DHL5_FORMS = ((1, 0), (1, 2), (2, 1), (4, -1), (4, 3))
DHL5_RESIDUE = (11, 30)
DHL5_BOUND = 6
DHL6_H = 120193920
DHL6_OFFSETS = (72, 66, 64, 63, 60, 0)
DHL6_ELL = 4

REMARK28_D = 28
TOTIENT_POWERS = 49

INSTANCE_SEARCH_LIMIT = 10**4
CORROBORATION_INSTANCES = 3

CONDITION_B_ODD_BASES = (1, 3, 5)
CONDITION_B_K = (2, 3, 4)
CONDITION_B_L = (1, 2, 3)
THREE_PRIME_D = 60


@dataclass
class VerificationReport:
    claim_id: str
    passed: bool
    values: Dict[str, int] = field(default_factory=dict)
    probabilistic_steps: int = 0
    notes: List[str] = field(default_factory=list)
    inconclusive: bool = False

    @property
    def status(self) -> str:
        if not self.passed:
            return 'failed'
        if self.inconclusive:
            return 'inconclusive'
        return 'passed'


class _Audit(object):
    def __init__(self, claim_id: str, sink: Optional[Sink]) -> None:
        self.claim_id = claim_id
        self.sink = ReportSink(sink if sink is not None else LoggingSink(logger=logger))
        self.values: Dict[str, int] = dict()
        self.ok = True
        self.probabilistic = 0
        self.inconclusive = False

    def require(self, condition: bool, message: str) -> bool:
        if not condition:
            self.ok = False
            self.sink.error('{}: {}'.format(self.claim_id, message))
        return bool(condition)

    def record(self, name: str, value: int) -> None:
        self.values[name] = int(value)

    def expect(self, name: str, value: int, published: int) -> bool:
        self.record(name, value)
        return self.require(value == published, '{} is {}, expected {}'.format(name, value, published))

    def report(self) -> VerificationReport:
        return VerificationReport(
            claim_id=self.claim_id,
            passed=self.ok,
            values=dict(self.values),
            probabilistic_steps=self.probabilistic,
            notes=self.sink.notes,
            inconclusive=self.inconclusive,
        )


def _odd_prime(n: int, settings: ArithSettings) -> bool:
    return n > 2 and bool(is_prime(n, settings))


def verify_theorem1(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    audit = _Audit('thm1', sink)

    for a in THEOREM1_S1 + THEOREM1_S2:
        audit.require(bool(is_prime(a, settings)), '{} is not prime'.format(a))
    low, high = THEOREM1_S4_RANGE
    s4 = tuple(p for p in primes_up_to(high) if p >= low)
    audit.expect('s4_size', len(s4), 28)

    forms = (
        [LinearForm(1, a) for a in THEOREM1_S1]
        + [LinearForm(2, a) for a in THEOREM1_S2]
        + [LinearForm(4, b) for b in s4]
    )
    system = FormSystem(tuple(forms))
    audit.expect('form_count', len(system), 50)

    report = is_admissible(system, settings)
    audit.require(report.admissible, 'the 50 forms are not admissible (obstruction {})'.format(report.obstruction))
    audit.require(
        all(avoids(system, p, 0) for p in primes_up_to(40)),
        'n = 0 does not avoid every prime below 41',
    )
    for p, n in THEOREM1_WITNESSES.items():
        if audit.require(avoids(system, p, n), 'n = {} is not a witness at {}'.format(n, p)):
            audit.record('witness_{}'.format(p), n)

    audit.expect('within_s1', max(THEOREM1_S1) - min(THEOREM1_S1), THEOREM1_MAXIMA['within_s1'])
    audit.expect('within_s2', max(THEOREM1_S2) - min(THEOREM1_S2), THEOREM1_MAXIMA['within_s2'])
    audit.expect('within_s4', max(s4) - min(s4), THEOREM1_MAXIMA['within_s4'])

    cross12 = [b - 2 * a + 1 for a in THEOREM1_S1 for b in THEOREM1_S2]
    audit.expect('cross_s1_s2_pairs', len(cross12), 96)
    audit.require(all(cross12), 'b - 2a + 1 vanishes on S1 x S2')
    audit.expect('cross_s1_s2', max(abs(x) for x in cross12), THEOREM1_MAXIMA['cross_s1_s2'])

    cross24 = [b - 2 * a + 1 for a in THEOREM1_S2 for b in s4]
    audit.record('cross_s2_s4', max(abs(x) for x in cross24))
    audit.require(all(0 < abs(x) <= THEOREM1_BOUND for x in cross24), '|b - 2a + 1| leaves (0, 154] on S2 x S4')

    cross14 = [b - 4 * a + 3 for a in THEOREM1_S1 for b in s4]
    audit.record('cross_s1_s4', max(abs(x) for x in cross14))
    audit.require(all(0 < abs(x) <= THEOREM1_BOUND for x in cross14), '|b - 4a + 3| leaves (0, 154] on S1 x S4')

    overall = max(
        [audit.values[name] for name in THEOREM1_MAXIMA] + [audit.values['cross_s2_s4'], audit.values['cross_s1_s4']]
    )
    audit.expect('overall', overall, THEOREM1_BOUND)

    checked = 0
    for a in THEOREM1_S1:
        instances = (n for n in range(INSTANCE_SEARCH_LIMIT) if _odd_prime(n + a, settings))
        for n in islice(instances, CORROBORATION_INSTANCES):
            audit.require(phi(4 * (n + a), settings) == 2 * n + 2 * a - 2, 'phi(4(n+a)) at n={}, a={}'.format(n, a))
            audit.require(phi(8 * (n + a), settings) == 4 * (n + a - 1), 'phi(8(n+a)) at n={}, a={}'.format(n, a))
            checked += 1
    audit.record('corroborated_instances', checked)

    return audit.report()


def verify_theorem2_scaffold(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    audit = _Audit('thm2', sink)

    a0 = primorial(47)
    b0 = lcm_range(49)
    audit.expect('a0', a0, PRIMORIAL_47)
    audit.record('b0', b0)
    product = a0 * b0

    for j in range(1, 50):
        audit.require(b0 % j == 0, '{} does not divide b0'.format(j))
        audit.require((product // j) % a0 == 0, 'a0 does not divide a0*b0/{}'.format(j))
        audit.require(verify_scaled_totient(product, j, settings), 'phi(a0*b0/{0})*{0} != phi(a0*b0)'.format(j))
    audit.record('scaled_identities', 49)

    phi_ab = phi(product, settings)
    audit.record('phi_a0b0', phi_ab)
    audit.record('A', phi_ab * a0)

    for k in (1, 2, 3):
        system = shifted_monic_system(range(1, 51), a0 * k)
        audit.require(is_admissible(system, settings).admissible, 'n + i*{}*a0 is not admissible'.format(k))

    for j in (1, 2):
        pair = _prime_pair_with_gap(j * a0, 53, settings)
        if pair is None:
            audit.sink.warning('no prime pair u - v = {}*a0 found'.format(j))
            continue
        v, u = pair
        lhs = phi(product * u // j, settings) - phi(product * v // j, settings)
        audit.require(lhs == phi_ab * a0, 'phi(a0b0u/j) - phi(a0b0v/j) != A for j={}'.format(j))
        audit.record('instance_j{}_v'.format(j), v)
        audit.record('instance_j{}_u'.format(j), u)

    audit.sink.info(
        'the statement names b = lcm[1..49] while the conclusion uses b0; '
        'both denote lcm[1..49] here and the check follows the proof'
    )
    return audit.report()


def _prime_pair_with_gap(gap: int, start: int, settings: ArithSettings) -> Optional[Tuple[int, int]]:
    for v in range(start, start + INSTANCE_SEARCH_LIMIT):
        if is_prime(v, settings) and is_prime(v + gap, settings):
            return v, v + gap
    return None


def verify_dhl3(
    h_max: int = 100, settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    if h_max < 1:
        raise PreconditionError('h_max must be positive, got {}'.format(h_max), h_max)
    audit = _Audit('dhl3', sink)

    for h in range(1, h_max + 1):
        system = FormSystem.from_pairs([(1, 1), (1, 2 * h + 1), (2, 2 * h + 1)])
        audit.require(is_admissible(system, settings).admissible, 'triple for h={} is not admissible'.format(h))
        audit.require(avoids(system, 2, 0), 'n = 0 leaves an even form for h={}'.format(h))
        audit.require(any(avoids(system, 3, n) for n in (0, 1)), 'neither n = 0 nor 1 avoids 3 for h={}'.format(h))
    audit.record('h_max', h_max)

    missing = 0
    for h in range(1, min(h_max, 20) + 1):
        for case, (first, second, difference) in enumerate(_DHL3_CASES, start=1):
            n = next(
                (
                    n for n in range(1, INSTANCE_SEARCH_LIMIT)
                    if _odd_prime(first(n, h), settings) and _odd_prime(second(n, h), settings)
                ),
                None,
            )
            if n is None:
                missing += 1
                audit.sink.warning('no instance of case {} for h={}'.format(case, h))
                continue
            audit.require(difference(n, h, settings) == 2 * h, 'case {} at n={}, h={}'.format(case, n, h))
            audit.record('h{}_case{}_n'.format(h, case), n)
    audit.record('instances_missing', missing)

    return audit.report()


_DHL3_CASES: Sequence[Tuple[Callable[[int, int], int], Callable[[int, int], int], Callable[[int, int, ArithSettings], int]]] = (
    (
        lambda n, h: n + 1,
        lambda n, h: n + 2 * h + 1,
        lambda n, h, s: phi(n + 2 * h + 1, s) - phi(n + 1, s),
    ),
    (
        lambda n, h: n + 1,
        lambda n, h: 2 * n + 2 * h + 1,
        lambda n, h, s: phi(2 * n + 2 * h + 1, s) - phi(4 * (n + 1), s),
    ),
    (
        lambda n, h: n + 2 * h + 1,
        lambda n, h: 2 * n + 2 * h + 1,
        lambda n, h, s: phi(4 * (n + 2 * h + 1), s) - phi(2 * n + 2 * h + 1, s),
    ),
)


def verify_dhl4(
    d: int = 4, settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    if d < 1 or d % 4:
        raise PreconditionError('d must be a positive multiple of 4, got {}'.format(d), d)
    audit = _Audit('dhl4', sink)
    audit.record('d', d)

    size = len(DHL4_SET)
    check = dhlk_hypotheses(DHL4_SET, [[2] * size for _ in range(size)], settings)
    audit.require(check.holds, 'quotient membership fails at {}'.format(check.failing_pair))
    for (mi, mj), (low, high) in check.quotients.items():
        audit.record('quotient({},{}).low'.format(mi, mj), low)
        audit.record('quotient({},{}).high'.format(mi, mj), high)
    for value, x in check.preimages.items():
        audit.require(phi(x, settings) == value, 'phi({}) != {}'.format(x, value))
        audit.record('preimage({})'.format(value), x)
    audit.expect('memberships', 2 * len(check.quotients), 12)

    if d % 12 in (0, 4):
        a = d // 2 - 1
        shift = -a
        audit.record('a', a)
        audit.require(math.gcd(a, 6) == 1, 'gcd(a, 6) = {}'.format(math.gcd(a, 6)))
    else:
        b = d // 2 + 1
        shift = b
        audit.record('b', b)
        audit.require(math.gcd(b, 6) == 1, 'gcd(b, 6) = {}'.format(math.gcd(b, 6)))

    system = FormSystem(tuple(LinearForm(m, shift) for m in DHL4_SET))
    audit.require(is_admissible(system, settings).admissible, '{} is not admissible'.format(system))

    if check.holds:
        instance = _dhl4_instance(check.quotients, check.preimages, shift, settings)
        if instance is None:
            audit.sink.warning('no prime instance of any pair below n = {}'.format(INSTANCE_SEARCH_LIMIT))
        else:
            n, mi, mj, difference = instance
            audit.require(abs(difference) == d, 'difference at n={} is {}'.format(n, difference))
            audit.record('instance_n', n)
            audit.record('instance_m_i', mi)
            audit.record('instance_m_j', mj)
            audit.record('instance_difference', difference)

    return audit.report()


def _dhl4_instance(
    quotients: Dict[Tuple[int, int], Tuple[int, int]],
    preimages: Dict[int, int],
    shift: int,
    settings: ArithSettings,
) -> Optional[Tuple[int, int, int, int]]:
    for n in range(1, INSTANCE_SEARCH_LIMIT):
        for (mi, mj), (low, high) in quotients.items():
            x, y = preimages[low], preimages[high]
            pi, pj = mi * n + shift, mj * n + shift
            if not (_odd_prime(pi, settings) and _odd_prime(pj, settings)):
                continue
            if math.gcd(x, pj) != 1 or math.gcd(y, pi) != 1:
                continue
            return n, mi, mj, dhlk_difference(x, y, mi, mj, n, shift, settings)
    return None


def verify_dhl5(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    audit = _Audit('dhl5', sink)

    system = FormSystem.from_pairs(DHL5_FORMS)
    audit.require(is_admissible(system, settings).admissible, '{} is not admissible'.format(system))
    n, modulus = DHL5_RESIDUE
    audit.require(
        all(math.gcd(value, modulus) == 1 for value in system.evaluate(n)),
        'n = {} does not make every form coprime to {}'.format(n, modulus),
    )
    audit.record('witness_mod_{}'.format(modulus), n)

    forms = list(system)
    table = []
    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            fi, fj = forms[i], forms[j]
            ratio = fj.a // fi.a
            value = abs(ratio * (fi.b - 1) - (fj.b - 1))
            audit.require(value > 0, '{} and {} give a zero gap'.format(fi, fj))
            audit.record('pair({},{})'.format(fi, fj), value)
            table.append(value)
            _dhl5_corroborate(audit, fi, fj, ratio, value, settings)

    audit.expect('pairs', len(table), 10)
    audit.require(all(v <= DHL5_BOUND for v in table), 'a pair gap exceeds {}'.format(DHL5_BOUND))
    audit.expect('maximum', max(table), DHL5_BOUND)
    return audit.report()


def _dhl5_corroborate(
    audit: _Audit, fi: LinearForm, fj: LinearForm, ratio: int, value: int, settings: ArithSettings
) -> None:
    # phi((2c/a)(an+b)) = (c/a)(an+b-1) for an+b an odd prime
    for n in range(1, INSTANCE_SEARCH_LIMIT):
        p, q = fi.evaluate(n), fj.evaluate(n)
        if _odd_prime(p, settings) and _odd_prime(q, settings):
            difference = phi(2 * ratio * p, settings) - phi(q, settings)
            audit.require(abs(difference) == value, 'pair {}, {} at n={} gives {}'.format(fi, fj, n, difference))
            return
    audit.sink.warning('no prime instance of {} and {}'.format(fi, fj))


def verify_dhl6(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    audit = _Audit('dhl6', sink)

    h = DHL6_H
    n_set = tuple(h - o for o in DHL6_OFFSETS)
    audit.record('h', h)
    audit.record('two_ell', 2 * DHL6_ELL)

    system = FormSystem(tuple(LinearForm(n, -1) for n in n_set))
    audit.require(is_admissible(system, settings).admissible, 'the forms n_i t - 1 are not admissible')

    memberships = 0
    for i in range(len(n_set)):
        for j in range(i + 1, len(n_set)):
            ni, nj = n_set[i], n_set[j]
            d = nj - ni
            for side, n in (('low', ni), ('high', nj)):
                if not audit.require((DHL6_ELL * n) % d == 0, '{} does not divide 4*{}'.format(d, n)):
                    continue
                value = DHL6_ELL * n // d
                key = 'quotient({},{}).{}'.format(ni, nj, side)
                audit.record(key, value)
                result = inverse_phi(value, cap=1, settings=settings)
                if not audit.require(bool(result), '{} is not a totient'.format(value)):
                    continue
                x = result.preimages[0]
                check = verify_preimage(x, result.factorization_of(x), value, settings)
                audit.require(check.ok, 'preimage {} of {} does not re-verify'.format(x, value))
                audit.probabilistic += check.probable
                audit.record(key + '.preimage', x)
                memberships += 1

    audit.expect('memberships', memberships, 30)
    return audit.report()


def verify_condition_b_families(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    """
    D = d satisfies both conditions for d = 2^k, 2^k 3^l and 2^k 5^l with
    k >= 2: the closed-form witness covers all 49 powers, and at every even
    a one of a+1, a-1 is coprime to d. With three primes this breaks,
    e.g. d = 60 at a = 4.
    """
    audit = _Audit('condition-b', sink)

    moduli = sorted(
        set(
            2**k * odd**l
            for odd in CONDITION_B_ODD_BASES
            for k in CONDITION_B_K
            for l in CONDITION_B_L
        )
    )
    for d in moduli:
        condition = ap_condition_b(d, TOTIENT_POWERS, settings)
        audit.require(condition.closed_form, 'no closed-form witness for d={}'.format(d))
        if not audit.require(condition.holds, 'some power of {} is not a totient'.format(d)):
            continue
        for j, f in condition.factorizations.items():
            check = verify_preimage(f.value, f, d**j, settings)
            audit.require(check.ok, 'preimage of {}^{} does not re-verify'.format(d, j))
            audit.probabilistic += check.probable

        uncovered = [a for a in range(0, d, 2) if math.gcd(a + 1, d) > 1 and math.gcd(a - 1, d) > 1]
        if uncovered:
            audit.require(False, 'd={}: neither a+1 nor a-1 is coprime to d at a={}'.format(d, uncovered[0]))
        for a in range(2, d, 4):
            try:
                ap_remark_choose_v(d, a)
            except PreconditionError as e:
                audit.require(False, 'd={}, a={}: {}'.format(d, a, e))
    audit.record('moduli', len(moduli))
    audit.record('largest_d', moduli[-1])

    obstruction = next(
        (
            a for a in range(0, THREE_PRIME_D, 2)
            if math.gcd(a + 1, THREE_PRIME_D) > 1 and math.gcd(a - 1, THREE_PRIME_D) > 1
        ),
        None,
    )
    if audit.require(obstruction is not None, 'd={} has no obstructed even a'.format(THREE_PRIME_D)):
        audit.expect('obstruction_{}'.format(THREE_PRIME_D), obstruction, 4)
    return audit.report()


def verify_remark28(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    audit = _Audit('remark28', sink)

    condition = ap_condition_b(REMARK28_D, TOTIENT_POWERS, settings)
    if not condition.closed_form:
        audit.sink.info('no closed-form witness for {}: preimages found by search'.format(REMARK28_D))

    for j, x in condition.table.items():
        if not audit.require(x is not None, '{}^{} is not a totient'.format(REMARK28_D, j)):
            continue
        check = verify_preimage(x, condition.factorizations[j], REMARK28_D**j, settings)
        audit.require(check.ok, 'preimage of {}^{} does not re-verify'.format(REMARK28_D, j))
        audit.probabilistic += check.probable
        audit.record('preimage({}^{})'.format(REMARK28_D, j), x)

    audit.record('probable_candidates', condition.probable_candidates)
    return audit.report()


def verify_ap_instance(
    d: int = 4,
    a: int = 4,
    x_bound: int = 10**6,
    settings: ArithSettings = DEFAULT_SETTINGS,
    sink: Optional[Sink] = None,
    j1: int = 1,
    j2: int = 2,
) -> VerificationReport:
    """
    Runs the progression construction on concrete numbers: builds D,
    solves for v1, v2 and v, then searches x <= x_bound for primes
    p1 = D^j1 x - v, p2 = D^j2 x - v and evaluates both totient
    identities exactly. With a = 2 (mod 4) only the first identity
    applies. Without a prime pair the identities are checked on the
    tuple at x = x_bound with phi(p) read as p - 1, and the report is
    inconclusive.
    """
    if d < 4 or d % 4:
        raise PreconditionError('d must be a positive multiple of 4, got {}'.format(d), d)
    if a < 1 or a % 2:
        raise PreconditionError('a must be positive and even, got {}'.format(a), a)
    if not 1 <= j1 < j2 <= TOTIENT_POWERS:
        raise PreconditionError('need 1 <= j1 < j2 <= {}'.format(TOTIENT_POWERS), (j1, j2))
    if x_bound < 1:
        raise PreconditionError('x_bound must be positive, got {}'.format(x_bound), x_bound)
    audit = _Audit('ap-instance', sink)

    modulus = ap_modulus_build(d, settings=settings)
    big_d = modulus.D
    j = j2 - j1
    l = modulus.preimage_table[j]
    for name, value in (('d', d), ('a', a), ('D', big_d), ('gamma', modulus.gamma), ('j1', j1), ('j2', j2), ('l', l)):
        audit.record(name, value)
    audit.require(d % 4 == 0 and big_d % d == 0, '{} does not divide D'.format(d))
    audit.require(phi(l, settings) == big_d**j, 'phi(l) != D^{}'.format(j))

    v2: Optional[int] = None
    if a % 4 == 0:
        witness = ap_lemma_solve(big_d, a, settings)
        v = ap_choose_v(big_d, a, witness)
        branch = witness.branch
        v2 = witness.v2
        audit.record('v1', witness.v1)
        audit.record('v2', witness.v2)
    else:
        choice = ap_remark_choose_v(big_d, a)
        v, branch = choice.v, choice.branch
        audit.sink.info('a = 2 (mod 4): only the identity without q applies')
    audit.record('v', v)
    audit.record('branch_sign', 1 if branch is Branch.MINUS else -1)
    audit.sink.info('{} branch, v = {}'.format(branch.value, v))

    system = ap_forms_system(big_d, v)
    audit.require(is_admissible(system, settings).admissible, 'the forms D^j x - v are not admissible')

    q = _smallest_prime_in_class(v2, big_d, l, settings) if v2 is not None else None
    instance = _find_ap_instance(audit, big_d, v, j1, j2, l, q, x_bound, settings)

    factor = big_d**j - 1
    if instance is not None:
        x, p1, p2 = instance
        first = phi(p2, settings) - phi(p1 * l, settings)
        second = (phi(p2 * q, settings) - phi(p1 * l * q, settings)) if q is not None else None
    else:
        audit.inconclusive = True
        audit.sink.warning('no prime pair with x <= {}; checking the identities formally'.format(x_bound))
        x = x_bound
        p1 = big_d**j1 * x - v
        p2 = big_d**j2 * x - v
        first = (p2 - 1) - (p1 - 1) * big_d**j
        second = (p2 - 1) * (q - 1) - (p1 - 1) * big_d**j * (q - 1) if q is not None else None

    for name, value in (('x', x), ('p1', p1), ('p2', p2)):
        audit.record(name, value)
    expected = (v + 1) * factor
    audit.record('phi_p2_minus_phi_p1l', first)
    audit.require(first == expected, 'phi(p2) - phi(p1 l) = {}, expected {}'.format(first, expected))
    value = first
    if q is not None and second is not None:
        audit.record('q', q)
        audit.record('phi_p2q_minus_phi_p1lq', second)
        audit.require(second == (q - 1) * expected, 'phi(p2 q) - phi(p1 l q) = {}'.format(second))
        value = second

    audit.record('value', value)
    audit.record('value_mod_d', abs(value) % d)
    audit.require((value > 0) == (v > 0), 'value {} does not have the sign of v'.format(value))
    audit.require(abs(value) % big_d == a % big_d, '|value| is not congruent to a mod D')
    audit.require(abs(value) % d == a % d, '|value| is not congruent to a mod d')
    return audit.report()


def _smallest_prime_in_class(residue: int, modulus: int, l: int, settings: ArithSettings) -> int:
    candidate = residue % modulus
    while candidate < 2 or not is_prime(candidate, settings) or math.gcd(candidate, l) != 1:
        candidate += modulus
    return candidate


def _find_ap_instance(
    audit: _Audit,
    big_d: int,
    v: int,
    j1: int,
    j2: int,
    l: int,
    q: Optional[int],
    x_bound: int,
    settings: ArithSettings,
) -> Optional[Tuple[int, int, int]]:
    floor = q if q is not None else 1
    for x in range(1, x_bound + 1):
        p1 = big_d**j1 * x - v
        if p1 <= floor:
            continue
        first = is_prime(p1, settings)
        if not first:
            continue
        p2 = big_d**j2 * x - v
        second = is_prime(p2, settings)
        if not second:
            continue
        if math.gcd(p1, l) != 1 or math.gcd(p2, l) != 1:
            continue
        audit.probabilistic += first.probable + second.probable
        return x, p1, p2
    return None


CLAIMS: Dict[str, Callable[[ArithSettings, Optional[Sink]], VerificationReport]] = {
    'thm1': verify_theorem1,
    'thm2': verify_theorem2_scaffold,
    'dhl3': lambda settings, sink: verify_dhl3(settings=settings, sink=sink),
    'dhl4': lambda settings, sink: verify_dhl4(settings=settings, sink=sink),
    'dhl5': verify_dhl5,
    'dhl6': verify_dhl6,
    'ap-instance': lambda settings, sink: verify_ap_instance(settings=settings, sink=sink),
    'condition-b': verify_condition_b_families,
    'remark28': verify_remark28,
}

CLAIM_IDS = tuple(CLAIMS)


def run_claim(
    claim_id: str, settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> VerificationReport:
    try:
        verify = CLAIMS[claim_id]
    except KeyError:
        raise InputError(
            'unknown claim {!r}, expected one of {}'.format(claim_id, ', '.join(CLAIM_IDS))
        )
    logger.info('verifying %s', claim_id)
    return verify(settings, sink)


def run_all(
    settings: ArithSettings = DEFAULT_SETTINGS, sink: Optional[Sink] = None
) -> List[VerificationReport]:
    """Every claim in CLAIM_IDS order; remark28 comes last."""
    return [run_claim(claim_id, settings, sink) for claim_id in CLAIM_IDS]
