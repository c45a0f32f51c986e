import math
import random

import pytest

from totientgaps.arith import primorial
from totientgaps.constructions import (
    ApWitness,
    Branch,
    ap_choose_v,
    ap_condition_b,
    ap_forms_system,
    ap_lemma_solve,
    ap_modulus_build,
    ap_remark_choose_v,
    dhlk_difference,
    dhlk_hypotheses,
    dhlk_set_search,
    divisibility_holds,
    heuristic_forms,
    lemma31_construct,
)
from totientgaps.errors import PreconditionError
from totientgaps.forms import is_admissible
from totientgaps.totient import phi


def test_lemma31_base_cases():
    assert lemma31_construct(1, 2).final == (1, 2)
    assert lemma31_construct(2, 2).final == (3, 4)


def test_lemma31_first_step():
    witness = lemma31_construct(2, 3)
    assert witness.sets == ((3, 4), (9, 10, 12))
    assert witness.lcm_values == (1,)
    assert witness.m_values == (3,)
    assert witness.k_values == (6,)


@pytest.mark.parametrize('b', [1, 2, 5, 7, 30])
def test_lemma31_three_element_closed_form(b):
    k = math.lcm(3, b, b + 1)
    assert lemma31_construct(b, 3).final == (k * b - b - 1, k * b - b, k * b)


def test_lemma31_primorial_base():
    assert lemma31_construct(30, 3).final == (27869, 27870, 27900)


def test_lemma31_divisibility_property():
    for b in range(1, 11):
        for k in range(2, 6):
            witness = lemma31_construct(b, k)
            assert len(witness.final) == k
            assert len(witness.sets) == k - 1
            assert divisibility_holds(witness.final, b)


def test_lemma31_preconditions():
    with pytest.raises(PreconditionError):
        lemma31_construct(0, 3)
    with pytest.raises(PreconditionError):
        lemma31_construct(2, 1)


def test_heuristic_forms_pair():
    system = heuristic_forms([3, 4], 2, b=2)
    assert system.pairs() == [(4, 7), (4, 9)]


def test_heuristic_forms_shared_form_identity():
    n_set = lemma31_construct(2, 3).final
    b, m = 2, 6
    system = heuristic_forms(n_set, 2, b=b)
    assert len(system) == 6
    values = set(system.evaluate(5))
    for i in range(len(n_set)):
        for j in range(i + 1, len(n_set)):
            d = n_set[j] - n_set[i]
            assert 2 * (n_set[j] + 5 * b * m) // d - 1 in values
            assert 2 * (n_set[j] + 5 * b * m) // d + 1 in values


def test_heuristic_forms_default_b():
    assert heuristic_forms([3, 4], 2) == heuristic_forms([3, 4], 2, b=4)


def test_heuristic_forms_rejects_bad_sets():
    with pytest.raises(PreconditionError) as excinfo:
        heuristic_forms([3, 4], 2, b=3)
    assert excinfo.value.value == (3, 4)
    with pytest.raises(PreconditionError):
        heuristic_forms([2, 5], 2)
    with pytest.raises(PreconditionError):
        heuristic_forms([4, 3], 2)


@pytest.mark.parametrize('k', [2, 3, 4])
def test_heuristic_forms_admissible_with_primorial_b(k):
    b = primorial(k * (k - 1))
    witness = lemma31_construct(b, k)
    system = heuristic_forms(witness.final, 2, b=b)
    assert is_admissible(system).admissible


def test_dhlk_set_search(settings):
    assert (6, 8, 9, 12) in dhlk_set_search(4, 2, 12, settings)
    assert (3, 4) in dhlk_set_search(2, 2, 4, settings)


def test_dhlk_set_search_replay(settings):
    found = dhlk_set_search(3, 2, 20, settings)
    assert found == sorted(found)
    for m_set in found:
        assert dhlk_hypotheses(m_set, [[2] * 3] * 3, settings).holds


def test_dhlk_hypotheses(settings):
    check = dhlk_hypotheses((6, 8, 9, 12), [[2] * 4] * 4, settings)
    assert check.holds
    assert check.quotients == {
        (6, 8): (6, 8),
        (6, 9): (4, 6),
        (6, 12): (2, 4),
        (8, 9): (16, 18),
        (8, 12): (4, 6),
        (9, 12): (6, 8),
    }
    for value, x in check.preimages.items():
        assert phi(x, settings) == value


def test_dhlk_hypotheses_failing_pair(settings):
    check = dhlk_hypotheses((2, 5), [[1, 1], [1, 1]], settings)
    assert not check.holds
    assert check.failing_pair == (2, 5)


def test_dhlk_difference(settings):
    # phi(7) = 6 and phi(15) = 8 for the pair (6, 8), primes 17 and 23 at n = 3
    assert dhlk_difference(7, 15, 6, 8, 3, -1, settings) == 4


def test_ap_lemma_solve_examples(settings):
    assert ap_lemma_solve(4, 4, settings) == ApWitness(4, 4, 3, 3, Branch.MINUS)
    assert ap_lemma_solve(9, 8, settings) == ApWitness(9, 8, 7, 2, Branch.PLUS)
    assert ap_lemma_solve(2, 4, settings).holds()
    assert ap_lemma_solve(1, 0, settings).holds()


def test_ap_lemma_solve_random(settings):
    rng = random.Random(0)
    for _ in range(200):
        d = rng.randint(1, 10**5)
        a = rng.choice(range(0, d + 1, 4))
        witness = ap_lemma_solve(d, a, settings)
        assert math.gcd(witness.v1, d) == 1
        assert math.gcd(witness.v2, d) == 1
        sign = -1 if witness.branch is Branch.MINUS else 1
        assert ((witness.v1 + sign) * (witness.v2 - 1) - a) % d == 0


def test_ap_lemma_solve_rejects_odd_multiple(settings):
    with pytest.raises(PreconditionError):
        ap_lemma_solve(8, 6, settings)


def test_ap_choose_v(settings):
    assert ap_choose_v(4, 4, ap_lemma_solve(4, 4, settings)) == 1
    assert ap_choose_v(9, 8, ap_lemma_solve(9, 8, settings)) == -2
    with pytest.raises(PreconditionError):
        ap_choose_v(4, 4, ApWitness(4, 4, 2, 3, Branch.MINUS))


def test_ap_choose_v_is_a_unit(settings):
    for d, a in [(8, 4), (72, 8), (360, 120), (105, 44)]:
        witness = ap_lemma_solve(d, a, settings)
        v = ap_choose_v(d, a, witness)
        assert math.gcd(v, d) == 1
        assert v > 0 if witness.branch is Branch.MINUS else v < -1


def test_ap_modulus_build(settings):
    modulus = ap_modulus_build(4, settings=settings)
    assert modulus.D == 8
    assert modulus.gamma == 1
    assert modulus.largest_prime == 2
    assert len(modulus.preimage_table) == 49
    assert all(x == 2 ** (3 * j + 1) for j, x in modulus.preimage_table.items())

    modulus = ap_modulus_build(12, settings=settings)
    assert modulus.D == 72
    assert modulus.D % 12 == 0
    for j, x in modulus.preimage_table.items():
        assert phi(x, settings) == 72**j


def test_ap_modulus_build_rejects_one(settings):
    with pytest.raises(PreconditionError):
        ap_modulus_build(1, settings=settings)


def test_ap_forms_system():
    system = ap_forms_system(8, 5)
    assert len(system) == 50
    assert system.pairs()[:2] == [(8, -5), (64, -5)]
    assert is_admissible(system).admissible


def test_ap_remark_choose_v():
    choice = ap_remark_choose_v(8, 2)
    assert choice.v == 5
    assert choice.branch is Branch.MINUS

    choice = ap_remark_choose_v(15, 14)
    assert choice.v == -2
    assert choice.branch is Branch.PLUS

    with pytest.raises(PreconditionError):
        ap_remark_choose_v(15, 4)


def test_ap_condition_b(settings):
    result = ap_condition_b(16, settings=settings)
    assert result.closed_form
    assert result.holds
    assert result.table[1] == 32
    assert result.probable_candidates == 0
    for j, x in result.table.items():
        assert result.factorizations[j].value == x
        assert phi(x, settings) == 16**j

    result = ap_condition_b(28, j_max=3, settings=settings)
    assert not result.closed_form
    assert result.holds
    assert result.table[1] == 29
    for j, x in result.table.items():
        assert result.factorizations[j].value == x
        assert phi(x, settings) == 28**j


@pytest.mark.parametrize('d', [4, 8, 12, 20, 72, 400])
def test_ap_condition_b_two_prime_families_closed_form(d, settings):
    result = ap_condition_b(d, settings=settings)
    assert result.closed_form
    assert result.holds
    assert len(result.table) == 49
    assert phi(result.table[2], settings) == d**2


def test_ap_condition_b_fails_for_nontotient(settings):
    result = ap_condition_b(14, j_max=1, settings=settings)
    assert not result.closed_form
    assert not result.holds
    assert result.table == {1: None}
    assert result.factorizations == {}
