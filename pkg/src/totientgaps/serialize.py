"""
Canonical JSON for every result type: sorted keys, two-space indent and
integers as decimal strings, so parsing and re-serializing is
byte-identical.
"""
import enum
import json
from typing import Any, Dict, List

from totientgaps.arith import Factorization
from totientgaps.constructions import ApModulus, ApWitness, ConditionB, DhlkCheck, Lemma31Witness
from totientgaps.errors import InputError
from totientgaps.forms import AdmissibilityReport, FormSystem
from totientgaps.paperverify import VerificationReport
from totientgaps.totient import TotientPreimages


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return dict((str(k), to_jsonable(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    try:
        return to_jsonable(_CONVERTERS[type(obj)](obj))
    except KeyError:
        pass
    # gmpy2.mpz and numpy integers
    if hasattr(obj, '__index__'):
        return str(int(obj))
    raise TypeError('cannot serialize {!r}'.format(type(obj)))


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


def factorization_to_dict(f: Factorization) -> Dict[str, Any]:
    return {'factors': [list(pair) for pair in f.factors], 'probable': f.probable}


def preimages_to_dict(result: TotientPreimages) -> Dict[str, Any]:
    return {
        'target': result.target,
        'preimages': list(result.preimages),
        'truncated': result.truncated,
        'cap': result.cap,
        'probable_candidates': result.probable_candidates,
    }


def form_system_to_list(system: FormSystem) -> List[List[int]]:
    return [list(pair) for pair in system.pairs()]


def admissibility_to_dict(report: AdmissibilityReport) -> Dict[str, Any]:
    return {
        'admissible': report.admissible,
        'witnesses': report.witnesses,
        'obstruction': report.obstruction,
        'checked_primes': list(report.checked_primes),
        'reduction_note': report.reduction_note,
    }


def lemma31_to_dict(witness: Lemma31Witness) -> Dict[str, Any]:
    return {
        'b': witness.b,
        'sets': [list(stage) for stage in witness.sets],
        'lcm_values': list(witness.lcm_values),
        'm_values': list(witness.m_values),
        'k_values': list(witness.k_values),
    }


def ap_witness_to_dict(witness: ApWitness) -> Dict[str, Any]:
    return {
        'D': witness.D,
        'a': witness.a,
        'v1': witness.v1,
        'v2': witness.v2,
        'branch': witness.branch,
    }


def ap_modulus_to_dict(modulus: ApModulus) -> Dict[str, Any]:
    return {
        'd': modulus.d,
        'D': modulus.D,
        'gamma': modulus.gamma,
        'largest_prime': modulus.largest_prime,
        'beta': modulus.beta,
        'preimage_table': modulus.preimage_table,
    }


def condition_b_to_dict(result: ConditionB) -> Dict[str, Any]:
    return {
        'D': result.D,
        'table': result.table,
        'closed_form': result.closed_form,
        'holds': result.holds,
        'probable_candidates': result.probable_candidates,
    }


def dhlk_check_to_dict(check: DhlkCheck) -> Dict[str, Any]:
    return {
        'holds': check.holds,
        'quotients': dict(('{},{}'.format(*pair), list(q)) for pair, q in check.quotients.items()),
        'preimages': check.preimages,
        'failing_pair': list(check.failing_pair) if check.failing_pair else None,
    }


def report_to_dict(report: VerificationReport) -> Dict[str, Any]:
    return {
        'claim_id': report.claim_id,
        'passed': report.passed,
        'status': report.status,
        'inconclusive': report.inconclusive,
        'values': report.values,
        'probabilistic_steps': report.probabilistic_steps,
        'notes': list(report.notes),
    }


_CONVERTERS: Dict[type, Any] = {
    Factorization: factorization_to_dict,
    TotientPreimages: preimages_to_dict,
    FormSystem: form_system_to_list,
    AdmissibilityReport: admissibility_to_dict,
    Lemma31Witness: lemma31_to_dict,
    ApWitness: ap_witness_to_dict,
    ApModulus: ap_modulus_to_dict,
    ConditionB: condition_b_to_dict,
    DhlkCheck: dhlk_check_to_dict,
    VerificationReport: report_to_dict,
}


def _parse_integer(value: Any) -> int:
    if isinstance(value, bool):
        raise InputError('expected an integer, got {!r}'.format(value))
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise InputError('expected an integer, got {!r}'.format(value))


def load_form_system(text: str) -> FormSystem:
    """Parses a JSON array of [a, b] pairs; numbers or decimal strings."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError('malformed forms JSON: {}'.format(e)) from e

    if not isinstance(data, list) or not data:
        raise InputError('forms JSON must be a non-empty array of [a, b] pairs')
    pairs = []
    for item in data:
        if not isinstance(item, list) or len(item) != 2:
            raise InputError('expected an [a, b] pair, got {!r}'.format(item))
        pairs.append((_parse_integer(item[0]), _parse_integer(item[1])))
    return FormSystem.from_pairs(pairs)
