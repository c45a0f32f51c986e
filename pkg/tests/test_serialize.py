import json

import gmpy2
import numpy as np
import pytest

from totientgaps.constructions import ap_lemma_solve, lemma31_construct
from totientgaps.errors import InputError
from totientgaps.forms import FormSystem, is_admissible
from totientgaps.paperverify import verify_dhl5
from totientgaps.serialize import dumps, load_form_system, to_jsonable
from totientgaps.totient import inverse_phi


def test_integers_are_decimal_strings():
    assert to_jsonable(10**30) == '1000000000000000000000000000000'
    assert to_jsonable(gmpy2.mpz(5)) == '5'
    assert to_jsonable(np.int64(7)) == '7'
    assert to_jsonable(True) is True
    assert to_jsonable(None) is None
    assert to_jsonable({3: [1, 2]}) == {'3': ['1', '2']}


def test_dumps_is_canonical():
    assert dumps({'b': 1, 'a': 2}) == '{\n  "a": "2",\n  "b": "1"\n}'


def test_report_round_trip(settings):
    text = dumps(verify_dhl5(settings))
    data = json.loads(text)
    assert data['claim_id'] == 'dhl5'
    assert data['status'] == 'passed'
    assert data['values']['maximum'] == '6'
    assert dumps(data) == text


def test_witness_serialization(settings):
    data = json.loads(dumps(lemma31_construct(2, 3)))
    assert data['sets'] == [['3', '4'], ['9', '10', '12']]
    assert data['m_values'] == ['3']

    data = json.loads(dumps(ap_lemma_solve(9, 8, settings)))
    assert data == {'D': '9', 'a': '8', 'v1': '7', 'v2': '2', 'branch': 'plus'}


def test_admissibility_and_preimages(settings):
    data = json.loads(dumps(is_admissible(FormSystem.from_pairs([[1, 0], [1, 1]]))))
    assert data['admissible'] is False
    assert data['obstruction'] == '2'

    data = json.loads(dumps(inverse_phi(8, settings=settings)))
    assert data['preimages'] == ['15', '16', '20', '24', '30']
    assert data['truncated'] is False


def test_load_form_system():
    system = load_form_system('[[1, 0], [1, "2"], ["4", -1]]')
    assert system.pairs() == [(1, 0), (1, 2), (4, -1)]
    assert dumps(system) == dumps(load_form_system(dumps(system)))


@pytest.mark.parametrize('text', ['not json', '[]', '{"a": 1}', '[[1]]', '[[true, 1]]', '[["x", 1]]', '[[0, 1]]'])
def test_load_form_system_rejects(text):
    with pytest.raises(InputError):
        load_form_system(text)
