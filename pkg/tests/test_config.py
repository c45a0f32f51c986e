import pytest

from totientgaps.arith import ArithSettings
from totientgaps.config import (
    CliConfig,
    Config,
    ConfigOption,
    InvalidConfig,
    InvalidOption,
    positive,
)


def test_cli_config_defaults():
    config = CliConfig()
    assert config['FORMAT'] == 'human'
    assert config['PRP_ROUNDS'] == 64
    assert config['SEED'] is None
    assert config.settings() == ArithSettings()


def test_cli_config_update():
    config = CliConfig()
    config.update(dict(format='JSON', prp_rounds='8', seed=3, budget=None))
    assert config['FORMAT'] == 'json'
    assert config['PRP_ROUNDS'] == 8
    assert config['BUDGET'] == 10**7
    assert config.settings() == ArithSettings(prp_rounds=8, seed=3)


@pytest.mark.parametrize('name, value', [('FORMAT', 'xml'), ('PRP_ROUNDS', 0), ('BUDGET', 'many'), ('SEED', -1)])
def test_cli_config_rejects(name, value):
    config = CliConfig()
    with pytest.raises(InvalidConfig) as excinfo:
        config[name] = value
    assert excinfo.value.name == name
    assert excinfo.value.value == value
    assert str(excinfo.value).startswith('option {}:'.format(name.lower()))


def test_unknown_option():
    with pytest.raises(InvalidOption):
        CliConfig().set('COLOR', 'red')


def test_descriptions_carry_converter_docs():
    assert 'One of' in CliConfig.FORMAT.description
    assert 'positive integer' in CliConfig.PRP_ROUNDS.description
    assert CliConfig.SEED.description == 'Seed for probable prime bases'


def test_options_are_collected_per_subclass():
    assert sorted(CliConfig.options) == ['BUDGET', 'FORMAT', 'PRP_ROUNDS', 'SEED', 'SIEVE_LIMIT']

    class WideConfig(CliConfig):
        BOUND = ConfigOption('Largest value searched', positive, 100)

    config = WideConfig()
    config['BOUND'] = '250'
    assert config['BOUND'] == 250
    assert config['FORMAT'] == 'human'
    assert 'BOUND' not in CliConfig.options
    assert Config.options == {}
