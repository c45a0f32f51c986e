"""
Declarative option sets. Uppercase `ConfigOption` attributes of a
`Config` subclass are its options; values are converted and checked when
they are assigned, so a bad value fails where it enters.
"""
from typing import Any, Callable, ClassVar, Dict, Iterable, Mapping, Optional

from totientgaps.arith import ArithSettings


class ConfigException(Exception):
    pass


class InvalidConfig(ConfigException):
    def __init__(self, name: str, value: Any, reason: str) -> None:
        ConfigException.__init__(self, 'option {}: {}'.format(name.lower(), reason))

        self.name = name
        self.value = value


class InvalidOption(ConfigException):
    def __init__(self, name: str) -> None:
        ConfigException.__init__(self, 'Invalid option {!r}'.format(name))

        self.name = name


def identity(x: Any) -> Any:
    return x


def one_of(choices: Iterable[str]) -> Callable[[Any], str]:
    choices = tuple(choices)

    def converter(x: Any) -> str:
        x = str(x).lower()
        if x not in choices:
            raise ValueError('invalid choice {!r}, expected one of {!r}'.format(x, choices))
        return x

    converter.__config_doc__ = 'One of: {!r}'.format(choices)  # type: ignore[attr-defined]
    return converter


def positive(x: Any) -> int:
    value = int(x)
    if value < 1:
        raise ValueError('expected a positive integer, got {!r}'.format(x))
    return value


positive.__config_doc__ = 'A positive integer'  # type: ignore[attr-defined]


def optional_natural(x: Any) -> Optional[int]:
    if x is None:
        return None
    value = int(x)
    if value < 0:
        raise ValueError('expected a non-negative integer, got {!r}'.format(x))
    return value


class ConfigOption(object):
    def __init__(
        self,
        description: str,
        converter: Callable[[Any], Any] = identity,
        default: Any = None,
    ) -> None:
        self.converter = converter
        self.default = default

        doc = getattr(converter, '__config_doc__', None)
        self.description = description if doc is None else '{}. {}'.format(description.rstrip('. '), doc)


class Config(object):
    """
    Base for option sets:

        class SearchConfig(Config):
            BOUND = ConfigOption('Largest value searched', positive, 100)

        config = SearchConfig()
        config['BOUND'] = '250'
    """

    options: ClassVar[Dict[str, ConfigOption]] = {}

    def __init_subclass__(cls, **kwargs: Any) -> None:
        super().__init_subclass__(**kwargs)

        options = dict(cls.options)
        for name, value in vars(cls).items():
            if name.isupper() and isinstance(value, ConfigOption):
                options[name] = value
        cls.options = options

    def __init__(self) -> None:
        self._values = dict((name, option.default) for name, option in self.options.items())

    def set(self, name: str, value: Any) -> None:
        try:
            option = self.options[name]
        except KeyError:
            raise InvalidOption(name)

        try:
            self._values[name] = option.converter(value)
        except (TypeError, ValueError) as e:
            raise InvalidConfig(name, value, str(e)) from e

    def __getitem__(self, item: str) -> Any:
        return self._values[item]

    def __setitem__(self, key: str, value: Any) -> None:
        self.set(key, value)

    def update(self, values: Mapping[str, Any], ignore_none: bool = True) -> None:
        for name, value in values.items():
            if value is None and ignore_none:
                continue
            self.set(name.upper(), value)


class CliConfig(Config):
    FORMAT = ConfigOption('Output format', one_of(('human', 'json')), 'human')
    PRP_ROUNDS = ConfigOption(
        'Strong probable prime rounds for numbers of 2^64 and above', positive, 64
    )
    BUDGET = ConfigOption(
        'Work budget for rho iterations per cofactor and inverse totient search states',
        positive,
        10**7,
    )
    SEED = ConfigOption('Seed for probable prime bases', optional_natural)
    SIEVE_LIMIT = ConfigOption('Largest bound accepted by the sieves', positive, 10**8)

    def settings(self) -> ArithSettings:
        return ArithSettings(
            prp_rounds=self['PRP_ROUNDS'],
            budget=self['BUDGET'],
            seed=self['SEED'] or 0,
            sieve_limit=self['SIEVE_LIMIT'],
        )
