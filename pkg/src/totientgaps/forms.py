"""
Affine-linear forms a*x + b and the admissibility decision procedure.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from totientgaps.arith import DEFAULT_SETTINGS, ArithSettings, factorize, primes_up_to
from totientgaps.errors import PreconditionError, SearchBoundTooSmall

logger = logging.getLogger(__name__)


REDUCTION_NOTE = (
    'primes p > k dividing no gcd(a_i, b_i) need no check: each form '
    'vanishes on at most one residue mod p, so at most k < p residues are excluded'
)


@dataclass(frozen=True, order=True)
class LinearForm:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1:
            raise PreconditionError('coefficient must be positive, got {}'.format(self.a), self.a)

    def evaluate(self, x: int) -> int:
        return self.a * x + self.b

    def __str__(self) -> str:
        head = 'n' if self.a == 1 else '{}n'.format(self.a)
        if self.b == 0:
            return head
        return '{}{}{}'.format(head, '+' if self.b > 0 else '-', abs(self.b))


@dataclass(frozen=True)
class FormSystem:
    forms: Tuple[LinearForm, ...]

    def __post_init__(self) -> None:
        if not self.forms:
            raise PreconditionError('a form system needs at least one form')
        if len(set(self.forms)) != len(self.forms):
            raise PreconditionError('forms must be pairwise distinct')

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> 'FormSystem':
        return cls(tuple(LinearForm(int(a), int(b)) for a, b in pairs))

    def pairs(self) -> List[Tuple[int, int]]:
        return [(f.a, f.b) for f in self.forms]

    def evaluate(self, x: int) -> List[int]:
        return [f.evaluate(x) for f in self.forms]

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self) -> Iterator[LinearForm]:
        return iter(self.forms)

    def __str__(self) -> str:
        return '{' + ', '.join(str(f) for f in self.forms) + '}'


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    witnesses: Dict[int, int] = field(default_factory=dict)
    obstruction: Optional[int] = None
    checked_primes: Tuple[int, ...] = ()
    reduction_note: str = REDUCTION_NOTE


def avoids(system: FormSystem, p: int, x: int) -> bool:
    """True if no form of the system vanishes mod p at x."""
    return all((f.a * x + f.b) % p for f in system)


def is_admissible(
    system: FormSystem, settings: ArithSettings = DEFAULT_SETTINGS
) -> AdmissibilityReport:
    """
    Decides admissibility by residue search at every prime p <= k and
    every prime dividing some gcd(a_i, b_i); all other primes are
    admissible by counting. Stops at the first obstruction.
    """
    k = len(system)
    primes = set(primes_up_to(k))
    for f in system:
        g = math.gcd(f.a, f.b)
        if g > 1:
            primes.update(factorize(g, settings).primes)

    witnesses: Dict[int, int] = dict()
    checked: List[int] = []
    for p in sorted(primes):
        checked.append(p)
        if any(f.a % p == 0 and f.b % p == 0 for f in system):
            return AdmissibilityReport(False, witnesses, p, tuple(checked))

        witness = next((x for x in range(p) if avoids(system, p, x)), None)
        if witness is None:
            logger.debug('%s covers every residue mod %d', system, p)
            return AdmissibilityReport(False, witnesses, p, tuple(checked))
        witnesses[p] = witness

    return AdmissibilityReport(True, witnesses, None, tuple(checked))


def shifted_monic_system(offsets: Sequence[int], scale: int) -> FormSystem:
    """The system {n + o*scale : o in offsets}."""
    if len(set(offsets)) != len(offsets):
        raise PreconditionError('offsets must be distinct')
    if scale < 1:
        raise PreconditionError('scale must be positive, got {}'.format(scale), scale)
    return FormSystem(tuple(LinearForm(1, o * scale) for o in offsets))


def monic_tuple_system(offsets: Sequence[int]) -> FormSystem:
    return shifted_monic_system(offsets, 1)


def _covers(offsets: Sequence[int], primes: Sequence[int]) -> bool:
    return any(len({h % p for h in offsets}) == p for p in primes)


def narrowest_admissible_width(k: int, search_bound: int) -> int:
    """
    Minimal h_k - h_1 over admissible tuples n + h_1, ..., n + h_k with
    h_1 = 0 and h_k <= search_bound.
    """
    if not 2 <= k <= 8:
        raise PreconditionError('exhaustive width search supports 2 <= k <= 8, got {}'.format(k), k)

    primes = primes_up_to(k)
    # largest admissible prefix seen, and the first (narrowest) width it fit
    best_size, best_width = 1, 0

    def extend(offsets: List[int], width: int) -> bool:
        nonlocal best_size, best_width
        if _covers(offsets + [width], primes):
            return False
        if len(offsets) + 1 > best_size:
            best_size, best_width = len(offsets) + 1, width
        if len(offsets) == k - 1:
            return True
        for h in range(offsets[-1] + 1, width - (k - 2 - len(offsets))):
            if extend(offsets + [h], width):
                return True
        return False

    for width in range(1, search_bound + 1):
        if extend([0], width):
            logger.debug('narrowest admissible %d-tuple has width %d', k, width)
            return width

    raise SearchBoundTooSmall(
        'no admissible {}-tuple of width <= {}; best found: admissible {}-tuple of width {}'.format(
            k, search_bound, best_size, best_width
        ),
        best_width,
        best_size,
    )
