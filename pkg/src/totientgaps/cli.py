"""
Command-line front end for the totient gap toolkit.

Subcommands have additional help information, query with: `{subcommand} --help`
"""
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from totientgaps import __version__
from totientgaps.arith import ArithSettings
from totientgaps.config import CliConfig, ConfigException
from totientgaps.constructions import (
    ap_choose_v,
    ap_condition_b,
    ap_lemma_solve,
    ap_modulus_build,
    dhlk_hypotheses,
    dhlk_set_search,
    heuristic_forms,
    lemma31_construct,
)
from totientgaps.errors import ToolkitError, VerificationDefect
from totientgaps.forms import AdmissibilityReport, is_admissible, narrowest_admissible_width
from totientgaps.paperverify import VerificationReport, run_all, run_claim, verify_ap_instance
from totientgaps.serialize import dumps, load_form_system
from totientgaps.sink import LoggingSink, NullSink, Sink
from totientgaps.totient import inverse_phi, phi

logger = logging.getLogger('totientgaps')


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3


app = typer.Typer(
    name='totientgaps',
    help=__doc__,
    add_completion=False,
    no_args_is_help=True,
    pretty_exceptions_enable=False,
)


@dataclass
class Session:
    config: CliConfig
    settings: ArithSettings
    console: Console
    quiet: bool = False

    @property
    def json(self) -> bool:
        return self.config['FORMAT'] == 'json'

    @property
    def progress(self) -> Sink:
        if self.quiet:
            return NullSink()
        return LoggingSink(logger)

    def emit(self, payload: Any, render: Callable[[Console], None]) -> None:
        if self.json:
            typer.echo(dumps(payload))
        else:
            render(self.console)


def init_logging(verbose: bool, quiet: bool) -> None:
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    if quiet:
        logger.addHandler(logging.NullHandler())
        logger.setLevel(logging.CRITICAL + 1)
        return

    handler = RichHandler(console=Console(stderr=True), show_path=False)
    handler.setFormatter(logging.Formatter('[%(name)s]: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


@contextmanager
def failures() -> Iterator[None]:
    """Maps toolkit exceptions to exit codes with a diagnostic on stderr."""
    try:
        yield
    except VerificationDefect as e:
        logger.error('internal defect: %s', e)
        typer.echo('defect: {}'.format(e), err=True)
        raise typer.Exit(EXIT_FAILED)
    except ToolkitError as e:
        typer.echo('error: {}'.format(e), err=True)
        raise typer.Exit(EXIT_INPUT)


def _session(ctx: typer.Context) -> Session:
    session: Session = ctx.obj
    return session


def _version(value: bool) -> None:
    if value:
        typer.echo('totientgaps {}'.format(__version__))
        raise typer.Exit()


@app.callback()
def main_callback(
    ctx: typer.Context,
    output_format: str = typer.Option(
        CliConfig.FORMAT.default, '--format', help=CliConfig.FORMAT.description
    ),
    prp_rounds: int = typer.Option(
        CliConfig.PRP_ROUNDS.default, '--prp-rounds', help=CliConfig.PRP_ROUNDS.description
    ),
    budget: int = typer.Option(
        CliConfig.BUDGET.default, '--budget', help=CliConfig.BUDGET.description
    ),
    seed: Optional[int] = typer.Option(None, '--seed', help=CliConfig.SEED.description),
    sieve_limit: int = typer.Option(
        CliConfig.SIEVE_LIMIT.default, '--sieve-limit', help=CliConfig.SIEVE_LIMIT.description
    ),
    verbose: bool = typer.Option(False, '--verbose', '-v', help='Log debug output.'),
    quiet: bool = typer.Option(False, '--quiet', '-q', help='Disable logging.'),
    version: bool = typer.Option(
        False, '--version', callback=_version, is_eager=True, help='Show the version and exit.'
    ),
) -> None:
    # Initialize logging as early as possible
    init_logging(verbose, quiet)

    config = CliConfig()
    try:
        config.update(
            dict(
                format=output_format,
                prp_rounds=prp_rounds,
                budget=budget,
                seed=seed,
                sieve_limit=sieve_limit,
            )
        )
        settings = config.settings()
    except ConfigException as e:
        raise typer.BadParameter(str(e))

    logger.debug('settings: %s', settings)
    ctx.obj = Session(config, settings, Console(), quiet)


def _print_admissibility(console: Console, report: AdmissibilityReport) -> None:
    table = Table('prime', 'witness')
    for p in report.checked_primes:
        table.add_row(str(p), str(report.witnesses.get(p, '-')))
    console.print(table)
    if report.admissible:
        console.print('admissible')
    else:
        console.print('inadmissible, obstruction at {}'.format(report.obstruction))


def _print_reports(console: Console, reports: Sequence[VerificationReport], detail: bool) -> None:
    summary = Table('claim', 'status', 'probabilistic steps')
    for report in reports:
        summary.add_row(report.claim_id, report.status, str(report.probabilistic_steps))
    console.print(summary)

    for report in reports if detail else ():
        values = Table('name', 'value', title=report.claim_id)
        for name in sorted(report.values):
            values.add_row(name, str(report.values[name]))
        console.print(values)
        for note in report.notes:
            console.print(note, highlight=False)

    console.print(
        'probabilistic primality steps: {}'.format(sum(r.probabilistic_steps for r in reports))
    )


def _exit_code(reports: Sequence[VerificationReport]) -> int:
    if any(not r.passed for r in reports):
        return EXIT_FAILED
    if any(r.inconclusive for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


@app.command('phi')
def phi_command(ctx: typer.Context, n: int = typer.Argument(..., help='Positive integer.')) -> None:
    """Euler's totient of N."""
    session = _session(ctx)
    with failures():
        value = phi(n, session.settings)
    session.emit({'n': n, 'phi': value}, lambda c: c.print(str(value), highlight=False))


@app.command('inv-phi')
def inv_phi_command(
    ctx: typer.Context,
    m: int = typer.Argument(..., help='Positive integer.'),
    cap: Optional[int] = typer.Option(None, '--cap', help='Stop after this many preimages.'),
) -> None:
    """All x with phi(x) = M."""
    session = _session(ctx)
    with failures():
        result = inverse_phi(m, cap=cap, settings=session.settings)

    def render(console: Console) -> None:
        console.print(' '.join(str(x) for x in result.preimages) or 'none', highlight=False)
        if result.truncated:
            console.print('(truncated at {})'.format(cap))

    session.emit(result, render)


@app.command('is-totient')
def is_totient_command(ctx: typer.Context, m: int = typer.Argument(..., help='Positive integer.')) -> None:
    """Decides whether M is a value of phi."""
    session = _session(ctx)
    with failures():
        result = inverse_phi(m, cap=1, settings=session.settings)
    preimage = result.preimages[0] if result else None

    def render(console: Console) -> None:
        if preimage is None:
            console.print('false')
        else:
            console.print('true: phi({}) = {}'.format(preimage, m), highlight=False)

    session.emit({'m': m, 'totient': preimage is not None, 'preimage': preimage}, render)


@app.command('admissible')
def admissible_command(
    ctx: typer.Context,
    forms_json: str = typer.Argument(..., metavar='FORMS_JSON', help='JSON array of [a, b] pairs.'),
) -> None:
    """Admissibility of the forms a*n + b."""
    session = _session(ctx)
    with failures():
        system = load_form_system(forms_json)
        report = is_admissible(system, session.settings)
    session.emit(report, lambda c: _print_admissibility(c, report))


@app.command('narrowest')
def narrowest_command(
    ctx: typer.Context,
    k: int = typer.Argument(..., help='Tuple size, 2 to 8.'),
    bound: int = typer.Option(100, '--bound', help='Largest width searched.'),
) -> None:
    """Narrowest width of an admissible K-tuple."""
    session = _session(ctx)
    with failures():
        width = narrowest_admissible_width(k, bound)
    session.emit({'k': k, 'width': width}, lambda c: c.print(str(width), highlight=False))


@app.command('lemma31')
def lemma31_command(
    ctx: typer.Context,
    b: int = typer.Argument(..., help='Required divisor of every quotient.'),
    k: int = typer.Argument(..., help='Size of the final set.'),
) -> None:
    """Sets n_1 < ... < n_K with B | n_j/(n_j - n_i)."""
    session = _session(ctx)
    with failures():
        witness = lemma31_construct(b, k)

    def render(console: Console) -> None:
        table = Table('stage', 'set', 'M', "M'", 'K')
        for i, stage in enumerate(witness.sets):
            extra = ['', '', '']
            if i:
                extra = [str(witness.lcm_values[i - 1]), str(witness.m_values[i - 1]), str(witness.k_values[i - 1])]
            table.add_row(str(len(stage)), ', '.join(map(str, stage)), *extra)
        console.print(table)

    session.emit(witness, render)


@app.command('heuristic-forms')
def heuristic_forms_command(
    ctx: typer.Context,
    b: int = typer.Argument(..., help='Required divisor of every quotient.'),
    k: int = typer.Argument(..., help='Size of the underlying set.'),
    ell: int = typer.Option(2, '--ell', help='Multiplier of the quotients.'),
) -> None:
    """Heuristic form collection built on a divisibility set, with its admissibility."""
    session = _session(ctx)
    with failures():
        witness = lemma31_construct(b, k)
        system = heuristic_forms(witness.final, ell, b)
        report = is_admissible(system, session.settings)

    def render(console: Console) -> None:
        console.print('set: {}'.format(', '.join(map(str, witness.final))), highlight=False)
        console.print('forms: {}'.format(system), highlight=False)
        _print_admissibility(console, report)

    session.emit({'set': list(witness.final), 'forms': system, 'admissibility': report}, render)


@app.command('dhlk-search')
def dhlk_search_command(
    ctx: typer.Context,
    k: int = typer.Argument(..., help='Set size.'),
    ell: int = typer.Argument(..., metavar='L', help='Constant multiplier.'),
    bound: int = typer.Argument(..., help='Largest element.'),
) -> None:
    """Sets whose pair quotients L*m_i/(m_j - m_i), L*m_j/(m_j - m_i) are totients."""
    session = _session(ctx)
    with failures():
        found = dhlk_set_search(k, ell, bound, session.settings)

    def render(console: Console) -> None:
        for m_set in found:
            console.print('{' + ', '.join(map(str, m_set)) + '}', highlight=False)
        console.print('{} sets'.format(len(found)))

    session.emit({'k': k, 'ell': ell, 'bound': bound, 'sets': found}, render)


@app.command('ap-solve')
def ap_solve_command(
    ctx: typer.Context,
    modulus: int = typer.Argument(..., metavar='D', help='Modulus.'),
    a: int = typer.Argument(..., metavar='A', help='Multiple of 4.'),
) -> None:
    """Units v1, v2 mod D with (v1 -+ 1)(v2 - 1) = A, and the resulting v."""
    session = _session(ctx)
    with failures():
        witness = ap_lemma_solve(modulus, a, session.settings)
        v = ap_choose_v(modulus, a, witness)

    def render(console: Console) -> None:
        console.print(
            'v1 = {}, v2 = {} ({} branch), v = {}'.format(witness.v1, witness.v2, witness.branch.value, v),
            highlight=False,
        )

    session.emit({'witness': witness, 'v': v}, render)


@app.command('ap-modulus')
def ap_modulus_command(
    ctx: typer.Context, d: int = typer.Argument(..., metavar='D', help='Progression modulus d >= 2.')
) -> None:
    """D with d | D and D, ..., D^49 all totients, with their preimages."""
    session = _session(ctx)
    with failures():
        modulus = ap_modulus_build(d, settings=session.settings)

    def render(console: Console) -> None:
        console.print('d = {}, D = {}, gamma = {}'.format(modulus.d, modulus.D, modulus.gamma), highlight=False)
        table = Table('j', 'x with phi(x) = D^j')
        for j, x in modulus.preimage_table.items():
            table.add_row(str(j), str(x))
        console.print(table)

    session.emit(modulus, render)


@app.command('condition-b')
def condition_b_command(
    ctx: typer.Context,
    modulus: int = typer.Argument(..., metavar='D', help='Candidate modulus.'),
    powers: int = typer.Option(49, '--powers', min=1, help='Check D, ..., D^POWERS.'),
) -> None:
    """Whether D, D^2, ..., D^POWERS are all totients, with a preimage for each."""
    session = _session(ctx)
    with failures():
        result = ap_condition_b(modulus, powers, session.settings)

    def render(console: Console) -> None:
        how = 'closed form' if result.closed_form else 'search'
        console.print('D = {}: {} ({})'.format(result.D, 'holds' if result.holds else 'fails', how), highlight=False)
        table = Table('j', 'x with phi(x) = D^j')
        for j, x in result.table.items():
            table.add_row(str(j), '-' if x is None else str(x))
        console.print(table)

    session.emit(result, render)
    raise typer.Exit(EXIT_OK if result.holds else EXIT_FAILED)


@app.command('dhlk-check')
def dhlk_check_command(
    ctx: typer.Context,
    ell: int = typer.Argument(..., metavar='L', help='Constant multiplier.'),
    m_set: List[int] = typer.Argument(..., metavar='M...', help='Increasing integers m_1 < ... < m_k.'),
) -> None:
    """Whether L*m_i/(m_j - m_i) and L*m_j/(m_j - m_i) are totients for every pair."""
    session = _session(ctx)
    with failures():
        check = dhlk_hypotheses(m_set, [[ell] * len(m_set) for _ in m_set], session.settings)

    def render(console: Console) -> None:
        table = Table('pair', 'quotients', 'preimages')
        for (mi, mj), pair in check.quotients.items():
            table.add_row(
                '{}, {}'.format(mi, mj),
                ', '.join(map(str, pair)),
                ', '.join(str(check.preimages.get(q, '-')) for q in pair),
            )
        console.print(table)
        if check.holds:
            console.print('holds')
        else:
            console.print('fails at {}'.format(check.failing_pair), highlight=False)

    session.emit(check, render)
    raise typer.Exit(EXIT_OK if check.holds else EXIT_FAILED)


@app.command('verify')
def verify_command(
    ctx: typer.Context,
    claim: str = typer.Argument(..., metavar='CLAIM', help='Claim id or `all`.'),
) -> None:
    """Reproduces the numbers behind one claim, or all of them."""
    session = _session(ctx)
    sink = session.progress
    with failures():
        if claim == 'all':
            reports: List[VerificationReport] = run_all(session.settings, sink)
        else:
            reports = [run_claim(claim, session.settings, sink)]

    payload: Dict[str, Any] = {
        'reports': reports,
        'passed': all(r.passed for r in reports),
        'probabilistic_steps': sum(r.probabilistic_steps for r in reports),
    }
    session.emit(payload, lambda c: _print_reports(c, reports, detail=len(reports) == 1))
    raise typer.Exit(_exit_code(reports))


@app.command('ap-instance')
def ap_instance_command(
    ctx: typer.Context,
    d: int = typer.Argument(..., metavar='D', help='Progression modulus, a multiple of 4.'),
    a: int = typer.Argument(..., metavar='A', help='Residue, even.'),
    x_bound: int = typer.Argument(..., metavar='XBOUND', help='Largest x searched.'),
) -> None:
    """Concrete prime instance of the progression construction."""
    session = _session(ctx)
    with failures():
        report = verify_ap_instance(d, a, x_bound, session.settings, session.progress)

    payload = {'reports': [report], 'passed': report.passed, 'probabilistic_steps': report.probabilistic_steps}
    session.emit(payload, lambda c: _print_reports(c, [report], detail=True))
    raise typer.Exit(_exit_code([report]))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Runs the command line and returns the exit code instead of exiting."""
    args = list(argv) if argv is not None else sys.argv[1:]
    command = typer.main.get_command(app)
    try:
        command.main(args=args, prog_name='totientgaps', standalone_mode=True)
    except SystemExit as e:
        if e.code is None:
            return EXIT_OK
        return e.code if isinstance(e.code, int) else EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())
