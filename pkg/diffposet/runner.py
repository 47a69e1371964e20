"""diffposet runner

Batch runs behind the command line: a ``RunConfig`` names a command and its inputs, ``run`` executes it
and returns a ``RunResult`` with the reports in deterministic order. Independent (n, k) jobs can be
spread over worker processes; results are merged in submission order.
"""

import dataclasses
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

from django.db.models import TextChoices

from . import chains, fundamental, smith, spectra
from .conf import app_settings
from .constructions import FamilySpec, build
from .exceptions import DiffPosetError, RankOutOfRange, RunConfigError
from .hasse import dump_hasse, format_hasse, load_hasse
from .posets import GradedPoset, check_axioms, resolve_r
from .reports import ErrorReport, Report, SkippedReport, render

logger = logging.getLogger(__name__)


class Command(TextChoices):
    BUILD = 'build', 'Build a standard family'
    CHECK = 'check', 'Check the differential axioms'
    CHAINS = 'chains', 'Find and verify the chain pair'
    FUNDAMENTAL = 'fundamental', 'Fundamental vectors'
    SMITH = 'smith', 'Smith normal form divisibility'
    SPECTRUM = 'spectrum', 'Determinant factorization'
    CERTIFY_GROWTH = 'certify-growth', 'Strict growth certificates'
    VERIFY_ALL = 'verify-all', 'Full verification pipeline'


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: Command
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    family: Optional[FamilySpec] = None
    n_values: Optional[Tuple[int, ...]] = None
    k_values: Optional[Tuple[int, ...]] = None
    r: Optional[int] = None
    structured: bool = False
    jobs: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'command', Command(self.command))
        if self.k_values is None:
            object.__setattr__(self, 'k_values', tuple(app_settings.K_VALUES))
        if self.jobs is None:
            object.__setattr__(self, 'jobs', app_settings.JOBS)
        if self.seed is None:
            object.__setattr__(self, 'seed', app_settings.SEED)
        if any(k < 1 for k in self.k_values):
            raise RunConfigError(f'k values must be positive integers, got {self.k_values}')
        if self.n_values is not None and any(n < 0 for n in self.n_values):
            raise RunConfigError(f'n values must be nonnegative, got {self.n_values}')
        if self.jobs < 1:
            raise RunConfigError(f'jobs must be at least 1, got {self.jobs}')
        if self.r is not None and self.r < 1:
            raise RunConfigError(f'r must be a positive integer, got {self.r}')
        if self.command == Command.BUILD:
            if self.family is None:
                raise RunConfigError('build needs a family')
        elif self.input_path is None:
            raise RunConfigError(f'{self.command.value} needs an input file')


@dataclasses.dataclass
class RunResult:
    reports: List[Report] = dataclasses.field(default_factory=list)
    # diffposet-hasse text of a build without an output path
    output: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all(report.passed for report in self.reports)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def render(self, structured: bool = False) -> List[str]:
        return render(self.reports, structured)


@dataclasses.dataclass
class BuildReport(Report):
    kind = 'build'
    family: str
    rank_sizes: List[int]
    r: int
    output_path: Optional[str] = None

    def summary(self) -> str:
        target = f' -> {self.output_path}' if self.output_path else ''
        top = len(self.rank_sizes) - 1
        return f'{self.family} through rank {top}, r={self.r}, rank sizes {self.rank_sizes}{target}'


def _guarded(job: Tuple[str, Callable, tuple]) -> Report:
    """Runs one job, turning library errors into failing reports"""
    step, function, args = job
    try:
        return function(*args)
    except DiffPosetError as exc:
        logger.warning(f'Runner: {step} failed: {exc}')
        return ErrorReport(step, str(exc))


def run_jobs(jobs: Sequence[Tuple[str, Callable, tuple]], workers: int = 1) -> List[Report]:
    """Runs independent jobs, in worker processes when ``workers`` > 1; results keep the job order"""
    if workers <= 1 or len(jobs) <= 1:
        return [_guarded(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_guarded, jobs))


def _ranks(config: RunConfig, poset: GradedPoset, low: int, high: int) -> Tuple[int, ...]:
    """Requested n values, or all of low..high; every requested value must lie in that range"""
    if config.n_values is None:
        return tuple(range(low, high + 1))
    for n in config.n_values:
        if not low <= n <= high:
            raise RankOutOfRange(n, low, high, what='n')
    return config.n_values


def _prepare_chains(poset: GradedPoset, r: int) -> Tuple[GradedPoset, chains.ChainPair, chains.ChainReport]:
    """Finds the chain pair and moves t_n to the front of every rank"""
    pair = chains.find_chain_pair(poset, r)
    report = chains.verify_chain_pair(poset, pair, r)
    attached, attached_pair = chains.attach_chain_pair(poset, pair)
    return attached, attached_pair, report


def _fundamental_jobs(poset, pair, r, n_values, k_values) -> List[tuple]:
    return [('fundamental', fundamental.verify_fundamental_identity, (poset, pair, n, k, r, None, True))
            for n in n_values for k in k_values]


def _pairing_jobs(poset, pair, r, n_values) -> List[tuple]:
    return [('pairing', chains.check_pairing_profile, (poset, pair, r, n)) for n in n_values]


def _first_column_jobs(poset, pair, r, n_values, k_values) -> List[tuple]:
    return [('first-column', smith.first_column_check, (poset, pair, n, k, r)) for n in n_values for k in k_values]


def _smith_jobs(poset, pair, r, n_values, k_values) -> List[tuple]:
    return [('smith', smith.check_divisibility_bound, (poset, pair, n, k, r))
            for n in n_values if n >= 1 for k in k_values]


def _spectrum_jobs(poset, r, n_values) -> List[tuple]:
    return [('spectrum', spectra.char_poly_factor_check, (poset, n, r)) for n in n_values]


def _certificate_jobs(poset, r, n_values) -> List[tuple]:
    return [('certificate', spectra.certify_strict_growth, (poset, r, n)) for n in n_values]


def run_build(config: RunConfig) -> RunResult:
    poset = build(config.family)
    result = RunResult()
    if config.output_path is not None:
        dump_hasse(poset, config.output_path)
    else:
        result.output = format_hasse(poset)
    output = str(config.output_path) if config.output_path is not None else None
    result.reports.append(BuildReport(str(config.family), list(poset.rank_sizes), poset.r, output))
    return result


def run_check(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    return RunResult([check_axioms(poset, r)])


def run_chains(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    pair = chains.find_chain_pair(poset, r)
    reports: List[Report] = [chains.verify_chain_pair(poset, pair, r)]
    n_values = _ranks(config, poset, 1, poset.top_rank)
    reports += run_jobs(_pairing_jobs(poset, pair, r, n_values), config.jobs)
    return RunResult(reports)


def run_fundamental(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    attached, pair, _ = _prepare_chains(poset, r)
    n_values = _ranks(config, poset, 0, poset.top_rank - 1)
    return RunResult(run_jobs(_fundamental_jobs(attached, pair, r, n_values, config.k_values), config.jobs))


def run_smith(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    attached, pair, _ = _prepare_chains(poset, r)
    n_values = _ranks(config, poset, 1, poset.top_rank - 1)
    return RunResult(run_jobs(_smith_jobs(attached, pair, r, n_values, config.k_values), config.jobs))


def run_spectrum(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    n_values = _ranks(config, poset, 0, poset.top_rank - 1)
    reports: List[Report] = [spectra.weak_growth_check(poset)]
    reports += run_jobs(_spectrum_jobs(poset, r, n_values), config.jobs)
    return RunResult(reports)


def run_certify_growth(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    n_values = _ranks(config, poset, 2, poset.top_rank - 1)
    return RunResult(run_jobs(_certificate_jobs(poset, r, n_values), config.jobs))


VERIFY_STEPS = ('chains', 'fundamental', 'pairing', 'first-column', 'smith', 'growth', 'spectrum', 'certificate',
                'oracle')


def run_verify_all(config: RunConfig, poset: GradedPoset, r: int) -> RunResult:
    """Axioms, chains, fundamental vectors, first columns, Smith bounds, spectra, certificates, oracle

    Steps after a failed axiom check are reported as skipped.
    """
    axioms = check_axioms(poset, r)
    result = RunResult([axioms])
    if not axioms.passed:
        result.reports += [SkippedReport(step, 'axiom check failed') for step in VERIFY_STEPS]
        return result
    try:
        attached, pair, chain_report = _prepare_chains(poset, r)
    except DiffPosetError as exc:
        result.reports.append(ErrorReport('chains', str(exc)))
        result.reports += [SkippedReport(step, 'no chain pair') for step in VERIFY_STEPS[1:5]]
        attached = pair = None
    else:
        result.reports.append(chain_report)
    below_top = _ranks(config, poset, 0, poset.top_rank - 1)
    jobs = []
    if pair is not None:
        jobs += _fundamental_jobs(attached, pair, r, below_top, config.k_values)
        jobs += _pairing_jobs(attached, pair, r, [n for n in below_top if n >= 1])
        jobs += _first_column_jobs(attached, pair, r, below_top, config.k_values)
        jobs += _smith_jobs(attached, pair, r, below_top, config.k_values)
    result.reports += run_jobs(jobs, config.jobs)
    result.reports.append(spectra.weak_growth_check(poset))
    jobs = _spectrum_jobs(poset, r, below_top)
    jobs += _certificate_jobs(poset, r, [n for n in below_top if n >= 2])
    result.reports += run_jobs(jobs, config.jobs)
    result.reports.append(smith.random_matrix_oracle(config.seed))
    return result


RUNNERS = {
    Command.CHECK: run_check,
    Command.CHAINS: run_chains,
    Command.FUNDAMENTAL: run_fundamental,
    Command.SMITH: run_smith,
    Command.SPECTRUM: run_spectrum,
    Command.CERTIFY_GROWTH: run_certify_growth,
    Command.VERIFY_ALL: run_verify_all,
}


def run(config: RunConfig) -> RunResult:
    """Executes one command; library errors propagate, verification failures are in the result"""
    logger.info(f'Runner: {config.command.value} started')
    if config.command == Command.BUILD:
        result = run_build(config)
    else:
        poset = load_hasse(config.input_path)
        r = resolve_r(poset, config.r)
        result = RUNNERS[config.command](config, poset, r)
    failed = sum(1 for report in result.reports if not report.passed)
    logger.info(f'Runner: {config.command.value} finished, {len(result.reports)} reports, {failed} failed')
    return result
