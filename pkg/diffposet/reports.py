"""diffposet reports

Every verification step returns a ``Report``. Failures are report content, not exceptions: callers
decide the exit status from ``Report.passed``.
"""

import dataclasses
import json
from typing import ClassVar, Iterable, List

from django.db.models import TextChoices

from .utils import RecordJSONEncoder


class Verdict(TextChoices):
    """Outcome of a single report

    Skip is used by ``verify-all`` for steps that cannot run because an earlier step failed.
    """
    PASS = 'pass', 'PASS'
    FAIL = 'fail', 'FAIL'
    SKIP = 'skip', 'SKIP'


@dataclasses.dataclass
class Report:
    kind: ClassVar[str] = 'report'

    @property
    def passed(self) -> bool:
        return True

    @property
    def verdict(self) -> Verdict:
        return Verdict.PASS if self.passed else Verdict.FAIL

    def summary(self) -> str:
        return ''

    def details(self) -> List[str]:
        return []

    def record_extras(self) -> dict:
        return {}

    def as_record(self) -> dict:
        record = {'kind': self.kind, 'verdict': self.verdict.value, 'passed': self.passed}
        record.update((field.name, getattr(self, field.name)) for field in dataclasses.fields(self))
        record.update(self.record_extras())
        return record

    def as_text(self) -> str:
        lines = [f'{self.verdict.label} {self.kind}: {self.summary()}']
        lines += [f'    {line}' for line in self.details()]
        return '\n'.join(lines)


@dataclasses.dataclass
class SkippedReport(Report):
    kind = 'skipped'
    step: str
    reason: str

    @property
    def verdict(self) -> Verdict:
        return Verdict.SKIP

    def summary(self) -> str:
        return f'{self.step} ({self.reason})'


@dataclasses.dataclass
class ErrorReport(Report):
    """A step that raised a library error; always a failure"""
    kind = 'error'
    step: str
    message: str

    @property
    def passed(self) -> bool:
        return False

    def summary(self) -> str:
        return f'{self.step}: {self.message}'


def render(reports: Iterable[Report], structured: bool = False) -> List[str]:
    """Renders reports as text blocks or as line-delimited JSON records"""
    if structured:
        return [json.dumps(report.as_record(), cls=RecordJSONEncoder, sort_keys=True) for report in reports]
    return [report.as_text() for report in reports]
