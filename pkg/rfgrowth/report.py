import json
import logging
from typing import List, NamedTuple

from pandas import DataFrame

from rfgrowth.constants import TOOL_VERSION

logger = logging.getLogger(__name__)


class Check(NamedTuple):
    name: str
    status: str
    detail: str


class Report:
    """
    The outcome of a verification suite: an ordered list of named checks, each
    ``pass`` or ``fail`` with a detail string.

    Parameters
    ==========
    suite : :obj:`str`
        The name of the suite that produced the report.
    """
    def __init__(self, suite: str) -> None:
        self.suite = suite
        self.checks: List[Check] = []

    def __len__(self):
        return len(self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __repr__(self) -> str:
        report_str = f'Report for suite {self.suite}: {len(self.checks) - len(self.failures())}/{len(self.checks)} checks passed\n'
        for check in self.checks:
            report_str += f'  [{check.status}] {check.name}: {check.detail}\n'
        return report_str

    def add(self, name: str, passed: bool, detail: str = '') -> bool:
        """
        Records a check. Returns ``passed`` so callers can chain on it.
        """
        check = Check(name=name, status='pass' if passed else 'fail', detail=detail)
        self.checks.append(check)
        if passed:
            logger.info('%s/%s passed: %s', self.suite, name, detail)
        else:
            logger.warning('%s/%s FAILED: %s', self.suite, name, detail)
        return passed

    def extend(self, other: 'Report'):
        self.checks.extend(other.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if c.status != 'pass']

    @property
    def passed(self) -> bool:
        return len(self.failures()) == 0

    def to_dict(self) -> dict:
        return {
            'suite': self.suite,
            'checks': [c._asdict() for c in self.checks],
            'tool_version': TOOL_VERSION
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_df(self) -> DataFrame:
        return DataFrame([c._asdict() for c in self.checks], columns=['name', 'status', 'detail'])
