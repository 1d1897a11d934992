from functools import reduce
from typing import List, Optional

from meyerbhcp.grading.audit import Audit, AuditedRun
from meyerbhcp.grading.grade import Fail, Grade, Pass


class CompoundAudit(Audit):
    """
    Combines a bunch of Audits into one Audit reporting the most significant grade.
    """

    def __init__(self, audits: List[Audit]):
        self.audits = audits

    def grade(self, run: AuditedRun) -> Optional[Grade]:
        grades = [audit.grade(run) for audit in self.audits]
        return reduce(pick_more_significant_grade, grades, None)

    def grade_each(self, run: AuditedRun) -> List[Optional[Grade]]:
        return [audit.grade(run) for audit in self.audits]


def pick_more_significant_grade(a: Optional[Grade], b: Optional[Grade]) -> Optional[Grade]:
    """
    Chooses to return @a or @b based on some measure of sigificance.
    On equal significance, it favours @a.
    """
    if isinstance(a, Fail):
        return a
    elif isinstance(b, Fail):
        return b
    elif isinstance(a, Pass):
        return a
    elif isinstance(b, Pass):
        return b
    assert a is None, f'{type(a)} must inherit either from Pass or Fail'
    assert b is None, f'{type(b)} must inherit either from Pass or Fail'
    return None
