from dataclasses import dataclass
from typing import Tuple

from meyerbhcp.grading.grade import Fail, Pass
from meyerbhcp.history.metric import Metric


@dataclass(frozen=True)
class ExampleMetric(Metric):
    delta: float
    levels: Tuple[int, ...]


@dataclass(frozen=True)
class ExampleMetric2(ExampleMetric):
    clamped: bool = True


class PassWithNote(Pass):
    def __init__(self, note: str):
        self.note = note


class FailWithValue(Fail):
    def __init__(self, value: float):
        self.value = value

    def __repr__(self):
        return f'{super().__repr__()}: value {self.value}'
