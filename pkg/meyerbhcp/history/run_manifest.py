from dataclasses import dataclass, field
from datetime import datetime
from logging import Logger
from pathlib import Path
from typing import Any, Dict, List, Optional
import json

from meyerbhcp.grading.grade import Grade, Pass
from meyerbhcp.history.metric import Metric
from meyerbhcp.history.metric_json_encoder import MetricJsonEncoder
from meyerbhcp.paths import OutputPaths
from meyerbhcp.rng import BIT_GENERATOR_NAME
from meyerbhcp.version import __version__


@dataclass
class ReproductionInfo(Metric):
    """
    Describes how to reproduce (re-run) the command that produced an output directory.
    """
    command: str
    argv: List[str]
    seed: Optional[int] = None
    bit_generator: str = BIT_GENERATOR_NAME
    version: str = __version__


@dataclass
class RunManifest(Metric):
    """
    Parameters and outcomes of one CLI run.
    Everything except create_time is a function of the command line.
    """
    reproduction_info: ReproductionInfo
    problem_id: Optional[str] = None
    epsilon: Optional[float] = None
    p_minus_q: Optional[float] = None
    big_m: Optional[float] = None
    J: Optional[int] = None
    t: Optional[float] = None
    grid: Optional[Dict[str, Any]] = None
    kappa: Optional[str] = None
    T: Optional[float] = None
    frequency_unit: Optional[float] = None
    reports: Dict[str, Metric] = field(default_factory=dict)
    grades: Dict[str, Grade] = field(default_factory=dict)
    create_time: datetime = field(default_factory=lambda: datetime.utcnow())


def log_result(name: str, grade: Optional[Grade], log: Logger):
    if grade is None:
        return
    try:
        grade_str = repr(grade)
    except Exception as e:
        log.error(f'Could not format grade: {e}')
        return

    if isinstance(grade, Pass):
        log.info(f'{name}: {grade_str}')
    else:
        log.warning(f'{name}: {grade_str}')


def store_manifest(manifest: RunManifest, out_dir: Path) -> Path:
    """
    Writes the manifest into out_dir, replacing any earlier one.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    file_path = out_dir / OutputPaths.manifest
    with open(file_path, 'w') as f:
        json.dump(manifest, f, cls=MetricJsonEncoder, sort_keys=True, indent=2)
    return file_path
