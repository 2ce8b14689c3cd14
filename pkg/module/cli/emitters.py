"""Text, JSON and CSV renderings of solver results.

Numbers carry `digits` significant digits; magnitudes below 1e-14 times the
scale of the quantity print as 0, and -0 never appears.
"""
import json
from dataclasses import asdict, is_dataclass
from typing import Any, Dict, List

import numpy as np

from module.base.errors import ParameterError
from module.linalg.linalg_core import CMatrix, UnitVector
from module.numrange.numrange import NumericalRange
from configs.solver_base_config import Base as SolverConfig

ZERO_SNAP = 1e-14
OUTPUT_FORMATS = ('text', 'json', 'csv')


def snap(x: float, scale: float = 1.0, digits: int = 12) -> float:
    x = float(x)
    if abs(x) < ZERO_SNAP * max(1.0, abs(scale)):
        return 0.0
    return float(f'{x:.{digits}g}') + 0.0


def format_real(x: float, scale: float = 1.0, digits: int = 12) -> str:
    return f'{snap(x, scale, digits):.{digits}g}'


def _plain(value: Any, scale: float, digits: int) -> Any:
    if isinstance(value, UnitVector):
        value = value.data
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return snap(value, scale, digits)
    if isinstance(value, (complex, np.complexfloating)):
        return [snap(value.real, scale, digits), snap(value.imag, scale, digits)]
    if isinstance(value, dict):
        return {k: _plain(v, scale, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v, scale, digits) for v in value]
    return value


def to_record(result: Any, scale: float = 1.0, digits: int = 12) -> Dict[str, Any]:
    if hasattr(result, 'to_dict'):
        data = result.to_dict()
    elif is_dataclass(result):
        data = {k: getattr(result, k) for k in asdict(result)}
    else:
        data = dict(result)
    return _plain(data, scale, digits)


def _text_value(value: Any, digits: int) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return f'{value:.{digits}g}'
    if isinstance(value, list):
        return '[' + ', '.join(_text_value(v, digits) for v in value) + ']'
    if value is None:
        return '-'
    return str(value)


def render(record: Dict[str, Any], fmt: str = 'text', digits: int = 12) -> str:
    if fmt == 'json':
        return json.dumps(record, indent=2)
    if fmt == 'csv':
        keys = list(record)
        return ','.join(keys) + '\n' + ','.join(_text_value(record[k], digits) for k in keys)
    if fmt == 'text':
        width = max(len(k) for k in record) if record else 0
        return '\n'.join(f'{k.ljust(width)}  {_text_value(v, digits)}' for k, v in record.items())
    raise ParameterError(f'format must be one of {OUTPUT_FORMATS}, got {fmt!r}')


def boundary_rows(points: List[complex], scale: float, digits: int = 12) -> List[List[float]]:
    return [[snap(p.real, scale, digits), snap(p.imag, scale, digits)] for p in points]


def emit_boundary(T: CMatrix, count: int, fmt: str = 'csv', numerical_range: NumericalRange = None,
                  digits: int = 12) -> str:
    if numerical_range is None:
        numerical_range = NumericalRange(SolverConfig())
    points = numerical_range.boundary_points(T, count)
    scale = numerical_range.norm(T) if not T.is_zero() else 1.0
    rows = boundary_rows(points, scale, digits)
    if fmt == 'json':
        return json.dumps(rows)
    if fmt in ('csv', 'text'):
        return '\n'.join(['re,im'] + [f'{re_:.{digits}g},{im_:.{digits}g}' for re_, im_ in rows])
    raise ParameterError(f'format must be one of {OUTPUT_FORMATS}, got {fmt!r}')
