"""JSON and CSV serialization of matrices, Green tables and reports.

Every rational is rendered as ``num/den`` so output is byte-deterministic.
"""
from __future__ import annotations

import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from models.params import Params
from models.report import Report
from models.tables import BoundedValue, GreenTable, RationalMatrix
from services.laplacian import SpectrumResult
from utils.rationals import render_rational

logger = logging.getLogger(__name__)


def matrix_labels(matrix: RationalMatrix, q: int) -> List[str]:
    """Coset strings for coset-indexed matrices, valuation indices otherwise."""
    if matrix.order is None:
        return [str(i) for i in range(matrix.dim)]
    return [c.to_string(q) for c in matrix.order]


def rendered_entries(matrix: RationalMatrix) -> List[List[str]]:
    return [[render_rational(x) for x in row] for row in matrix.entries]


def matrix_to_dict(matrix: RationalMatrix, params: Params) -> Dict[str, Any]:
    """{"params", "order", "entries"} dump of a matrix."""
    return {
        'params': params.to_dict(),
        'order': matrix_labels(matrix, params.q),
        'entries': rendered_entries(matrix),
    }


def green_to_dict(table: GreenTable) -> Dict[str, Any]:
    """Matrix dump plus the normalization tag (and anchor when anchored)."""
    payload = matrix_to_dict(table.matrix, table.params)
    payload['normalization'] = table.normalization.value
    if table.anchor is not None:
        payload['anchor'] = list(table.anchor)
    return payload


def bvalue_to_dict(value: BoundedValue) -> Dict[str, Any]:
    """Enclosure of B(x, y) as {"center": "num/den", "radius": "num/den"}."""
    return value.to_dict()


def spectrum_to_dict(result: SpectrumResult, params: Params) -> Dict[str, Any]:
    payload = result.to_dict()
    payload['params'] = params.to_dict()
    return payload


def matrix_to_csv(matrix: RationalMatrix, params: Params) -> str:
    """Wide CSV: header row of labels, one row per label."""
    labels = matrix_labels(matrix, params.q)
    frame = pd.DataFrame(rendered_entries(matrix), index=labels, columns=labels)
    frame.index.name = 'coset' if matrix.order is not None else 'valuation'
    buffer = io.StringIO()
    frame.to_csv(buffer, lineterminator='\n')
    return buffer.getvalue()


def green_to_csv(table: GreenTable) -> str:
    """Long CSV with columns row, col, value."""
    labels = matrix_labels(table.matrix, table.params.q)
    records = [
        {'row': labels[a], 'col': labels[b], 'value': render_rational(table.matrix[a, b])}
        for a in range(table.matrix.dim)
        for b in range(table.matrix.dim)
    ]
    buffer = io.StringIO()
    pd.DataFrame.from_records(records, columns=['row', 'col', 'value']).to_csv(
        buffer, index=False, lineterminator='\n'
    )
    return buffer.getvalue()


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_output(text: str, out: Optional[Path] = None) -> None:
    """Write to ``out`` or to stdout."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as f:
        f.write(text)
    logger.info(f"Wrote {len(text)} bytes to {out}")


def spectrum_to_csv(result: SpectrumResult) -> str:
    """One row per eigenvalue, ascending; the kernel dimension is JSON-only."""
    frame = pd.DataFrame({'eigenvalue': [repr(v) for v in result.eigenvalues]})
    frame.index.name = 'index'
    buffer = io.StringIO()
    frame.to_csv(buffer, lineterminator='\n')
    return buffer.getvalue()


def bvalue_to_csv(value: BoundedValue) -> str:
    buffer = io.StringIO()
    pd.DataFrame([value.to_dict()], columns=['center', 'radius']).to_csv(
        buffer, index=False, lineterminator='\n'
    )
    return buffer.getvalue()


def report_to_csv(report: Report) -> str:
    """Flat check table: name, status, params and witness as compact JSON."""
    records = [
        {
            'name': check.name,
            'status': check.status.value,
            'params': json.dumps(check.params, sort_keys=True),
            'witness': json.dumps(check.witness, sort_keys=True) if check.witness is not None else '',
        }
        for check in report.checks
    ]
    buffer = io.StringIO()
    pd.DataFrame.from_records(records, columns=['name', 'status', 'params', 'witness']).to_csv(
        buffer, index=False, lineterminator='\n'
    )
    return buffer.getvalue()
