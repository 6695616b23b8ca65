"""Observational data: minimal CSV ingestion and empirical estimation.

The CSV dialect is deliberately tiny: comma-separated, UTF-8, no quoting
or escaping, first record is the header.  State labels therefore must not
contain commas; that is checked whenever a schema touches the CSV
boundary.  Missing values are rejected, not imputed.

:func:`empirical_joint` turns a table into an exact
:class:`~causalkit.scm.JointDistribution` of cell frequencies, optionally
Laplace-smoothed over the full joint (``alpha`` pseudo-counts per cell; a
bias-variance knob, default 0).  :func:`estimate_effect_from_data` is the
composition with the back-door adjustment estimator -- the whole
"effects from observational data" path in one call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Sequence, Union

import numpy as np

from .errors import DataError, DataFormatError, ModelError
from .identify import EffectQuery, adjustment_estimate
from .scm import JointDistribution, VariableSpec
from .table import DataTable

CsvSource = Union[str, bytes, IO[str], IO[bytes]]


@dataclass(frozen=True)
class Smoothing:
    """Additive pseudo-count per joint cell; ``alpha = 0`` is raw frequency."""

    alpha: float = 0.0

    def __post_init__(self) -> None:
        if self.alpha < 0.0:
            raise DataError(f"smoothing alpha must be >= 0, got {self.alpha}")


def _check_schema(schema: Sequence[VariableSpec]) -> tuple[VariableSpec, ...]:
    schema = tuple(schema)
    if not schema:
        raise ModelError("schema must declare at least one variable")
    names = [v.name for v in schema]
    if len(set(names)) != len(names):
        raise ModelError(f"schema declares a variable twice: {names}")
    for spec in schema:
        for label in spec.states:
            if "," in label:
                raise DataError(
                    f"variable {spec.name!r}: state label {label!r} contains a "
                    f"comma and cannot cross the CSV boundary"
                )
    return schema


def _decode(source: CsvSource) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def read_csv(source: CsvSource, schema: Sequence[VariableSpec]) -> DataTable:
    """Parse CSV text/bytes and bind it to ``schema``.

    The header may order columns freely but must name exactly the schema
    variables; the result is reordered to schema order.  Every value must
    be a declared state of its column (:class:`DataError` reports row
    index and column).  Structural problems (ragged rows, missing,
    unknown or duplicate columns) raise :class:`DataFormatError`.
    """
    schema = _check_schema(schema)
    lines = _decode(source).splitlines()
    if not lines or not lines[0]:
        raise DataFormatError("empty input: missing CSV header")

    header = lines[0].split(",")
    wanted = {v.name for v in schema}
    if len(set(header)) != len(header):
        raise DataFormatError(f"duplicate column in header: {header}")
    unknown = [c for c in header if c not in wanted]
    if unknown:
        raise DataFormatError(f"unknown column {unknown[0]!r} (not in schema)")
    missing = [v.name for v in schema if v.name not in header]
    if missing:
        raise DataFormatError(f"missing column {missing[0]!r}")

    order = [header.index(v.name) for v in schema]
    states = {v.name: set(v.states) for v in schema}
    rows: list[tuple[str, ...]] = []
    for i, line in enumerate(lines[1:]):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != len(header):
            raise DataFormatError(
                f"row {len(rows)}: expected {len(header)} fields, got {len(fields)}"
            )
        row = tuple(fields[j] for j in order)
        for spec, value in zip(schema, row):
            if value not in states[spec.name]:
                raise DataError(
                    f"row {len(rows)}, column {spec.name!r}: undeclared state "
                    f"{value!r}",
                    row=len(rows),
                    column=spec.name,
                )
        rows.append(row)
    return DataTable(header=tuple(v.name for v in schema), rows=tuple(rows))


def table_to_csv(table: DataTable) -> str:
    """Render a table in the same minimal dialect (trailing newline)."""
    for field in table.header:
        if "," in field:
            raise DataError(f"column name {field!r} contains a comma")
    out = [",".join(table.header)]
    for i, row in enumerate(table.rows):
        for value in row:
            if "," in value or "\n" in value or "\r" in value:
                raise DataError(
                    f"row {i}: value {value!r} cannot be written unquoted",
                    row=i,
                )
        out.append(",".join(row))
    return "\n".join(out) + "\n"


def empirical_joint(
    table: DataTable,
    schema: Sequence[VariableSpec],
    smoothing: Smoothing = Smoothing(0.0),
) -> JointDistribution:
    """Cell frequencies of ``table`` as an exact joint distribution.

    ``mass(cell) = (count(cell) + alpha) / (rows + alpha * cells)`` with
    scope in schema order.  An empty table needs ``alpha > 0``.
    """
    schema = _check_schema(schema)
    names = tuple(v.name for v in schema)
    if set(table.header) != set(names):
        missing = [n for n in names if n not in table.header]
        extra = [c for c in table.header if c not in names]
        if missing:
            raise DataFormatError(f"missing column {missing[0]!r}")
        raise DataFormatError(f"unknown column {extra[0]!r} (not in schema)")
    bound = table.select(names)

    sizes = tuple(len(v.states) for v in schema)
    cells = math.prod(sizes)
    denominator = bound.row_count + smoothing.alpha * cells
    if denominator <= 0:
        raise DataError("cannot estimate from an empty table with alpha = 0")

    index = [{s: i for i, s in enumerate(v.states)} for v in schema]
    for i, row in enumerate(bound.rows):
        for col, spec in enumerate(schema):
            if row[col] not in index[col]:
                raise DataError(
                    f"row {i}, column {spec.name!r}: undeclared state "
                    f"{row[col]!r}",
                    row=i,
                    column=spec.name,
                )

    flat = np.zeros(bound.row_count, dtype=np.int64)
    stride = 1
    for col in range(len(schema) - 1, -1, -1):
        lookup = index[col]
        codes = np.fromiter(
            (lookup[row[col]] for row in bound.rows),
            dtype=np.int64,
            count=bound.row_count,
        )
        flat += codes * stride
        stride *= sizes[col]

    counts = np.bincount(flat, minlength=cells).astype(float)
    mass = (counts + smoothing.alpha) / denominator
    return JointDistribution(scope=schema, mass=mass)


def estimate_effect_from_data(
    table: DataTable,
    schema: Sequence[VariableSpec],
    query: EffectQuery,
    smoothing: Smoothing = Smoothing(0.0),
) -> np.ndarray:
    """Back-door adjustment evaluated on the empirical joint of ``table``.

    Pure composition: ``adjustment_estimate(empirical_joint(...), query)``.
    Positivity errors propagate; raising ``alpha`` or collecting more data
    are the usual remedies.
    """
    return adjustment_estimate(empirical_joint(table, schema, smoothing), query)
