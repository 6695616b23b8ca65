"""Immutable table of categorical observations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DataFormatError


@dataclass(frozen=True)
class DataTable:
    """Rows of state labels with a header binding columns to variables.

    Purely structural: schema validation (are the labels declared states?)
    happens when the table is bound to a schema, e.g. in
    :func:`causalkit.data.empirical_joint`.
    """

    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        if len(set(self.header)) != len(self.header):
            raise DataFormatError(f"duplicate column in header: {self.header}")
        width = len(self.header)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise DataFormatError(
                    f"row {i} has {len(row)} fields, expected {width}"
                )

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> tuple[str, ...]:
        try:
            idx = self.header.index(name)
        except ValueError:
            raise DataFormatError(f"no such column: {name!r}") from None
        return tuple(row[idx] for row in self.rows)

    def select(self, names: Iterable[str]) -> "DataTable":
        """Project onto ``names`` in the given order."""
        names = tuple(names)
        idx = []
        for name in names:
            if name not in self.header:
                raise DataFormatError(f"no such column: {name!r}")
            idx.append(self.header.index(name))
        return DataTable(
            header=names,
            rows=tuple(tuple(row[i] for i in idx) for row in self.rows),
        )
