"""Exception hierarchy.

Two roots, mirroring the CLI exit-code contract:

* :class:`CausalError` -- semantic/domain failures (cycles, unknown nodes,
  invalid probability tables, positivity violations).  Exit code 1.
* :class:`InputFormatError` -- the input bytes cannot be read as their
  format at all (edge-list syntax, JSON shape, CSV structure).  Exit code 2.
"""

from __future__ import annotations


class CausalError(Exception):
    """Domain error: the inputs are readable but semantically invalid."""


class InputFormatError(Exception):
    """Format error: the input text/bytes do not parse."""


# --- graphs ---------------------------------------------------------------

class GraphError(CausalError):
    """Structural violation in a DAG (self-loop, duplicate edge, bad name)."""


class CycleError(GraphError):
    """The edge relation is cyclic.  ``cycle`` holds a witness node sequence."""

    def __init__(self, cycle: tuple[str, ...]):
        self.cycle = cycle
        super().__init__("cycle detected: " + " -> ".join(cycle))


class UnknownNodeError(GraphError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown node: {name!r}")


class PathLimitError(GraphError):
    """Path enumeration refused: the graph exceeds the node-count guard."""


class GraphSyntaxError(InputFormatError):
    """Malformed line in an edge-list file.  ``line_no`` is 1-based."""

    def __init__(self, message: str, line_no: int):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


# --- models ---------------------------------------------------------------

class ModelError(CausalError):
    """Invalid SCM definition (bad CPT shape, row sums, variable mismatch)."""


class StateSpaceError(ModelError):
    """The full joint state space exceeds the dense-representation guard."""


class UnknownStateError(CausalError):
    """A state label is not among the variable's declared states."""

    def __init__(self, variable: str, label: str, states: tuple[str, ...]):
        self.variable = variable
        self.label = label
        super().__init__(
            f"unknown state {label!r} for variable {variable!r} "
            f"(declared states: {', '.join(states)})"
        )


class ZeroEvidenceError(CausalError):
    """Conditioning event has probability zero (a positivity violation)."""


class ModelFormatError(InputFormatError):
    """Model/schema JSON is not decodable or has the wrong shape."""


# --- identification -------------------------------------------------------

class InvalidQueryError(CausalError):
    """Effect query violates its own invariants (e.g. treatment == outcome)."""


class NoAdmissibleSetError(CausalError):
    """No adjustment set satisfies the back-door criterion for the query."""


class PositivityError(CausalError):
    """Adjustment formula undefined: Pr(X=a, C=c) = 0 on a positive stratum.

    ``stratum`` is the offending assignment rendered as ``"B=0, Z=1"``
    (empty string for the unconditional case Pr(X=a) = 0).
    """

    def __init__(self, message: str, stratum: str = ""):
        self.stratum = stratum
        super().__init__(message)


# --- data -----------------------------------------------------------------

class DataError(CausalError):
    """Invalid observation data (undeclared state label, empty table)."""

    def __init__(self, message: str, row: int | None = None, column: str | None = None):
        self.row = row
        self.column = column
        super().__init__(message)


class DataFormatError(InputFormatError):
    """CSV structure is broken (ragged row, missing/unknown/duplicate column)."""
