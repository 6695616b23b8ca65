"""The documented CLI invocations (README examples) in one place.

Acceptance criterion: every one of these must produce byte-identical
output across repeated runs.
"""

from __future__ import annotations

from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

COMMON_CAUSE_DAG = str(FIXTURES / "common_cause.dag")
CONFOUNDED_DAG = str(FIXTURES / "confounded.dag")
M_STRUCTURE_DAG = str(FIXTURES / "m_structure.dag")
COMMON_CAUSE = str(FIXTURES / "common_cause.json")
CONFOUNDED = str(FIXTURES / "confounded.json")
M_STRUCTURE = str(FIXTURES / "m_structure.json")

DOCUMENTED_INVOCATIONS: list[list[str]] = [
    ["dsep", "--graph", M_STRUCTURE_DAG, "--x", "X", "--y", "Y", "--given", "B"],
    ["dsep", "--graph", M_STRUCTURE_DAG, "--x", "X", "--y", "Y"],
    ["dsep", "--graph", COMMON_CAUSE_DAG, "--x", "X", "--y", "Y", "--given", "Z"],
    ["backdoor", "--graph", M_STRUCTURE_DAG, "--x", "X", "--y", "Y"],
    ["backdoor", "--graph", M_STRUCTURE_DAG, "--x", "X", "--y", "Y", "--minimal-only"],
    ["backdoor", "--graph", CONFOUNDED_DAG, "--x", "X", "--y", "Y"],
    ["backdoor", "--graph", M_STRUCTURE_DAG, "--x", "X", "--y", "Y", "--format", "json"],
    ["effect", "--model", COMMON_CAUSE, "--do", "X=1", "--target", "Y", "--adjust", "Z"],
    ["effect", "--model", COMMON_CAUSE, "--do", "X=1", "--target", "Y"],
    ["effect", "--model", CONFOUNDED, "--do", "X=1", "--target", "Y", "--auto"],
    ["effect", "--model", M_STRUCTURE, "--do", "X=1", "--target", "Y", "--adjust", "B"],
    ["effect", "--model", M_STRUCTURE, "--do", "X=1", "--target", "Y", "--adjust", "B",
     "--format", "json"],
    ["check", "--model", M_STRUCTURE, "--x", "X", "--y", "Y", "--adjust", "B",
     "--value", "1"],
    ["check", "--model", M_STRUCTURE, "--x", "X", "--y", "Y", "--adjust", "B"],
    ["check", "--model", COMMON_CAUSE, "--x", "X", "--y", "Y", "--adjust", "Z",
     "--format", "json", "--value", "1"],
    ["simulate", "--model", CONFOUNDED, "-n", "20", "--seed", "7"],
    ["simulate", "--model", COMMON_CAUSE, "-n", "5", "--seed", "42"],
    ["export-dot", "--graph", M_STRUCTURE_DAG],
    ["export-dot", "--model", CONFOUNDED],
]
