"""Model files: JSON serialization of SCMs and variable schemas.

A model file is a JSON object with three fields:

* ``variables`` -- list of ``{"name": ..., "states": [...]}``, in node
  declaration order; state order is canonical for CPT rows.
* ``edges`` -- list of ``[tail, head]`` pairs.
* ``cpts`` -- list of ``{"child": ..., "parents": [...], "rows": [[...]]}``
  with parents in canonical (lexicographic) order and rows in canonical
  mixed-radix order over parent state indices (last parent fastest).

A schema file is the same format restricted to ``variables``.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ModelFormatError
from .graph import Dag
from .scm import Cpt, Scm, VariableSpec


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise ModelFormatError(message)


def _parse_variables(doc: Any) -> list[VariableSpec]:
    _expect(isinstance(doc, dict), "model document must be a JSON object")
    _expect("variables" in doc, "model document lacks a 'variables' field")
    raw = doc["variables"]
    _expect(isinstance(raw, list) and raw, "'variables' must be a nonempty list")
    specs = []
    for entry in raw:
        _expect(
            isinstance(entry, dict) and "name" in entry and "states" in entry,
            "each variable needs 'name' and 'states'",
        )
        name, states = entry["name"], entry["states"]
        _expect(isinstance(name, str), "variable 'name' must be a string")
        _expect(
            isinstance(states, list) and all(isinstance(s, str) for s in states),
            f"variable {name!r}: 'states' must be a list of strings",
        )
        specs.append(VariableSpec(name=name, states=tuple(states)))
    return specs


def schema_from_json(text: str) -> list[VariableSpec]:
    """Read just the ``variables`` section (works on full model files too)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    return _parse_variables(doc)


def model_from_json(text: str) -> Scm:
    """Parse and validate a model file.

    Shape problems (bad JSON, wrong types) raise
    :class:`~causalkit.errors.ModelFormatError`; semantic problems (row
    counts, row sums, non-canonical parent order, cycles) raise the
    domain errors from :mod:`causalkit.scm` and :mod:`causalkit.graph`,
    which name the offending child or edge.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not valid JSON: {exc}") from exc
    specs = _parse_variables(doc)
    _expect("edges" in doc, "model document lacks an 'edges' field")
    _expect("cpts" in doc, "model document lacks a 'cpts' field")

    raw_edges = doc["edges"]
    _expect(isinstance(raw_edges, list), "'edges' must be a list")
    edges = []
    for entry in raw_edges:
        _expect(
            isinstance(entry, (list, tuple))
            and len(entry) == 2
            and all(isinstance(e, str) for e in entry),
            f"each edge must be a [tail, head] pair of strings, got {entry!r}",
        )
        edges.append((entry[0], entry[1]))

    raw_cpts = doc["cpts"]
    _expect(isinstance(raw_cpts, list), "'cpts' must be a list")
    cpts = []
    for entry in raw_cpts:
        _expect(
            isinstance(entry, dict)
            and "child" in entry
            and "parents" in entry
            and "rows" in entry,
            "each cpt needs 'child', 'parents' and 'rows'",
        )
        child, parents, rows = entry["child"], entry["parents"], entry["rows"]
        _expect(isinstance(child, str), "cpt 'child' must be a string")
        _expect(
            isinstance(parents, list) and all(isinstance(p, str) for p in parents),
            f"cpt for {child!r}: 'parents' must be a list of strings",
        )
        _expect(
            isinstance(rows, list)
            and all(
                isinstance(row, list)
                and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in row)
                for row in rows
            ),
            f"cpt for {child!r}: 'rows' must be a list of numeric lists",
        )
        cpts.append(
            Cpt(
                child=child,
                parents=tuple(parents),
                rows=tuple(tuple(float(p) for p in row) for row in rows),
            )
        )

    dag = Dag(nodes=[s.name for s in specs], edges=edges)
    return Scm(dag=dag, variables=specs, cpts=cpts)


def model_to_json(model: Scm) -> str:
    """Serialize a model deterministically (stable field and row order)."""
    doc = {
        "variables": [
            {"name": name, "states": list(spec.states)}
            for name, spec in ((n, model.variables[n]) for n in model.dag.nodes)
        ],
        "edges": [list(edge) for edge in model.dag.edges],
        "cpts": [
            {
                "child": name,
                "parents": list(model.cpts[name].parents),
                "rows": [list(row) for row in model.cpts[name].rows],
            }
            for name in model.dag.nodes
        ],
    }
    return json.dumps(doc, indent=2) + "\n"
