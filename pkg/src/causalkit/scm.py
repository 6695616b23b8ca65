"""Discrete structural causal models with exact inference.

An :class:`Scm` attaches one conditional probability table per node of a
:class:`~causalkit.graph.Dag`, over finite categorical domains.  The
engine is deliberately exact and dense: :meth:`Scm.joint` enumerates the
full joint distribution (product of CPT entries), and everything else --
marginals, conditionals, interventional distributions -- is arithmetic on
that table.  A guard rejects models whose state space exceeds
``2**22`` cells; this is a desk-scale verification tool, not an
approximate-inference engine.

Interventions follow the graph-surgery semantics: ``do(X=a)`` removes all
edges into X and replaces its CPT by a point mass on ``a``
(:meth:`Scm.intervene`).  :meth:`Scm.causal_effect_oracle` computes the
resulting outcome marginal exactly; it is the ground truth against which
the estimators in :mod:`causalkit.identify` are verified.

Canonical orders, shared with the file formats:

* CPT parents are sorted lexicographically.
* CPT rows and joint cells run in mixed-radix order over state indices
  with the *last* variable varying fastest (C order, as produced by
  ``itertools.product``).
* Joint scope is the DAG's topological order, ties broken
  lexicographically.

All values are immutable after construction; operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    InvalidQueryError,
    ModelError,
    StateSpaceError,
    UnknownNodeError,
    UnknownStateError,
    ZeroEvidenceError,
)
from .graph import Dag, _check_name
from .table import DataTable

ROW_SUM_TOLERANCE = 1e-9
MASS_TOLERANCE = 1e-9
MAX_JOINT_CELLS = 2**22

#: PRNG used by :meth:`Scm.sample`; determinism is per (algorithm, seed).
SAMPLER_ALGORITHM = "numpy-pcg64"

Assignment = Mapping[str, str]


@dataclass(frozen=True)
class VariableSpec:
    """A named categorical variable with its canonical state order."""

    name: str
    states: tuple[str, ...]

    def __post_init__(self) -> None:
        _check_name(self.name)
        object.__setattr__(self, "states", tuple(self.states))
        if len(self.states) < 2:
            raise ModelError(f"variable {self.name!r} needs at least 2 states")
        if len(set(self.states)) != len(self.states):
            raise ModelError(f"variable {self.name!r} has duplicate states")
        for s in self.states:
            if not isinstance(s, str) or not s:
                raise ModelError(
                    f"variable {self.name!r}: state labels must be nonempty strings"
                )

    def index(self, label: str) -> int:
        """Canonical index of ``label``; raises UnknownStateError."""
        try:
            return self.states.index(label)
        except ValueError:
            raise UnknownStateError(self.name, label, self.states) from None


@dataclass(frozen=True)
class Cpt:
    """Conditional probability table of one child given its parents.

    ``rows[r][s]`` is P(child = states[s] | parents in configuration r),
    where r runs over parent configurations in canonical mixed-radix order
    (last parent fastest).  A parentless node has exactly one row.
    """

    child: str
    parents: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(
            self, "rows", tuple(tuple(float(p) for p in row) for row in self.rows)
        )
        if len(set(self.parents)) != len(self.parents):
            raise ModelError(f"cpt for {self.child!r} lists a parent twice")
        if not self.rows:
            raise ModelError(f"cpt for {self.child!r} has no rows")
        width = len(self.rows[0])
        for r, row in enumerate(self.rows):
            if len(row) != width:
                raise ModelError(f"cpt for {self.child!r}: row {r} has ragged width")
            if any(p < 0.0 for p in row):
                raise ModelError(f"cpt for {self.child!r}: negative entry in row {r}")
            if abs(sum(row) - 1.0) > ROW_SUM_TOLERANCE:
                raise ModelError(
                    f"cpt for {self.child!r}: row {r} sums to {sum(row)!r}, not 1"
                )

    @staticmethod
    def point_mass(child: str, states: tuple[str, ...], value: str) -> "Cpt":
        """Parentless table putting all mass on ``value``."""
        idx = states.index(value)
        row = tuple(1.0 if i == idx else 0.0 for i in range(len(states)))
        return Cpt(child=child, parents=(), rows=(row,))


def _mixed_radix_strides(sizes: Iterable[int]) -> tuple[int, ...]:
    """C-order strides: last position varies fastest."""
    sizes = tuple(sizes)
    strides = [1] * len(sizes)
    for i in range(len(sizes) - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]
    return tuple(strides)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Exact probability mass over full assignments of a variable scope.

    ``mass`` is dense, one cell per assignment, in canonical mixed-radix
    order over the scope's state indices (last scope variable fastest).
    """

    scope: tuple[VariableSpec, ...]
    mass: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "scope", tuple(self.scope))
        names = [v.name for v in self.scope]
        if len(set(names)) != len(names):
            raise ModelError(f"joint scope repeats a variable: {names}")
        mass = np.asarray(self.mass, dtype=float).ravel()
        cells = math.prod(self.shape) if self.scope else 1
        if mass.size != cells:
            raise ModelError(
                f"joint mass has {mass.size} cells, scope implies {cells}"
            )
        if np.any(mass < 0.0):
            raise ModelError("joint mass has a negative cell")
        total = float(mass.sum())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ModelError(f"joint mass sums to {total!r}, not 1")
        mass.setflags(write=False)
        object.__setattr__(self, "mass", mass)

    # -- structure ------------------------------------------------------

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.scope)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(v.states) for v in self.scope)

    @property
    def grid(self) -> np.ndarray:
        """Read-only view of ``mass`` reshaped to one axis per variable."""
        return self.mass.reshape(self.shape)

    def variable(self, name: str) -> VariableSpec:
        for v in self.scope:
            if v.name == name:
                return v
        raise UnknownNodeError(name)

    def axis(self, name: str) -> int:
        """Scope position of ``name``; raises UnknownNodeError."""
        for i, v in enumerate(self.scope):
            if v.name == name:
                return i
        raise UnknownNodeError(name)

    # -- queries ----------------------------------------------------------

    def prob(self, assignment: Assignment) -> float:
        """Mass of one full assignment over the scope."""
        missing = [v.name for v in self.scope if v.name not in assignment]
        if missing:
            raise ModelError(f"assignment misses scope variables: {missing}")
        extra = [k for k in assignment if k not in self.names]
        if extra:
            raise UnknownNodeError(extra[0])
        idx = tuple(v.index(assignment[v.name]) for v in self.scope)
        return float(self.grid[idx])

    def marginal(self, keep: Iterable[str]) -> "JointDistribution":
        """Sum out everything but ``keep``; scope order is preserved."""
        keep_set = set(keep)
        if not keep_set:
            raise ModelError("marginal needs at least one variable to keep")
        for name in keep_set:
            self.axis(name)
        drop = tuple(i for i, v in enumerate(self.scope) if v.name not in keep_set)
        kept = tuple(v for v in self.scope if v.name in keep_set)
        return JointDistribution(scope=kept, mass=self.grid.sum(axis=drop))

    def condition(self, evidence: Assignment) -> "JointDistribution":
        """Renormalized restriction to ``evidence``; evidence leaves the scope.

        Raises :class:`ZeroEvidenceError` when the evidence event has
        probability zero (a positivity violation for the caller to handle).
        """
        if not evidence:
            return self
        index: list[object] = [slice(None)] * len(self.scope)
        for name, label in evidence.items():
            axis = self.axis(name)
            index[axis] = self.scope[axis].index(label)
        remaining = tuple(v for v in self.scope if v.name not in evidence)
        sub = self.grid[tuple(index)]
        total = float(sub.sum())
        if total <= 0.0:
            event = ", ".join(f"{k}={v}" for k, v in evidence.items())
            raise ZeroEvidenceError(f"conditioning event has probability 0: {event}")
        return JointDistribution(scope=remaining, mass=np.asarray(sub) / total)

    def __repr__(self) -> str:
        return f"JointDistribution(scope={self.names!r}, cells={self.mass.size})"


class Scm:
    """A DAG plus one CPT per node over finite categorical domains."""

    def __init__(
        self,
        dag: Dag,
        variables: Iterable[VariableSpec],
        cpts: Iterable[Cpt],
    ):
        self._dag = dag
        self._variables: dict[str, VariableSpec] = {}
        for spec in variables:
            if spec.name in self._variables:
                raise ModelError(f"variable {spec.name!r} declared twice")
            if spec.name not in dag:
                raise ModelError(f"variable {spec.name!r} is not a node of the graph")
            self._variables[spec.name] = spec
        missing = [n for n in dag.nodes if n not in self._variables]
        if missing:
            raise ModelError(f"nodes without a variable spec: {missing}")

        self._cpts: dict[str, Cpt] = {}
        for cpt in cpts:
            if cpt.child not in self._variables:
                raise ModelError(f"cpt for unknown variable {cpt.child!r}")
            if cpt.child in self._cpts:
                raise ModelError(f"duplicate cpt for {cpt.child!r}")
            self._validate_cpt(cpt)
            self._cpts[cpt.child] = cpt
        missing = [n for n in dag.nodes if n not in self._cpts]
        if missing:
            raise ModelError(f"nodes without a cpt: {missing}")

        # Dense per-node arrays, shaped (*parent sizes, child size); shared
        # by joint() and sample().  Precomputed once: Scm is immutable.
        self._arrays: dict[str, np.ndarray] = {}
        for name, cpt in self._cpts.items():
            shape = tuple(len(self._variables[p].states) for p in cpt.parents)
            shape += (len(self._variables[name].states),)
            arr = np.asarray(cpt.rows, dtype=float).reshape(shape)
            arr.setflags(write=False)
            self._arrays[name] = arr

    def _validate_cpt(self, cpt: Cpt) -> None:
        canonical = tuple(sorted(self._dag.parents(cpt.child)))
        if cpt.parents != canonical:
            raise ModelError(
                f"cpt for {cpt.child!r} lists parents {list(cpt.parents)}, "
                f"expected canonical order {list(canonical)}"
            )
        child_size = len(self._variables[cpt.child].states)
        expected_rows = math.prod(
            len(self._variables[p].states) for p in cpt.parents
        )
        if len(cpt.rows) != expected_rows:
            raise ModelError(
                f"cpt for {cpt.child!r} has {len(cpt.rows)} rows, "
                f"expected {expected_rows}"
            )
        if len(cpt.rows[0]) != child_size:
            raise ModelError(
                f"cpt for {cpt.child!r} rows have {len(cpt.rows[0])} entries, "
                f"expected {child_size}"
            )

    # -- accessors --------------------------------------------------------

    @property
    def dag(self) -> Dag:
        return self._dag

    @property
    def variables(self) -> Mapping[str, VariableSpec]:
        return MappingProxyType(self._variables)

    @property
    def cpts(self) -> Mapping[str, Cpt]:
        return MappingProxyType(self._cpts)

    def variable(self, name: str) -> VariableSpec:
        if name not in self._variables:
            raise UnknownNodeError(name)
        return self._variables[name]

    @property
    def scope_order(self) -> tuple[str, ...]:
        """Topological order (lexicographic tie-break); the joint's scope."""
        return self._dag.topological_order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scm):
            return NotImplemented
        return (
            self._dag == other._dag
            and self._variables == other._variables
            and self._cpts == other._cpts
        )

    def __repr__(self) -> str:
        return f"Scm(nodes={list(self._dag.nodes)!r})"

    # -- exact inference ----------------------------------------------------

    def joint(self) -> JointDistribution:
        """Exact joint: each cell is the product of its CPT entries.

        Scope is the topological order.  Raises :class:`StateSpaceError`
        above ``2**22`` cells.
        """
        order = self.scope_order
        scope = tuple(self._variables[n] for n in order)
        shape = tuple(len(v.states) for v in scope)
        cells = math.prod(shape) if shape else 1
        if cells > MAX_JOINT_CELLS:
            raise StateSpaceError(
                f"joint state space has {cells} cells, guard is {MAX_JOINT_CELLS}"
            )
        axis = {name: i for i, name in enumerate(order)}
        total = np.ones(shape, dtype=float)
        for name, cpt in self._cpts.items():
            arr = self._arrays[name]
            target_axes = [axis[p] for p in cpt.parents] + [axis[name]]
            axis_order = np.argsort(target_axes)
            arranged = np.transpose(arr, axes=axis_order)
            broadcast_shape = [1] * len(shape)
            for ax, size in zip(sorted(target_axes), arranged.shape):
                broadcast_shape[ax] = size
            total = total * arranged.reshape(broadcast_shape)
        return JointDistribution(scope=scope, mass=total)

    # -- interventions -------------------------------------------------------

    def intervene(self, target: str, value: str) -> "Scm":
        """Graph surgery for do(target=value): drop edges into the target and
        replace its CPT with a point mass; all other CPTs are unchanged."""
        spec = self.variable(target)
        spec.index(value)  # validates the state label
        new_dag = Dag(
            nodes=self._dag.nodes,
            edges=[(t, h) for t, h in self._dag.edges if h != target],
        )
        new_cpts = [
            Cpt.point_mass(target, spec.states, value) if name == target else cpt
            for name, cpt in self._cpts.items()
        ]
        return Scm(new_dag, self._variables.values(), new_cpts)

    def causal_effect_oracle(
        self, target: str, value: str, outcome: str
    ) -> np.ndarray:
        """P(outcome | do(target=value)) by exact enumeration of the
        mutilated model; the ground truth for every estimator."""
        if target == outcome:
            raise InvalidQueryError("treatment and outcome must differ")
        self.variable(outcome)
        mutilated = self.intervene(target, value)
        return mutilated.joint().marginal([outcome]).mass

    # -- sampling --------------------------------------------------------------

    def sample(self, n: int, seed: int) -> DataTable:
        """Draw ``n`` rows by ancestral sampling (topological order).

        Each variable is drawn by inverse CDF over its canonical state
        order using a ``numpy-pcg64`` stream (one uniform per row and
        variable, drawn variable by variable).  Identical (model, n, seed)
        yields an identical table bit for bit.
        """
        if n < 0:
            raise ModelError(f"sample size must be >= 0, got {n}")
        order = self.scope_order
        rng = np.random.default_rng(seed)
        columns: dict[str, np.ndarray] = {}
        for name in order:
            cpt = self._cpts[name]
            k = len(self._variables[name].states)
            flat = np.asarray(cpt.rows, dtype=float)
            cdf = np.cumsum(flat, axis=1)
            if cpt.parents:
                sizes = [len(self._variables[p].states) for p in cpt.parents]
                strides = _mixed_radix_strides(sizes)
                row_idx = np.zeros(n, dtype=np.int64)
                for parent, stride in zip(cpt.parents, strides):
                    row_idx += columns[parent] * stride
            else:
                row_idx = np.zeros(n, dtype=np.int64)
            u = rng.random(n)
            drawn = (cdf[row_idx] <= u[:, None]).sum(axis=1)
            columns[name] = np.minimum(drawn, k - 1)

        label_columns = []
        for name in order:
            states = np.asarray(self._variables[name].states, dtype=object)
            label_columns.append(states[columns[name]].tolist())
        rows = tuple(zip(*label_columns)) if label_columns else ()
        return DataTable(header=order, rows=rows)
