"""Effect estimation from observational distributions.

Two estimators over a :class:`~causalkit.scm.JointDistribution`:

* :func:`adjustment_estimate` -- the back-door adjustment formula.  For
  each outcome state b it computes ``sum_c P(Y=b | X=a, C=c) P(C=c)``
  with c ranging over full configurations of the adjustment set.  When
  the adjustment set satisfies the back-door criterion this recovers the
  interventional distribution exactly.
* :func:`naive_estimate` -- the plain conditional ``P(Y=b | X=a)``, the
  correlational quantity one reads off the data without a causal model.

Zero-probability adjustment strata carry zero weight and their
conditionals are never evaluated.  A stratum with positive weight but
``P(X=a, C=c) = 0`` makes the formula undefined and raises
:class:`~causalkit.errors.PositivityError` naming the stratum; silently
skipping it would bias the estimate.

:func:`verify` packages the comparison of both estimators against the
exact interventional oracle into a :class:`VerificationReport`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import (
    InvalidQueryError,
    NoAdmissibleSetError,
    PositivityError,
)
from .graph import Dag
from .scm import JointDistribution, Scm

GAP_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EffectQuery:
    """do(treatment=treatment_value) -> outcome, with an adjustment set."""

    treatment: str
    treatment_value: str
    outcome: str
    adjustment: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "adjustment", tuple(sorted(set(self.adjustment))))
        if self.treatment == self.outcome:
            raise InvalidQueryError("treatment and outcome must differ")
        if self.treatment in self.adjustment or self.outcome in self.adjustment:
            raise InvalidQueryError(
                "adjustment set must exclude treatment and outcome"
            )

    def describe(self) -> str:
        rendered = "{" + ", ".join(self.adjustment) + "}"
        return (
            f"do({self.treatment}={self.treatment_value}) -> {self.outcome}, "
            f"adjusting for {rendered}"
        )


def _conditional_outcome(
    source: JointDistribution, given: dict[str, str], outcome: str
) -> np.ndarray:
    """P(outcome | given) as a vector over the outcome's canonical states.

    Raises :class:`PositivityError` when P(given) = 0.  Shared by the
    naive estimator and the empty-adjustment branch so that the two are
    equal not just numerically but bit for bit.
    """
    grid = source.grid
    out_axis = source.axis(outcome)
    index: list[object] = [slice(None)] * len(source.scope)
    for name, label in given.items():
        axis = source.axis(name)
        index[axis] = source.scope[axis].index(label)
    sub = grid[tuple(index)]
    # After slicing, the outcome axis shifts left by one per given axis
    # before it.
    shift = sum(1 for name in given if source.axis(name) < out_axis)
    keep = out_axis - shift
    other = tuple(i for i in range(sub.ndim) if i != keep)
    vec = sub.sum(axis=other)
    total = float(vec.sum())
    if total <= 0.0:
        event = ", ".join(f"{k}={v}" for k, v in given.items())
        raise PositivityError(f"positivity violation: Pr({event}) = 0")
    return vec / total


def naive_estimate(source: JointDistribution, query: EffectQuery) -> np.ndarray:
    """P(outcome | treatment=value): correlation, not causation.

    The query's adjustment set is ignored.  Raises
    :class:`PositivityError` when P(treatment=value) = 0.
    """
    source.variable(query.treatment).index(query.treatment_value)
    source.axis(query.outcome)
    return _conditional_outcome(
        source, {query.treatment: query.treatment_value}, query.outcome
    )


def adjustment_estimate(source: JointDistribution, query: EffectQuery) -> np.ndarray:
    """Back-door adjustment: sum_c P(Y=b | X=a, C=c) P(C=c).

    Configurations c run over the full joint states of the adjustment
    set.  Strata with P(C=c) = 0 contribute nothing (their conditionals
    are not evaluated); strata with P(C=c) > 0 but P(X=a, C=c) = 0 raise
    :class:`PositivityError` naming the stratum.
    """
    treat_spec = source.variable(query.treatment)
    a_idx = treat_spec.index(query.treatment_value)
    out_axis = source.axis(query.outcome)
    for name in query.adjustment:
        source.axis(name)

    if not query.adjustment:
        return _conditional_outcome(
            source, {query.treatment: query.treatment_value}, query.outcome
        )

    grid = source.grid
    adj_axes = tuple(source.axis(n) for n in query.adjustment)  # scope order
    treat_axis = source.axis(query.treatment)

    # P(C=c): marginalize the full grid onto the adjustment axes.
    drop = tuple(i for i in range(grid.ndim) if i not in adj_axes)
    p_c = grid.sum(axis=drop)

    # P(Y=b, C=c | slice X=a): marginalize the X=a slice onto C + Y axes,
    # then move the outcome axis last, giving T[c..., b].
    sliced = np.take(grid, a_idx, axis=treat_axis)

    def shifted(axis: int) -> int:
        return axis - 1 if axis > treat_axis else axis

    keep_axes = [shifted(ax) for ax in adj_axes] + [shifted(out_axis)]
    drop_axes = tuple(i for i in range(sliced.ndim) if i not in keep_axes)
    t = sliced.sum(axis=drop_axes)
    # Axes of t follow the scope order of C + Y; rotate Y to the end.
    y_pos = sorted(keep_axes).index(shifted(out_axis))
    t = np.moveaxis(t, y_pos, -1)

    p_xc = t.sum(axis=-1)
    positive = p_c > 0.0
    violating = positive & (p_xc == 0.0)
    if np.any(violating):
        first = np.argwhere(violating)[0]
        ordered = tuple(n for n in source.names if n in query.adjustment)
        stratum = ", ".join(
            f"{name}={source.variable(name).states[i]}"
            for name, i in zip(ordered, first)
        )
        raise PositivityError(
            f"positivity violation: Pr({query.treatment}={query.treatment_value}, "
            f"{stratum}) = 0 on a stratum with Pr({stratum}) > 0",
            stratum=stratum,
        )

    weight = np.zeros_like(p_c)
    np.divide(p_c, p_xc, out=weight, where=positive)
    estimate = (t * weight[..., None]).sum(axis=tuple(range(t.ndim - 1)))
    return estimate


@dataclass(frozen=True)
class VerificationReport:
    """Side-by-side comparison of both estimators against the oracle.

    Gaps are the max over outcome states of |estimate - oracle|.
    """

    query: EffectQuery
    criterion_holds: bool
    outcome_states: tuple[str, ...]
    oracle: tuple[float, ...]
    adjusted: tuple[float, ...]
    naive: tuple[float, ...]
    max_abs_gap_adjusted: float
    max_abs_gap_naive: float

    def __post_init__(self) -> None:
        for label, vec in (("oracle", self.oracle), ("adjusted", self.adjusted),
                           ("naive", self.naive)):
            if abs(sum(vec) - 1.0) > GAP_SUM_TOLERANCE:
                raise InvalidQueryError(f"{label} vector does not sum to 1: {vec}")

    def to_dict(self) -> dict:
        return {
            "query": {
                "treatment": self.query.treatment,
                "treatment_value": self.query.treatment_value,
                "outcome": self.query.outcome,
                "adjustment": list(self.query.adjustment),
            },
            "criterion_holds": self.criterion_holds,
            "outcome_states": list(self.outcome_states),
            "oracle": list(self.oracle),
            "adjusted": list(self.adjusted),
            "naive": list(self.naive),
            "max_abs_gap_adjusted": self.max_abs_gap_adjusted,
            "max_abs_gap_naive": self.max_abs_gap_naive,
        }


def verify(model: Scm, query: EffectQuery) -> VerificationReport:
    """Run criterion check, oracle, and both estimators for one query."""
    criterion = model.dag.backdoor_satisfies(
        query.treatment, query.outcome, query.adjustment
    )
    oracle = model.causal_effect_oracle(
        query.treatment, query.treatment_value, query.outcome
    )
    source = model.joint()
    try:
        adjusted = adjustment_estimate(source, query)
        naive = naive_estimate(source, query)
    except PositivityError as exc:
        raise PositivityError(
            f"{exc} (query: {query.describe()})", stratum=exc.stratum
        ) from exc
    return VerificationReport(
        query=query,
        criterion_holds=criterion,
        outcome_states=model.variable(query.outcome).states,
        oracle=tuple(float(p) for p in oracle),
        adjusted=tuple(float(p) for p in adjusted),
        naive=tuple(float(p) for p in naive),
        max_abs_gap_adjusted=float(np.max(np.abs(adjusted - oracle))),
        max_abs_gap_naive=float(np.max(np.abs(naive - oracle))),
    )


def choose_adjustment_set(dag: Dag, treatment: str, outcome: str) -> tuple[str, ...]:
    """Deterministic automatic choice: the minimal admissible set that is
    first in (size, lexicographic) order."""
    minimal = dag.enumerate_backdoor_sets(treatment, outcome, minimal_only=True)
    if not minimal:
        raise NoAdmissibleSetError(
            f"no adjustment set satisfies the back-door criterion for "
            f"{treatment} -> {outcome}"
        )
    return minimal[0]
