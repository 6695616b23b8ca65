"""Three small teaching models, one per classic identification pitfall.

All variables are binary with states ``("0", "1")``.

* :func:`common_cause` -- Z -> X, Z -> Y.  X and Y are correlated through
  their shared cause but X has no effect on Y: the naive conditional
  P(Y=1 | X=1) is 0.74 while P(Y=1 | do(X=1)) is 0.5.  Adjusting for Z
  recovers the truth.
* :func:`confounded` -- Z -> X, Z -> Y, X -> Y.  A genuine effect hides
  under confounding; adjusting for Z identifies
  P(Y=1 | do(X=1)) = 0.8 and P(Y=1 | do(X=0)) = 0.2.
* :func:`m_structure` -- A -> X, A -> B <- C, C -> Y.  X and Y are
  marginally independent (the naive estimate already equals the causal
  0.5), but conditioning on the collider B opens the path and biases the
  adjusted estimate to roughly 0.416.  The empty set is the correct
  adjustment here; {B} fails the back-door criterion.
"""

from __future__ import annotations

from .graph import Dag
from .scm import Cpt, Scm, VariableSpec

_BINARY = ("0", "1")


def _var(name: str) -> VariableSpec:
    return VariableSpec(name=name, states=_BINARY)


def common_cause() -> Scm:
    """Z -> X, Z -> Y: pure common cause, no effect of X on Y."""
    dag = Dag(nodes=["Z", "X", "Y"], edges=[("Z", "X"), ("Z", "Y")])
    return Scm(
        dag,
        variables=[_var("Z"), _var("X"), _var("Y")],
        cpts=[
            Cpt("Z", (), ((0.5, 0.5),)),
            Cpt("X", ("Z",), ((0.8, 0.2), (0.2, 0.8))),
            Cpt("Y", ("Z",), ((0.9, 0.1), (0.1, 0.9))),
        ],
    )


def confounded() -> Scm:
    """Z -> X, Z -> Y, X -> Y: real effect plus confounding."""
    dag = Dag(nodes=["Z", "X", "Y"], edges=[("Z", "X"), ("Z", "Y"), ("X", "Y")])
    return Scm(
        dag,
        variables=[_var("Z"), _var("X"), _var("Y")],
        cpts=[
            Cpt("Z", (), ((0.5, 0.5),)),
            Cpt("X", ("Z",), ((0.8, 0.2), (0.2, 0.8))),
            # rows over (X, Z) with Z fastest: P(Y=1) = .1/.3/.7/.9
            Cpt("Y", ("X", "Z"), ((0.9, 0.1), (0.7, 0.3), (0.3, 0.7), (0.1, 0.9))),
        ],
    )


def m_structure() -> Scm:
    """A -> X, A -> B <- C, C -> Y: collider B on the only back-door path.

    B = OR(A, C) deterministically, so some joint cells have mass zero.
    """
    dag = Dag(
        nodes=["A", "B", "C", "X", "Y"],
        edges=[("A", "X"), ("A", "B"), ("C", "B"), ("C", "Y")],
    )
    return Scm(
        dag,
        variables=[_var(n) for n in ("A", "B", "C", "X", "Y")],
        cpts=[
            Cpt("A", (), ((0.5, 0.5),)),
            # rows over (A, C) with C fastest: B = OR(A, C)
            Cpt("B", ("A", "C"), ((1.0, 0.0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.0))),
            Cpt("C", (), ((0.5, 0.5),)),
            Cpt("X", ("A",), ((0.9, 0.1), (0.1, 0.9))),
            Cpt("Y", ("C",), ((0.9, 0.1), (0.1, 0.9))),
        ],
    )


ALL = {
    "common_cause": common_cause,
    "confounded": confounded,
    "m_structure": m_structure,
}
