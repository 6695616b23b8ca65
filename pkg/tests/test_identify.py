import numpy as np
import pytest

from causalkit import (
    Cpt,
    Dag,
    EffectQuery,
    Scm,
    VariableSpec,
    adjustment_estimate,
    choose_adjustment_set,
    fixtures,
    naive_estimate,
    verify,
)
from causalkit.errors import (
    InvalidQueryError,
    NoAdmissibleSetError,
    PositivityError,
    UnknownStateError,
)

import genmodels
import oracles

S3_BIASED = 0.41578947368421054  # frozen from the brute-force oracle


@pytest.fixture
def s1():
    return fixtures.common_cause()


@pytest.fixture
def s2():
    return fixtures.confounded()


@pytest.fixture
def s3():
    return fixtures.m_structure()


def q(x, v, y, adj=()):
    return EffectQuery(treatment=x, treatment_value=v, outcome=y, adjustment=adj)


# -- query validation -----------------------------------------------------


def test_query_invariants():
    with pytest.raises(InvalidQueryError):
        q("X", "1", "X")
    with pytest.raises(InvalidQueryError):
        q("X", "1", "Y", ("X",))
    with pytest.raises(InvalidQueryError):
        q("X", "1", "Y", ("Y",))
    assert q("X", "1", "Y", ("B", "A")).adjustment == ("A", "B")


def test_query_unknown_state_surfaces(s1):
    with pytest.raises(UnknownStateError):
        adjustment_estimate(s1.joint(), q("X", "2", "Y"))


# -- adjustment estimator ----------------------------------------------------


def test_adjustment_recovers_null_effect(s1):
    est = adjustment_estimate(s1.joint(), q("X", "1", "Y", ("Z",)))
    oracle = s1.causal_effect_oracle("X", "1", "Y")
    assert est[1] == pytest.approx(0.5, abs=1e-10)
    assert np.max(np.abs(est - oracle)) <= 1e-10


def test_adjustment_recovers_confounded_effect(s2):
    est = adjustment_estimate(s2.joint(), q("X", "1", "Y", ("Z",)))
    assert est[1] == pytest.approx(0.8, abs=1e-10)


def test_adjustment_on_collider_is_biased(s3):
    est = adjustment_estimate(s3.joint(), q("X", "1", "Y", ("B",)))
    assert est[1] == pytest.approx(S3_BIASED, abs=1e-12)
    assert abs(est[1] - 0.5) >= 0.05


def test_adjustment_matches_bruteforce_formula(s3):
    joint_dict = oracles.brute_joint(s3)
    for adj in ((), ("B",), ("A",), ("A", "B"), ("A", "C"), ("B", "C")):
        query = q("X", "1", "Y", adj)
        got = adjustment_estimate(s3.joint(), query)
        want = oracles.brute_adjustment(s3, joint_dict, query)
        for i, state in enumerate(s3.variables["Y"].states):
            assert got[i] == pytest.approx(want[state], abs=1e-12)


def test_zero_mass_strata_are_skipped(s3):
    # B = OR(A, C): stratum (A=1, B=0) has zero mass and must contribute 0
    est = adjustment_estimate(s3.joint(), q("X", "1", "Y", ("A", "B")))
    assert est[1] == pytest.approx(0.5, abs=1e-12)


def test_empty_adjustment_equals_naive_exactly(s1, s2, s3):
    for model in (s1, s2, s3):
        dist = model.joint()
        query = q("X", "1", "Y")
        assert np.array_equal(
            adjustment_estimate(dist, query), naive_estimate(dist, query)
        )


def test_estimates_are_distributions(s1, s2, s3):
    for model in (s1, s2, s3):
        dist = model.joint()
        for est in (
            adjustment_estimate(dist, q("X", "1", "Y", ("Z",) if "Z" in model.dag else ())),
            naive_estimate(dist, q("X", "0", "Y")),
        ):
            assert est.sum() == pytest.approx(1.0, abs=1e-9)
            assert (est >= 0).all()


# -- naive estimator -----------------------------------------------------------


def test_naive_fixture_values(s1, s3):
    assert naive_estimate(s1.joint(), q("X", "1", "Y"))[1] == pytest.approx(
        0.74, abs=1e-12
    )
    assert naive_estimate(s3.joint(), q("X", "1", "Y"))[1] == pytest.approx(
        0.5, abs=1e-12
    )


def test_naive_equals_oracle_without_backdoor_paths():
    dag = Dag(nodes=["X", "Y"], edges=[("X", "Y")])
    model = Scm(
        dag,
        [VariableSpec("X", ("0", "1")), VariableSpec("Y", ("0", "1"))],
        [Cpt("X", (), ((0.4, 0.6),)), Cpt("Y", ("X",), ((0.9, 0.1), (0.2, 0.8)))],
    )
    naive = naive_estimate(model.joint(), q("X", "1", "Y"))
    oracle = model.causal_effect_oracle("X", "1", "Y")
    assert np.allclose(naive, oracle, atol=1e-12)


def test_naive_matches_independent_condition_route(s1, s2, s3):
    for model in (s1, s2, s3):
        dist = model.joint()
        direct = dist.condition({"X": "1"}).marginal(["Y"]).mass
        assert np.allclose(naive_estimate(dist, q("X", "1", "Y")), direct, atol=1e-15)


# -- positivity --------------------------------------------------------------


def _deterministic_copy_model():
    # X copies C exactly, so Pr(X=1, C=0) = 0 while Pr(C=0) = 0.5
    dag = Dag(nodes=["C", "X", "Y"], edges=[("C", "X"), ("X", "Y")])
    return Scm(
        dag,
        [VariableSpec(n, ("0", "1")) for n in ("C", "X", "Y")],
        [
            Cpt("C", (), ((0.5, 0.5),)),
            Cpt("X", ("C",), ((1.0, 0.0), (0.0, 1.0))),
            Cpt("Y", ("X",), ((0.8, 0.2), (0.3, 0.7))),
        ],
    )


def test_positivity_violation_names_stratum():
    model = _deterministic_copy_model()
    with pytest.raises(PositivityError) as exc:
        adjustment_estimate(model.joint(), q("X", "1", "Y", ("C",)))
    assert exc.value.stratum == "C=0"
    assert "C=0" in str(exc.value)


def test_naive_positivity_violation():
    dag = Dag(nodes=["X", "Y"], edges=[("X", "Y")])
    model = Scm(
        dag,
        [VariableSpec("X", ("0", "1")), VariableSpec("Y", ("0", "1"))],
        [Cpt("X", (), ((1.0, 0.0),)), Cpt("Y", ("X",), ((0.5, 0.5), (0.5, 0.5)))],
    )
    with pytest.raises(PositivityError):
        naive_estimate(model.joint(), q("X", "1", "Y"))


# -- verification reports ---------------------------------------------------


def test_verify_collider_report(s3):
    report = verify(s3, q("X", "1", "Y", ("B",)))
    assert report.criterion_holds is False
    assert report.max_abs_gap_adjusted == pytest.approx(0.0842105263, abs=1e-9)
    assert report.max_abs_gap_naive <= 1e-12
    assert report.outcome_states == ("0", "1")


def test_verify_confounder_report(s2):
    report = verify(s2, q("X", "1", "Y", ("Z",)))
    assert report.criterion_holds is True
    assert report.max_abs_gap_adjusted <= 1e-12
    assert report.oracle[1] == pytest.approx(0.8, abs=1e-12)


def test_verify_common_cause_report(s1):
    report = verify(s1, q("X", "1", "Y", ("Z",)))
    assert report.criterion_holds is True
    assert report.max_abs_gap_naive == pytest.approx(0.24, abs=1e-12)
    assert report.max_abs_gap_adjusted <= 1e-12


def test_verify_attaches_query_to_positivity_error():
    model = _deterministic_copy_model()
    with pytest.raises(PositivityError, match="query:"):
        verify(model, q("X", "1", "Y", ("C",)))


def test_report_round_trips_to_dict(s3):
    report = verify(s3, q("X", "1", "Y", ("B",)))
    doc = report.to_dict()
    assert doc["criterion_holds"] is False
    assert doc["query"]["adjustment"] == ["B"]
    assert doc["oracle"] == list(report.oracle)


# -- soundness sweep (module invariant; the big run lives in acceptance) -----


def test_adjustment_soundness_on_random_models():
    rng = np.random.default_rng(23)
    checked = 0
    for _ in range(40):
        model = genmodels.random_scm(rng, max_nodes=5, max_states=3)
        dag = model.dag
        dist = model.joint()
        nodes = list(dag.nodes)
        x, y = rng.choice(nodes, size=2, replace=False)
        for adj in dag.enumerate_backdoor_sets(x, y):
            for value in model.variables[x].states:
                est = adjustment_estimate(dist, q(x, value, y, adj))
                oracle = model.causal_effect_oracle(x, value, y)
                assert np.max(np.abs(est - oracle)) <= 1e-10
                checked += 1
    assert checked > 100


def test_empty_adjustment_equals_naive_on_random_models():
    rng = np.random.default_rng(29)
    for _ in range(20):
        model = genmodels.random_scm(rng, max_nodes=5)
        dist = model.joint()
        nodes = list(model.dag.nodes)
        x, y = rng.choice(nodes, size=2, replace=False)
        value = model.variables[x].states[0]
        query = q(x, value, y)
        assert np.array_equal(
            adjustment_estimate(dist, query), naive_estimate(dist, query)
        )


# -- automatic adjustment choice ------------------------------------------------


def test_choose_adjustment_set(s2, s3):
    assert choose_adjustment_set(s2.dag, "X", "Y") == ("Z",)
    assert choose_adjustment_set(s3.dag, "X", "Y") == ()


def test_choose_adjustment_set_prefers_lexicographic():
    dag = Dag(
        nodes=["P", "Q", "X", "Y"],
        edges=[("P", "X"), ("P", "Y"), ("Q", "X"), ("Q", "Y")],
    )
    # both back-door paths must be blocked; {P, Q} is the unique minimal set
    assert choose_adjustment_set(dag, "X", "Y") == ("P", "Q")


def test_choose_adjustment_set_no_admissible():
    # Y -> X: the back-door path X <- Y has no interior node to block
    dag = Dag(nodes=["Y", "X"], edges=[("Y", "X")])
    with pytest.raises(NoAdmissibleSetError):
        choose_adjustment_set(dag, "X", "Y")
