import io

import numpy as np
import pytest

from causalkit import (
    DataTable,
    EffectQuery,
    Smoothing,
    VariableSpec,
    empirical_joint,
    estimate_effect_from_data,
    fixtures,
    naive_estimate,
    read_csv,
    table_to_csv,
)
from causalkit.errors import DataError, DataFormatError

import oracles


@pytest.fixture
def s1():
    return fixtures.common_cause()


def schema_of(model):
    return [model.variables[n] for n in model.scope_order]


# -- read_csv -----------------------------------------------------------------


def test_read_csv_basic(s1):
    table = read_csv("Z,X,Y\n1,0,1\n0,1,0\n", schema_of(s1))
    assert table.header == ("Z", "X", "Y")
    assert table.row_count == 2
    assert table.rows == (("1", "0", "1"), ("0", "1", "0"))


def test_read_csv_reorders_columns_to_schema(s1):
    table = read_csv("Y,Z,X\n1,0,1\n", schema_of(s1))
    assert table.header == ("Z", "X", "Y")
    assert table.rows == (("0", "1", "1"),)


def test_read_csv_accepts_bytes_and_streams(s1):
    text = "Z,X,Y\n1,1,1\n"
    for source in (text, text.encode(), io.StringIO(text), io.BytesIO(text.encode())):
        assert read_csv(source, schema_of(s1)).row_count == 1


def test_read_csv_undeclared_state_names_row_and_column(s1):
    with pytest.raises(DataError) as exc:
        read_csv("Z,X,Y\n1,0,1\n0,2,0\n", schema_of(s1))
    assert exc.value.row == 1
    assert exc.value.column == "X"
    assert "'2'" in str(exc.value)


def test_read_csv_missing_column(s1):
    with pytest.raises(DataFormatError, match="missing column 'Y'"):
        read_csv("Z,X\n1,0\n", schema_of(s1))


def test_read_csv_unknown_column(s1):
    with pytest.raises(DataFormatError, match="unknown column 'W'"):
        read_csv("Z,X,Y,W\n1,0,1,0\n", schema_of(s1))


def test_read_csv_duplicate_column(s1):
    with pytest.raises(DataFormatError, match="duplicate"):
        read_csv("Z,X,X\n1,0,0\n", schema_of(s1))


def test_read_csv_ragged_row(s1):
    with pytest.raises(DataFormatError, match="row 1"):
        read_csv("Z,X,Y\n1,0,1\n1,0\n", schema_of(s1))


def test_read_csv_empty_input(s1):
    with pytest.raises(DataFormatError, match="missing CSV header"):
        read_csv("", schema_of(s1))


def test_read_csv_header_only_is_empty_table(s1):
    assert read_csv("Z,X,Y\n", schema_of(s1)).row_count == 0


def test_schema_with_comma_label_is_rejected():
    bad = [VariableSpec("V", ("a,b", "c")), VariableSpec("W", ("0", "1"))]
    with pytest.raises(DataError, match="comma"):
        read_csv("V,W\n", bad)


# -- table_to_csv -----------------------------------------------------------


def test_table_round_trip(s1):
    table = fixtures.common_cause().sample(50, 9)
    text = table_to_csv(table)
    again = read_csv(text, schema_of(s1))
    assert again == table


def test_table_to_csv_rejects_commas():
    table = DataTable(header=("V",), rows=(("a,b",),))
    with pytest.raises(DataError):
        table_to_csv(table)


# -- empirical_joint ----------------------------------------------------------


def test_point_mass_from_identical_rows(s1):
    table = read_csv("Z,X,Y\n1,0,1\n1,0,1\n1,0,1\n1,0,1\n", schema_of(s1))
    dist = empirical_joint(table, schema_of(s1))
    assert dist.prob({"Z": "1", "X": "0", "Y": "1"}) == 1.0
    assert dist.mass.sum() == pytest.approx(1.0, abs=1e-12)


def test_pure_pseudocounts_give_uniform(s1):
    table = DataTable(header=("Z", "X", "Y"), rows=())
    dist = empirical_joint(table, schema_of(s1), Smoothing(alpha=1.0))
    assert np.allclose(dist.mass, 1.0 / 8.0, atol=1e-12)


def test_empty_table_alpha_zero_rejected(s1):
    table = DataTable(header=("Z", "X", "Y"), rows=())
    with pytest.raises(DataError, match="empty table"):
        empirical_joint(table, schema_of(s1))


def test_negative_alpha_rejected():
    with pytest.raises(DataError):
        Smoothing(alpha=-0.5)


def test_empirical_joint_converges_to_model_joint(s1):
    table = s1.sample(100_000, 1)
    dist = empirical_joint(table, schema_of(s1))
    exact = s1.joint()
    assert np.max(np.abs(dist.mass - exact.mass)) <= 0.01
    assert dist.names == exact.names


def test_column_permutation_is_invariant(s1):
    schema = schema_of(s1)
    base = "Z,X,Y\n1,0,1\n0,1,0\n1,1,1\n"
    permuted = "Y,X,Z\n1,0,1\n0,1,0\n1,1,1\n"
    a = empirical_joint(read_csv(base, schema), schema)
    b = empirical_joint(read_csv(permuted, schema), schema)
    assert a.names == b.names
    assert np.array_equal(a.mass, b.mass)


def test_empirical_joint_validates_labels(s1):
    table = DataTable(header=("Z", "X", "Y"), rows=(("1", "0", "oops"),))
    with pytest.raises(DataError) as exc:
        empirical_joint(table, schema_of(s1))
    assert exc.value.row == 0
    assert exc.value.column == "Y"


def test_empirical_joint_counts_match_bruteforce(s1):
    table = s1.sample(500, 21)
    dist = empirical_joint(table, schema_of(s1))
    from collections import Counter

    counts = Counter(table.rows)
    import itertools

    for key in itertools.product("01", repeat=3):
        assert dist.prob(dict(zip(("Z", "X", "Y"), key))) == pytest.approx(
            counts[key] / 500, abs=1e-12
        )


def test_smoothing_shrinks_toward_uniform(s1):
    table = read_csv("Z,X,Y\n1,1,1\n", schema_of(s1))
    raw = empirical_joint(table, schema_of(s1))
    smoothed = empirical_joint(table, schema_of(s1), Smoothing(alpha=100.0))
    assert raw.prob({"Z": "1", "X": "1", "Y": "1"}) == 1.0
    assert smoothed.prob({"Z": "1", "X": "1", "Y": "1"}) == pytest.approx(
        101.0 / 801.0, abs=1e-12
    )


# -- estimate_effect_from_data ---------------------------------------------------


def test_effect_from_sampled_confounded_data():
    model = fixtures.confounded()
    schema = schema_of(model)
    table = model.sample(100_000, 7)
    est = estimate_effect_from_data(
        table, schema, EffectQuery("X", "1", "Y", ("Z",))
    )
    assert est[1] == pytest.approx(0.8, abs=0.02)


def test_effect_from_sampled_collider_data_stays_biased():
    model = fixtures.m_structure()
    schema = schema_of(model)
    table = model.sample(100_000, 7)
    est = estimate_effect_from_data(
        table, schema, EffectQuery("X", "1", "Y", ("B",))
    )
    assert est[1] == pytest.approx(0.41578947368421054, abs=0.02)
    assert abs(est[1] - 0.5) >= 0.05


def test_effect_from_data_empty_adjustment_is_empirical_conditional(s1):
    table = s1.sample(5_000, 3)
    schema = schema_of(s1)
    est = estimate_effect_from_data(table, schema, EffectQuery("X", "1", "Y"))
    direct = naive_estimate(
        empirical_joint(table, schema), EffectQuery("X", "1", "Y")
    )
    assert np.array_equal(est, direct)


def test_effect_from_data_matches_bruteforce_adjustment(s1):
    table = s1.sample(2_000, 31)
    schema = schema_of(s1)
    query = EffectQuery("X", "1", "Y", ("Z",))
    est = estimate_effect_from_data(table, schema, query)
    # independent route: dict-based empirical joint + brute adjustment
    from collections import Counter

    counts = Counter(table.rows)
    joint_dict = {k: v / 2_000 for k, v in counts.items()}
    want = oracles.brute_adjustment(s1, joint_dict, query)
    for i, state in enumerate(("0", "1")):
        assert est[i] == pytest.approx(want[state], abs=1e-12)
