"""causalkit: causal diagrams, interventions, and back-door adjustment.

Represent a causal model as a DAG plus per-node conditional probability
tables, compute exact interventional distributions by graph surgery,
check the back-door criterion, and evaluate the adjustment formula
against model joints or observed data.
"""

from . import errors, fixtures
from .data import (
    Smoothing,
    empirical_joint,
    estimate_effect_from_data,
    read_csv,
    table_to_csv,
)
from .graph import Dag, Path, parse_dag
from .identify import (
    EffectQuery,
    VerificationReport,
    adjustment_estimate,
    choose_adjustment_set,
    naive_estimate,
    verify,
)
from .model_io import model_from_json, model_to_json, schema_from_json
from .scm import (
    SAMPLER_ALGORITHM,
    Assignment,
    Cpt,
    JointDistribution,
    Scm,
    VariableSpec,
)
from .table import DataTable

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "Cpt",
    "Dag",
    "DataTable",
    "EffectQuery",
    "JointDistribution",
    "Path",
    "SAMPLER_ALGORITHM",
    "Scm",
    "Smoothing",
    "VariableSpec",
    "VerificationReport",
    "adjustment_estimate",
    "choose_adjustment_set",
    "empirical_joint",
    "errors",
    "estimate_effect_from_data",
    "fixtures",
    "model_from_json",
    "model_to_json",
    "naive_estimate",
    "parse_dag",
    "read_csv",
    "schema_from_json",
    "table_to_csv",
    "verify",
    "__version__",
]
