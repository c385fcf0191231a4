"""Randomized numerical verification of matrix inequalities for positive
multilinear maps, Kubo-Ando means and matrix power/Karcher means."""

__version__ = "0.1.0"

from .linalg import Interval, loewner_leq, psd_margin, block2x2_psd_check  # noqa: E402
from .functions import ScalarFunction, HypothesisError  # noqa: E402
from .maps import (  # noqa: E402
    MapDescriptor,
    tensor_map,
    hadamard_map,
    trace_product_map,
    normalized_trace_pair,
    rank_one_map,
    linear_composed,
    congruence_transformed,
    evaluate,
)
from .means import (  # noqa: E402
    MeanDescriptor,
    kubo_ando_mean,
    power_mean,
    karcher_mean,
    kantorovich_constant,
    alpha_bound,
    beta_bound,
)
from .checks import CheckResult, Inequality, run_check, replay  # noqa: E402
