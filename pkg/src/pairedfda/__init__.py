"""Nonparametric sign and signed doubly ranked tests for paired curves."""

from .core import (
    DifferenceSample,
    FunctionalSample,
    Grid,
    PairedSample,
    difference,
    trapezoid,
    trapezoid_weights,
)
from .errors import PairedFdaError
from .fpca import FpcaModel, fit_fpca, preprocess_paired, smooth_sample
from .harness import (
    CellResult,
    Method,
    apply_method,
    cell_table,
    run_cell,
    run_cell_multi,
    run_power_sweep,
    run_power_sweep_multi,
)
from .nulltests import (
    Alternative,
    PValueMethod,
    TestReport,
    WilcoxonNull,
    binom_two_sided_p,
    sign_test,
    signed_rank_test,
    wilcoxon_null,
)
from .ranks import SignedRankField, midrank, sign_curve, signed_rank_field
from .simgen import (
    DeltaKind,
    PreprocessKind,
    ScoreDist,
    SimConfig,
    ar1_noise,
    delta_curve,
    generate_dataset,
    kl_pair,
    replicate_rng,
    score_pair,
)
from .summaries import (
    StatisticKind,
    SubjectScores,
    integral_scores,
    sign_sum_scores,
    signed_rank_scores,
    weighted_sign_scores,
)

__all__ = [
    "Alternative",
    "CellResult",
    "DeltaKind",
    "DifferenceSample",
    "FpcaModel",
    "FunctionalSample",
    "Grid",
    "Method",
    "PairedFdaError",
    "PairedSample",
    "PreprocessKind",
    "ScoreDist",
    "SignedRankField",
    "SimConfig",
    "StatisticKind",
    "SubjectScores",
    "PValueMethod",
    "TestReport",
    "WilcoxonNull",
    "apply_method",
    "ar1_noise",
    "binom_two_sided_p",
    "cell_table",
    "delta_curve",
    "difference",
    "fit_fpca",
    "generate_dataset",
    "integral_scores",
    "kl_pair",
    "midrank",
    "preprocess_paired",
    "replicate_rng",
    "run_cell",
    "run_cell_multi",
    "run_power_sweep",
    "run_power_sweep_multi",
    "score_pair",
    "sign_curve",
    "sign_sum_scores",
    "sign_test",
    "signed_rank_field",
    "signed_rank_scores",
    "signed_rank_test",
    "smooth_sample",
    "trapezoid",
    "trapezoid_weights",
    "weighted_sign_scores",
    "wilcoxon_null",
]

__version__ = "0.1.0"
