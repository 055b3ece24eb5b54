"""Measurement-uncertainty budgets.

GUM-style propagation over small arithmetic models (exact forward-mode
derivatives), a deterministic Monte Carlo validator, TXRF internal-standard
quantification with COMPLETE/TRUNCATED sensitivity budgets, and a coin-flip
demo of frequency uncertainties.
"""

from uncprop._core import (
    DEFAULT_SEED,
    BudgetTerm,
    CalibrationInputs,
    Error,
    FrequencyEstimate,
    McConfig,
    McResult,
    Measurement,
    Model,
    Policy,
    QuantifyResult,
    RelativeUncertainty,
    ReplicateReport,
    SensitivityRecord,
    SequenceRow,
    SequenceTable,
    TxrfSample,
    UncertaintyBudget,
    __version__,
    budget_gap,
    calibrate_sensitivity,
    combine_relative,
    enumerate_sequences,
    evaluate,
    evaluate_with_partials,
    frequency_fraction,
    frequency_uncertainty,
    mc_propagate,
    parse_model,
    propagate,
    quantify,
    relative,
    render_model,
    replicate_stats,
    simulate_flips,
)

__all__ = [
    "DEFAULT_SEED",
    "BudgetTerm",
    "CalibrationInputs",
    "Error",
    "FrequencyEstimate",
    "McConfig",
    "McResult",
    "Measurement",
    "Model",
    "Policy",
    "QuantifyResult",
    "RelativeUncertainty",
    "ReplicateReport",
    "SensitivityRecord",
    "SequenceRow",
    "SequenceTable",
    "TxrfSample",
    "UncertaintyBudget",
    "__version__",
    "budget_gap",
    "calibrate_sensitivity",
    "combine_relative",
    "enumerate_sequences",
    "evaluate",
    "evaluate_with_partials",
    "frequency_fraction",
    "frequency_uncertainty",
    "mc_propagate",
    "parse_model",
    "propagate",
    "quantify",
    "relative",
    "render_model",
    "replicate_stats",
    "simulate_flips",
]
