"""Experiment configurations, verification suites, reports and the CLI."""
from .config import ConfigError, ExperimentConfig, config_from_dict, load_config
from .suites import (
    SuiteReport,
    export_slice,
    run_metric_properties,
    run_minimal_basis,
    run_projection_diagnostic,
    run_sandwich,
    run_sharpness,
    run_tau_decay,
)
