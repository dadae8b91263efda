"""Agent-based simulation of feed distribution in shrimp ponds."""

from .config import (ConfigError, Density, Disposition, ExperimentConfig, FeedingMode, TuningDefaults,
                     config_code, load_scenario, matrix_configs)
from .engine import (GenerationResult, MatrixResult, WorldState, run_epoch, run_generation, run_matrix,
                     run_pre_experiment)

__all__ = [
    "ConfigError", "Density", "Disposition", "ExperimentConfig", "FeedingMode", "TuningDefaults",
    "config_code", "load_scenario", "matrix_configs",
    "GenerationResult", "MatrixResult", "WorldState", "run_epoch", "run_generation", "run_matrix",
    "run_pre_experiment",
]
