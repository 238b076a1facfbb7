from .csvio import CsvFormatError, load_fingerprints, load_samples, save_fingerprints, save_samples, save_table
from .experiments import (
    DEFAULT_SHOT_LIST,
    ExperimentError,
    ExperimentReport,
    LocalizationResult,
    cdf_table,
    localize_all,
    run_cdf,
    run_compare,
    run_shot_sweep,
)
from .testbed import ConfigError, TestbedConfig, generate_testbed, samples_from_db
