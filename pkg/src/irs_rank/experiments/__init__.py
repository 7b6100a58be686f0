from .cli import main
from .config import ExperimentSpec, Scenario, Sweep, parse_config, parse_config_text
from .csvio import records_to_csv, write_csv
from .scenarios import (
    SweepRecord,
    run,
    run_cond_vs_n,
    run_rate_cdf,
    run_rate_vs_n,
    run_rate_vs_ue_y,
    run_single,
)

__all__ = [
    "ExperimentSpec", "Scenario", "Sweep", "SweepRecord", "main", "parse_config",
    "parse_config_text", "records_to_csv", "run", "run_cond_vs_n", "run_rate_cdf",
    "run_rate_vs_n", "run_rate_vs_ue_y", "run_single", "write_csv",
]
