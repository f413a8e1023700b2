"""Exact dynamic programs, bounds and oracles for the quenched charged polymer."""

__version__ = "0.1.0"

from .charges import (
    ChargeSequence,
    interval_charge,
    make_binary,
    make_diblock,
    make_gaussian,
    make_tilted,
)
from .partition import (
    log_partition_bar,
    oracle_expectation,
    oracle_log_partition,
    partition_tables,
    prefix_log_partition,
    suffix_log_partition,
    wsaw_log_partition,
)
from .observables import bond_profile, dgh2_bound, empirical_cdf, energy_mean_var, high_temp_slope

__all__ = [
    "ChargeSequence", "bond_profile", "dgh2_bound", "empirical_cdf", "energy_mean_var",
    "high_temp_slope", "interval_charge", "log_partition_bar", "make_binary", "make_diblock",
    "make_gaussian", "make_tilted", "oracle_expectation", "oracle_log_partition",
    "partition_tables", "prefix_log_partition", "suffix_log_partition", "wsaw_log_partition",
]
