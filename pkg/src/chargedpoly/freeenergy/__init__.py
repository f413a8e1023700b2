"""Quenched, annealed, WSAW and variational free energies (bar convention)."""

from .annealed import annealed_fe, annealed_partition, annealed_series, g_beta
from .quenched import (
    FreeEnergyPoint,
    exact_annealed_partition,
    exact_avg_fe,
    finite_fe,
    free_energy_point,
    mc_quenched_fe,
    quenched_samples,
)
from .technical import (
    ann_series_to_cubic,
    cubic_root_derivatives,
    cubic_root_is_unique,
    cubic_root_z0,
    fourth_moment,
    high_temp_coeff,
    high_temp_coeff_total,
)
from .variational import eta, qu_length_law, qu_word_moments, variational_lb
from .wsaw import beta0, collapse_rate, s_of_beta, wsaw_fe

__all__ = [
    "FreeEnergyPoint", "ann_series_to_cubic", "annealed_fe", "annealed_partition",
    "annealed_series", "beta0", "collapse_rate", "cubic_root_derivatives", "cubic_root_is_unique", "cubic_root_z0",
    "eta", "exact_annealed_partition", "exact_avg_fe", "finite_fe", "fourth_moment",
    "free_energy_point", "g_beta", "high_temp_coeff", "high_temp_coeff_total",
    "mc_quenched_fe", "qu_length_law", "qu_word_moments", "quenched_samples",
    "s_of_beta", "variational_lb", "wsaw_fe",
]
