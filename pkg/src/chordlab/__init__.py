"""chordlab: regions cut out of the unit disc by random chords.

Exact crossing predicates and region counts via the Euler identity, seeded
Monte Carlo batches, analytic moments by quadrature, normal-approximation
error bounds, and a Kolmogorov-Smirnov harness for testing normality of the
region count.
"""

__version__ = "0.1.0"

from .bounds import (RinottParams, SteinBounds, chord_model_rinott_params,
                     kolmogorov_bound, rinott_bound, scaling_diagnostic,
                     smooth_function_bound, stein_bounds)
from .distributions import (ChordSampler, DistanceDistribution, RandomStream,
                            derive_seed, diameter_sampler,
                            distribution_sampler, endpoint_pair_sampler,
                            load_tabulated, resolve_distribution,
                            sample_chord, sample_chord_arrays, sine_distance,
                            tabulated_distance, uniform_distance)
from .geometry import (Chord, Point2, chord_from_endpoints, crosses,
                       crosses_cartesian, endpoints, intersection_point,
                       normalize_angle, to_cartesian)
from .ks import (Histogram, KsReport, histogram, ks_for_batch,
                 ks_one_sample_normal, ks_table, normalize, std_normal_cdf)
from .moments import (MomentSet, RegionMoments, estimate_moments_mc,
                      expected_cross_prob, expected_joint_cross_prob,
                      expected_min_angle, moment_set, region_moments)
from .oracle import (OracleReport, adaptive_oracle, batch_check,
                     count_regions_signvector, figure_config,
                     small_case_table)
from .simulation import (ArrangementCounts, SimulationConfig,
                         SimulationResult, arrangement_counts,
                         count_intersections, count_regions, euler_counts,
                         result_to_csv, result_to_json, run_batch)

__all__ = [
    "ArrangementCounts", "Chord", "ChordSampler", "DistanceDistribution",
    "Histogram", "KsReport", "MomentSet", "OracleReport", "Point2",
    "RandomStream", "RegionMoments", "RinottParams", "SimulationConfig",
    "SimulationResult", "SteinBounds", "__version__", "adaptive_oracle",
    "arrangement_counts", "batch_check", "chord_from_endpoints",
    "chord_model_rinott_params", "count_intersections", "count_regions",
    "count_regions_signvector", "crosses", "crosses_cartesian", "derive_seed",
    "diameter_sampler", "distribution_sampler", "endpoint_pair_sampler",
    "endpoints", "estimate_moments_mc", "expected_cross_prob",
    "expected_joint_cross_prob", "expected_min_angle", "figure_config",
    "histogram", "intersection_point", "kolmogorov_bound", "ks_for_batch",
    "ks_one_sample_normal", "ks_table", "load_tabulated", "moment_set",
    "normalize", "normalize_angle", "region_moments", "resolve_distribution",
    "result_to_csv", "result_to_json", "rinott_bound", "run_batch",
    "sample_chord", "sample_chord_arrays", "scaling_diagnostic",
    "sine_distance", "small_case_table", "smooth_function_bound",
    "std_normal_cdf", "stein_bounds", "tabulated_distance",
    "to_cartesian", "uniform_distance",
]
