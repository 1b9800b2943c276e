// Copyright 2026 The lilygrow Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lilygrow/builder.hpp"
#include "lilygrow/sampling.hpp"

namespace lily {

/// Per-grain mark h(R, K) of the functional.
enum class HKind {
    volume,  ///< V_d(R K)
    count,   ///< 1
    power,   ///< alpha * R^beta
};

/// Weight f on the unit window W_1 = [-1/2, 1/2]^d.
enum class WeightKind {
    constant,    ///< f = value
    indicator,   ///< f = 1 on `box`, 0 elsewhere
    polynomial,  ///< f(x) = sum over axes k and powers p of coefficients[k][p] x_k^p
};

struct FunctionalSpec {
    HKind h = HKind::volume;
    double alpha = 1.0;
    double beta = 1.0;
    WeightKind weight = WeightKind::constant;
    double value = 1.0;
    Box box;
    std::vector<std::vector<double>> coefficients;

    double mark(double R, const Shape& shape) const;
    double weight_at(const Vec& unit_position, int dimension) const;
};

const char* to_string(HKind h);
const char* to_string(WeightKind w);

/// sum of f(n^{-1/d} X) h(R, K) over the grains of a result built in W_n.
/// Zero for fewer than two grains. Capped grains contribute with their
/// capped R and are counted in *capped when given.
double functional_value(const HardCoreResult& result, const FunctionalSpec& functional, double window_n,
                        std::size_t* capped = nullptr);
/// Same, for a raw configuration: builds first unless it has fewer than two grains.
double functional_value(const Configuration& config, const FunctionalSpec& functional, double window_n,
                        std::size_t* capped = nullptr);

/// W_n = n^{1/d} [-1/2, 1/2]^d.
Box centered_window(double n, int dimension);

/// Area (volume) of the union of the grown grains. Stratified sampling:
/// one uniform point per cell of a `per_axis`^d grid over the bounding box.
double union_volume_estimate(const HardCoreResult& result, std::size_t per_axis, std::uint64_t seed);

/// Cascade (pairwise) summation in a fixed order.
double pairwise_sum(std::span<const double> values);

/// Kolmogorov-Smirnov distance between the sample and N(0, 1).
double ks_distance_normal(std::vector<double> sample);

struct CltLevel {
    double n = 0.0;
    std::vector<double> samples;
    double mean = 0.0;
    double variance = 0.0;
    double variance_over_n = 0.0;
    std::vector<double> standardized;
    double standardized_mean = 0.0;
    double ks = 0.0;
    std::size_t capped = 0;
};

struct CltReport {
    std::vector<CltLevel> levels;
    std::size_t replicates = 0;
    std::uint64_t seed = 0;
    /// variance / n at the largest n, the estimate of the limiting variance.
    double sigma_hat = 0.0;
    /// The normality gate is meaningless for a degenerate functional.
    bool ks_indeterminate = false;
};

/// Independent builds on W_n for every n in `n_list` and M replicates each.
/// The spec's window is replaced by W_n. Throws InvalidRegime unless the
/// spec is in the zero-birth regime. `workers` caps the thread count.
CltReport clt_experiment(const ScenarioSpec& spec, const FunctionalSpec& functional, std::span<const double> n_list,
                         std::size_t M, std::uint64_t seed, unsigned workers = 1);

struct PairedReplicate {
    double mean_R_a = 0.0;  ///< mean over grains with R > 0, caps excluded
    double mean_R_b = 0.0;
    double covered_fraction_b = 0.0;
    double mean_cluster_a = 0.0;
    double mean_cluster_b = 0.0;
    std::size_t grains = 0;
    std::size_t covered_b = 0;
    std::vector<double> R_a;  ///< positive R values, caps excluded
    std::vector<double> R_b;
    std::vector<double> clusters_a;  ///< cluster sizes
    std::vector<double> clusters_b;
};

struct Quantiles {
    double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0;
};

struct CompareReport {
    double t_max = 0.0;
    std::vector<PairedReplicate> replicates;
    /// Pooled over replicates.
    Quantiles quantiles_a;
    Quantiles quantiles_b;
    double covered_fraction_b = 0.0;  ///< pooled over all grains
    double mean_difference = 0.0;     ///< mean of mean_R_b - mean_R_a
    double difference_se = 0.0;
    double z = 0.0;
    /// One-sided test of mean R in B above A at the 99% level.
    bool b_larger = false;
};

Quantiles quantiles(std::vector<double> values);

/// Scenario A uses births 0, scenario B births uniform on [0, t_max]; both
/// share positions and shapes per replicate.
CompareReport compare_scenarios(const ScenarioSpec& spec, double t_max, std::size_t M, unsigned workers = 1);

}  // namespace lily
