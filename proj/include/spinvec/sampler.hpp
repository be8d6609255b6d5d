#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinvec/composite.hpp"
#include "spinvec/linalg.hpp"

namespace spinvec {

/// Outcomes of repeated joint projective measurement of every site's spin
/// component along one axis. Outcomes are stored as basis indices in the
/// rotated basis; bit clear means +1/2 on that site.
struct SampleBatch {
    Axis axis;
    int n_sites;
    std::size_t n_samples;
    std::uint64_t seed;
    std::vector<std::uint16_t> outcomes;

    /// Measured spin (+-1/2) of one site in one sample.
    double outcome(std::size_t sample, int site) const;
    /// Sum of all site outcomes in one sample (the total J_a draw).
    double total(std::size_t sample) const;
};

/// The single-site unitary mapping the axis eigenbasis to the computational
/// basis (z: identity, x: Hadamard, y: its complex analogue), applied to
/// every site.
StateVector rotate_to_axis_basis(const SpinSystem& system, const StateVector& state, Axis axis);

/// Draws n_samples i.i.d. outcomes from the exact Born distribution by
/// cumulative inversion. Deterministic for a given seed, independent of
/// n_threads: samples are generated in fixed blocks of 2^16, each from its
/// own generator derived from (seed, block index).
SampleBatch sample(const SpinSystem& system, const StateVector& state, Axis axis,
                   std::size_t n_samples, std::uint64_t seed, int n_threads = 1);

/// Plug-in moment estimates with standard errors (sigma/sqrt(n) for means,
/// delta method for second moments).
struct MomentEstimates {
    std::size_t n_samples = 0;
    std::vector<double> site_mean;
    std::vector<double> site_mean_se;
    std::vector<double> site_variance;
    std::vector<double> site_variance_se;
    std::vector<double> pair_moment;     // <s_i s_k>, row-major n x n, diagonal <s_i^2>
    std::vector<double> pair_moment_se;  // zero on the diagonal
    double total_mean = 0.0;
    double total_mean_se = 0.0;
    double total_variance = 0.0;
    double total_variance_se = 0.0;
};

MomentEstimates estimate_moments(const SampleBatch& batch);

/// Exact counterparts computed from the Born distribution of the rotated
/// state (independent of the operator-algebra path in analysis).
struct ExactMoments {
    std::vector<double> site_mean;
    std::vector<double> site_variance;
    std::vector<double> pair_moment;  // row-major n x n, diagonal <s_i^2>
    double total_mean = 0.0;
    double total_variance = 0.0;
    double total_fourth_central = 0.0;  // for delta-method standard errors
};

ExactMoments exact_outcome_moments(const SpinSystem& system, const StateVector& state, Axis axis);

/// One compared quantity. The standard error is that of the estimator under
/// the exact distribution; the tolerance is 5 standard errors plus a
/// second-order guard for variance estimators (whose first-order error
/// vanishes when the underlying mean is zero) and a rounding floor.
struct ConsistencyRow {
    std::string name;
    double exact;
    double empirical;
    double standard_error;
    double tolerance;
    bool ok;
};

/// Empirical moments of one sampled batch against their exact values:
/// site means and variances, pair moments, total mean and variance.
struct SamplerComparison {
    Axis axis;
    std::size_t n_samples;
    std::uint64_t seed;
    ExactMoments exact;
    MomentEstimates empirical;
    std::vector<ConsistencyRow> rows;
    bool consistent;  // every row ok
};

SamplerComparison compare_to_exact(const SpinSystem& system, const StateVector& state, Axis axis,
                                   std::size_t n_samples, std::uint64_t seed, int n_threads = 1);

}  // namespace spinvec
