#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinvec/composite.hpp"
#include "spinvec/coupling.hpp"

namespace spinvec {

using ThreeVector = std::array<double, 3>;

enum class Classification { Projection, Fluctuation, Mixed };
enum class CorrelationClass { Uncorrelated, Correlated, AntiCorrelated, Partial };

const char* classification_name(Classification c);
const char* correlation_class_name(CorrelationClass c);

/// Variance <A^2> - <A>^2 of a Hermitian operator; tiny negative rounding
/// residue is clamped to 0.
double variance(const ComplexMatrix& op, const StateVector& state);
double variance(const TotalAngularMomentum& total, Axis axis, const StateVector& state);

/// Pair correlation <S_{a,i} S_{a,k}> between two sites, i != k.
double pair_correlation(const SpinSystem& system, const StateVector& state, Axis axis, int i,
                        int k);
double pair_correlation(const CoupledState& state, Axis axis, int i, int k);

/// Decomposition of Delta J_a^2 into per-site variances plus twice the
/// pairwise covariances: the quadrature rule with its correlation term,
/// exact by construction.
struct NoiseBudget {
    Axis axis;
    std::vector<double> site_variances;       // Delta S_{a,i}^2
    std::vector<double> pair_covariances;     // row-major upper triangle i < k
    double uncorrelated;                      // sum of site variances
    double correlation;                       // 2 * sum of pair covariances
    double total;                             // Delta J_a^2
    CorrelationClass correlation_class;

    double covariance(int i, int k, int n_sites) const;
};

NoiseBudget noise_budget(const SpinSystem& system, const StateVector& state, Axis axis);
NoiseBudget noise_budget(const CoupledState& state, Axis axis);

/// Choice A: component expectations (<J_x>, <J_y>, <J_z>).
ThreeVector vector_choice_a(const TotalAngularMomentum& total, const StateVector& state);

/// Choice B: root-mean-square components (<J_a^2>)^1/2; the z entry carries
/// the sign of <J_z> (zero when the expectation vanishes but the component
/// still fluctuates).
ThreeVector vector_choice_b(const TotalAngularMomentum& total, const StateVector& state);

double magnitude_squared(const ThreeVector& v);

/// Sum of second moments <J_x^2>+<J_y^2>+<J_z^2>; choice B's magnitude.
double choice_b_magnitude_squared(const TotalAngularMomentum& total, const StateVector& state);

Classification classify_component(const TotalAngularMomentum& total, Axis axis,
                                  const StateVector& state);

/// sqrt(1 + 1/j), the magnitude of angular momentum per unit of j; undefined
/// at j = 0.
double effective_unit(SpinQuantumNumber j);

/// Per-axis summary used by the reports.
struct AxisSummary {
    Axis axis;
    double choice_a;       // <J_a>
    double choice_b;       // signed (<J_a^2>)^1/2
    double second_moment;  // <J_a^2>
    double variance;       // Delta J_a^2
    Classification classification;
};

/// The complete vector-model decomposition of one coupled state: per-site
/// vectors, correlation matrices, noise budgets, and the composed total
/// vector (projections added directly, fluctuations in correlation-aware
/// quadrature) checked against choice B.
struct VectorModelReport {
    std::array<AxisSummary, 3> axes;

    std::vector<ThreeVector> site_vectors;     // per-site (Delta S_x, Delta S_y, signed z)
    std::vector<double> site_z_expectations;   // <S_{z,i}>
    std::vector<int> site_z_signs;             // sign chosen for each site's z entry

    // Second-moment matrices <S_{a,i} S_{a,k}> per axis (diagonal: <S_{a,i}^2>).
    std::array<std::vector<double>, 3> correlation_matrices;

    std::array<NoiseBudget, 3> budgets;

    ThreeVector composed;       // direct z sum + quadrature-with-correlation x,y
    ThreeVector naive_sum;      // componentwise sum of the per-site vectors
    double magnitude_a_sq;
    double magnitude_b_sq;      // = <J^2>
    double naive_magnitude_sq;
    double composition_residual;  // max |composed - choice B|

    std::optional<double> effective_unit;  // absent for j = 0
};

VectorModelReport vector_sum_report(const CoupledState& state);

}  // namespace spinvec
