#include "spinvec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spinvec {

namespace {

double clamp_variance(double v) {
    if (v < 0.0) {
        if (v < -kAlgebraTol) throw std::logic_error("variance below rounding floor");
        return 0.0;
    }
    return v;
}

const ComplexMatrix& half_op(Axis axis) {
    static const ComplexMatrix sx = build_sx(SpinQuantumNumber::from_twice(1));
    static const ComplexMatrix sy = build_sy(SpinQuantumNumber::from_twice(1));
    static const ComplexMatrix sz = build_sz(SpinQuantumNumber::from_twice(1));
    switch (axis) {
    case Axis::X: return sx;
    case Axis::Y: return sy;
    default: return sz;
    }
}

CorrelationClass classify_pairs(const std::vector<double>& covariances) {
    if (covariances.empty()) return CorrelationClass::Uncorrelated;
    bool all_small = true, all_pos = true, all_neg = true;
    for (double c : covariances) {
        if (std::abs(c) > kTol) all_small = false;
        if (c < kTol) all_pos = false;
        if (c > -kTol) all_neg = false;
    }
    if (all_small) return CorrelationClass::Uncorrelated;
    if (all_pos) return CorrelationClass::Correlated;
    if (all_neg) return CorrelationClass::AntiCorrelated;
    return CorrelationClass::Partial;
}

// Chooses the per-site z signs. Each site contributes +-(<S_{z,i}^2>)^1/2,
// which is 1/2 in magnitude for spin-1/2 constituents, so the direct z sum
// reproduces <J_z> = m exactly when (N + 2m)/2 sites carry a plus. Sites are
// ranked by their polarization <S_{z,i}> (descending, ties in site order):
// decisively up sites come out positive, and balanced m = 0 constituents
// alternate in site order.
std::vector<int> choose_z_signs(const std::vector<double>& z_means, int twice_m) {
    const int n = static_cast<int>(z_means.size());
    const int n_plus = (n + twice_m) / 2;
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return z_means[a] > z_means[b]; });
    std::vector<int> signs(n, -1);
    for (int r = 0; r < n_plus; ++r) signs[order[r]] = +1;
    return signs;
}

}  // namespace

const char* classification_name(Classification c) {
    switch (c) {
    case Classification::Projection: return "projection";
    case Classification::Fluctuation: return "fluctuation";
    default: return "mixed";
    }
}

const char* correlation_class_name(CorrelationClass c) {
    switch (c) {
    case CorrelationClass::Uncorrelated: return "uncorrelated";
    case CorrelationClass::Correlated: return "correlated";
    case CorrelationClass::AntiCorrelated: return "anti-correlated";
    default: return "partial";
    }
}

double variance(const ComplexMatrix& op, const StateVector& state) {
    if (op.rows() != op.cols() || op.rows() != state.dim())
        throw std::invalid_argument("variance: dimension mismatch");
    // <A^2> = |A psi|^2 for Hermitian A.
    const Amplitudes av = matvec(op, state);
    const double second = norm_squared(av);
    const double mean = inner(state.amplitudes(), av).real();
    return clamp_variance(second - mean * mean);
}

double variance(const TotalAngularMomentum& total, Axis axis, const StateVector& state) {
    const Amplitudes jv = total.apply(axis, state);
    const double second = norm_squared(jv);
    const double mean = inner(state.amplitudes(), jv).real();
    return clamp_variance(second - mean * mean);
}

double pair_correlation(const SpinSystem& system, const StateVector& state, Axis axis, int i,
                        int k) {
    if (i == k)
        throw std::invalid_argument("pair_correlation: i = k is a variance, not a correlation");
    if (!system.valid_site(i) || !system.valid_site(k))
        throw std::invalid_argument("pair_correlation: site out of range");
    const ComplexMatrix& op = half_op(axis);
    // <psi| S_i S_k |psi> = <S_i psi | S_k psi>: the factors are Hermitian and commute.
    const Amplitudes lhs = apply_site(op, i, system, state);
    const Amplitudes rhs = apply_site(op, k, system, state);
    return inner(lhs, rhs).real();
}

double pair_correlation(const CoupledState& state, Axis axis, int i, int k) {
    return pair_correlation(state.system, state.vector, axis, i, k);
}

double NoiseBudget::covariance(int i, int k, int n_sites) const {
    if (i == k) return site_variances[i - 1];
    if (i > k) std::swap(i, k);
    // Upper-triangle offset of 1-based (i,k).
    std::size_t idx = 0;
    for (int row = 1; row < i; ++row) idx += n_sites - row;
    idx += k - i - 1;
    return pair_covariances[idx];
}

NoiseBudget noise_budget(const SpinSystem& system, const StateVector& state, Axis axis) {
    const int n = system.n_sites();
    const ComplexMatrix& op = half_op(axis);

    std::vector<Amplitudes> applied;
    applied.reserve(n);
    std::vector<double> means(n);
    std::vector<double> site_vars(n);
    for (int site = 1; site <= n; ++site) {
        Amplitudes sv = apply_site(op, site, system, state);
        means[site - 1] = inner(state.amplitudes(), sv).real();
        site_vars[site - 1] = clamp_variance(norm_squared(sv) - means[site - 1] * means[site - 1]);
        applied.push_back(std::move(sv));
    }

    std::vector<double> covs;
    covs.reserve(n * (n - 1) / 2);
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k) {
            const double moment = inner(applied[i - 1], applied[k - 1]).real();
            covs.push_back(moment - means[i - 1] * means[k - 1]);
        }

    NoiseBudget budget;
    budget.axis = axis;
    budget.site_variances = std::move(site_vars);
    budget.pair_covariances = std::move(covs);
    budget.uncorrelated =
        std::accumulate(budget.site_variances.begin(), budget.site_variances.end(), 0.0);
    budget.correlation =
        2.0 * std::accumulate(budget.pair_covariances.begin(), budget.pair_covariances.end(), 0.0);
    budget.total = budget.uncorrelated + budget.correlation;
    budget.correlation_class = classify_pairs(budget.pair_covariances);
    return budget;
}

NoiseBudget noise_budget(const CoupledState& state, Axis axis) {
    return noise_budget(state.system, state.vector, axis);
}

ThreeVector vector_choice_a(const TotalAngularMomentum& total, const StateVector& state) {
    return {total.component_expectation(Axis::X, state),
            total.component_expectation(Axis::Y, state),
            total.component_expectation(Axis::Z, state)};
}

ThreeVector vector_choice_b(const TotalAngularMomentum& total, const StateVector& state) {
    ThreeVector out{};
    for (int a = 0; a < 3; ++a) {
        const Axis axis = kAxes[a];
        const double root = std::sqrt(std::max(0.0, total.second_moment(axis, state)));
        if (axis != Axis::Z) {
            out[a] = root;
            continue;
        }
        const double mean = total.component_expectation(axis, state);
        if (mean > kTol)
            out[a] = root;
        else if (mean < -kTol)
            out[a] = -root;
        else if (variance(total, axis, state) > kTol)
            out[a] = 0.0;  // direction genuinely undetermined
        else
            out[a] = root;  // root itself ~0
    }
    return out;
}

double magnitude_squared(const ThreeVector& v) {
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
}

double choice_b_magnitude_squared(const TotalAngularMomentum& total, const StateVector& state) {
    double acc = 0.0;
    for (Axis a : kAxes) acc += total.second_moment(a, state);
    return acc;
}

Classification classify_component(const TotalAngularMomentum& total, Axis axis,
                                  const StateVector& state) {
    const double var = variance(total, axis, state);
    if (var <= kTol) return Classification::Projection;
    if (std::abs(total.component_expectation(axis, state)) <= kTol)
        return Classification::Fluctuation;
    return Classification::Mixed;
}

double effective_unit(SpinQuantumNumber j) {
    if (j.twice() == 0) throw std::domain_error("effective_unit: undefined for j = 0");
    return std::sqrt(1.0 + 1.0 / j.value());
}

VectorModelReport vector_sum_report(const CoupledState& state) {
    const SpinSystem& system = state.system;
    const int n = system.n_sites();
    const TotalAngularMomentum total(system);

    VectorModelReport report;

    const ThreeVector choice_a = vector_choice_a(total, state.vector);
    const ThreeVector choice_b = vector_choice_b(total, state.vector);
    for (int a = 0; a < 3; ++a) {
        const Axis axis = kAxes[a];
        report.axes[a] = AxisSummary{axis,
                                     choice_a[a],
                                     choice_b[a],
                                     total.second_moment(axis, state.vector),
                                     variance(total, axis, state.vector),
                                     classify_component(total, axis, state.vector)};
    }

    // Per-site moments and the three second-moment matrices.
    std::vector<double> z_means(n);
    std::array<std::vector<double>, 3> site_vars;
    for (int a = 0; a < 3; ++a) {
        const Axis axis = kAxes[a];
        auto& mat = report.correlation_matrices[a];
        mat.assign(static_cast<std::size_t>(n) * n, 0.0);
        site_vars[a].resize(n);

        std::vector<Amplitudes> applied;
        applied.reserve(n);
        for (int site = 1; site <= n; ++site)
            applied.push_back(apply_site(half_op(axis), site, system, state.vector));
        for (int i = 0; i < n; ++i) {
            const double mean = inner(state.vector.amplitudes(), applied[i]).real();
            const double second = norm_squared(applied[i]);
            mat[i * n + i] = second;
            site_vars[a][i] = clamp_variance(second - mean * mean);
            if (axis == Axis::Z) z_means[i] = mean;
            for (int k = i + 1; k < n; ++k) {
                const double moment = inner(applied[i], applied[k]).real();
                mat[i * n + k] = moment;
                mat[k * n + i] = moment;
            }
        }
    }

    for (int a = 0; a < 3; ++a)
        report.budgets[a] = noise_budget(system, state.vector, kAxes[a]);

    report.site_z_expectations = z_means;
    report.site_z_signs = choose_z_signs(z_means, state.twice_m);

    // Per-site vectors: transverse fluctuation magnitudes plus the signed z
    // root (always 1/2 in magnitude for a spin-1/2 constituent).
    report.site_vectors.resize(n);
    for (int i = 0; i < n; ++i) {
        const double z_root = std::sqrt(report.correlation_matrices[2][i * n + i]);
        report.site_vectors[i] = {std::sqrt(site_vars[0][i]), std::sqrt(site_vars[1][i]),
                                  report.site_z_signs[i] * z_root};
    }

    // Composition: fluctuating components add in quadrature with their
    // correlation term, projections add directly.
    ThreeVector composed{};
    composed[0] = std::sqrt(std::max(0.0, report.budgets[0].total));
    composed[1] = std::sqrt(std::max(0.0, report.budgets[1].total));
    for (const auto& sv : report.site_vectors) composed[2] += sv[2];
    report.composed = composed;

    ThreeVector naive{};
    for (const auto& sv : report.site_vectors)
        for (int a = 0; a < 3; ++a) naive[a] += sv[a];
    report.naive_sum = naive;

    report.magnitude_a_sq = magnitude_squared(choice_a);
    report.magnitude_b_sq = choice_b_magnitude_squared(total, state.vector);
    report.naive_magnitude_sq = magnitude_squared(naive);

    double residual = 0.0;
    for (int a = 0; a < 3; ++a)
        residual = std::max(residual, std::abs(composed[a] - choice_b[a]));
    report.composition_residual = residual;

    report.effective_unit =
        state.twice_j > 0
            ? std::optional<double>(effective_unit(SpinQuantumNumber::from_twice(state.twice_j)))
            : std::nullopt;

    return report;
}

}  // namespace spinvec
