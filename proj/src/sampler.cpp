#include "spinvec/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace spinvec {

namespace {

constexpr std::size_t kBlockSize = std::size_t{1} << 16;

// splitmix64 finalizer: decorrelates per-block generator seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t block) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (block + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// 53-bit uniform in [0,1). mt19937_64 output is fully specified by the
// standard, so streams are identical across platforms; the distribution
// classes are not, which is why they are avoided here.
double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

ComplexMatrix axis_basis_unitary(Axis axis) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (axis) {
    case Axis::X:
        // Rows are <+x| and <-x|.
        return ComplexMatrix(2, 2, {Complex{r, 0}, Complex{r, 0}, Complex{r, 0}, Complex{-r, 0}});
    case Axis::Y:
        // Rows are <+y| and <-y|.
        return ComplexMatrix(2, 2, {Complex{r, 0}, Complex{0, -r}, Complex{r, 0}, Complex{0, r}});
    default:
        return ComplexMatrix::identity(2);
    }
}

std::vector<double> born_probabilities(const SpinSystem& system, const StateVector& state,
                                       Axis axis) {
    const StateVector rotated = rotate_to_axis_basis(system, state, axis);
    std::vector<double> probs(rotated.dim());
    for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = std::norm(rotated.amplitude(k));
    return probs;
}

// Spin value of site given the basis index: bit clear = +1/2.
double spin_of(std::uint64_t index, const SpinSystem& system, int site) {
    return (index >> system.bit_of_site(site)) & 1 ? -0.5 : 0.5;
}

}  // namespace

double SampleBatch::outcome(std::size_t sample, int site) const {
    const SpinSystem system(n_sites);
    return spin_of(outcomes[sample], system, site);
}

double SampleBatch::total(std::size_t sample) const {
    const int downs = std::popcount(static_cast<unsigned>(outcomes[sample]));
    return 0.5 * (n_sites - 2 * downs);
}

StateVector rotate_to_axis_basis(const SpinSystem& system, const StateVector& state, Axis axis) {
    if (state.dim() != system.dim())
        throw std::invalid_argument("rotate_to_axis_basis: dimension mismatch");
    if (axis == Axis::Z) return state;
    const ComplexMatrix u = axis_basis_unitary(axis);
    Amplitudes amps = state.amplitudes();
    for (int site = 1; site <= system.n_sites(); ++site)
        amps = apply_site(u, site, system, amps);
    return StateVector(std::move(amps));
}

SampleBatch sample(const SpinSystem& system, const StateVector& state, Axis axis,
                   std::size_t n_samples, std::uint64_t seed, int n_threads) {
    if (n_samples < 1) throw std::invalid_argument("sample: n_samples must be >= 1");
    if (n_threads < 1) n_threads = 1;

    std::vector<double> probs = born_probabilities(system, state, axis);
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cum[k] = acc;
    }
    cum.back() = 1.0;  // guards the u ~ 1 edge against rounding

    SampleBatch batch{axis, system.n_sites(), n_samples, seed, {}};
    batch.outcomes.resize(n_samples);

    const std::size_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    auto run_blocks = [&](std::size_t first_block, std::size_t last_block) {
        for (std::size_t b = first_block; b < last_block; ++b) {
            std::mt19937_64 eng(mix_seed(seed, b));
            const std::size_t begin = b * kBlockSize;
            const std::size_t end = std::min(begin + kBlockSize, n_samples);
            for (std::size_t s = begin; s < end; ++s) {
                const double u = uniform01(eng);
                const auto it = std::upper_bound(cum.begin(), cum.end(), u);
                const std::size_t k = std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
                batch.outcomes[s] = static_cast<std::uint16_t>(k);
            }
        }
    };

    if (n_threads == 1 || n_blocks <= 1) {
        run_blocks(0, n_blocks);
    } else {
        const std::size_t workers = std::min<std::size_t>(n_threads, n_blocks);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t first = n_blocks * w / workers;
            const std::size_t last = n_blocks * (w + 1) / workers;
            pool.emplace_back(run_blocks, first, last);
        }
        for (auto& t : pool) t.join();
    }
    return batch;
}

MomentEstimates estimate_moments(const SampleBatch& batch) {
    if (batch.n_samples < 2)
        throw std::invalid_argument("estimate_moments: need at least 2 samples");
    const SpinSystem system(batch.n_sites);
    const int n = batch.n_sites;
    const double inv_n = 1.0 / static_cast<double>(batch.n_samples);

    MomentEstimates est;
    est.n_samples = batch.n_samples;

    std::vector<double> sum(n, 0.0);
    std::vector<double> pair_sum(static_cast<std::size_t>(n) * n, 0.0);
    double t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    for (std::size_t s = 0; s < batch.n_samples; ++s) {
        const std::uint64_t idx = batch.outcomes[s];
        double t = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double si = spin_of(idx, system, i);
            sum[i - 1] += si;
            t += si;
            for (int k = i + 1; k <= n; ++k)
                pair_sum[(i - 1) * n + (k - 1)] += si * spin_of(idx, system, k);
        }
        t1 += t;
        t2 += t * t;
        t3 += t * t * t;
        t4 += t * t * t * t;
    }

    est.site_mean.resize(n);
    est.site_mean_se.resize(n);
    est.site_variance.resize(n);
    est.site_variance_se.resize(n);
    est.pair_moment.assign(static_cast<std::size_t>(n) * n, 0.0);
    est.pair_moment_se.assign(static_cast<std::size_t>(n) * n, 0.0);

    for (int i = 0; i < n; ++i) {
        const double m = sum[i] * inv_n;
        // Outcomes are +-1/2, so s^2 = 1/4 identically; the plug-in variance
        // and its fourth central moment follow from the mean alone.
        const double v = std::max(0.0, 0.25 - m * m);
        const double p = 0.5 + m;  // P(+1/2)
        const double mu4 = p * std::pow(0.5 - m, 4) + (1.0 - p) * std::pow(0.5 + m, 4);
        est.site_mean[i] = m;
        est.site_mean_se[i] = std::sqrt(v * inv_n);
        est.site_variance[i] = v;
        est.site_variance_se[i] = std::sqrt(std::max(0.0, mu4 - v * v) * inv_n);
        est.pair_moment[i * n + i] = 0.25;
        for (int k = i + 1; k < n; ++k) {
            const double r = pair_sum[i * n + k] * inv_n;
            est.pair_moment[i * n + k] = r;
            est.pair_moment[k * n + i] = r;
            // Products of +-1/2 square to 1/16.
            const double se = std::sqrt(std::max(0.0, 0.0625 - r * r) * inv_n);
            est.pair_moment_se[i * n + k] = se;
            est.pair_moment_se[k * n + i] = se;
        }
    }

    const double m1 = t1 * inv_n;
    const double m2 = t2 * inv_n;
    const double m3 = t3 * inv_n;
    const double m4 = t4 * inv_n;
    const double v = std::max(0.0, m2 - m1 * m1);
    const double mu4 =
        m4 - 4.0 * m3 * m1 + 6.0 * m2 * m1 * m1 - 3.0 * m1 * m1 * m1 * m1;
    est.total_mean = m1;
    est.total_mean_se = std::sqrt(v * inv_n);
    est.total_variance = v;
    est.total_variance_se = std::sqrt(std::max(0.0, mu4 - v * v) * inv_n);
    return est;
}

namespace {

// E[(s - m)^4] for a +-1/2 outcome with mean m; equals v(1/4 + 3m^2) with
// v = 1/4 - m^2, so the delta-method variance of the plug-in site variance,
// (mu4 - v^2)/n, reduces to 4m^2 v/n.
double site_fourth_central(double mean) {
    const double v = std::max(0.0, 0.25 - mean * mean);
    return v * (0.25 + 3.0 * mean * mean);
}

ConsistencyRow make_row(std::string name, double exact, double empirical, double se,
                        double guard) {
    const double tol = 5.0 * se + guard + 1e-12;
    const bool ok = std::abs(empirical - exact) <= tol;
    return {std::move(name), exact, empirical, se, tol, ok};
}

}  // namespace

SamplerComparison compare_to_exact(const SpinSystem& system, const StateVector& state, Axis axis,
                                   std::size_t n_samples, std::uint64_t seed, int n_threads) {
    SamplerComparison cmp{axis,
                          n_samples,
                          seed,
                          exact_outcome_moments(system, state, axis),
                          estimate_moments(sample(system, state, axis, n_samples, seed, n_threads)),
                          {},
                          true};
    const ExactMoments& ex = cmp.exact;
    const MomentEstimates& est = cmp.empirical;
    const int n = system.n_sites();
    const double inv_n = 1.0 / static_cast<double>(n_samples);

    for (int i = 0; i < n; ++i) {
        const double m = ex.site_mean[i];
        const double v = ex.site_variance[i];
        cmp.rows.push_back(make_row("site" + std::to_string(i + 1) + ".mean", m, est.site_mean[i],
                                    std::sqrt(v * inv_n), 0.0));
        // Plug-in variance is a smooth function of the mean; its second-order
        // error is bounded by the chi-square tail 25 Var(mean) at this policy.
        const double se_v = std::sqrt(std::max(0.0, site_fourth_central(m) - v * v) * inv_n);
        cmp.rows.push_back(make_row("site" + std::to_string(i + 1) + ".variance", v,
                                    est.site_variance[i], se_v, 25.0 * v * inv_n));
    }
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            const double r = ex.pair_moment[i * n + k];
            const double se = std::sqrt(std::max(0.0, 0.0625 - r * r) * inv_n);
            cmp.rows.push_back(make_row("pair(" + std::to_string(i + 1) + "," +
                                            std::to_string(k + 1) + ").moment",
                                        r, est.pair_moment[i * n + k], se, 0.0));
        }
    cmp.rows.push_back(make_row("total.mean", ex.total_mean, est.total_mean,
                                std::sqrt(ex.total_variance * inv_n), 0.0));
    const double se_tv = std::sqrt(
        std::max(0.0, ex.total_fourth_central - ex.total_variance * ex.total_variance) * inv_n);
    cmp.rows.push_back(make_row("total.variance", ex.total_variance, est.total_variance, se_tv,
                                25.0 * ex.total_variance * inv_n));

    for (const ConsistencyRow& row : cmp.rows)
        if (!row.ok) cmp.consistent = false;
    return cmp;
}

ExactMoments exact_outcome_moments(const SpinSystem& system, const StateVector& state, Axis axis) {
    const std::vector<double> probs = born_probabilities(system, state, axis);
    const int n = system.n_sites();

    ExactMoments ex;
    ex.site_mean.assign(n, 0.0);
    ex.site_variance.assign(n, 0.0);
    ex.pair_moment.assign(static_cast<std::size_t>(n) * n, 0.0);

    double t1 = 0, t2 = 0;
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        const double p = probs[idx];
        if (p == 0.0) continue;
        double t = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double si = spin_of(idx, system, i);
            ex.site_mean[i - 1] += p * si;
            t += si;
            for (int k = i + 1; k <= n; ++k)
                ex.pair_moment[(i - 1) * n + (k - 1)] += p * si * spin_of(idx, system, k);
        }
        t1 += p * t;
        t2 += p * t * t;
    }
    for (int i = 0; i < n; ++i) {
        ex.site_variance[i] = std::max(0.0, 0.25 - ex.site_mean[i] * ex.site_mean[i]);
        ex.pair_moment[i * n + i] = 0.25;
        for (int k = i + 1; k < n; ++k)
            ex.pair_moment[k * n + i] = ex.pair_moment[i * n + k];
    }
    ex.total_mean = t1;
    ex.total_variance = std::max(0.0, t2 - t1 * t1);

    double mu4 = 0.0;
    for (std::size_t idx = 0; idx < probs.size(); ++idx) {
        if (probs[idx] == 0.0) continue;
        double t = 0.0;
        for (int i = 1; i <= n; ++i) t += spin_of(idx, system, i);
        mu4 += probs[idx] * std::pow(t - t1, 4);
    }
    ex.total_fourth_central = mu4;
    return ex;
}

}  // namespace spinvec
