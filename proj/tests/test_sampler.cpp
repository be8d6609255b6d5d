#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "spinvec/analysis.hpp"
#include "spinvec/sampler.hpp"

using namespace spinvec;

TEST_CASE("axis rotation produces the right outcome distribution") {
    const SpinSystem one(1);
    const StateVector up = StateVector::basis_state(2, 0);

    // |up> along x: both outcomes equally likely.
    const StateVector up_x = rotate_to_axis_basis(one, up, Axis::X);
    CHECK(std::norm(up_x.amplitude(0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(up_x.amplitude(1)) == doctest::Approx(0.5).epsilon(1e-12));

    // Along z the state is untouched.
    const StateVector up_z = rotate_to_axis_basis(one, up, Axis::Z);
    CHECK(std::norm(up_z.amplitude(0)) == doctest::Approx(1.0).epsilon(1e-12));

    // The singlet never shows two aligned x outcomes.
    const CoupledState singlet = two_spin_state(0, 0);
    const StateVector singlet_x = rotate_to_axis_basis(singlet.system, singlet.vector, Axis::X);
    CHECK(std::norm(singlet_x.amplitude(0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::norm(singlet_x.amplitude(1)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(singlet_x.amplitude(2)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::norm(singlet_x.amplitude(3)) == doctest::Approx(0.0).epsilon(1e-12));

    // The triplet m=0 always shows two aligned x outcomes.
    const CoupledState triplet = two_spin_state(2, 0);
    const StateVector triplet_x = rotate_to_axis_basis(triplet.system, triplet.vector, Axis::X);
    CHECK(std::norm(triplet_x.amplitude(1)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::norm(triplet_x.amplitude(2)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("batch accessors decode site outcomes") {
    const SpinSystem two(2);
    const CoupledState singlet = two_spin_state(0, 0);
    const SampleBatch batch = sample(two, singlet.vector, Axis::X, 512, 99);
    REQUIRE(batch.n_samples == 512);
    CHECK(batch.axis == Axis::X);
    CHECK(batch.n_sites == 2);
    for (std::size_t s = 0; s < batch.n_samples; ++s) {
        const double o1 = batch.outcome(s, 1);
        const double o2 = batch.outcome(s, 2);
        CHECK((o1 == 0.5 || o1 == -0.5));
        // Anti-aligned in every single draw.
        CHECK(o1 + o2 == 0.0);
        CHECK(batch.total(s) == 0.0);
    }
}

TEST_CASE("z measurement of an eigenstate is deterministic") {
    const SpinSystem three(3);
    const CoupledState top = stretched_state(three);
    const SampleBatch batch = sample(three, top.vector, Axis::Z, 256, 7);
    for (std::size_t s = 0; s < batch.n_samples; ++s) CHECK(batch.total(s) == 1.5);
}

TEST_CASE("sampling is reproducible and thread-count independent") {
    const SpinSystem two(2);
    const CoupledState triplet = two_spin_state(2, 0);

    const SampleBatch a = sample(two, triplet.vector, Axis::X, 200000, 42, 1);
    const SampleBatch b = sample(two, triplet.vector, Axis::X, 200000, 42, 1);
    REQUIRE(a.outcomes.size() == b.outcomes.size());
    CHECK(a.outcomes == b.outcomes);

    const SampleBatch c = sample(two, triplet.vector, Axis::X, 200000, 42, 4);
    CHECK(a.outcomes == c.outcomes);

    const SampleBatch other_seed = sample(two, triplet.vector, Axis::X, 200000, 43, 1);
    CHECK(a.outcomes != other_seed.outcomes);
}

TEST_CASE("exact outcome moments match the operator algebra") {
    struct Probe {
        SpinSystem system;
        StateVector state;
    };
    const Probe probes[] = {
        {SpinSystem(1), StateVector::basis_state(2, 0)},
        {SpinSystem(2), two_spin_state(2, 0).vector},
        {SpinSystem(2), two_spin_state(0, 0).vector},
        {SpinSystem(3), coupled_state(SpinSystem(3), 1, 1).vector},
        {SpinSystem(4), coupled_state(SpinSystem(4), 4, 2).vector},
    };
    for (const Probe& probe : probes) {
        const TotalAngularMomentum total(probe.system);
        for (Axis axis : kAxes) {
            const ExactMoments exact = exact_outcome_moments(probe.system, probe.state, axis);
            CHECK(exact.total_mean ==
                  doctest::Approx(total.component_expectation(axis, probe.state)).epsilon(1e-11));
            CHECK(exact.total_variance ==
                  doctest::Approx(variance(total, axis, probe.state)).epsilon(1e-11));
            for (int i = 1; i <= probe.system.n_sites(); ++i) {
                for (int k = i + 1; k <= probe.system.n_sites(); ++k) {
                    const double algebraic = pair_correlation(probe.system, probe.state, axis, i, k);
                    const double dist =
                        exact.pair_moment[(i - 1) * probe.system.n_sites() + (k - 1)];
                    CHECK(dist == doctest::Approx(algebraic).epsilon(1e-11));
                }
            }
            CHECK(exact.total_fourth_central >= -1e-12);
        }
    }
}

TEST_CASE("moment estimation on a handmade batch") {
    SampleBatch batch;
    batch.axis = Axis::Z;
    batch.n_sites = 2;
    batch.n_samples = 4;
    batch.seed = 0;
    // Outcomes (site1, site2): uu, ud, du, uu.
    batch.outcomes = {0b00, 0b01, 0b10, 0b00};

    const MomentEstimates est = estimate_moments(batch);
    CHECK(est.site_mean[0] == doctest::Approx(0.25).epsilon(1e-12));   // (3 up, 1 down)/4 * 1
    CHECK(est.site_mean[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(est.site_variance[0] == doctest::Approx(0.1875).epsilon(1e-12));  // 1/4 - 1/16
    CHECK(est.pair_moment[0 * 2 + 1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(est.pair_moment[0 * 2 + 0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(est.total_mean == doctest::Approx(0.5).epsilon(1e-12));
    // Totals are (1, 0, 0, 1): variance 0.25.
    CHECK(est.total_variance == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("large batches agree with the exact distribution") {
    const std::size_t n = 1000000;

    const SpinSystem one(1);
    const SamplerComparison up_x =
        compare_to_exact(one, StateVector::basis_state(2, 0), Axis::X, n, 1001);
    CHECK(up_x.consistent);
    CHECK(up_x.exact.total_variance == doctest::Approx(0.25).epsilon(1e-12));

    const CoupledState triplet = two_spin_state(2, 0);
    const SamplerComparison triplet_x =
        compare_to_exact(triplet.system, triplet.vector, Axis::X, n, 1002, 4);
    CHECK(triplet_x.consistent);
    CHECK(triplet_x.exact.pair_moment[1] == doctest::Approx(0.25).epsilon(1e-12));

    const CoupledState singlet = two_spin_state(0, 0);
    const SamplerComparison singlet_x =
        compare_to_exact(singlet.system, singlet.vector, Axis::X, n, 1003, 4);
    CHECK(singlet_x.consistent);
    CHECK(singlet_x.exact.pair_moment[1] == doctest::Approx(-0.25).epsilon(1e-12));

    const SpinSystem four(4);
    const CoupledState stretched4 = stretched_state(four);
    const SamplerComparison stretched_x =
        compare_to_exact(four, stretched4.vector, Axis::X, n, 1004, 4);
    CHECK(stretched_x.consistent);
    CHECK(stretched_x.exact.total_variance == doctest::Approx(1.0).epsilon(1e-12));

    // Every row carries a finite tolerance and the two sides of each row agree.
    for (const ConsistencyRow& row : stretched_x.rows) {
        CHECK(row.tolerance > 0.0);
        CHECK(std::abs(row.empirical - row.exact) <= row.tolerance);
    }
}

TEST_CASE("comparison reruns are bit-identical") {
    const CoupledState triplet = two_spin_state(2, 0);
    const SamplerComparison a =
        compare_to_exact(triplet.system, triplet.vector, Axis::X, 100000, 5, 2);
    const SamplerComparison b =
        compare_to_exact(triplet.system, triplet.vector, Axis::X, 100000, 5, 3);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].empirical == b.rows[i].empirical);
        CHECK(a.rows[i].exact == b.rows[i].exact);
    }
}
