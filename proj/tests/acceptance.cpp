// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line on stdout; failure details go to stderr. Exit status 0 iff every
// criterion passes.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinvec/analysis.hpp"
#include "spinvec/sampler.hpp"

#include "run_cli.hpp"
#include "schema_check.hpp"

using namespace spinvec;

namespace {

constexpr double kValueTol = 1e-10;
constexpr double kExactTol = 1e-12;

class Checker {
public:
    void expect(const std::string& what, double actual, double expected, double tol) {
        if (std::abs(actual - expected) <= tol) return;
        std::ostringstream os;
        os << what << ": expected " << expected << ", got " << actual << " (tol " << tol << ")";
        failures_.push_back(os.str());
    }

    void expect_true(const std::string& what, bool condition) {
        if (!condition) failures_.push_back(what);
    }

    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

StateVector random_state(std::mt19937& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Amplitudes a(dim);
    for (auto& c : a) c = Complex{u(rng), u(rng)};
    return StateVector(std::move(a));
}

void single_half_moments(Checker& c) {
    const TotalAngularMomentum total(SpinQuantumNumber::from_twice(1));
    const StateVector up = StateVector::basis_state(2, 0);

    c.expect("<S_z> on up", total.component_expectation(Axis::Z, up), 0.5, kValueTol);
    c.expect("<S_x> on up", total.component_expectation(Axis::X, up), 0.0, kValueTol);
    c.expect("<S_y> on up", total.component_expectation(Axis::Y, up), 0.0, kValueTol);
    c.expect("Delta S_x^2 on up", variance(total, Axis::X, up), 0.25, kValueTol);

    const ThreeVector a = vector_choice_a(total, up);
    c.expect("choice A x", a[0], 0.0, kValueTol);
    c.expect("choice A y", a[1], 0.0, kValueTol);
    c.expect("choice A z", a[2], 0.5, kValueTol);
    c.expect("choice A magnitude^2", magnitude_squared(a), 0.25, kValueTol);

    const ThreeVector b = vector_choice_b(total, up);
    c.expect("choice B x", b[0], 0.5, kValueTol);
    c.expect("choice B y", b[1], 0.5, kValueTol);
    c.expect("choice B z", b[2], 0.5, kValueTol);
    c.expect("choice B magnitude^2", magnitude_squared(b), 0.75, kValueTol);
}

void aligned_pair(Checker& c) {
    const CoupledState top = two_spin_state(2, 2);
    const TotalAngularMomentum total(top.system);

    c.expect("<J^2>", total_j_squared(top.system, top.vector), 2.0, kValueTol);
    c.expect("x pair correlation", pair_correlation(top, Axis::X, 1, 2), 0.0, kValueTol);

    const NoiseBudget budget = noise_budget(top, Axis::X);
    c.expect("quadrature sum of site variances", budget.uncorrelated, 0.5, kValueTol);
    c.expect("Delta J_x^2 from the budget", budget.total, 0.5, kValueTol);
    c.expect("Delta J_x^2 directly", variance(total, Axis::X, top.vector), 0.5, kValueTol);

    const VectorModelReport report = vector_sum_report(top);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    c.expect("composed x", report.composed[0], inv_sqrt2, kValueTol);
    c.expect("composed y", report.composed[1], inv_sqrt2, kValueTol);
    c.expect("composed z", report.composed[2], 1.0, kValueTol);
    c.expect("composed magnitude^2", magnitude_squared(report.composed), 2.0, kValueTol);
    c.expect("naive sum magnitude^2", report.naive_magnitude_sq, 3.0, kValueTol);
}

void triplet_mid(Checker& c) {
    const CoupledState state = two_spin_state(2, 0);
    const TotalAngularMomentum total(state.system);

    c.expect("x pair correlation", pair_correlation(state, Axis::X, 1, 2), 0.25, kValueTol);
    c.expect("Delta J_x^2", variance(total, Axis::X, state.vector), 1.0, kValueTol);
    c.expect("Delta J_y^2", variance(total, Axis::Y, state.vector), 1.0, kValueTol);

    const ThreeVector b = vector_choice_b(total, state.vector);
    c.expect("composed vector x", b[0], 1.0, kValueTol);
    c.expect("composed vector y", b[1], 1.0, kValueTol);
    c.expect("composed vector z", b[2], 0.0, kValueTol);
    c.expect("magnitude^2", choice_b_magnitude_squared(total, state.vector), 2.0, kValueTol);
}

void singlet(Checker& c) {
    const CoupledState state = two_spin_state(0, 0);
    const TotalAngularMomentum total(state.system);

    c.expect("x pair correlation", pair_correlation(state, Axis::X, 1, 2), -0.25, kValueTol);
    c.expect("Delta J_x^2", variance(total, Axis::X, state.vector), 0.0, kValueTol);
    c.expect("Delta J_y^2", variance(total, Axis::Y, state.vector), 0.0, kValueTol);

    const ThreeVector b = vector_choice_b(total, state.vector);
    c.expect("composed vector x", b[0], 0.0, kValueTol);
    c.expect("composed vector y", b[1], 0.0, kValueTol);
    c.expect("composed vector z", b[2], 0.0, kValueTol);
    c.expect("magnitude^2", choice_b_magnitude_squared(total, state.vector), 0.0, kValueTol);
}

void stretched_family(Checker& c) {
    for (int n = 1; n <= 10; ++n) {
        const SpinSystem system(n);
        const CoupledState top = stretched_state(system);
        const TotalAngularMomentum total(system);
        const double j = 0.5 * n;
        const std::string tag = "N=" + std::to_string(n) + " ";

        double worst_cov = 0.0;
        for (Axis axis : kAxes) {
            const NoiseBudget budget = noise_budget(top, axis);
            for (double cov : budget.pair_covariances)
                worst_cov = std::max(worst_cov, std::abs(cov));
        }
        c.expect(tag + "largest pair covariance", worst_cov, 0.0, kValueTol);
        c.expect(tag + "Delta J_x^2", variance(total, Axis::X, top.vector), 0.5 * j, kValueTol);

        const VectorModelReport report = vector_sum_report(top);
        c.expect(tag + "composed x", report.composed[0], std::sqrt(0.5 * j), kValueTol);
        c.expect(tag + "composed y", report.composed[1], std::sqrt(0.5 * j), kValueTol);
        c.expect(tag + "composed z", report.composed[2], j, kValueTol);
        c.expect(tag + "composed magnitude^2", magnitude_squared(report.composed), j * (j + 1.0),
                 kValueTol);
    }
}

void canonical_families(Checker& c) {
    for (int n = 1; n <= 8; ++n) {
        const SpinSystem system(n);
        const TotalAngularMomentum total(system);
        for (int tj = n % 2; tj <= n; tj += 2) {
            for (int tm = tj; tm >= -tj; tm -= 2) {
                const CoupledState state = coupled_state(system, tj, tm);
                std::ostringstream tag;
                tag << "N=" << n << " 2j=" << tj << " 2m=" << tm << " ";

                c.expect(tag.str() + "<J^2>", total_j_squared(system, state.vector),
                         state.casimir(), kValueTol);
                c.expect(tag.str() + "<J_z>",
                         total.component_expectation(Axis::Z, state.vector), state.m(), kValueTol);
                c.expect(tag.str() + "<J_x>",
                         total.component_expectation(Axis::X, state.vector), 0.0, kValueTol);
                c.expect(tag.str() + "<J_y>",
                         total.component_expectation(Axis::Y, state.vector), 0.0, kValueTol);
                c.expect(tag.str() + "second-moment sum",
                         choice_b_magnitude_squared(total, state.vector), state.casimir(),
                         kValueTol);
                for (Axis axis : kAxes) {
                    const NoiseBudget budget = noise_budget(state, axis);
                    c.expect(tag.str() + "budget identity (" + axis_name(axis) + ")",
                             budget.total, variance(total, axis, state.vector), kValueTol);
                }
            }
        }
    }
}

void operator_algebra(Checker& c) {
    const Complex i{0.0, 1.0};
    for (int tj = 1; tj <= 8; ++tj) {
        const SpinQuantumNumber j = SpinQuantumNumber::from_twice(tj);
        const ComplexMatrix sx = build_sx(j);
        const ComplexMatrix sy = build_sy(j);
        const ComplexMatrix sz = build_sz(j);
        const std::string tag = "2j=" + std::to_string(tj) + " ";
        c.expect(tag + "commutator", max_abs_diff(sx * sy - sy * sx, i * sz), 0.0, kExactTol);
        ComplexMatrix squares = sx * sx;
        squares += sy * sy;
        squares += sz * sz;
        const ComplexMatrix target = Complex{j.casimir(), 0.0} * ComplexMatrix::identity(j.dimension());
        c.expect(tag + "squared-component sum", max_abs_diff(squares, target), 0.0, kExactTol);
    }

    for (int n = 2; n <= 6; ++n) {
        const SpinSystem system(n);
        const ComplexMatrix jx = total_component(Axis::X, system);
        const ComplexMatrix jy = total_component(Axis::Y, system);
        const ComplexMatrix jz = total_component(Axis::Z, system);
        const std::string tag = "N=" + std::to_string(n) + " ";
        c.expect(tag + "commutator", max_abs_diff(jx * jy - jy * jx, i * jz), 0.0, kExactTol);

        ComplexMatrix squares = jx * jx;
        squares += jy * jy;
        squares += jz * jz;
        c.expect(tag + "squared-sum commutes with J_z",
                 max_abs_diff(squares * jz, jz * squares), 0.0, kExactTol);
        double worst = 0.0;
        for (int tj = n % 2; tj <= n; tj += 2) {
            const CoupledState state = coupled_state(system, tj, tj);
            worst = std::max(worst, std::abs(expectation(squares, state.vector).real() -
                                             state.casimir()));
        }
        c.expect(tag + "squared-sum eigenvalues", worst, 0.0, kExactTol);
    }
}

void streaming_equivalence(Checker& c) {
    std::mt19937 rng(20240816);
    for (int n = 2; n <= 6; ++n) {
        const SpinSystem system(n);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const StateVector state = random_state(rng, system.dim());
            for (int site = 1; site <= n; ++site) {
                for (Axis axis : kAxes) {
                    const ComplexMatrix op = build_component(SpinQuantumNumber::from_twice(1), axis);
                    const Amplitudes streamed = apply_site(op, site, system, state);
                    const Amplitudes dense = matvec(embed(op, site, system), state);
                    for (std::size_t k = 0; k < streamed.size(); ++k)
                        worst = std::max(worst, std::abs(streamed[k] - dense[k]));
                }
            }
        }
        c.expect("N=" + std::to_string(n) + " worst entry difference", worst, 0.0, kExactTol);
    }
}

void effective_unit_family(Checker& c) {
    c.expect("sqrt(1+1/j) at j=1/2", effective_unit(SpinQuantumNumber::from_twice(1)),
             std::sqrt(3.0), kValueTol);
    c.expect("sqrt(1+1/j) at j=1", effective_unit(SpinQuantumNumber::from_twice(2)),
             std::sqrt(2.0), kValueTol);
    double previous = effective_unit(SpinQuantumNumber::from_twice(1));
    bool monotone = true;
    for (int tj = 2; tj <= 50; ++tj) {
        const double current = effective_unit(SpinQuantumNumber::from_twice(tj));
        if (!(current < previous) || !(current > 1.0)) monotone = false;
        previous = current;
    }
    c.expect_true("strictly decreasing toward 1 through j=25", monotone);
}

void row_within_tolerance(Checker& c, const SamplerComparison& cmp, const std::string& row_name,
                          double expected, const std::string& tag) {
    for (const ConsistencyRow& row : cmp.rows) {
        if (row.name != row_name) continue;
        c.expect(tag + " exact value", row.exact, expected, kValueTol);
        c.expect_true(tag + " within 5 standard errors",
                      std::abs(row.empirical - row.exact) <= row.tolerance);
        return;
    }
    c.expect_true(tag + " row present", false);
}

void sampler_statistics(Checker& c) {
    const std::size_t n = 1000000;
    const std::uint64_t seed = 424242;

    const SpinSystem one(1);
    const StateVector up = StateVector::basis_state(2, 0);
    const SamplerComparison up_x = compare_to_exact(one, up, Axis::X, n, seed);
    row_within_tolerance(c, up_x, "total.variance", 0.25, "up-state x variance");
    c.expect_true("up-state comparison consistent", up_x.consistent);

    const CoupledState triplet = two_spin_state(2, 0);
    const SamplerComparison trip_x =
        compare_to_exact(triplet.system, triplet.vector, Axis::X, n, seed + 1, 4);
    row_within_tolerance(c, trip_x, "pair(1,2).moment", 0.25, "triplet pair correlation");
    c.expect_true("triplet comparison consistent", trip_x.consistent);

    const CoupledState sing = two_spin_state(0, 0);
    const SamplerComparison sing_x =
        compare_to_exact(sing.system, sing.vector, Axis::X, n, seed + 2, 4);
    row_within_tolerance(c, sing_x, "pair(1,2).moment", -0.25, "singlet pair correlation");
    c.expect_true("singlet comparison consistent", sing_x.consistent);

    const SpinSystem four(4);
    const CoupledState top4 = stretched_state(four);
    const SamplerComparison top_x = compare_to_exact(four, top4.vector, Axis::X, n, seed + 3, 4);
    row_within_tolerance(c, top_x, "total.variance", 1.0, "stretched N=4 x variance");
    c.expect_true("stretched comparison consistent", top_x.consistent);

    const SampleBatch first = sample(four, top4.vector, Axis::X, 200000, seed, 2);
    const SampleBatch second = sample(four, top4.vector, Axis::X, 200000, seed, 3);
    c.expect_true("rerun with the same seed is bit-identical", first.outcomes == second.outcomes);
}

void cli_and_schema(Checker& c) {
    const CliResult table = run_cli("paper-table");
    c.expect_true("verification table exits 0", table.exit_code == 0);
    c.expect_true("verification table reports every item PASS",
                  table.output.find("FAIL") == std::string::npos &&
                      table.output.find("all items PASS") != std::string::npos);

    const schema_check::Validator validator = schema_check::Validator::from_file(SPINVEC_SCHEMA_PATH);
    const std::string commands[] = {
        "--json single --j 1/2 --m 1/2",
        "--json couple --n 2 --j 1 --m 0",
        "--json paper-table",
        "--json --seed 9 sample --n 2 --j 1 --m 1 --axis z --samples 5000",
    };
    for (const std::string& command : commands) {
        const CliResult res = run_cli(command, Stderr::Drop);
        c.expect_true("exit 0 for: " + command, res.exit_code == 0);
        std::string error;
        bool valid = false;
        try {
            valid = validator.validate(nlohmann::json::parse(res.output), error);
        } catch (const std::exception& e) {
            error = e.what();
        }
        c.expect_true("schema-valid report for: " + command + " (" + error + ")", valid);
    }

    c.expect_true("invalid m exits 2", run_cli("single --j 1/2 --m 3/2", Stderr::Drop).exit_code == 2);
    c.expect_true("inadmissible (j,m) exits 2",
                  run_cli("couple --n 2 --j 3 --m 0", Stderr::Drop).exit_code == 2);
    c.expect_true("parity mismatch exits 2",
                  run_cli("couple --n 3 --j 1 --m 0", Stderr::Drop).exit_code == 2);
}

struct Criterion {
    std::string name;
    std::function<void(Checker&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"single spin-1/2 moments and both vector choices", single_half_moments},
        {"aligned two-spin state: quadrature noise and composed vector", aligned_pair},
        {"triplet m=0: positive correlation doubles the transverse noise", triplet_mid},
        {"singlet: anti-correlation cancels the total vector", singlet},
        {"stretched states N=1..10: uncorrelated quadrature family", stretched_family},
        {"every canonical (j,m) for N<=8: eigenvalues, sum rule, budget identity",
         canonical_families},
        {"operator algebra: commutators and squared-component sums", operator_algebra},
        {"streaming site application equals dense embedding on random states",
         streaming_equivalence},
        {"effective unit sqrt(1+1/j): values and monotone decay", effective_unit_family},
        {"measurement sampler: 5-sigma agreement at one million draws, reproducible",
         sampler_statistics},
        {"command line: verification table, schema-valid reports, usage errors",
         cli_and_schema},
    };

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Checker checker;
        std::string aborted;
        try {
            criteria[k].body(checker);
        } catch (const std::exception& e) {
            aborted = e.what();
        }
        const bool ok = aborted.empty() && checker.failures().empty();
        std::printf("%s  %2zu  %s\n", ok ? "PASS" : "FAIL", k + 1, criteria[k].name.c_str());
        std::fflush(stdout);
        if (!ok) {
            ++failed;
            if (!aborted.empty()) std::cerr << "      exception: " << aborted << "\n";
            for (const std::string& f : checker.failures()) std::cerr << "      " << f << "\n";
        }
    }
    if (failed > 0) std::cerr << failed << " criteria failed\n";
    return failed == 0 ? 0 : 1;
}
