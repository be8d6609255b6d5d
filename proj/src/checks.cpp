#include "spinvec/checks.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "spinvec/analysis.hpp"
#include "spinvec/report.hpp"

namespace spinvec {

namespace {

class TableBuilder {
public:
    explicit TableBuilder(double tolerance) : tolerance_(tolerance) {}

    void add(const std::string& description, double expected, double actual) {
        std::ostringstream id;
        id << "T" << std::setw(2) << std::setfill('0') << items_.size() + 1;
        const bool pass = std::abs(actual - expected) <= tolerance_;
        items_.push_back({id.str(), description, expected, actual, tolerance_, pass});
    }

    CheckTable finish() {
        bool all = true;
        for (const CheckItem& item : items_)
            if (!item.pass) all = false;
        return {std::move(items_), all};
    }

private:
    double tolerance_;
    std::vector<CheckItem> items_;
};

double max_vec_diff(const ThreeVector& a, const ThreeVector& b) {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double max_commutator_deviation(const ComplexMatrix& jx, const ComplexMatrix& jy,
                                const ComplexMatrix& jz) {
    const ComplexMatrix lhs = jx * jy - jy * jx;
    return max_abs_diff(lhs, Complex{0.0, 1.0} * jz);
}

}  // namespace

CheckTable value_table(double tolerance) {
    TableBuilder t(tolerance);
    const double r2 = std::sqrt(2.0);

    // Single spin-1/2 up.
    {
        const SingleReport rep = single_report(1, 1);
        t.add("spin-1/2 up: <S_z>", 0.5, rep.choice_a[2]);
        t.add("spin-1/2 up: <S_x>", 0.0, rep.choice_a[0]);
        t.add("spin-1/2 up: <S_y>", 0.0, rep.choice_a[1]);
        t.add("spin-1/2 up: Delta S_x^2", 0.25, rep.axes[0].variance);
        t.add("spin-1/2 up: Delta S_y^2", 0.25, rep.axes[1].variance);
        t.add("spin-1/2 up: choice A magnitude^2", 0.25, rep.magnitude_a_sq);
        t.add("spin-1/2 up: max |choice B - (1/2,1/2,1/2)|", 0.0,
              max_vec_diff(rep.choice_b, {0.5, 0.5, 0.5}));
        t.add("spin-1/2 up: choice B magnitude^2 = s(s+1)", 0.75, rep.magnitude_b_sq);
    }

    // One unit of angular momentum: magnitude sqrt(2), not 1.
    t.add("single spin-1, m=0: <J^2>", 2.0, single_report(2, 0).magnitude_b_sq);

    // Two aligned spins |1,1>.
    {
        const CoupledState st = two_spin_state(2, 2);
        const VectorModelReport rep = vector_sum_report(st);
        t.add("|1,1>: <J^2>", 2.0, rep.magnitude_b_sq);
        t.add("|1,1>: pair correlation <S_x1 S_x2>", 0.0, pair_correlation(st, Axis::X, 1, 2));
        t.add("|1,1>: Delta J_x^2 (quadrature sum 1/4 + 1/4)", 0.5, rep.budgets[0].total);
        t.add("|1,1>: max |composed - (1/sqrt2, 1/sqrt2, 1)|", 0.0,
              max_vec_diff(rep.composed, {1.0 / r2, 1.0 / r2, 1.0}));
        t.add("|1,1>: naive direct-sum magnitude^2", 3.0, rep.naive_magnitude_sq);
    }

    // Symmetric two-spin combination, m = 0.
    {
        const CoupledState st = two_spin_state(2, 0);
        const VectorModelReport rep = vector_sum_report(st);
        t.add("triplet m=0: pair correlation <S_x1 S_x2>", 0.25,
              pair_correlation(st, Axis::X, 1, 2));
        t.add("triplet m=0: Delta J_x^2", 1.0, rep.budgets[0].total);
        t.add("triplet m=0: Delta J_y^2", 1.0, rep.budgets[1].total);
        t.add("triplet m=0: max |composed - (1,1,0)|", 0.0,
              max_vec_diff(rep.composed, {1.0, 1.0, 0.0}));
        t.add("triplet m=0: <J^2>", 2.0, rep.magnitude_b_sq);
    }

    // Antisymmetric two-spin combination.
    {
        const CoupledState st = two_spin_state(0, 0);
        const VectorModelReport rep = vector_sum_report(st);
        t.add("singlet: pair correlation <S_x1 S_x2>", -0.25,
              pair_correlation(st, Axis::X, 1, 2));
        t.add("singlet: Delta J_x^2", 0.0, rep.budgets[0].total);
        t.add("singlet: Delta J_y^2", 0.0, rep.budgets[1].total);
        t.add("singlet: max |composed|", 0.0, max_vec_diff(rep.composed, {0.0, 0.0, 0.0}));
        t.add("singlet: <J^2>", 0.0, rep.magnitude_b_sq);
        t.add("singlet: site fluctuation Delta S_x1^2 stays 1/4", 0.25,
              rep.budgets[0].site_variances[0]);
    }

    // Stretched four-spin state, j = 2.
    {
        const CoupledState st = stretched_state(SpinSystem(4));
        const VectorModelReport rep = vector_sum_report(st);
        double max_pair = 0.0;
        for (int i = 1; i <= 4; ++i)
            for (int k = i + 1; k <= 4; ++k)
                max_pair = std::max(max_pair, std::abs(pair_correlation(st, Axis::X, i, k)));
        t.add("stretched N=4: max |pair correlation|", 0.0, max_pair);
        t.add("stretched N=4: Delta J_x^2 = j/2", 1.0, rep.budgets[0].total);
        t.add("stretched N=4: max |composed - (1,1,2)|", 0.0,
              max_vec_diff(rep.composed, {1.0, 1.0, 2.0}));
        t.add("stretched N=4: <J^2> = j(j+1)", 6.0, rep.magnitude_b_sq);
    }

    // Stretched states N = 1..10: uncorrelated sites, quadrature sum j/2.
    {
        double dev_var = 0.0, dev_pair = 0.0, dev_mag = 0.0;
        for (int n = 1; n <= 10; ++n) {
            const CoupledState st = stretched_state(SpinSystem(n));
            const double j = 0.5 * n;
            const NoiseBudget bx = noise_budget(st, Axis::X);
            dev_var = std::max(dev_var, std::abs(bx.total - 0.5 * j));
            for (double c : bx.pair_covariances) dev_pair = std::max(dev_pair, std::abs(c));
            const TotalAngularMomentum total(st.system);
            dev_mag = std::max(
                dev_mag,
                std::abs(choice_b_magnitude_squared(total, st.vector) - st.casimir()));
        }
        t.add("stretched N=1..10: max |Delta J_x^2 - j/2|", 0.0, dev_var);
        t.add("stretched N=1..10: max |pair covariance|", 0.0, dev_pair);
        t.add("stretched N=1..10: max |magnitude_b^2 - j(j+1)|", 0.0, dev_mag);
    }

    // Every canonical |j,m> with N <= 8 sites.
    {
        double dev_jsq = 0.0, dev_jz = 0.0, dev_transverse = 0.0;
        double dev_budget = 0.0, dev_compose = 0.0;
        for (int n = 1; n <= 8; ++n) {
            const SpinSystem system(n);
            const TotalAngularMomentum total(system);
            for (int tj = n % 2; tj <= n; tj += 2)
                for (int tm = -tj; tm <= tj; tm += 2) {
                    const CoupledState st = coupled_state(system, tj, tm);
                    const VectorModelReport rep = vector_sum_report(st);
                    dev_jsq = std::max(dev_jsq, std::abs(rep.magnitude_b_sq - st.casimir()));
                    dev_jz = std::max(dev_jz, std::abs(rep.axes[2].choice_a - st.m()));
                    dev_transverse = std::max({dev_transverse, std::abs(rep.axes[0].choice_a),
                                               std::abs(rep.axes[1].choice_a)});
                    for (int a = 0; a < 3; ++a) {
                        const double var = variance(total, kAxes[a], st.vector);
                        dev_budget = std::max(dev_budget,
                                              std::abs(rep.budgets[a].total - var));
                    }
                    dev_compose = std::max(dev_compose, rep.composition_residual);
                }
        }
        t.add("all |j,m>, N<=8: max |<J^2> - j(j+1)|", 0.0, dev_jsq);
        t.add("all |j,m>, N<=8: max |<J_z> - m|", 0.0, dev_jz);
        t.add("all |j,m>, N<=8: max |<J_x>|, |<J_y>|", 0.0, dev_transverse);
        t.add("all |j,m>, N<=8: max noise-budget deviation from Delta J_a^2", 0.0, dev_budget);
        t.add("all |j,m>, N<=8: max |composed - choice B|", 0.0, dev_compose);
    }

    // Effective unit of angular momentum.
    {
        t.add("effective unit at j=1/2 is sqrt(3)", std::sqrt(3.0),
              effective_unit(SpinQuantumNumber::from_twice(1)));
        t.add("effective unit at j=1 is sqrt(2)", r2,
              effective_unit(SpinQuantumNumber::from_twice(2)));
        double violation = 0.0;
        double prev = effective_unit(SpinQuantumNumber::from_twice(1));
        for (int tj = 2; tj <= 50; ++tj) {
            const double cur = effective_unit(SpinQuantumNumber::from_twice(tj));
            violation = std::max({violation, cur - prev, 1.0 - cur});
            prev = cur;
        }
        t.add("effective unit decreases toward 1 over j=1/2..25", 0.0, std::max(0.0, violation));
    }

    // Component algebra realized by the constructed operators.
    {
        double dev = 0.0;
        for (int tj = 1; tj <= 8; ++tj) {
            const SpinQuantumNumber j = SpinQuantumNumber::from_twice(tj);
            dev = std::max(dev, max_commutator_deviation(build_sx(j), build_sy(j), build_sz(j)));
            ComplexMatrix casimir = build_sx(j) * build_sx(j) + build_sy(j) * build_sy(j) +
                                    build_sz(j) * build_sz(j);
            dev = std::max(dev,
                           max_abs_diff(casimir, Complex{j.casimir(), 0.0} *
                                                     ComplexMatrix::identity(j.dimension())));
        }
        for (int n = 2; n <= 5; ++n) {
            const SpinSystem system(n);
            dev = std::max(dev, max_commutator_deviation(total_component(Axis::X, system),
                                                         total_component(Axis::Y, system),
                                                         total_component(Axis::Z, system)));
        }
        t.add("commutator and Casimir identities, spins and composites", 0.0, dev);
    }

    return t.finish();
}

nlohmann::ordered_json table_document(const CheckTable& table, double tolerance) {
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const CheckItem& item : table.items)
        items.push_back({{"id", item.id},
                         {"description", item.description},
                         {"expected", item.expected},
                         {"actual", item.actual},
                         {"tolerance", item.tolerance},
                         {"pass", item.pass}});
    return {{"schema_version", kSchemaVersion},
            {"kind", "paper-table"},
            {"request", {{"tolerance", tolerance}}},
            {"items", std::move(items)},
            {"all_pass", table.all_pass}};
}

std::string table_text(const CheckTable& table) {
    std::ostringstream os;
    os << "reference value table (angular momentum in units of hbar)\n";
    for (const CheckItem& item : table.items) {
        os << "  " << (item.pass ? "PASS" : "FAIL") << "  " << item.id << "  " << std::left
           << std::setw(58) << item.description << " expected " << std::setprecision(12)
           << item.expected << ", got " << std::setprecision(12) << item.actual;
        if (!item.pass)
            os << "  (|delta| = " << std::setprecision(6)
               << std::abs(item.actual - item.expected) << " > " << item.tolerance << ")";
        os << "\n";
    }
    os << (table.all_pass ? "all items PASS" : "some items FAIL") << "\n";
    return os.str();
}

}  // namespace spinvec
