#include "spinvec/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace spinvec {

namespace {

using nlohmann::ordered_json;

ordered_json vec3(const ThreeVector& v) { return ordered_json::array({v[0], v[1], v[2]}); }

ordered_json matrix_json(const std::vector<double>& m, int n) {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < n; ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < n; ++c) row.push_back(m[r * n + c]);
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json axes_json(const std::array<AxisSummary, 3>& axes) {
    ordered_json out = ordered_json::array();
    for (const AxisSummary& s : axes)
        out.push_back({{"axis", axis_name(s.axis)},
                       {"choice_a", s.choice_a},
                       {"choice_b", s.choice_b},
                       {"second_moment", s.second_moment},
                       {"variance", s.variance},
                       {"classification", classification_name(s.classification)}});
    return out;
}

ordered_json amplitudes_json(const StateVector& v) {
    ordered_json out = ordered_json::array();
    for (std::size_t k = 0; k < v.dim(); ++k)
        out.push_back(ordered_json::array({v.amplitude(k).real(), v.amplitude(k).imag()}));
    return out;
}

ordered_json state_json(const CoupledState& state) {
    return {{"n_sites", state.system.n_sites()},
            {"twice_j", state.twice_j},
            {"twice_m", state.twice_m},
            {"provenance", provenance_name(state.provenance)},
            {"coupling_path", state.coupling_path},
            {"amplitudes", amplitudes_json(state.vector)}};
}

ordered_json comparison_json(const SamplerComparison& cmp) {
    const int n = static_cast<int>(cmp.exact.site_mean.size());
    ordered_json rows = ordered_json::array();
    for (const ConsistencyRow& r : cmp.rows)
        rows.push_back({{"name", r.name},
                        {"exact", r.exact},
                        {"empirical", r.empirical},
                        {"standard_error", r.standard_error},
                        {"tolerance", r.tolerance},
                        {"ok", r.ok}});
    return {{"axis", axis_name(cmp.axis)},
            {"n_samples", cmp.n_samples},
            {"seed", cmp.seed},
            {"exact",
             {{"site_mean", cmp.exact.site_mean},
              {"site_variance", cmp.exact.site_variance},
              {"pair_moment", matrix_json(cmp.exact.pair_moment, n)},
              {"total_mean", cmp.exact.total_mean},
              {"total_variance", cmp.exact.total_variance},
              {"total_fourth_central", cmp.exact.total_fourth_central}}},
            {"empirical",
             {{"site_mean", cmp.empirical.site_mean},
              {"site_mean_se", cmp.empirical.site_mean_se},
              {"site_variance", cmp.empirical.site_variance},
              {"site_variance_se", cmp.empirical.site_variance_se},
              {"pair_moment", matrix_json(cmp.empirical.pair_moment, n)},
              {"pair_moment_se", matrix_json(cmp.empirical.pair_moment_se, n)},
              {"total_mean", cmp.empirical.total_mean},
              {"total_mean_se", cmp.empirical.total_mean_se},
              {"total_variance", cmp.empirical.total_variance},
              {"total_variance_se", cmp.empirical.total_variance_se}}},
            {"rows", std::move(rows)},
            {"consistent", cmp.consistent}};
}

ordered_json budgets_json(const std::array<NoiseBudget, 3>& budgets, int n) {
    ordered_json out = ordered_json::array();
    for (const NoiseBudget& b : budgets) {
        std::vector<double> cov(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (i != k) cov[i * n + k] = b.covariance(i + 1, k + 1, n);
        out.push_back({{"axis", axis_name(b.axis)},
                       {"site_variances", b.site_variances},
                       {"covariance_matrix", matrix_json(cov, n)},
                       {"uncorrelated", b.uncorrelated},
                       {"correlation", b.correlation},
                       {"total", b.total},
                       {"correlation_class", correlation_class_name(b.correlation_class)}});
    }
    return out;
}

constexpr const char* kUnitsNote = "angular momentum in units of hbar";

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(9) << x;
    return os.str();
}

std::string fmt_vec(const ThreeVector& v) {
    return "(" + fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]) + ")";
}

std::string fmt_half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

void print_axis_table(std::ostream& os, const std::array<AxisSummary, 3>& axes) {
    os << "  axis  " << std::left << std::setw(14) << "<J_a>" << std::setw(14) << "rms"
       << std::setw(14) << "<J_a^2>" << std::setw(14) << "Delta J_a^2" << "class\n";
    for (const AxisSummary& s : axes)
        os << "  " << axis_name(s.axis) << "     " << std::left << std::setw(14)
           << fmt(s.choice_a) << std::setw(14) << fmt(s.choice_b) << std::setw(14)
           << fmt(s.second_moment) << std::setw(14) << fmt(s.variance)
           << classification_name(s.classification) << "\n";
}

void print_matrix(std::ostream& os, const std::vector<double>& m, int n) {
    for (int r = 0; r < n; ++r) {
        os << "    ";
        for (int c = 0; c < n; ++c) os << std::left << std::setw(14) << fmt(m[r * n + c]);
        os << "\n";
    }
}

void print_comparison(std::ostream& os, const SamplerComparison& cmp) {
    os << "  axis " << axis_name(cmp.axis) << ", n = " << cmp.n_samples
       << ", seed = " << cmp.seed << ":\n";
    os << "  " << std::left << std::setw(22) << "quantity" << std::setw(14) << "exact"
       << std::setw(14) << "empirical" << std::setw(14) << "std error" << "ok\n";
    for (const ConsistencyRow& r : cmp.rows)
        os << "  " << std::left << std::setw(22) << r.name << std::setw(14) << fmt(r.exact)
           << std::setw(14) << fmt(r.empirical) << std::setw(14) << fmt(r.standard_error)
           << (r.ok ? "yes" : "NO") << "\n";
    os << "  consistent at 5 standard errors: " << (cmp.consistent ? "yes" : "NO") << "\n";
}

}  // namespace

SingleReport single_report(int twice_j, int twice_m) {
    if (twice_j < 0) throw std::invalid_argument("single_report: j must be >= 0");
    if (std::abs(twice_m) > twice_j || (twice_j - twice_m) % 2 != 0)
        throw std::invalid_argument(
            "single_report: m must satisfy |m| <= j and step from j by integers");
    const SpinQuantumNumber j = SpinQuantumNumber::from_twice(twice_j);
    const TotalAngularMomentum total(j);
    const StateVector state = StateVector::basis_state(j.dimension(), (twice_j - twice_m) / 2);

    SingleReport rep{twice_j, twice_m, {}, {}, {}, 0.0, 0.0, std::nullopt};
    rep.choice_a = vector_choice_a(total, state);
    rep.choice_b = vector_choice_b(total, state);
    rep.magnitude_a_sq = magnitude_squared(rep.choice_a);
    rep.magnitude_b_sq = choice_b_magnitude_squared(total, state);
    for (int a = 0; a < 3; ++a) {
        const Axis axis = kAxes[a];
        rep.axes[a] = AxisSummary{axis,
                                  rep.choice_a[a],
                                  rep.choice_b[a],
                                  total.second_moment(axis, state),
                                  variance(total, axis, state),
                                  classify_component(total, axis, state)};
    }
    if (twice_j > 0) rep.effective_unit = effective_unit(j);
    return rep;
}

nlohmann::ordered_json single_document(const SingleReport& report) {
    ordered_json doc{{"schema_version", kSchemaVersion},
                     {"kind", "single"},
                     {"request", {{"twice_j", report.twice_j}, {"twice_m", report.twice_m}}},
                     {"quantum_numbers",
                      {{"j", 0.5 * report.twice_j}, {"m", 0.5 * report.twice_m}}},
                     {"axes", axes_json(report.axes)},
                     {"choice_a", vec3(report.choice_a)},
                     {"choice_b", vec3(report.choice_b)},
                     {"magnitude_a_squared", report.magnitude_a_sq},
                     {"magnitude_b_squared", report.magnitude_b_sq}};
    if (report.effective_unit) doc["effective_unit"] = *report.effective_unit;
    return doc;
}

nlohmann::ordered_json couple_document(const CoupledState& state, const VectorModelReport& report,
                                       const std::vector<SamplerComparison>& sampling) {
    const int n = state.system.n_sites();
    ordered_json site_vectors = ordered_json::array();
    for (const ThreeVector& v : report.site_vectors) site_vectors.push_back(vec3(v));

    ordered_json doc{
        {"schema_version", kSchemaVersion},
        {"kind", "couple"},
        {"request",
         {{"n_sites", n}, {"twice_j", state.twice_j}, {"twice_m", state.twice_m}}},
        {"quantum_numbers", {{"j", state.j()}, {"m", state.m()}}},
        {"state", state_json(state)},
        {"axes", axes_json(report.axes)},
        {"choice_a",
         vec3({report.axes[0].choice_a, report.axes[1].choice_a, report.axes[2].choice_a})},
        {"choice_b",
         vec3({report.axes[0].choice_b, report.axes[1].choice_b, report.axes[2].choice_b})},
        {"site_vectors", std::move(site_vectors)},
        {"site_z_expectations", report.site_z_expectations},
        {"site_z_signs", report.site_z_signs},
        {"correlation_matrices",
         {{"x", matrix_json(report.correlation_matrices[0], n)},
          {"y", matrix_json(report.correlation_matrices[1], n)},
          {"z", matrix_json(report.correlation_matrices[2], n)}}},
        {"budgets", budgets_json(report.budgets, n)},
        {"composed", vec3(report.composed)},
        {"naive_sum", vec3(report.naive_sum)},
        {"magnitude_a_squared", report.magnitude_a_sq},
        {"magnitude_b_squared", report.magnitude_b_sq},
        {"naive_magnitude_squared", report.naive_magnitude_sq},
        {"composition_residual", report.composition_residual}};
    if (report.effective_unit) doc["effective_unit"] = *report.effective_unit;
    if (!sampling.empty()) {
        ordered_json arr = ordered_json::array();
        for (const SamplerComparison& cmp : sampling) arr.push_back(comparison_json(cmp));
        doc["sampling"] = std::move(arr);
    }
    return doc;
}

nlohmann::ordered_json sample_document(const CoupledState& state, const SamplerComparison& cmp) {
    return {{"schema_version", kSchemaVersion},
            {"kind", "sample"},
            {"request",
             {{"n_sites", state.system.n_sites()},
              {"twice_j", state.twice_j},
              {"twice_m", state.twice_m},
              {"axis", axis_name(cmp.axis)},
              {"n_samples", cmp.n_samples},
              {"seed", cmp.seed}}},
            {"quantum_numbers", {{"j", state.j()}, {"m", state.m()}}},
            {"state", state_json(state)},
            {"sampling", comparison_json(cmp)}};
}

std::string single_text(const SingleReport& report) {
    std::ostringstream os;
    os << "single particle |j,m> report (" << kUnitsNote << ")\n";
    os << "  j = " << fmt_half(report.twice_j) << ", m = " << fmt_half(report.twice_m) << "\n\n";
    print_axis_table(os, report.axes);
    os << "\n";
    os << "  choice A vector " << fmt_vec(report.choice_a)
       << "   magnitude^2 = " << fmt(report.magnitude_a_sq) << "\n";
    os << "  choice B vector " << fmt_vec(report.choice_b)
       << "   magnitude^2 = " << fmt(report.magnitude_b_sq) << "  (= j(j+1))\n";
    if (report.effective_unit)
        os << "  effective unit sqrt(1 + 1/j) = " << fmt(*report.effective_unit) << "\n";
    return os.str();
}

std::string couple_text(const CoupledState& state, const VectorModelReport& report,
                        const std::vector<SamplerComparison>& sampling) {
    const int n = state.system.n_sites();
    std::ostringstream os;
    os << "coupled |j,m> report, " << n << " spin-1/2 sites (" << kUnitsNote << ")\n";
    os << "  j = " << fmt_half(state.twice_j) << ", m = " << fmt_half(state.twice_m)
       << ", construction: " << provenance_name(state.provenance);
    if (!state.coupling_path.empty()) {
        os << ", path 2j = [";
        for (std::size_t i = 0; i < state.coupling_path.size(); ++i)
            os << (i ? " " : "") << state.coupling_path[i];
        os << "]";
    }
    os << "\n\n";
    print_axis_table(os, report.axes);

    os << "\n  site vectors (Delta S_x, Delta S_y, signed z):\n";
    for (int i = 0; i < n; ++i)
        os << "    site " << (i + 1) << ": " << fmt_vec(report.site_vectors[i])
           << "   <S_z> = " << fmt(report.site_z_expectations[i]) << "\n";

    for (int a = 0; a < 3; ++a) {
        os << "\n  <S_" << axis_name(kAxes[a]) << ",i S_" << axis_name(kAxes[a])
           << ",k> matrix:\n";
        print_matrix(os, report.correlation_matrices[a], n);
    }

    os << "\n  noise budgets (Delta J_a^2 = site variances + 2 * pair covariances):\n";
    os << "  " << std::left << std::setw(6) << "axis" << std::setw(16) << "uncorrelated"
       << std::setw(16) << "correlation" << std::setw(16) << "total" << "class\n";
    for (const NoiseBudget& b : report.budgets)
        os << "  " << std::left << std::setw(6) << axis_name(b.axis) << std::setw(16)
           << fmt(b.uncorrelated) << std::setw(16) << fmt(b.correlation) << std::setw(16)
           << fmt(b.total) << correlation_class_name(b.correlation_class) << "\n";

    os << "\n  composed vector  " << fmt_vec(report.composed)
       << "   magnitude^2 = " << fmt(report.magnitude_b_sq) << "\n";
    os << "  naive direct sum " << fmt_vec(report.naive_sum)
       << "   magnitude^2 = " << fmt(report.naive_magnitude_sq) << "\n";
    os << "  composition residual vs choice B: " << fmt(report.composition_residual) << "\n";
    if (report.effective_unit)
        os << "  effective unit sqrt(1 + 1/j) = " << fmt(*report.effective_unit) << "\n";

    if (!sampling.empty()) {
        os << "\n  measurement sampling cross-check:\n";
        for (const SamplerComparison& cmp : sampling) print_comparison(os, cmp);
    }
    return os.str();
}

std::string sample_text(const CoupledState& state, const SamplerComparison& cmp) {
    std::ostringstream os;
    os << "measurement sampling report, " << state.system.n_sites() << " spin-1/2 sites ("
       << kUnitsNote << ")\n";
    os << "  j = " << fmt_half(state.twice_j) << ", m = " << fmt_half(state.twice_m) << "\n\n";
    print_comparison(os, cmp);
    return os.str();
}

}  // namespace spinvec
