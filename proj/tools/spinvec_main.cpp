#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinvec/checks.hpp"
#include "spinvec/report.hpp"

namespace {

using namespace spinvec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;
constexpr int kUnset = std::numeric_limits<int>::min();

bool parse_int(const std::string& text, int& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stoi(text, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == text.size();
}

// Quantum numbers are accepted as "2", "-1", or halves like "3/2"; the
// result is twice the value, so half-integers stay exact.
int parse_half(const std::string& text, const std::string& name) {
    const auto slash = text.find('/');
    int value = 0;
    if (slash == std::string::npos) {
        if (parse_int(text, value)) return 2 * value;
    } else if (text.substr(slash + 1) == "2" && parse_int(text.substr(0, slash), value)) {
        return value;
    }
    throw std::invalid_argument(name + " must be an integer or a half like 3/2, got '" + text +
                                "'");
}

// --j/--m fraction options paired with --twice-j/--twice-m integer options.
struct QuantumNumberOptions {
    std::string j_text;
    std::string m_text;
    int twice_j = kUnset;
    int twice_m = kUnset;

    void attach(CLI::App* cmd) {
        cmd->add_option("--j", j_text, "total angular momentum j, e.g. 1 or 3/2");
        cmd->add_option("--m", m_text, "z projection m, e.g. 0 or -1/2");
        cmd->add_option("--twice-j", twice_j, "2j as an integer (alternative to --j)");
        cmd->add_option("--twice-m", twice_m, "2m as an integer (alternative to --m)");
    }

    int resolve_j() const { return resolve(j_text, twice_j, "--j"); }
    int resolve_m() const { return resolve(m_text, twice_m, "--m"); }

private:
    static int resolve(const std::string& text, int twice, const char* name) {
        if (!text.empty() && twice != kUnset)
            throw std::invalid_argument(std::string(name) + " and --twice" + (name + 1) +
                                        " are mutually exclusive");
        if (!text.empty()) return parse_half(text, name);
        if (twice != kUnset) return twice;
        throw std::invalid_argument(std::string("missing ") + name);
    }
};

Axis parse_axis(const std::string& text) {
    if (text == "x") return Axis::X;
    if (text == "y") return Axis::Y;
    if (text == "z") return Axis::Z;
    throw std::invalid_argument("axis must be x, y, or z, got '" + text + "'");
}

int sampler_threads() {
    const char* env = std::getenv("SPINVEC_SAMPLER_THREADS");
    if (env == nullptr) return 1;
    int value = 0;
    if (!parse_int(env, value) || value < 1)
        throw std::invalid_argument("SPINVEC_SAMPLER_THREADS must be a positive integer");
    return value;
}

CoupledState build_coupled(int n_sites, int twice_j, int twice_m,
                           const std::vector<int>& path) {
    const SpinSystem system(n_sites);
    if (!admissible(system, twice_j, twice_m))
        throw std::invalid_argument(
            "(j,m) not admissible: need |m| <= j <= N/2 with 2j of the same parity as N");
    if (path.empty()) return coupled_state(system, twice_j, twice_m);
    return coupled_state(system, twice_j, twice_m, path);
}

void emit(bool as_json, const nlohmann::ordered_json& doc, const std::string& text) {
    if (as_json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fluctuation-based vector model of quantum angular momentum (units of hbar)"};
    app.require_subcommand(1);

    bool as_json = false;
    double tolerance = kTol;
    std::uint64_t seed = 12345;
    app.add_flag("--json", as_json, "emit one JSON document instead of text");
    app.add_option("--tolerance", tolerance, "absolute tolerance for the value table");
    app.add_option("--seed", seed, "RNG seed for measurement sampling");

    auto* single_cmd =
        app.add_subcommand("single", "vector-model report for one spin-j particle in |j,m>");
    QuantumNumberOptions single_qn;
    single_qn.attach(single_cmd);

    auto* couple_cmd = app.add_subcommand(
        "couple", "couple N spin-1/2 sites into |j,m> and decompose its vector model");
    QuantumNumberOptions couple_qn;
    int couple_n = 0;
    std::vector<int> couple_path;
    std::size_t couple_samples = 0;
    couple_cmd->add_option("--n", couple_n, "number of spin-1/2 sites")->required();
    couple_qn.attach(couple_cmd);
    couple_cmd->add_option("--path", couple_path,
                           "coupling path as comma-separated 2j values, one per site")
        ->delimiter(',');
    couple_cmd->add_option(
        "--sample", couple_samples,
        "cross-check with this many measurement samples per axis (0 = skip)");

    auto* table_cmd = app.add_subcommand(
        "paper-table", "recompute the reference value table and report PASS/FAIL per item");

    auto* sample_cmd = app.add_subcommand(
        "sample", "sample joint spin measurements of |j,m> and compare with exact moments");
    QuantumNumberOptions sample_qn;
    int sample_n = 0;
    std::vector<int> sample_path;
    std::string sample_axis = "x";
    std::size_t sample_count = 1000000;
    sample_cmd->add_option("--n", sample_n, "number of spin-1/2 sites")->required();
    sample_qn.attach(sample_cmd);
    sample_cmd->add_option("--path", sample_path,
                           "coupling path as comma-separated 2j values, one per site")
        ->delimiter(',');
    sample_cmd->add_option("--axis", sample_axis, "measured axis: x, y, or z");
    sample_cmd->add_option("--samples", sample_count, "number of joint measurements");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*single_cmd) {
            const SingleReport rep = single_report(single_qn.resolve_j(), single_qn.resolve_m());
            emit(as_json, single_document(rep), single_text(rep));
            return kExitOk;
        }

        if (*couple_cmd) {
            const CoupledState state =
                build_coupled(couple_n, couple_qn.resolve_j(), couple_qn.resolve_m(), couple_path);
            const VectorModelReport rep = vector_sum_report(state);
            std::vector<SamplerComparison> sampling;
            if (couple_samples > 0) {
                const int threads = sampler_threads();
                for (int a = 0; a < 3; ++a)
                    sampling.push_back(compare_to_exact(state.system, state.vector, kAxes[a],
                                                        couple_samples, seed + a, threads));
            }
            emit(as_json, couple_document(state, rep, sampling),
                 couple_text(state, rep, sampling));
            for (const SamplerComparison& cmp : sampling)
                if (!cmp.consistent) return kExitVerification;
            return kExitOk;
        }

        if (*table_cmd) {
            const CheckTable table = value_table(tolerance);
            emit(as_json, table_document(table, tolerance), table_text(table));
            return table.all_pass ? kExitOk : kExitVerification;
        }

        const CoupledState state =
            build_coupled(sample_n, sample_qn.resolve_j(), sample_qn.resolve_m(), sample_path);
        const SamplerComparison cmp =
            compare_to_exact(state.system, state.vector, parse_axis(sample_axis), sample_count,
                             seed, sampler_threads());
        emit(as_json, sample_document(state, cmp), sample_text(state, cmp));
        return cmp.consistent ? kExitOk : kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
