#include "spinvec/coupling.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace spinvec {

namespace {

// Rotates the global phase so the first nonzero amplitude is real positive.
Amplitudes fix_phase(Amplitudes amps) {
    for (const Complex& a : amps) {
        if (std::abs(a) > kAlgebraTol) {
            const Complex rot = std::conj(a) / std::abs(a);
            for (Complex& b : amps) b *= rot;
            return amps;
        }
    }
    return amps;
}

void validate_path(const SpinSystem& system, int twice_j, const std::vector<int>& path) {
    const int n = system.n_sites();
    if (static_cast<int>(path.size()) != n)
        throw std::invalid_argument("coupling path must list one 2j value per site");
    if (path.front() != 1)
        throw std::invalid_argument("coupling path must start at 2j = 1 (one spin-1/2)");
    if (path.back() != twice_j)
        throw std::invalid_argument("coupling path must end at the requested 2j");
    for (int k = 0; k < n; ++k) {
        if (path[k] < 0 || path[k] > k + 1)
            throw std::invalid_argument("coupling path value out of range");
        if (k > 0 && std::abs(path[k] - path[k - 1]) != 1)
            throw std::invalid_argument("coupling path must change j by 1/2 per site");
    }
}

// Couples sites 1..N one at a time along the path, keeping for each level a
// table of |j_level, m> amplitude vectors. Appending site k shifts existing
// basis indices left by one bit (site k is the new least significant bit).
Amplitudes sequential_coupling(const SpinSystem& system, const std::vector<int>& path,
                               int twice_m_target) {
    const int n = system.n_sites();
    std::map<int, Amplitudes> level;  // twice_m -> amplitudes over 2^k states
    level[1] = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    level[-1] = {Complex{0.0, 0.0}, Complex{1.0, 0.0}};

    for (int k = 2; k <= n; ++k) {
        const int t_prev = path[k - 2];
        const int t_cur = path[k - 1];
        const std::size_t dim = std::size_t{1} << k;
        std::map<int, Amplitudes> next;
        for (int tm = -t_cur; tm <= t_cur; tm += 2) {
            // Only m values that can still reach the target matter.
            if (std::abs(tm - twice_m_target) > n - k) continue;
            Amplitudes amps(dim, Complex{0.0, 0.0});
            bool nonzero = false;
            for (int tm2 : {+1, -1}) {
                const int tm1 = tm - tm2;
                if (std::abs(tm1) > t_prev) continue;
                auto it = level.find(tm1);
                if (it == level.end()) continue;
                const double c = cg_coefficient(t_prev, tm1, 1, tm2, t_cur, tm);
                if (c == 0.0) continue;
                const std::size_t down = (tm2 == +1) ? 0 : 1;
                const Amplitudes& prev = it->second;
                for (std::size_t idx = 0; idx < prev.size(); ++idx) {
                    if (prev[idx] == Complex{0.0, 0.0}) continue;
                    amps[(idx << 1) | down] += c * prev[idx];
                    nonzero = true;
                }
            }
            if (nonzero) next[tm] = std::move(amps);
        }
        level = std::move(next);
    }

    auto it = level.find(twice_m_target);
    if (it == level.end())
        throw std::logic_error("sequential coupling produced no state for the requested m");
    return it->second;
}

}  // namespace

const char* provenance_name(Provenance p) {
    switch (p) {
    case Provenance::Explicit: return "explicit";
    case Provenance::Lowering: return "lowering";
    default: return "sequential-coupling";
    }
}

double cg_coefficient(int twice_j1, int twice_m1, int twice_j2, int twice_m2, int twice_J,
                      int twice_M) {
    if (twice_j2 != 1)
        throw std::invalid_argument("cg_coefficient: only spin-1/2 second factors are supported");
    if (twice_j1 < 0) throw std::invalid_argument("cg_coefficient: negative j1");

    // Selection rules; violations are a zero coefficient, not an error.
    if (twice_m2 != 1 && twice_m2 != -1) return 0.0;
    if (twice_M != twice_m1 + twice_m2) return 0.0;
    if (std::abs(twice_m1) > twice_j1 || (twice_j1 - twice_m1) % 2 != 0) return 0.0;
    if (std::abs(twice_M) > twice_J) return 0.0;
    if (twice_J != twice_j1 + 1 && twice_J != twice_j1 - 1) return 0.0;

    // Two-branch closed form for j2 = 1/2:
    //   J = j1 + 1/2:  <m1, +-1/2 | J M> =  sqrt((j1 +- M + 1/2) / (2 j1 + 1))
    //   J = j1 - 1/2:  <m1, +-1/2 | J M> = -+ sqrt((j1 -+ M + 1/2) / (2 j1 + 1))
    const double denom = 2.0 * (twice_j1 + 1);
    if (twice_J == twice_j1 + 1) {
        const int numer = (twice_m2 == 1) ? twice_j1 + twice_M + 1 : twice_j1 - twice_M + 1;
        return std::sqrt(numer / denom);
    }
    if (twice_m2 == 1) return -std::sqrt((twice_j1 - twice_M + 1) / denom);
    return std::sqrt((twice_j1 + twice_M + 1) / denom);
}

bool admissible(const SpinSystem& system, int twice_j, int twice_m) {
    if (twice_j < 0 || twice_j > system.n_sites()) return false;
    if ((system.n_sites() - twice_j) % 2 != 0) return false;
    if (std::abs(twice_m) > twice_j) return false;
    if ((twice_j - twice_m) % 2 != 0) return false;
    return true;
}

CoupledState stretched_state(const SpinSystem& system) {
    return CoupledState{system, system.n_sites(), system.n_sites(),
                        StateVector::basis_state(system.dim(), 0), Provenance::Explicit, {}};
}

CoupledState lower(const CoupledState& state) {
    const int tj = state.twice_j;
    const int tm = state.twice_m;
    if (tm <= -tj)
        throw std::domain_error("lower: m = -j, J- annihilates the state");

    static const ComplexMatrix s_minus =
        build_ladder(SpinQuantumNumber::from_twice(1), Ladder::Lower);
    Amplitudes acc(state.system.dim(), Complex{0.0, 0.0});
    for (int site = 1; site <= state.system.n_sites(); ++site) {
        Amplitudes term = apply_site(s_minus, site, state.system, state.vector);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += term[k];
    }
    // |J-|j,m>| = sqrt(j(j+1) - m(m-1)); exact in quarter-integer units.
    const double norm = 0.5 * std::sqrt(static_cast<double>(tj * (tj + 2) - tm * (tm - 2)));
    for (Complex& a : acc) a /= norm;
    return CoupledState{state.system, tj, tm - 2, StateVector(std::move(acc)),
                        Provenance::Lowering, state.coupling_path};
}

CoupledState two_spin_state(int twice_j, int twice_m) {
    const SpinSystem system(2);
    const double r = 1.0 / std::sqrt(2.0);
    Amplitudes amps(4, Complex{0.0, 0.0});
    if (twice_j == 2 && twice_m == 2) {
        amps[0] = 1.0;  // |up,up>
    } else if (twice_j == 2 && twice_m == 0) {
        amps[1] = r;  // (|up,down> + |down,up>)/sqrt(2)
        amps[2] = r;
    } else if (twice_j == 2 && twice_m == -2) {
        amps[3] = 1.0;  // |down,down>
    } else if (twice_j == 0 && twice_m == 0) {
        amps[1] = r;  // (|up,down> - |down,up>)/sqrt(2)
        amps[2] = -r;
    } else {
        throw std::invalid_argument("two_spin_state: (j,m) must be a triplet or singlet label");
    }
    return CoupledState{system, twice_j, twice_m, StateVector(std::move(amps)),
                        Provenance::Explicit, {}};
}

std::vector<int> canonical_path(int n_sites, int twice_j) {
    std::vector<int> path(static_cast<std::size_t>(n_sites));
    for (int k = 1; k <= n_sites; ++k)
        path[k - 1] = std::min(k, twice_j + (n_sites - k));
    return path;
}

std::vector<std::vector<int>> all_coupling_paths(int n_sites, int twice_j) {
    std::vector<std::vector<int>> out;
    std::vector<int> path{1};
    auto extend = [&](auto&& self, int k, int tj) -> void {
        if (k == n_sites) {
            if (tj == twice_j) out.push_back(path);
            return;
        }
        for (int step : {+1, -1}) {
            const int next = tj + step;
            if (next < 0) continue;
            if (std::abs(next - twice_j) > n_sites - k - 1) continue;
            path.push_back(next);
            self(self, k + 1, next);
            path.pop_back();
        }
    };
    if (n_sites >= 1 && twice_j >= 0 && (n_sites - twice_j) % 2 == 0 && twice_j <= n_sites)
        extend(extend, 1, 1);
    return out;
}

CoupledState coupled_state(const SpinSystem& system, int twice_j, int twice_m,
                           const std::optional<std::vector<int>>& path) {
    if (!admissible(system, twice_j, twice_m))
        throw std::invalid_argument("coupled_state: (j,m) not admissible for this N");

    if (!path.has_value() && twice_j == system.n_sites()) {
        CoupledState state = stretched_state(system);
        while (state.twice_m > twice_m) state = lower(state);
        return state;
    }

    std::vector<int> p = path.value_or(canonical_path(system.n_sites(), twice_j));
    validate_path(system, twice_j, p);

    if (system.n_sites() == 1) {
        return CoupledState{system, twice_j, twice_m,
                            StateVector::basis_state(2, twice_m == 1 ? 0 : 1),
                            Provenance::SequentialCoupling, std::move(p)};
    }

    Amplitudes amps = fix_phase(sequential_coupling(system, p, twice_m));
    return CoupledState{system, twice_j, twice_m, StateVector(std::move(amps)),
                        Provenance::SequentialCoupling, std::move(p)};
}

}  // namespace spinvec
