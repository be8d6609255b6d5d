#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinvec/composite.hpp"
#include "spinvec/linalg.hpp"

namespace spinvec {

enum class Provenance { Explicit, Lowering, SequentialCoupling };

const char* provenance_name(Provenance p);

/// A total-angular-momentum eigenstate |j,m> of N spin-1/2 sites.
///
/// For j < N/2 the (j,m) pair does not identify the state uniquely; the
/// coupling path (the ordered intermediate 2j values of the site-by-site
/// coupling ladder, from site 1 through site N) resolves the degeneracy and
/// is part of the state's identity.
struct CoupledState {
    SpinSystem system;
    int twice_j;
    int twice_m;
    StateVector vector;
    Provenance provenance;
    std::vector<int> coupling_path;  // empty unless provenance is SequentialCoupling

    double j() const { return 0.5 * twice_j; }
    double m() const { return 0.5 * twice_m; }
    /// j(j+1).
    double casimir() const { return 0.25 * twice_j * (twice_j + 2.0); }
};

/// Clebsch-Gordan coefficient <j1,m1; 1/2,m2 | J,M> for coupling a spin-1/2
/// to spin j1, Condon-Shortley convention. All arguments are twice the
/// quantum numbers; twice_j2 must be 1. Selection-rule violations return
/// exactly 0.
double cg_coefficient(int twice_j1, int twice_m1, int twice_j2, int twice_m2, int twice_J,
                      int twice_M);

/// Whether (j,m) labels an eigenstate of some N-site coupling:
/// |m| <= j <= N/2 and 2j of the same parity as N.
bool admissible(const SpinSystem& system, int twice_j, int twice_m);

/// Product state with every site up: j = m = N/2.
CoupledState stretched_state(const SpinSystem& system);

/// Applies J- and renormalizes: |j,m> -> |j,m-1>. Throws if m = -j.
CoupledState lower(const CoupledState& state);

/// The textbook two-spin states: triplet (j=1, m in {1,0,-1}) and singlet
/// (j=0, m=0), the latter with positive amplitude on |up,down>.
CoupledState two_spin_state(int twice_j, int twice_m);

/// The canonical coupling path to (N, j): stay at maximal intermediate j as
/// long as possible, descend at the end. Returned as twice-j values, one per
/// site, starting at 1 and ending at twice_j.
std::vector<int> canonical_path(int n_sites, int twice_j);

/// Every valid coupling path from one site to (n_sites, twice_j); the number
/// of paths equals the multiplicity of the j block.
std::vector<std::vector<int>> all_coupling_paths(int n_sites, int twice_j);

/// General |j,m> construction. For j = N/2 and no explicit path this lowers
/// the stretched state; otherwise spin-1/2 sites are coupled sequentially
/// along the given path (default: canonical). The global phase is fixed by
/// making the first nonzero amplitude real positive.
CoupledState coupled_state(const SpinSystem& system, int twice_j, int twice_m,
                           const std::optional<std::vector<int>>& path = std::nullopt);

}  // namespace spinvec
