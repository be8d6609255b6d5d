#pragma once

#include <span>

#include "spinvec/linalg.hpp"
#include "spinvec/spin_ops.hpp"
#include "spinvec/types.hpp"

namespace spinvec {

/// N spin-1/2 sites with product dimension 2^N.
///
/// Basis convention: basis index k encodes one z-projection pattern, with
/// site 1 on the most significant bit; bit 0 means up (m = +1/2), bit 1 means
/// down. The all-up pattern is index 0.
class SpinSystem {
public:
    explicit SpinSystem(int n_sites);

    int n_sites() const { return n_sites_; }
    std::size_t dim() const { return std::size_t{1} << n_sites_; }

    /// Zero-based bit position of a 1-based site index.
    int bit_of_site(int site) const { return n_sites_ - site; }

    bool valid_site(int site) const { return site >= 1 && site <= n_sites_; }

    friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

private:
    int n_sites_;
};

/// One single-particle spin component attached to a site of a system,
/// e.g. S_x of particle 2.
struct SiteOperator {
    SpinSystem system;
    int site;  // 1-based
    Axis axis;

    SiteOperator(SpinSystem system_, int site_, Axis axis_);

    ComplexMatrix dense() const;
    Amplitudes apply(std::span<const Complex> state) const;
};

/// Embeds a 2x2 single-particle operator at the given site: identity on every
/// other site.
ComplexMatrix embed(const ComplexMatrix& op_single, int site, const SpinSystem& system);

/// Streaming equivalent of matvec(embed(op, site, system), state); never
/// materializes the dim x dim matrix. The result is not normalized.
Amplitudes apply_site(const ComplexMatrix& op_single, int site, const SpinSystem& system,
                      std::span<const Complex> state);
Amplitudes apply_site(const ComplexMatrix& op_single, int site, const SpinSystem& system,
                      const StateVector& state);

/// The three total components J_a = sum_i S_{a,i} of either N spin-1/2 sites
/// or one spin-j particle, exposed as streaming appliers. Dense matrices are
/// available below the dense-dimension cap.
class TotalAngularMomentum {
public:
    explicit TotalAngularMomentum(SpinSystem system);
    explicit TotalAngularMomentum(SpinQuantumNumber j);

    std::size_t dim() const;

    Amplitudes apply(Axis axis, std::span<const Complex> state) const;
    Amplitudes apply(Axis axis, const StateVector& state) const;

    /// Re <v|J_a|v>.
    double component_expectation(Axis axis, const StateVector& state) const;
    /// <v|J_a^2|v> = |J_a v|^2.
    double second_moment(Axis axis, const StateVector& state) const;

    ComplexMatrix dense(Axis axis) const;

private:
    bool is_composite_;
    SpinSystem system_;
    // Single-particle path keeps the three dense components.
    ComplexMatrix single_[3];
};

ComplexMatrix total_component(Axis axis, const SpinSystem& system);

/// <J^2> = sum_a <J_a^2>; equals j(j+1) on any coupled |j,m> state.
double total_j_squared(const SpinSystem& system, const StateVector& state);

}  // namespace spinvec
