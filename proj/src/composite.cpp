#include "spinvec/composite.hpp"

#include <cmath>
#include <stdexcept>

namespace spinvec {

namespace {

const ComplexMatrix& half_component(Axis axis) {
    static const ComplexMatrix sx = build_sx(SpinQuantumNumber::from_twice(1));
    static const ComplexMatrix sy = build_sy(SpinQuantumNumber::from_twice(1));
    static const ComplexMatrix sz = build_sz(SpinQuantumNumber::from_twice(1));
    switch (axis) {
    case Axis::X: return sx;
    case Axis::Y: return sy;
    default: return sz;
    }
}

void check_site_op(const ComplexMatrix& op_single, int site, const SpinSystem& system) {
    if (op_single.rows() != 2 || op_single.cols() != 2)
        throw std::invalid_argument("site operator must be 2x2");
    if (!system.valid_site(site)) throw std::invalid_argument("site index out of range");
}

}  // namespace

SpinSystem::SpinSystem(int n_sites) : n_sites_(n_sites) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw std::invalid_argument("SpinSystem: n_sites must be in [1, 14]");
}

SiteOperator::SiteOperator(SpinSystem system_, int site_, Axis axis_)
    : system(system_), site(site_), axis(axis_) {
    if (!system.valid_site(site)) throw std::invalid_argument("SiteOperator: site out of range");
}

ComplexMatrix SiteOperator::dense() const { return embed(half_component(axis), site, system); }

Amplitudes SiteOperator::apply(std::span<const Complex> state) const {
    return apply_site(half_component(axis), site, system, state);
}

ComplexMatrix embed(const ComplexMatrix& op_single, int site, const SpinSystem& system) {
    check_site_op(op_single, site, system);
    if (system.dim() > kMaxDenseDim)
        throw std::length_error("embed: dense dimension exceeds cap, use apply_site");
    ComplexMatrix out = (site == 1) ? op_single : ComplexMatrix::identity(2);
    for (int s = 2; s <= system.n_sites(); ++s)
        out = kron(out, (s == site) ? op_single : ComplexMatrix::identity(2));
    return out;
}

Amplitudes apply_site(const ComplexMatrix& op_single, int site, const SpinSystem& system,
                      std::span<const Complex> state) {
    check_site_op(op_single, site, system);
    if (state.size() != system.dim()) throw std::invalid_argument("apply_site: dimension mismatch");

    const std::size_t bit = std::size_t{1} << system.bit_of_site(site);
    const Complex a00 = op_single(0, 0), a01 = op_single(0, 1);
    const Complex a10 = op_single(1, 0), a11 = op_single(1, 1);

    Amplitudes out(state.size());
    // Bit clear = up = single-particle row/column 0.
    for (std::size_t k = 0; k < state.size(); ++k) {
        if (k & bit) continue;
        const Complex up = state[k];
        const Complex down = state[k | bit];
        out[k] = a00 * up + a01 * down;
        out[k | bit] = a10 * up + a11 * down;
    }
    return out;
}

Amplitudes apply_site(const ComplexMatrix& op_single, int site, const SpinSystem& system,
                      const StateVector& state) {
    return apply_site(op_single, site, system, std::span<const Complex>{state.amplitudes()});
}

TotalAngularMomentum::TotalAngularMomentum(SpinSystem system)
    : is_composite_(true), system_(system) {}

TotalAngularMomentum::TotalAngularMomentum(SpinQuantumNumber j)
    : is_composite_(false), system_(1) {
    single_[0] = build_sx(j);
    single_[1] = build_sy(j);
    single_[2] = build_sz(j);
}

std::size_t TotalAngularMomentum::dim() const {
    return is_composite_ ? system_.dim() : single_[0].rows();
}

Amplitudes TotalAngularMomentum::apply(Axis axis, std::span<const Complex> state) const {
    if (state.size() != dim()) throw std::invalid_argument("TotalAngularMomentum: dimension mismatch");
    if (!is_composite_) return matvec(single_[static_cast<int>(axis)], state);

    const ComplexMatrix& op = half_component(axis);
    Amplitudes acc(state.size(), Complex{0.0, 0.0});
    for (int site = 1; site <= system_.n_sites(); ++site) {
        Amplitudes term = apply_site(op, site, system_, state);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += term[k];
    }
    return acc;
}

Amplitudes TotalAngularMomentum::apply(Axis axis, const StateVector& state) const {
    return apply(axis, std::span<const Complex>{state.amplitudes()});
}

double TotalAngularMomentum::component_expectation(Axis axis, const StateVector& state) const {
    const Amplitudes jv = apply(axis, state);
    return inner(state.amplitudes(), jv).real();
}

double TotalAngularMomentum::second_moment(Axis axis, const StateVector& state) const {
    const Amplitudes jv = apply(axis, state);
    return norm_squared(jv);
}

ComplexMatrix TotalAngularMomentum::dense(Axis axis) const {
    if (!is_composite_) return single_[static_cast<int>(axis)];
    return total_component(axis, system_);
}

ComplexMatrix total_component(Axis axis, const SpinSystem& system) {
    if (system.dim() > kMaxDenseDim)
        throw std::length_error("total_component: dense dimension exceeds cap");
    ComplexMatrix acc(system.dim(), system.dim());
    for (int site = 1; site <= system.n_sites(); ++site)
        acc += embed(half_component(axis), site, system);
    return acc;
}

double total_j_squared(const SpinSystem& system, const StateVector& state) {
    if (state.dim() != system.dim()) throw std::invalid_argument("total_j_squared: dimension mismatch");
    TotalAngularMomentum total(system);
    double acc = 0.0;
    for (Axis a : kAxes) acc += total.second_moment(a, state);
    return acc;
}

}  // namespace spinvec
