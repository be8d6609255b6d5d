#include "spinvec/spin_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace spinvec {

SpinQuantumNumber SpinQuantumNumber::from_twice(int twice_j) {
    if (twice_j < 0) throw std::invalid_argument("SpinQuantumNumber: 2j must be non-negative");
    if (static_cast<std::size_t>(twice_j) + 1 > kMaxProductDim)
        throw std::length_error("SpinQuantumNumber: operator dimension exceeds cap");
    return SpinQuantumNumber(twice_j);
}

ComplexMatrix build_sz(SpinQuantumNumber j) {
    const std::size_t dim = j.dimension();
    ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        m(r, r) = 0.5 * (j.twice() - 2.0 * static_cast<double>(r));
    return m;
}

ComplexMatrix build_ladder(SpinQuantumNumber j, Ladder direction) {
    const std::size_t dim = j.dimension();
    const int tj = j.twice();
    ComplexMatrix m(dim, dim);
    // <j,m+1|S+|j,m> = <j,m-1|S-|j,m> reflected; with rows ordered by
    // descending m, S+ sits on the superdiagonal and S- on the subdiagonal.
    for (std::size_t r = 0; r + 1 < dim; ++r) {
        const int tm_lower = tj - 2 * static_cast<int>(r) - 2;  // m of row r+1
        // sqrt(j(j+1) - m(m+1)) with m = tm_lower/2, in exact quarter units
        const double coeff = 0.5 * std::sqrt(static_cast<double>(tj * (tj + 2) - tm_lower * (tm_lower + 2)));
        if (direction == Ladder::Raise)
            m(r, r + 1) = coeff;
        else
            m(r + 1, r) = coeff;
    }
    return m;
}

ComplexMatrix build_sx(SpinQuantumNumber j) {
    ComplexMatrix sp = build_ladder(j, Ladder::Raise);
    ComplexMatrix sm = build_ladder(j, Ladder::Lower);
    return Complex{0.5, 0.0} * (sp + sm);
}

ComplexMatrix build_sy(SpinQuantumNumber j) {
    ComplexMatrix sp = build_ladder(j, Ladder::Raise);
    ComplexMatrix sm = build_ladder(j, Ladder::Lower);
    return Complex{0.0, -0.5} * (sp - sm);
}

ComplexMatrix build_component(SpinQuantumNumber j, Axis axis) {
    switch (axis) {
    case Axis::X: return build_sx(j);
    case Axis::Y: return build_sy(j);
    default: return build_sz(j);
    }
}

}  // namespace spinvec
