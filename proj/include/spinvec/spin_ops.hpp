#pragma once

#include "spinvec/linalg.hpp"
#include "spinvec/types.hpp"

namespace spinvec {

/// Spin quantum number stored as 2j, so j in {0, 1/2, 1, 3/2, ...} is exact.
class SpinQuantumNumber {
public:
    static SpinQuantumNumber from_twice(int twice_j);

    int twice() const { return twice_j_; }
    double value() const { return 0.5 * twice_j_; }
    std::size_t dimension() const { return static_cast<std::size_t>(twice_j_) + 1; }

    /// j(j+1), the squared-magnitude eigenvalue.
    double casimir() const { return 0.25 * twice_j_ * (twice_j_ + 2.0); }

private:
    explicit SpinQuantumNumber(int twice_j) : twice_j_(twice_j) {}
    int twice_j_;
};

enum class Ladder { Raise, Lower };

// All operators use the |j,m> basis ordered by descending m, so m = j - row.
// Ladder matrix elements follow the Condon-Shortley convention (real,
// non-negative).

ComplexMatrix build_sz(SpinQuantumNumber j);
ComplexMatrix build_ladder(SpinQuantumNumber j, Ladder direction);
ComplexMatrix build_sx(SpinQuantumNumber j);
ComplexMatrix build_sy(SpinQuantumNumber j);
ComplexMatrix build_component(SpinQuantumNumber j, Axis axis);

}  // namespace spinvec
