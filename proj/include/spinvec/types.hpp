#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace spinvec {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

enum class Axis { X, Y, Z };

inline constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};

inline const char* axis_name(Axis a) {
    switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    default: return "z";
    }
}

// Absolute comparison tolerance for physical values (expectations, variances,
// correlations). All genuine values at desk scale are >= 1/4 apart.
inline constexpr double kTol = 1e-10;

// Tighter tolerance for exact algebraic identities (commutators, adjoints).
inline constexpr double kAlgebraTol = 1e-12;

// Hard cap on the product-space dimension (14 spin-1/2 sites).
inline constexpr std::size_t kMaxProductDim = std::size_t{1} << 14;
inline constexpr int kMaxSites = 14;

// Dense matrices are the brute-force oracle path; beyond this dimension only
// the streaming appliers are available.
inline constexpr std::size_t kMaxDenseDim = std::size_t{1} << 10;

}  // namespace spinvec
