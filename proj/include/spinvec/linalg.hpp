#pragma once

#include <cstddef>
#include <span>

#include "spinvec/types.hpp"

namespace spinvec {

/// Dense complex matrix, row-major, zero-based. Entries are dimensionless
/// (angular momentum in units of hbar = 1).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, Amplitudes entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const Amplitudes& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    bool is_hermitian(double tol = kAlgebraTol) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    /// Largest entrywise |a - b|; matrices must have equal shape.
    friend double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Amplitudes entries_;
};

/// Normalized complex amplitude vector. The constructor rescales so that
/// sum |a_i|^2 = 1; a zero vector is rejected.
class StateVector {
public:
    explicit StateVector(Amplitudes amplitudes);

    /// Computational basis state |index> in a dim-dimensional space.
    static StateVector basis_state(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amplitudes_.size(); }
    const Amplitudes& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::size_t i) const { return amplitudes_[i]; }

private:
    Amplitudes amplitudes_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix-vector product; the result is not normalized.
Amplitudes matvec(const ComplexMatrix& a, std::span<const Complex> v);
Amplitudes matvec(const ComplexMatrix& a, const StateVector& v);

/// <bra|ket> = sum_i conj(bra_i) ket_i.
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);

double norm_squared(std::span<const Complex> v);

/// <v|a|v> for a normalized state v.
Complex expectation(const ComplexMatrix& a, const StateVector& v);

}  // namespace spinvec
