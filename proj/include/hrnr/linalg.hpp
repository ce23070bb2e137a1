#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "hrnr/errors.hpp"

namespace hrnr {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  /// Copy of the rows×cols block starting at (row0, col0).
  ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t rows,
                      std::size_t cols) const;
  void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

  double frobenius_norm() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Block-diagonal direct sum a ⊕ b.
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigen-decomposition of a Hermitian matrix: descending values, unitary
/// columns of eigenvectors. Bases inside degenerate clusters are not unique.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

/// ½(e^{-iθ}A + e^{iθ}A*), exactly Hermitian.
ComplexMatrix hermitian_part(const ComplexMatrix& a, double theta);

/// Cyclic complex Jacobi eigensolver.
///
/// Accepts inputs with ‖H − H*‖_F ≤ 1e-10·‖H‖_F and symmetrizes them. Sweeps
/// stop once the off-diagonal Frobenius mass is ≤ 1e-13·‖H‖_F; more than
/// 30 sweeps raise ConvergenceError.
HermitianEigen eigh(const ComplexMatrix& h);

/// Eigenvalues only; same solver as eigh without accumulating vectors.
std::vector<double> eigvalsh(const ComplexMatrix& h);

/// All min(rows, cols) singular values, descending, from the Gram matrix.
std::vector<double> singular_values(const ComplexMatrix& n);

/// Largest singular value (0 for an empty matrix).
double spectral_norm(const ComplexMatrix& a);

/// ‖XY − YX‖_F.
double commutator_norm(const ComplexMatrix& x, const ComplexMatrix& y);

/// ‖ZZ* − Z*Z‖_F ≤ tol·max(1, ‖Z‖_F²).
bool is_normal(const ComplexMatrix& z, double tol);

/// Eigenvalues of a general square matrix (unordered multiset).
std::vector<cplx> eigenvalues(const ComplexMatrix& a);

/// Magnitude used to scale tolerances: max(1, ‖A‖₂).
double range_scale(const ComplexMatrix& a);

}  // namespace hrnr
