#include "hrnr/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hrnr {

namespace {

void require_finite(std::span<const cplx> entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ArgumentError("matrix entries must be finite");
    }
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

constexpr int kMaxSweeps = 30;
constexpr double kOffTolerance = 1e-13;
constexpr double kHermitianTolerance = 1e-10;

/// In-place cyclic Jacobi on a Hermitian matrix stored in `a`.
/// On return the diagonal of `a` holds the eigenvalues.
void jacobi_sweeps(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.rows();
  const double norm = a.frobenius_norm();
  const double target = kOffTolerance * norm;

  auto off_mass = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0;; ++sweep) {
    if (off_mass() <= target) return;
    if (sweep >= kMaxSweeps) {
      throw ConvergenceError("Jacobi eigensolver did not converge in " +
                             std::to_string(kMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Skip rotations that cannot change either diagonal entry.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const cplx phase = g / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J = diag(1, conj(phase)) · [[c, s], [-s, c]] on the (p, q) plane.
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        if (v != nullptr) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = (*v)(k, p);
            const cplx vkq = (*v)(k, q);
            (*v)(k, p) = vkp * jpp + vkq * jqp;
            (*v)(k, q) = vkp * jpq + vkq * jqq;
          }
        }
      }
    }
  }
}

ComplexMatrix symmetrized(const ComplexMatrix& h) {
  require_square(h, "eigh");
  const double norm = h.frobenius_norm();
  const std::size_t n = h.rows();
  double skew = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) skew += std::norm(h(i, j) - std::conj(h(j, i)));
  skew = std::sqrt(skew);
  if (skew > kHermitianTolerance * norm) {
    throw StructureError("eigh: matrix is not Hermitian", skew);
  }
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx x = 0.5 * (h(i, j) + std::conj(h(j, i)));
      s(i, j) = x;
      s(j, i) = std::conj(x);
    }
  }
  return s;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("entry count " + std::to_string(data_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  require_finite(m.data_);
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  std::vector<cplx> z(values.begin(), values.end());
  return diagonal(std::span<const cplx>(z));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0,
                                   std::size_t rows, std::size_t cols) const {
  if (row0 + rows > rows_ || col0 + cols > cols_) {
    throw DimensionError("block exceeds matrix bounds");
  }
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
  return m;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0,
                              const ComplexMatrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_) {
    throw DimensionError("block exceeds matrix bounds");
  }
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("product: inner dimensions " + std::to_string(a.cols()) +
                         " and " + std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const cplx x = a(i, l);
      if (x == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += x * b(l, j);
    }
  return m;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a, double theta) {
  require_square(a, "hermitian_part");
  const std::size_t n = a.rows();
  const cplx rot = std::polar(1.0, -theta);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = (rot * a(i, i)).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx x = 0.5 * (rot * a(i, j) + std::conj(rot * a(j, i)));
      h(i, j) = x;
      h(j, i) = std::conj(x);
    }
  }
  return h;
}

HermitianEigen eigh(const ComplexMatrix& h) {
  ComplexMatrix a = symmetrized(h);
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi_sweeps(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

std::vector<double> eigvalsh(const ComplexMatrix& h) {
  ComplexMatrix a = symmetrized(h);
  jacobi_sweeps(a, nullptr);
  std::vector<double> values(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

std::vector<double> singular_values(const ComplexMatrix& n) {
  if (n.empty()) return {};
  const ComplexMatrix gram = n.rows() >= n.cols() ? n.adjoint() * n : n * n.adjoint();
  std::vector<double> s = eigvalsh(gram);
  for (auto& x : s) x = std::sqrt(std::max(x, 0.0));
  return s;
}

double spectral_norm(const ComplexMatrix& a) {
  const auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

double commutator_norm(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (!x.is_square() || !y.is_square() || x.rows() != y.rows()) {
    throw DimensionError("commutator_norm: operands must be square of equal size");
  }
  return (x * y - y * x).frobenius_norm();
}

bool is_normal(const ComplexMatrix& z, double tol) {
  require_square(z, "is_normal");
  const double f = z.frobenius_norm();
  return commutator_norm(z, z.adjoint()) <= tol * std::max(1.0, f * f);
}

std::vector<cplx> eigenvalues(const ComplexMatrix& a) {
  require_square(a, "eigenvalues");
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigenvalues: Schur iteration failed");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double range_scale(const ComplexMatrix& a) { return std::max(1.0, spectral_norm(a)); }

}  // namespace hrnr
