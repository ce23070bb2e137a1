#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hrnr/geometry.hpp"

namespace hrnr {

namespace {

// Root of (r0 z0/(s + r0))² + (z1/(s + 1))² = 1 by bisection.
double ellipse_root(double r0, double z0, double z1, double g) {
  const double n0 = r0 * z0;
  double s0 = z1 - 1.0;
  double s1 = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
  double s = 0.0;
  for (int i = 0; i < 1100; ++i) {
    s = 0.5 * (s0 + s1);
    if (s == s0 || s == s1) break;
    const double ratio0 = n0 / (s + r0);
    const double ratio1 = z1 / (s + 1.0);
    g = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
    if (g > 0.0) {
      s0 = s;
    } else if (g < 0.0) {
      s1 = s;
    } else {
      break;
    }
  }
  return s;
}

// Distance from (y0, y1), first quadrant, to the axis-aligned ellipse with
// semi-axes e0 ≥ e1 > 0.
double quadrant_distance(double e0, double e1, double y0, double y1) {
  if (y1 > 0.0) {
    if (y0 > 0.0) {
      const double z0 = y0 / e0;
      const double z1 = y1 / e1;
      const double g = z0 * z0 + z1 * z1 - 1.0;
      if (g == 0.0) return 0.0;
      const double r0 = (e0 / e1) * (e0 / e1);
      const double sbar = ellipse_root(r0, z0, z1, g);
      const double x0 = r0 * y0 / (sbar + r0);
      const double x1 = y1 / (sbar + 1.0);
      return std::hypot(x0 - y0, x1 - y1);
    }
    return std::abs(y1 - e1);
  }
  const double numer0 = e0 * y0;
  const double denom0 = e0 * e0 - e1 * e1;
  if (numer0 < denom0) {
    const double xde0 = numer0 / denom0;
    const double x0 = e0 * xde0;
    const double x1 = e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0));
    return std::hypot(x0 - y0, x1);
  }
  return std::abs(y0 - e0);
}

}  // namespace

double distance_to_ellipse_boundary(const EllipseDisc& e, cplx z) {
  const cplx local = std::polar(1.0, -e.rotation) * (z - e.center);
  const double x = std::abs(local.real());
  const double y = std::abs(local.imag());
  if (e.semi_major == 0.0) return std::abs(local);
  if (e.semi_minor == 0.0) {
    const double dx = std::max(0.0, x - e.semi_major);
    return std::hypot(dx, y);
  }
  return quadrant_distance(e.semi_major, e.semi_minor, x, y);
}

EllipseFit ellipse_fit(std::span<const cplx> points) {
  if (points.size() < 6) throw FitError("ellipse_fit: need at least 6 points");

  cplx mean{};
  for (const cplx p : points) mean += p;
  mean /= static_cast<double>(points.size());
  double rms = 0.0;
  for (const cplx p : points) rms += std::norm(p - mean);
  rms = std::sqrt(rms / static_cast<double>(points.size()));
  if (!(rms > 0.0)) throw FitError("ellipse_fit: coincident points");

  // Principal spread check rejects collinear clouds.
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const cplx p : points) {
    const cplx q = (p - mean) / rms;
    sxx += q.real() * q.real();
    sxy += q.real() * q.imag();
    syy += q.imag() * q.imag();
  }
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  if (det <= 1e-12 * tr * tr) throw FitError("ellipse_fit: points are collinear");

  const auto count = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd quad(count, 3), lin(count, 3);
  for (Eigen::Index i = 0; i < count; ++i) {
    const cplx q = (points[static_cast<std::size_t>(i)] - mean) / rms;
    const double x = q.real(), y = q.imag();
    quad.row(i) << x * x, x * y, y * y;
    lin.row(i) << x, y, 1.0;
  }
  const Eigen::Matrix3d s1 = quad.transpose() * quad;
  const Eigen::Matrix3d s2 = quad.transpose() * lin;
  const Eigen::Matrix3d s3 = lin.transpose() * lin;
  const Eigen::FullPivLU<Eigen::Matrix3d> s3_lu(s3);
  if (!s3_lu.isInvertible()) throw FitError("ellipse_fit: singular scatter matrix");
  const Eigen::Matrix3d t = -s3_lu.solve(s2.transpose());
  const Eigen::Matrix3d m = s1 + s2 * t;
  Eigen::Matrix3d reduced;
  reduced.row(0) = m.row(2) / 2.0;
  reduced.row(1) = -m.row(1);
  reduced.row(2) = m.row(0) / 2.0;

  Eigen::EigenSolver<Eigen::Matrix3d> es(reduced);
  if (es.info() != Eigen::Success) throw FitError("ellipse_fit: eigen solve failed");
  int best = -1;
  double best_cond = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d v = es.eigenvectors().col(k).real();
    const double cond = 4.0 * v(0) * v(2) - v(1) * v(1);
    if (cond > best_cond) {
      best_cond = cond;
      best = k;
    }
  }
  if (best < 0) throw FitError("ellipse_fit: no ellipse-type conic fits the points");
  const Eigen::Vector3d a1 = es.eigenvectors().col(best).real();
  const Eigen::Vector3d a2 = t * a1;

  const double A = a1(0), B = a1(1), C = a1(2), D = a2(0), E = a2(1), F = a2(2);
  const double den = 4.0 * A * C - B * B;
  const double x0 = (B * E - 2.0 * C * D) / den;
  const double y0 = (B * D - 2.0 * A * E) / den;
  const double fc = A * x0 * x0 + B * x0 * y0 + C * y0 * y0 + D * x0 + E * y0 + F;

  Eigen::Matrix2d q;
  q << A, B / 2.0, B / 2.0, C;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> qs(q);
  double l0 = qs.eigenvalues()(0), l1 = qs.eigenvalues()(1);
  Eigen::Vector2d v0 = qs.eigenvectors().col(0), v1 = qs.eigenvectors().col(1);
  // Orient so that Q is positive definite and the level value −fc is > 0.
  double level = -fc;
  if (l0 < 0.0) {
    l0 = -l0;
    l1 = -l1;
    level = -level;
    std::swap(l0, l1);
    std::swap(v0, v1);
  }
  if (!(level > 0.0) || !(l0 > 0.0)) throw FitError("ellipse_fit: degenerate conic");
  // Smaller eigenvalue ↔ longer axis.
  const double semi_major = std::sqrt(level / l0) * rms;
  const double semi_minor = std::sqrt(level / l1) * rms;
  double rotation = std::atan2(v0(1), v0(0));
  if (rotation < 0.0) rotation += std::numbers::pi;
  if (rotation >= std::numbers::pi) rotation -= std::numbers::pi;

  EllipseFit fit;
  fit.ellipse = ellipse_from_axes(mean + rms * cplx(x0, y0), semi_major, semi_minor, rotation);
  for (const cplx p : points) {
    fit.residual = std::max(fit.residual, distance_to_ellipse_boundary(fit.ellipse, p));
  }
  fit.residual /= semi_major;
  return fit;
}

}  // namespace hrnr
