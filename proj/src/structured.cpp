#include "hrnr/structured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace hrnr {

namespace {

constexpr double kProbeAngles[] = {0.0, std::numbers::pi / 7.0, std::numbers::pi / 3.0,
                                   std::numbers::pi / 2.0};
constexpr double kSubspaceAngles[] = {0.61, 1.37, 2.29};
constexpr std::size_t kComponentCap = 16;
/// Relative size below which a squared minor axis is treated as zero.
constexpr double kRadicandRel = 64.0 * std::numeric_limits<double>::epsilon();

double rel(double value, double scale) { return value / std::max(1.0, scale); }

// Z = DC and H = C*C + DD*, oriented.
ComplexMatrix z_matrix(const BlockForm& bf) { return bf.D * bf.C; }
ComplexMatrix h_matrix(const BlockForm& bf) {
  return bf.C.adjoint() * bf.C + bf.D * bf.D.adjoint();
}

ComplexMatrix original_c(const BlockForm& bf) { return bf.swapped ? bf.D : bf.C; }
ComplexMatrix original_d(const BlockForm& bf) { return bf.swapped ? bf.C : bf.D; }

std::vector<double> nonzero_prefix(std::vector<double> v, double floor_rel) {
  const double top = v.empty() ? 0.0 : std::max(1.0, v.front());
  std::size_t p = 0;
  while (p < v.size() && v[p] > floor_rel * top) ++p;
  v.resize(p);
  return v;
}

ConvexRegion segment_or_point(cplx a, cplx b, const GeometryOptions& g) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= g.point_rel * scale) return ConvexRegion::point(0.5 * (a + b));
  return ConvexRegion::segment(a, b);
}

// Elliptical discs for k ≤ p, then [α, β] up to n − r, {α} up to r, then ∅.
// When α = β each vanishing component adds one more rank to {α}.
std::vector<ClosedForm> table(const BlockForm& bf, const std::vector<EllipseDisc>& discs,
                              const GeometryOptions& g) {
  std::vector<ClosedForm> out;
  const std::size_t p = discs.size();
  const double ab = std::max({1.0, std::abs(bf.alpha), std::abs(bf.beta)});
  const bool coincident = std::abs(bf.alpha - bf.beta) <= g.point_rel * ab;
  std::size_t vanishing = bf.m() - std::min(p, bf.m());
  for (const auto& d : discs)
    if (d.semi_major <= g.point_rel * ab) ++vanishing;
  for (std::size_t k = 1; k <= bf.n; ++k) {
    ClosedForm cf;
    cf.k = static_cast<int>(k);
    if (k <= p) {
      cf.ellipse = discs[k - 1];
      cf.region = ellipse_region(discs[k - 1], g.hull_samples, g);
    } else if (k <= bf.m()) {
      cf.region = segment_or_point(bf.alpha, bf.beta, g);
    } else if (k <= bf.r || (coincident && k <= bf.r + vanishing)) {
      cf.region = ConvexRegion::point(bf.alpha);
    } else {
      cf.region = ConvexRegion::empty();
    }
    out.push_back(std::move(cf));
  }
  return out;
}

double scalar_dc_residual(const BlockForm& bf, cplx* z1) {
  const ComplexMatrix z = z_matrix(bf);
  const cplx mean = z.trace() / static_cast<double>(bf.m());
  if (z1) *z1 = mean;
  const ComplexMatrix diff = z - ComplexMatrix::identity(bf.m()) * mean;
  return diff.frobenius_norm() /
         std::max({1.0, z.frobenius_norm(), h_matrix(bf).frobenius_norm()});
}

}  // namespace

ComplexMatrix BlockForm::assemble_oriented() const {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < r; ++i) a(i, i) = alpha;
  for (std::size_t i = r; i < n; ++i) a(i, i) = beta;
  a.set_block(0, r, C);
  a.set_block(r, 0, D);
  return a;
}

ComplexMatrix BlockForm::assemble() const {
  if (!swapped) return assemble_oriented();
  const std::size_t r0 = n - r;
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < r0; ++i) a(i, i) = beta;
  for (std::size_t i = r0; i < n; ++i) a(i, i) = alpha;
  a.set_block(0, r0, D);
  a.set_block(r0, 0, C);
  return a;
}

NormalizedBlock normalize(const BlockForm& bf) {
  NormalizedBlock nb;
  nb.base = bf;
  nb.w = 0.5 * (bf.alpha - bf.beta);
  nb.shift = 0.5 * (bf.alpha + bf.beta);
  nb.B = bf.assemble_oriented() - ComplexMatrix::identity(bf.n) * nb.shift;
  return nb;
}

BlockForm make_block_form(cplx alpha, cplx beta, const ComplexMatrix& C, const ComplexMatrix& D) {
  const std::size_t r = C.rows();
  const std::size_t m = C.cols();
  if (r == 0 || m == 0) throw DimensionError("block form needs nonempty off-diagonal blocks");
  if (D.rows() != m || D.cols() != r) {
    throw DimensionError("D must be " + std::to_string(m) + "x" + std::to_string(r));
  }
  BlockForm bf;
  bf.n = r + m;
  if (bf.n > 2 * r) {
    bf.alpha = beta;
    bf.beta = alpha;
    bf.r = m;
    bf.C = D;
    bf.D = C;
    bf.swapped = true;
  } else {
    bf.alpha = alpha;
    bf.beta = beta;
    bf.r = r;
    bf.C = C;
    bf.D = D;
  }
  return bf;
}

BlockForm detect_block_form(const ComplexMatrix& a, std::size_t r, double tol) {
  if (!a.is_square()) throw DimensionError("block form needs a square matrix");
  const std::size_t n = a.rows();
  if (r == 0 || r >= n) {
    throw ArgumentError("r = " + std::to_string(r) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  cplx alpha{}, beta{};
  for (std::size_t i = 0; i < r; ++i) alpha += a(i, i);
  for (std::size_t i = r; i < n; ++i) beta += a(i, i);
  alpha /= static_cast<double>(r);
  beta /= static_cast<double>(n - r);
  double res2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool top = i < r && j < r;
      const bool bottom = i >= r && j >= r;
      if (!top && !bottom) continue;
      const cplx target = i == j ? (top ? alpha : beta) : cplx{};
      res2 += std::norm(a(i, j) - target);
    }
  }
  const double residual = std::sqrt(res2);
  if (residual > tol * a.frobenius_norm()) {
    throw StructureError("diagonal blocks for r = " + std::to_string(r) +
                             " are not scalar (residual " + std::to_string(residual) + ")",
                         residual);
  }
  return make_block_form(alpha, beta, a.block(0, r, r, n - r), a.block(r, 0, n - r, r));
}

ComplexMatrix odd_even_permutation(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("permutation needs a square matrix");
  const std::size_t n = a.rows();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; i += 2) order.push_back(i);
  for (std::size_t i = 1; i < n; i += 2) order.push_back(i);
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(order[i], order[j]);
  return out;
}

ComplexMatrix m_theta(const BlockForm& bf, double theta) {
  const ComplexMatrix z = z_matrix(bf);
  return h_matrix(bf) + z * std::polar(1.0, -2.0 * theta) + z.adjoint() * std::polar(1.0, 2.0 * theta);
}

SupportSample block_support_spectrum(const NormalizedBlock& nb, double theta) {
  const BlockForm& bf = nb.base;
  const std::vector<double> mu = eigvalsh(m_theta(bf, theta));
  const cplx rot = std::polar(1.0, -theta);
  const double shift_t = (rot * nb.shift).real();
  const double w_t = (rot * nb.w).real();
  SupportSample s;
  s.theta = theta;
  for (const double m : mu) {
    const double half = 0.5 * std::sqrt(std::max(0.0, 4.0 * w_t * w_t + m));
    s.values.push_back(shift_t + half);
    s.values.push_back(shift_t - half);
  }
  const double a_t = (rot * bf.alpha).real();
  for (std::size_t i = 0; i < 2 * bf.r - bf.n; ++i) s.values.push_back(a_t);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

JointEigendata joint_eigendata(const BlockForm& bf, double tol) {
  const ComplexMatrix z = z_matrix(bf);
  const ComplexMatrix h = h_matrix(bf);
  const double zn = z.frobenius_norm();
  const double hn = h.frobenius_norm();
  const double normality = rel(commutator_norm(z, z.adjoint()), zn * zn);
  const double commutation = rel(commutator_norm(z, h), zn * hn);
  if (normality > tol || commutation > tol) {
    throw HypothesisError("Z = DC must be normal and commute with H (residuals " +
                              std::to_string(normality) + ", " + std::to_string(commutation) + ")",
                          normality, commutation);
  }

  const std::size_t m = bf.m();
  const HermitianEigen he = eigh(h);
  const double cluster_tol = 1e-8 * std::max(1.0, std::abs(he.values.front()));
  const double recon_tol = 1e-8 * std::max({1.0, zn, hn});

  JointEigendata out;
  out.unitary = ComplexMatrix(m, m);
  std::size_t start = 0;
  while (start < m) {
    std::size_t end = start + 1;
    while (end < m && he.values[end - 1] - he.values[end] <= cluster_tol) ++end;
    const std::size_t q = end - start;
    const ComplexMatrix v = he.vectors.block(0, start, m, q);
    const ComplexMatrix zc = v.adjoint() * z * v;

    ComplexMatrix w = ComplexMatrix::identity(q);
    std::vector<cplx> zd(q);
    bool ok = q == 1;
    if (ok) zd[0] = zc(0, 0);
    for (const double phi : kSubspaceAngles) {
      if (ok) break;
      w = eigh(hermitian_part(zc, phi)).vectors;
      const ComplexMatrix d = w.adjoint() * zc * w;
      ComplexMatrix diag(q, q);
      for (std::size_t i = 0; i < q; ++i) {
        zd[i] = d(i, i);
        diag(i, i) = d(i, i);
      }
      ok = (zc - w * diag * w.adjoint()).frobenius_norm() <= recon_tol;
    }
    if (!ok) {
      throw HypothesisError("Z is not diagonal on an eigenspace of H", normality, commutation);
    }
    std::vector<std::size_t> idx(q);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (zd[a].real() != zd[b].real()) return zd[a].real() > zd[b].real();
      return zd[a].imag() > zd[b].imag();
    });
    const ComplexMatrix u = v * w;
    for (std::size_t j = 0; j < q; ++j) {
      const std::size_t col = start + j;
      for (std::size_t i = 0; i < m; ++i) out.unitary(i, col) = u(i, idx[j]);
      out.pairs.push_back({zd[idx[j]], std::max(0.0, he.values[start + idx[j]])});
    }
    start = end;
  }

  ComplexMatrix dz(m, m), dh(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    dz(j, j) = out.pairs[j].z;
    dh(j, j) = out.pairs[j].h;
  }
  const ComplexMatrix& u = out.unitary;
  const double ez = (z - u * dz * u.adjoint()).frobenius_norm();
  const double eh = (h - u * dh * u.adjoint()).frobenius_norm();
  if (ez > recon_tol || eh > recon_tol) {
    throw HypothesisError("joint diagonalization does not reconstruct Z and H", ez, eh);
  }
  return out;
}

EllipseComponent make_component(const NormalizedBlock& nb, cplx z, double h) {
  const BlockForm& bf = nb.base;
  const cplx diff = bf.alpha - bf.beta;
  EllipseComponent c;
  c.z = z;
  c.h = h;
  c.delta = diff * diff + 4.0 * z;
  const double ad = std::abs(c.delta);
  const double base = 0.5 * std::norm(diff) + h;
  const double major2 = base + 0.5 * ad;
  double minor2 = base - 0.5 * ad;
  // Cancellation noise, not a real minor axis.
  if (minor2 <= kRadicandRel * major2) minor2 = 0.0;
  double phi = c.delta == cplx{} ? 0.0 : 0.5 * std::arg(nb.w * nb.w + z);
  if (phi < 0.0) phi += std::numbers::pi;
  const cplx half_focal = 0.5 * std::sqrt(c.delta);
  c.disc.center = nb.shift;
  c.disc.semi_major = 0.5 * std::sqrt(major2);
  c.disc.semi_minor = 0.5 * std::sqrt(minor2);
  c.disc.rotation = phi;
  c.disc.foci = {nb.shift + half_focal, nb.shift - half_focal};
  return c;
}

KippenhahnComponents kippenhahn_ellipses(const NormalizedBlock& nb,
                                         const std::vector<EigenPair>& pairs) {
  const BlockForm& bf = nb.base;
  KippenhahnComponents comp;
  comp.alpha = bf.alpha;
  comp.beta = bf.beta;
  comp.n = bf.n;
  comp.r = bf.r;
  double hmax = 0.0;
  for (const auto& p : pairs) hmax = std::max(hmax, p.h);
  const double zero = 1e-10 * std::max(1.0, hmax);
  for (const auto& p : pairs) {
    comp.ellipses.push_back(make_component(nb, p.z, p.h));
    if (p.h <= zero && std::abs(p.z) <= zero) comp.degenerate_segment = {bf.alpha, bf.beta};
  }
  if (bf.n < 2 * bf.r) comp.isolated_point = bf.alpha;
  return comp;
}

ConvexRegion rank_k_from_components(const KippenhahnComponents& comp, int k,
                                    const GeometryOptions& opts) {
  if (k < 1 || static_cast<std::size_t>(k) > comp.n) {
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " + std::to_string(comp.n) + "]");
  }
  const std::size_t m = comp.n - comp.r;
  const auto uk = static_cast<std::size_t>(k);
  if (uk > m) {
    if (uk <= comp.r) return ConvexRegion::point(comp.alpha);
    const double ab = std::max({1.0, std::abs(comp.alpha), std::abs(comp.beta)});
    std::size_t vanishing = 0;
    for (const auto& e : comp.ellipses)
      if (e.disc.semi_major <= opts.point_rel * ab) ++vanishing;
    const bool coincident = std::abs(comp.alpha - comp.beta) <= opts.point_rel * ab;
    return coincident && uk <= comp.r + vanishing ? ConvexRegion::point(comp.alpha)
                                                  : ConvexRegion::empty();
  }
  if (m > kComponentCap) {
    throw CapacityError("subset intersection over " + std::to_string(m) +
                        " components exceeds the cap of 16");
  }
  double scale = 1.0;
  for (const auto& e : comp.ellipses)
    scale = std::max(scale, std::abs(e.disc.center) + e.disc.semi_major);

  const std::size_t size = m - uk + 1;
  std::vector<char> pick(m, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
  std::optional<ConvexRegion> acc;
  std::vector<HullPart> parts;
  do {
    parts.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) parts.emplace_back(comp.ellipses[i].disc);
    const ConvexRegion hull = convex_hull_regions(parts, opts);
    acc = acc ? intersect(*acc, hull, scale, opts) : hull;
    if (acc->is_empty()) break;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return *acc;
}

std::optional<std::vector<EllipseDisc>> nested_fast_path(const NormalizedBlock& nb,
                                                         const std::vector<EigenPair>& pairs,
                                                         int grid, double tol) {
  double hmax = 0.0;
  for (const auto& p : pairs) hmax = std::max(hmax, p.h);
  const double slack = tol * std::max(1.0, hmax);
  for (int i = 0; i < grid; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / grid;
    const cplx rot = std::polar(1.0, -2.0 * theta);
    for (std::size_t j = 1; j < pairs.size(); ++j) {
      const double hi = pairs[j - 1].h + 2.0 * (rot * pairs[j - 1].z).real();
      const double lo = pairs[j].h + 2.0 * (rot * pairs[j].z).real();
      if (lo > hi + slack) return std::nullopt;
    }
  }
  std::vector<EllipseDisc> discs;
  for (const auto& p : pairs) discs.push_back(make_component(nb, p.z, p.h).disc);
  return discs;
}

const char* class_name(StructureClass c) {
  switch (c) {
    case StructureClass::Shift: return "Shift";
    case StructureClass::Arrowhead: return "Arrowhead";
    case StructureClass::TridiagonalBiperiodic: return "TridiagonalBiperiodic";
    case StructureClass::ScalarDC: return "ScalarDC";
    case StructureClass::ZetaAdjoint: return "ZetaAdjoint";
    case StructureClass::ThetaIndependent: return "ThetaIndependent";
    case StructureClass::GenericBlock: return "GenericBlock";
    case StructureClass::Quadratic: return "Quadratic";
    case StructureClass::None: return "None";
  }
  return "None";
}

bool StructureReport::has(StructureClass c) const {
  return std::find(flags.begin(), flags.end(), c) != flags.end();
}

std::pair<cplx, double> fit_zeta(const BlockForm& bf) {
  const ComplexMatrix c = original_c(bf);
  const ComplexMatrix d = original_d(bf);
  const ComplexMatrix cs = c.adjoint();
  const double dn = d.frobenius_norm();
  if (dn == 0.0) return {cplx{}, 0.0};
  const double cn2 = std::norm(c.frobenius_norm());
  if (cn2 == 0.0) return {cplx{}, rel(dn, dn)};
  cplx inner{};
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) inner += std::conj(cs(i, j)) * d(i, j);
  const cplx zeta = inner / cn2;
  return {zeta, rel((d - cs * zeta).frobenius_norm(), dn)};
}

std::vector<ClosedForm> scalar_dc_ranges(const BlockForm& bf, const StructureOptions& opts) {
  cplx z1;
  const double residual = scalar_dc_residual(bf, &z1);
  if (residual > opts.tol) throw HypothesisError("DC is not a scalar matrix", residual);
  const NormalizedBlock nb = normalize(bf);
  std::vector<EllipseDisc> discs;
  for (const double h : eigvalsh(h_matrix(bf))) discs.push_back(make_component(nb, z1, std::max(0.0, h)).disc);
  return table(bf, discs, opts.geometry);
}

std::vector<ClosedForm> arrowhead_range(const ComplexMatrix& a, const StructureOptions& opts) {
  if (!a.is_square() || a.rows() < 3) throw StructureError("arrowhead needs a square matrix with n >= 3");
  const std::size_t n = a.rows();
  for (const std::size_t r : {n - 1, std::size_t{1}}) {
    try {
      return scalar_dc_ranges(detect_block_form(a, r, opts.tol), opts);
    } catch (const StructureError&) {
    }
  }
  throw StructureError("matrix is not an arrowhead");
}

std::vector<ClosedForm> zeta_adjoint_ranges(const BlockForm& bf, cplx zeta,
                                            const StructureOptions& opts) {
  const ComplexMatrix c = original_c(bf);
  const ComplexMatrix d = original_d(bf);
  const double residual = rel((d - c.adjoint() * zeta).frobenius_norm(), d.frobenius_norm());
  if (residual > opts.tol) throw HypothesisError("D is not a multiple of C*", residual);
  const NormalizedBlock nb = normalize(bf);
  const double lift = 1.0 + std::norm(zeta);
  std::vector<EllipseDisc> discs;
  for (const double s : nonzero_prefix(singular_values(c), 1e-12))
    discs.push_back(make_component(nb, zeta * (s * s), lift * s * s).disc);
  return table(bf, discs, opts.geometry);
}

ComplexMatrix bidiagonal_matrix(const std::vector<cplx>& c_tilde, std::size_t n) {
  if (n < 2 || c_tilde.size() != n - 1) throw DimensionError("c~ must have n - 1 entries");
  const std::size_t rows = (n + 1) / 2;
  const std::size_t cols = n / 2;
  ComplexMatrix b(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    b(j, j) = c_tilde[2 * j];
    if (2 * j + 1 < c_tilde.size()) b(j + 1, j) = c_tilde[2 * j + 1];
  }
  return b;
}

TridiagonalData tridiagonal_data(const ComplexMatrix& t, double tol) {
  if (!t.is_square() || t.rows() < 2) throw StructureError("tridiagonal pattern needs n >= 2");
  const std::size_t n = t.rows();
  double scale = 1.0;
  for (const cplx v : t.entries()) scale = std::max(scale, std::abs(v));

  TridiagonalData out;
  std::size_t ne = 0, no = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      out.alpha += t(i, i);
      ++ne;
    } else {
      out.beta += t(i, i);
      ++no;
    }
  }
  out.alpha /= static_cast<double>(ne);
  out.beta /= static_cast<double>(no);
  double pattern = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap > 1) pattern = std::max(pattern, std::abs(t(i, j)));
      if (gap == 0) pattern = std::max(pattern, std::abs(t(i, i) - (i % 2 == 0 ? out.alpha : out.beta)));
    }
  }
  if (pattern > tol * scale) {
    throw StructureError("not a tridiagonal matrix with biperiodic diagonal", pattern / scale);
  }

  std::vector<cplx> c(n - 1), d(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    c[j] = t(j, j + 1);
    d[j] = t(j + 1, j);
  }
  auto mismatch = [&](cplx zeta) {
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      worst = std::max(worst, std::min(std::abs(c[j] - zeta * std::conj(d[j])),
                                       std::abs(d[j] - zeta * std::conj(c[j]))));
    }
    return worst / scale;
  };
  std::vector<cplx> candidates{cplx{}};
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (d[j] != cplx{}) candidates.push_back(c[j] / std::conj(d[j]));
    if (c[j] != cplx{}) candidates.push_back(d[j] / std::conj(c[j]));
  }
  // ζ and 1/ζ̄ can both fit (with c and d exchanging roles); the smallest
  // admissible |ζ| is taken.
  out.residual = std::numeric_limits<double>::infinity();
  bool admissible = false;
  for (const cplx z : candidates) {
    const double res = mismatch(z);
    const bool fits = res <= tol;
    if ((fits && (!admissible || std::abs(z) < std::abs(out.zeta))) ||
        (!admissible && !fits && res < out.residual)) {
      out.residual = res;
      out.zeta = z;
      admissible = fits;
    }
  }
  if (!admissible) {
    throw StructureError("off-diagonal pairs admit no common zeta", out.residual);
  }
  out.c_tilde.resize(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const bool upper_dependent =
        std::abs(c[j] - out.zeta * std::conj(d[j])) <= std::abs(d[j] - out.zeta * std::conj(c[j]));
    out.c_tilde[j] = upper_dependent ? d[j] : c[j];
  }
  out.bidiagonal = bidiagonal_matrix(out.c_tilde, n);
  return out;
}

std::vector<ClosedForm> tridiagonal_ranges(const ComplexMatrix& t, const StructureOptions& opts) {
  const TridiagonalData td = tridiagonal_data(t, opts.tol);
  const BlockForm bf =
      make_block_form(td.alpha, td.beta, td.bidiagonal, td.bidiagonal.adjoint() * td.zeta);
  return zeta_adjoint_ranges(bf, td.zeta, opts);
}

ComplexMatrix shift_matrix(std::size_t n) {
  ComplexMatrix s(n, n);
  for (std::size_t i = 1; i < n; ++i) s(i, i - 1) = 1.0;
  return s;
}

std::vector<ClosedForm> shift_ranges(std::size_t n, const StructureOptions& opts) {
  if (n < 2) throw ArgumentError("shift needs n >= 2");
  return tridiagonal_ranges(shift_matrix(n), opts);
}

ConvexRegion shift_range(std::size_t n, int k, const StructureOptions& opts) {
  if (n < 2) throw ArgumentError("shift needs n >= 2");
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  return shift_ranges(n, opts)[static_cast<std::size_t>(k) - 1].region;
}

double theta_independence_residual(const BlockForm& bf) {
  const std::vector<double> ref = eigvalsh(m_theta(bf, kProbeAngles[0]));
  double dev = 0.0;
  for (const double theta : kProbeAngles) {
    const std::vector<double> mu = eigvalsh(m_theta(bf, theta));
    for (std::size_t j = 0; j < mu.size(); ++j) dev = std::max(dev, std::abs(mu[j] - ref[j]));
  }
  return rel(dev, ref.empty() ? 0.0 : std::abs(ref.front()));
}

std::vector<ClosedForm> theta_independent_ranges(const BlockForm& bf, const StructureOptions& opts) {
  const double residual = theta_independence_residual(bf);
  if (residual > opts.tol) throw HypothesisError("spectrum of M(theta) depends on theta", residual);
  std::vector<EllipseDisc> discs;
  for (const double mu : nonzero_prefix(eigvalsh(m_theta(bf, 0.0)), 1e-12))
    discs.push_back(ellipse_from_foci(bf.alpha, bf.beta, std::sqrt(mu)));
  return table(bf, discs, opts.geometry);
}

std::vector<ClosedForm> theorem_ranges(const BlockForm& bf, const StructureOptions& opts) {
  const JointEigendata jd = joint_eigendata(bf, opts.tol);
  const NormalizedBlock nb = normalize(bf);
  const auto nested = nested_fast_path(nb, jd.pairs);
  if (nested) return table(bf, *nested, opts.geometry);
  const KippenhahnComponents comp = kippenhahn_ellipses(nb, jd.pairs);
  std::vector<ClosedForm> out;
  for (std::size_t k = 1; k <= bf.n; ++k) {
    ClosedForm cf;
    cf.k = static_cast<int>(k);
    cf.region = rank_k_from_components(comp, cf.k, opts.geometry);
    out.push_back(std::move(cf));
  }
  return out;
}

QuadraticTest is_quadratic(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) throw DimensionError("is_quadratic needs a square matrix");
  QuadraticTest out;
  const std::vector<cplx> eig = eigenvalues(a);
  const std::size_t n = eig.size();
  double spread = 0.0;
  std::size_t fa = 0, fb = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(eig[i] - eig[j]) > spread) {
        spread = std::abs(eig[i] - eig[j]);
        fa = i;
        fb = j;
      }
  const double fn = a.frobenius_norm();
  if (spread <= 1e-6 * std::max(1.0, fn)) return out;

  // Single-linkage clusters at a relative gap of 1e-6·spread.
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  auto find = [&](std::size_t i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(eig[i] - eig[j]) <= 1e-6 * spread) label[find(i)] = find(j);
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i)
    if (std::find(roots.begin(), roots.end(), find(i)) == roots.end()) roots.push_back(find(i));

  cplx ca = eig[fa], cb = eig[fb];
  if (roots.size() == 2) {
    cplx s[2]{};
    std::size_t cnt[2]{};
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t g = find(i) == roots[0] ? 0 : 1;
      s[g] += eig[i];
      ++cnt[g];
    }
    ca = s[0] / static_cast<double>(cnt[0]);
    cb = s[1] / static_cast<double>(cnt[1]);
  } else {
    // 2-means from the farthest pair.
    for (int it = 0; it < 50; ++it) {
      cplx s[2]{};
      std::size_t cnt[2]{};
      for (const cplx z : eig) {
        const std::size_t g = std::abs(z - ca) <= std::abs(z - cb) ? 0 : 1;
        s[g] += z;
        ++cnt[g];
      }
      const cplx na = cnt[0] ? s[0] / static_cast<double>(cnt[0]) : ca;
      const cplx nb = cnt[1] ? s[1] / static_cast<double>(cnt[1]) : cb;
      if (na == ca && nb == cb) break;
      ca = na;
      cb = nb;
    }
  }
  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix prod = (a - id * ca) * (a - id * cb);
  out.alpha = ca;
  out.beta = cb;
  out.residual = prod.frobenius_norm() / std::max(1.0, fn * fn);
  out.quadratic = roots.size() == 2 && out.residual <= tol;
  return out;
}

EllipseDisc ellipse_2x2(const ComplexMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionError("ellipse_2x2 needs a 2x2 matrix");
  const cplx tr = a.trace();
  const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const cplx root = std::sqrt(tr * tr - 4.0 * det);
  const cplx l1 = 0.5 * (tr + root);
  const cplx l2 = 0.5 * (tr - root);
  const double t = std::norm(a.frobenius_norm());
  double minor2 = t - std::norm(l1) - std::norm(l2);
  if (minor2 <= kRadicandRel * t) minor2 = 0.0;
  const double minor = std::sqrt(minor2);
  return ellipse_from_foci(l1, l2, minor);
}

std::vector<double> two_toeplitz_singular_values(cplx c1, cplx d2, std::size_t n) {
  std::vector<double> s;
  const double a = std::norm(c1) + std::norm(d2);
  const double b = 2.0 * std::abs(c1 * d2);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double s2 = a + b * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                       static_cast<double>(n + 1));
    s.push_back(std::sqrt(std::max(0.0, s2)));
  }
  return s;
}

StructureReport classify(const ComplexMatrix& a, std::optional<std::size_t> r,
                         const StructureOptions& opts) {
  if (!a.is_square()) throw DimensionError("classify needs a square matrix");
  const std::size_t n = a.rows();
  const double tol = opts.tol;
  StructureReport rep;
  const double fn = a.frobenius_norm();

  if (n >= 2) {
    const ComplexMatrix lower = shift_matrix(n);
    const double res = std::min((a - lower).frobenius_norm(), (a - lower.transpose()).frobenius_norm());
    rep.residuals["shift"] = rel(res, fn);
    if (rep.residuals["shift"] <= tol) rep.flags.push_back(StructureClass::Shift);
  }

  if (n >= 3) {
    double best = std::numeric_limits<double>::infinity();
    for (const std::size_t split : {n - 1, std::size_t{1}}) {
      try {
        detect_block_form(a, split, tol);
        best = 0.0;
      } catch (const StructureError& e) {
        best = std::min(best, rel(e.residual(), fn));
      }
    }
    rep.residuals["arrowhead"] = best;
    if (best <= tol) rep.flags.push_back(StructureClass::Arrowhead);
  }

  if (n >= 2) {
    try {
      const TridiagonalData td = tridiagonal_data(a, tol);
      rep.residuals["tridiagonal"] = td.residual;
      rep.flags.push_back(StructureClass::TridiagonalBiperiodic);
      rep.zeta = td.zeta;
      const auto s = nonzero_prefix(singular_values(td.bidiagonal), 1e-12);
      rep.singular_data = SingularData{s.size(), s};
    } catch (const StructureError& e) {
      rep.residuals["tridiagonal"] = e.residual();
    }
  }

  // Block splits, best class first; ties go to r closest to n/2.
  std::vector<std::size_t> splits;
  if (r) {
    splits.push_back(*r);
  } else {
    for (std::size_t s = 1; s < n; ++s) splits.push_back(s);
    std::stable_sort(splits.begin(), splits.end(), [&](std::size_t x, std::size_t y) {
      const double dx = std::abs(static_cast<double>(2 * x) - static_cast<double>(n));
      const double dy = std::abs(static_cast<double>(2 * y) - static_cast<double>(n));
      return dx < dy;
    });
  }
  struct Candidate {
    int rank = 99;
    BlockForm bf;
    std::map<std::string, double> residuals;
    std::vector<StructureClass> flags;
    bool hyp = false;
    cplx zeta{};
  };
  Candidate best;
  for (const std::size_t s : splits) {
    BlockForm bf;
    try {
      bf = detect_block_form(a, s, tol);
    } catch (const Error& e) {
      if (r) {
        const auto* se = dynamic_cast<const StructureError*>(&e);
        rep.residuals["block_form"] = se ? rel(se->residual(), fn) : 1.0;
      }
      continue;
    }
    Candidate c;
    c.bf = bf;
    c.residuals["block_form"] = 0.0;
    c.flags.push_back(StructureClass::GenericBlock);
    c.rank = 4;
    c.residuals["scalar_dc"] = scalar_dc_residual(bf, nullptr);
    const auto [zeta, zres] = fit_zeta(bf);
    c.zeta = zeta;
    c.residuals["zeta_adjoint"] = zres;
    c.residuals["theta_independent"] = theta_independence_residual(bf);
    try {
      joint_eigendata(bf, tol);
      c.hyp = true;
      c.rank = 3;
      c.residuals["normality"] = 0.0;
      c.residuals["commutation"] = 0.0;
    } catch (const HypothesisError& e) {
      c.residuals["normality"] = e.first_residual();
      c.residuals["commutation"] = e.second_residual();
    }
    if (c.residuals["theta_independent"] <= tol) {
      c.flags.push_back(StructureClass::ThetaIndependent);
      c.rank = 2;
    }
    if (zres <= tol) {
      c.flags.push_back(StructureClass::ZetaAdjoint);
      c.rank = 1;
    }
    if (c.residuals["scalar_dc"] <= tol) {
      c.flags.push_back(StructureClass::ScalarDC);
      c.rank = 0;
    }
    if (c.rank < best.rank) best = std::move(c);
  }
  if (best.rank < 99) {
    for (const auto& [k, v] : best.residuals) rep.residuals[k] = v;
    for (const auto f : best.flags) rep.flags.push_back(f);
    rep.block = best.bf;
    rep.theorem_hypotheses = best.hyp;
    if (!rep.zeta && best.residuals["zeta_adjoint"] <= tol) {
      rep.zeta = best.zeta;
      const auto s = nonzero_prefix(singular_values(original_c(best.bf)), 1e-12);
      rep.singular_data = SingularData{s.size(), s};
    }
  }

  try {
    const QuadraticTest q = is_quadratic(a, tol);
    rep.residuals["quadratic"] = q.residual;
    if (q.quadratic) {
      rep.flags.push_back(StructureClass::Quadratic);
      rep.quadratic = q;
    }
  } catch (const Error&) {
  }

  for (const StructureClass c :
       {StructureClass::Shift, StructureClass::Arrowhead, StructureClass::TridiagonalBiperiodic,
        StructureClass::ScalarDC, StructureClass::ZetaAdjoint, StructureClass::ThetaIndependent,
        StructureClass::GenericBlock, StructureClass::Quadratic}) {
    if (rep.has(c)) {
      rep.detected_class = c;
      break;
    }
  }
  return rep;
}

ClosedRoute closed_form_ranges(const ComplexMatrix& a, std::optional<std::size_t> r,
                               const StructureOptions& opts) {
  ClosedRoute out;
  out.report = classify(a, r, opts);
  const StructureReport& rep = out.report;
  switch (rep.detected_class) {
    case StructureClass::Shift:
    case StructureClass::TridiagonalBiperiodic:
      out.ranges = tridiagonal_ranges(a, opts);
      break;
    case StructureClass::Arrowhead:
      out.ranges = arrowhead_range(a, opts);
      break;
    case StructureClass::ScalarDC:
      out.ranges = scalar_dc_ranges(*rep.block, opts);
      break;
    case StructureClass::ZetaAdjoint:
      out.ranges = zeta_adjoint_ranges(*rep.block, fit_zeta(*rep.block).first, opts);
      break;
    case StructureClass::ThetaIndependent:
      out.ranges = theta_independent_ranges(*rep.block, opts);
      break;
    case StructureClass::GenericBlock:
      if (!rep.theorem_hypotheses) {
        throw NoClosedFormError("block form found but DC is not normal or does not commute with H");
      }
      out.ranges = theorem_ranges(*rep.block, opts);
      break;
    case StructureClass::Quadratic:
    case StructureClass::None:
      throw NoClosedFormError(std::string("no closed form for class ") +
                              class_name(rep.detected_class));
  }
  out.route = std::string("closed:") + class_name(rep.detected_class);
  return out;
}

}  // namespace hrnr
