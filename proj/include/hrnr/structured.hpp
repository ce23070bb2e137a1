#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrnr/engine.hpp"
#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"

namespace hrnr {

/// A = [[αI_r, C], [D, βI_{n−r}]].
///
/// Stored in the orientation used for computation, which always has
/// n ≤ 2r. When the input had n > 2r the roles of (α, C, r) and
/// (β, D, n − r) are exchanged and `swapped` is set.
struct BlockForm {
  cplx alpha{};
  cplx beta{};
  std::size_t r = 0;
  std::size_t n = 0;
  ComplexMatrix C;  // r × (n − r)
  ComplexMatrix D;  // (n − r) × r
  bool swapped = false;

  /// The matrix in the orientation it was given.
  ComplexMatrix assemble() const;
  /// [[αI_r, C], [D, βI]] in the computational orientation.
  ComplexMatrix assemble_oriented() const;
  /// n − r, the number of Kippenhahn ellipses.
  std::size_t m() const noexcept { return n - r; }
};

/// Block form together with w = (α − β)/2 and the centre (α + β)/2.
struct NormalizedBlock {
  BlockForm base;
  cplx w{};
  cplx shift{};
  ComplexMatrix B;  // A − shift·I, oriented
};

NormalizedBlock normalize(const BlockForm& bf);

/// Builds a BlockForm from any orientation (swap applied when n > 2r).
BlockForm make_block_form(cplx alpha, cplx beta, const ComplexMatrix& C, const ComplexMatrix& D);

/// Reads α, β as diagonal means and checks the diagonal blocks are scalar
/// within tol·‖A‖_F. Throws StructureError with the residual otherwise.
BlockForm detect_block_form(const ComplexMatrix& a, std::size_t r, double tol = 1e-8);

/// P^T A P for the permutation listing odd positions first, then even.
ComplexMatrix odd_even_permutation(const ComplexMatrix& a);

/// C*C + DD* + 2Re(e^{−2iθ}DC) in the computational orientation.
ComplexMatrix m_theta(const BlockForm& bf, double theta);

/// Spectrum of Re(e^{-iθ}A) assembled from the eigenvalues of m_theta.
SupportSample block_support_spectrum(const NormalizedBlock& nb, double theta);

struct EigenPair {
  cplx z{};
  double h = 0.0;
};

struct JointEigendata {
  std::vector<EigenPair> pairs;
  /// Columns diagonalize Z = DC and H = C*C + DD* together.
  ComplexMatrix unitary;
};

/// Simultaneous diagonalization of Z = DC and H = C*C + DD*.
///
/// Pairs are grouped by descending h; inside an eigenspace of H they are
/// ordered by descending Re z, then Im z. Throws HypothesisError carrying
/// the normality and commutation residuals when the hypotheses fail.
JointEigendata joint_eigendata(const BlockForm& bf, double tol = 1e-8);

struct EllipseComponent {
  cplx z{};
  double h = 0.0;
  cplx delta{};
  EllipseDisc disc;
};

struct KippenhahnComponents {
  std::vector<EllipseComponent> ellipses;
  std::optional<cplx> isolated_point;
  std::optional<std::pair<cplx, cplx>> degenerate_segment;
  cplx alpha{};
  cplx beta{};
  std::size_t n = 0;
  std::size_t r = 0;
};

/// Ellipse with foci shift ± ½√Δ, Δ = (α−β)² + 4z, and full axis lengths
/// √(½|α−β|² + h ± ½|Δ|).
EllipseComponent make_component(const NormalizedBlock& nb, cplx z, double h);

KippenhahnComponents kippenhahn_ellipses(const NormalizedBlock& nb,
                                         const std::vector<EigenPair>& pairs);

/// Λ_k from the components: subset-hull intersection for k ≤ n − r,
/// {α} for n − r < k ≤ r, empty otherwise. At most 16 components.
ConvexRegion rank_k_from_components(const KippenhahnComponents& comp, int k,
                                    const GeometryOptions& opts = {});

/// Λ_k = E_k for every k ≤ n − r when μ_1(θ) ≥ … ≥ μ_{n−r}(θ) holds at
/// `grid` angles; nullopt otherwise. Pairs are taken in the given order.
std::optional<std::vector<EllipseDisc>> nested_fast_path(const NormalizedBlock& nb,
                                                         const std::vector<EigenPair>& pairs,
                                                         int grid = 720, double tol = 1e-9);

enum class StructureClass {
  Shift,
  Arrowhead,
  TridiagonalBiperiodic,
  ScalarDC,
  ZetaAdjoint,
  ThetaIndependent,
  GenericBlock,
  Quadratic,
  None,
};

const char* class_name(StructureClass c);

struct SingularData {
  std::size_t p = 0;
  std::vector<double> s;
};

struct QuadraticTest {
  bool quadratic = false;
  cplx alpha{};
  cplx beta{};
  double residual = 0.0;
};

struct StructureReport {
  StructureClass detected_class = StructureClass::None;
  std::vector<StructureClass> flags;
  std::map<std::string, double> residuals;
  std::optional<cplx> zeta;
  std::optional<SingularData> singular_data;
  std::optional<BlockForm> block;
  /// Z = DC normal and commuting with H for `block`.
  bool theorem_hypotheses = false;
  std::optional<QuadraticTest> quadratic;

  bool has(StructureClass c) const;
};

struct StructureOptions {
  double tol = 1e-8;
  GeometryOptions geometry{};
};

/// Tests every pattern and reports the most specific one. When r is not
/// given every split with scalar diagonal blocks is tried.
StructureReport classify(const ComplexMatrix& a, std::optional<std::size_t> r = std::nullopt,
                         const StructureOptions& opts = {});

/// Λ_k for one k. `ellipse` is set when the region is an elliptical disc.
struct ClosedForm {
  int k = 1;
  std::optional<EllipseDisc> ellipse;
  ConvexRegion region;
};

std::vector<ClosedForm> scalar_dc_ranges(const BlockForm& bf, const StructureOptions& opts = {});

/// Both arrowhead patterns; the second is handled through the swap.
std::vector<ClosedForm> arrowhead_range(const ComplexMatrix& a, const StructureOptions& opts = {});

/// Requires ‖D − ζC*‖_F ≤ tol·‖D‖_F in the given orientation.
std::vector<ClosedForm> zeta_adjoint_ranges(const BlockForm& bf, cplx zeta,
                                            const StructureOptions& opts = {});

/// Least-squares ζ = ⟨C*, D⟩/‖C‖² in the given orientation (0 when C = O),
/// with the relative residual ‖D − ζC*‖_F / ‖D‖_F.
std::pair<cplx, double> fit_zeta(const BlockForm& bf);

struct TridiagonalData {
  cplx alpha{};
  cplx beta{};
  cplx zeta{};
  std::vector<cplx> c_tilde;
  ComplexMatrix bidiagonal;  // ⌈n/2⌉ × ⌊n/2⌋
  double residual = 0.0;
};

/// Checks the tridiagonal, biperiodic and ζ-compatibility pattern.
TridiagonalData tridiagonal_data(const ComplexMatrix& t, double tol = 1e-8);

/// ⌈n/2⌉ × ⌊n/2⌋ matrix with main diagonal c̃_1, c̃_3, … and subdiagonal
/// c̃_2, c̃_4, …
ComplexMatrix bidiagonal_matrix(const std::vector<cplx>& c_tilde, std::size_t n);

std::vector<ClosedForm> tridiagonal_ranges(const ComplexMatrix& t, const StructureOptions& opts = {});

ComplexMatrix shift_matrix(std::size_t n);
ConvexRegion shift_range(std::size_t n, int k, const StructureOptions& opts = {});
std::vector<ClosedForm> shift_ranges(std::size_t n, const StructureOptions& opts = {});

/// Eigenvalues of m_theta sorted, compared at θ ∈ {0, π/7, π/3, π/2};
/// returns the largest relative deviation from θ = 0.
double theta_independence_residual(const BlockForm& bf);

std::vector<ClosedForm> theta_independent_ranges(const BlockForm& bf,
                                                 const StructureOptions& opts = {});

/// Regions from the simultaneous diagonalization, using the nested fast
/// path when it applies. Throws HypothesisError.
std::vector<ClosedForm> theorem_ranges(const BlockForm& bf, const StructureOptions& opts = {});

QuadraticTest is_quadratic(const ComplexMatrix& a, double tol = 1e-8);

/// Foci at the eigenvalues, full axes √(Tr A*A − 2Re λ1λ̄2) and
/// √(Tr A*A − |λ1|² − |λ2|²).
EllipseDisc ellipse_2x2(const ComplexMatrix& a);

/// s_k = √(|c1|² + |d2|² + 2|c1 d2| cos(2kπ/(n+1))), k = 1 … ⌊n/2⌋.
std::vector<double> two_toeplitz_singular_values(cplx c1, cplx d2, std::size_t n);

/// Closed-form table for the detected class, with a route tag of the form
/// "closed:<Class>". Throws NoClosedFormError when none applies.
struct ClosedRoute {
  std::string route;
  StructureReport report;
  std::vector<ClosedForm> ranges;
};

ClosedRoute closed_form_ranges(const ComplexMatrix& a, std::optional<std::size_t> r = std::nullopt,
                               const StructureOptions& opts = {});

}  // namespace hrnr
