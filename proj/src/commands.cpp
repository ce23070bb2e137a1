#include "hrnr/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "hrnr/svg.hpp"

namespace hrnr {

namespace {

std::optional<std::size_t> split_of(const MatrixDocument& input, const CommandOptions& opts) {
  return opts.r ? opts.r : input.r;
}

void check_k(const MatrixDocument& input, int k) {
  const std::size_t n = input.matrix.rows();
  if (!input.matrix.is_square()) {
    throw DimensionError("matrix must be square, got " + std::to_string(n) + "x" +
                         std::to_string(input.matrix.cols()));
  }
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw ArgumentError("--k " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
}

RegionDocument base_document(const CommandOptions& opts, double scale) {
  RegionDocument doc;
  doc.k = opts.k;
  doc.grid = opts.grid;
  doc.tol = opts.tol * scale;
  doc.segment_rel = opts.geometry.segment_rel;
  doc.point_rel = opts.geometry.point_rel;
  return doc;
}

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty()) throw ParseError("cannot parse point '" + whole + "'");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ParseError("cannot parse point '" + whole + "'");
  }
  return v;
}

}  // namespace

Route parse_route(const std::string& s) {
  if (s == "auto") return Route::Auto;
  if (s == "generic") return Route::Generic;
  if (s == "closed") return Route::Closed;
  throw ParseError("--route must be auto, generic or closed, got '" + s + "'");
}

EngineOptions CommandOptions::engine() const {
  EngineOptions e;
  e.grid = grid;
  e.tol = tol;
  e.geometry = geometry;
  return e;
}

StructureOptions CommandOptions::structure() const {
  StructureOptions s;
  s.tol = structure_tol;
  s.geometry = geometry;
  return s;
}

ComputeResult cmd_compute(const MatrixDocument& input, const CommandOptions& opts) {
  check_k(input, opts.k);
  const ComplexMatrix& a = input.matrix;
  ComputeResult out;
  out.document = base_document(opts, range_scale(a));
  RegionDocument& doc = out.document;

  bool done = false;
  if (opts.route != Route::Generic) {
    try {
      const ClosedRoute cr = closed_form_ranges(a, split_of(input, opts), opts.structure());
      const ClosedForm& cf = cr.ranges[static_cast<std::size_t>(opts.k) - 1];
      doc.region = cf.region;
      doc.ellipse = cf.ellipse;
      doc.route = cr.route;
      done = true;
    } catch (const NoClosedFormError&) {
      if (opts.route == Route::Closed) throw;
    } catch (const HypothesisError&) {
      if (opts.route == Route::Closed) throw;
    }
  }
  if (!done) {
    const RangeResult rr = rank_k_range(a, opts.k, opts.engine());
    doc.region = rr.region;
    doc.certificate = rr.certificate;
    doc.route = "generic";
  }
  out.exit_code = doc.region.is_empty() ? kExitEmpty : kExitOk;
  return out;
}

VerifyReport cmd_verify(const MatrixDocument& input, const CommandOptions& opts) {
  check_k(input, opts.k);
  const ComplexMatrix& a = input.matrix;
  const ClosedRoute cr = closed_form_ranges(a, split_of(input, opts), opts.structure());
  VerifyReport rep;
  rep.k = opts.k;
  rep.route = cr.route;
  rep.closed = cr.ranges[static_cast<std::size_t>(opts.k) - 1].region;
  rep.generic = rank_k_range(a, opts.k, opts.engine()).region;
  rep.threshold = 5.0 * discretization_bound(range_scale(a), opts.grid);
  if (rep.closed.is_empty() || rep.generic.is_empty()) {
    rep.distance = rep.closed.is_empty() == rep.generic.is_empty()
                       ? 0.0
                       : std::numeric_limits<double>::infinity();
  } else {
    rep.distance = hausdorff_distance(rep.closed, rep.generic);
  }
  rep.pass = rep.distance <= rep.threshold;
  return rep;
}

std::string cmd_curve(const MatrixDocument& input, const CommandOptions& opts) {
  const ComplexMatrix& a = input.matrix;
  if (!a.is_square()) throw DimensionError("matrix must be square");
  std::vector<SvgLayer> layers;
  bool done = false;
  if (opts.route != Route::Generic) {
    try {
      const ClosedRoute cr = closed_form_ranges(a, split_of(input, opts), opts.structure());
      for (const auto& cf : cr.ranges) {
        SvgLayer l{cf.k, cf.region, {}};
        if (cf.ellipse) l.foci = {cf.ellipse->foci.first, cf.ellipse->foci.second};
        layers.push_back(std::move(l));
      }
      done = true;
    } catch (const NoClosedFormError&) {
      if (opts.route == Route::Closed) throw;
    } catch (const HypothesisError&) {
      if (opts.route == Route::Closed) throw;
    }
  }
  if (!done) {
    for (const auto& rr : all_rank_k_ranges(a, opts.engine())) layers.push_back({rr.k, rr.region, {}});
  }
  std::vector<SvgLayer> kept;
  for (auto& l : layers) {
    if (l.region.is_empty()) continue;
    if (!kept.empty() && kept.back().region == l.region) continue;
    if (l.foci.size() == 2 && l.foci[0] == l.foci[1]) l.foci.pop_back();
    kept.push_back(std::move(l));
  }
  return render_svg(kept);
}

MemberResult cmd_member(const MatrixDocument& input, cplx z, const CommandOptions& opts) {
  check_k(input, opts.k);
  MemberResult out;
  out.margin = membership_margin(input.matrix, opts.k, z, opts.engine());
  out.inside = out.margin >= -opts.tol * range_scale(input.matrix);
  return out;
}

cplx parse_point(const std::string& text) {
  std::string s;
  for (const char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty point");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // Split at the last sign that is not the leading one or part of an exponent.
  std::size_t cut = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  const std::string re = cut == std::string::npos ? "" : s.substr(0, cut);
  std::string im = cut == std::string::npos ? s : s.substr(cut);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

}  // namespace hrnr
