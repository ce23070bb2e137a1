#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrnr/io.hpp"
#include "hrnr/structured.hpp"

namespace hrnr {

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitEmpty = 2, kExitNonMember = 3 };

enum class Route { Auto, Generic, Closed };

Route parse_route(const std::string& s);

struct CommandOptions {
  int k = 1;
  int grid = 720;
  double tol = 1e-9;
  Route route = Route::Auto;
  /// Overrides meta.r of the input document.
  std::optional<std::size_t> r;
  double structure_tol = 1e-8;
  GeometryOptions geometry{};

  EngineOptions engine() const;
  StructureOptions structure() const;
};

struct ComputeResult {
  RegionDocument document;
  int exit_code = kExitOk;
};

ComputeResult cmd_compute(const MatrixDocument& input, const CommandOptions& opts);

struct VerifyReport {
  int k = 1;
  std::string route;
  ConvexRegion closed;
  ConvexRegion generic;
  double distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Closed form against the generic engine; threshold 5·discretization_bound.
/// Throws NoClosedFormError when only the generic route applies.
VerifyReport cmd_verify(const MatrixDocument& input, const CommandOptions& opts);

/// SVG of every nonempty Λ_k; identical consecutive regions are drawn once.
std::string cmd_curve(const MatrixDocument& input, const CommandOptions& opts);

struct MemberResult {
  bool inside = false;
  double margin = 0.0;
};

MemberResult cmd_member(const MatrixDocument& input, cplx z, const CommandOptions& opts);

/// "a+bi", "a-bi", "a", "bi", "-i", with optional spaces and j for i.
cplx parse_point(const std::string& text);

}  // namespace hrnr
