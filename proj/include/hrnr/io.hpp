#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hrnr/engine.hpp"
#include "hrnr/geometry.hpp"
#include "hrnr/linalg.hpp"

namespace hrnr {

/// {"n": int, "m": int, "entries": [[re, im], ...], "meta": {"name": str, "r": int}}
struct MatrixDocument {
  ComplexMatrix matrix;
  std::string name;
  std::optional<std::size_t> r;
};

MatrixDocument parse_matrix_json(const std::string& text);
MatrixDocument read_matrix_file(const std::string& path);
std::string matrix_to_json(const MatrixDocument& doc);

struct RegionDocument {
  ConvexRegion region;
  int k = 1;
  int grid = 0;
  std::string route;
  double tol = 0.0;
  double segment_rel = 0.0;
  double point_rel = 0.0;
  std::optional<EmptinessCertificate> certificate;
  std::optional<EllipseDisc> ellipse;
};

std::string region_to_json(const RegionDocument& doc);
RegionDocument parse_region_json(const std::string& text);

/// Whole file as a string; throws Error naming the path on failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hrnr
