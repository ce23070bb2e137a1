#pragma once

#include <string>
#include <vector>

#include "hrnr/geometry.hpp"

namespace hrnr {

struct SvgLayer {
  int k = 1;
  ConvexRegion region;
  std::vector<cplx> foci;
};

/// SVG 1.1 document: one path per layer (a filled dot for Point layers),
/// one circle per focus, viewBox fitted to the content with a 5% margin.
/// Output bytes depend only on the input.
std::string render_svg(const std::vector<SvgLayer>& layers);

}  // namespace hrnr
