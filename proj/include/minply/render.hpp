#pragma once

#include <optional>
#include <string>

#include "minply/instances.hpp"

namespace minply {

struct RenderOptions {
  double scale = 80.0;   // pixels per unit
  double margin = 20.0;  // pixels
};

// SVG drawing of an instance: square outlines (chosen ones emphasised),
// points as dots, the stabbing line or slab lines, and, when a solution with
// a witness is given, its ply region shaded and labelled with the depth.
// Output depends only on the inputs.
std::string render_svg(const Instance& instance, const std::optional<Solution>& solution,
                       const RenderOptions& options = {});

}  // namespace minply
