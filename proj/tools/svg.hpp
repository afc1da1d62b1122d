#pragma once

#include "tropicount/enumerate.hpp"

#include <string>

namespace tropicount::cli {

// Configuration points and every curve overlaid on a 1000x1000 panel, edge weights as
// stroke widths and labels, followed by a row of dual subdivision insets.
std::string render_svg(const EnumerationResult& r);

// Number of <path> elements render_svg emits: one per edge of every curve.
std::size_t svg_path_count(const EnumerationResult& r);

}  // namespace tropicount::cli
