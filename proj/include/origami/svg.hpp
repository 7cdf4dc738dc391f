#pragma once

#include "origami/crease_pattern.hpp"

#include <string>

namespace origami {

struct SvgStyle {
    double margin = 5.0;  // mm around the pattern
    double fold_stroke = 0.5;
    double border_stroke = 1.2;
    std::string mountain_color = "#d62728";
    std::string valley_color = "#1f77b4";
    std::string border_color = "#000000";
    std::string dash = "3 2";
};

/// One path per crease in millimetres (y up in pattern space, flipped for SVG): mountains
/// solid, valleys dashed, borders heavy. Output depends only on the inputs.
std::string export_svg(const CreasePattern& pattern, const SvgStyle& style = {});

}  // namespace origami
