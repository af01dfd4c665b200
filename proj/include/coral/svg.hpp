#pragma once

#include "coral/coral.hpp"
#include "coral/counting.hpp"
#include "coral/morse.hpp"

#include <optional>
#include <string>

namespace coral {

struct Viewport {
    Rat xmin, ymin, xmax, ymax;
};

/// Figure emission: corals on the truncated cone with the boundary line,
/// curves with dashed extension rays, Morse trees on a horizontal axis.
/// Output bytes are deterministic for fixed input.
std::string render_coral_svg(const TropicalCoral& c, std::optional<Viewport> vp = std::nullopt);
std::string render_curve_svg(const TropicalCurve& tc, std::optional<Viewport> vp = std::nullopt);
std::string render_tmt_svg(const MorseTree& m);

}  // namespace coral
