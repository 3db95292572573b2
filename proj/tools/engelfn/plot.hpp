#pragma once

#include "engelfn/family.hpp"
#include "engelfn/func.hpp"

#include <string>
#include <vector>

namespace engelfn::cli {

/// One plot row: an x-slice of (0, 1] with a rigorous f-range box over it.
struct Box {
    Rat x_lo, x_hi, f_lo, f_hi;
};

/// Splits (0, 1] into at least n_points disjoint boxes along cylinder
/// boundaries (widest-first binary splitting), so every box edge is exact.
std::vector<Box> plot_boxes(const FamilySpec& fam, int n_points);

std::string boxes_to_csv(const std::vector<Box>& boxes, int digits);
std::string boxes_to_svg(const std::vector<Box>& boxes, int width_px, int height_px);

}  // namespace engelfn::cli
