#pragma once

#include <string>

#include "tlab/partition.hpp"

namespace tlab {

struct SvgStyle {
    int size_px = 800;
    bool shade_by_coding = true;
    bool draw_lines = true;
};

// Deterministic SVG 1.1 document (fixed formatting, no external refs):
// identical partitions produce byte-identical output.
std::string partition_to_svg(const TorusPartition& part, const SvgStyle& style = {});

} // namespace tlab
