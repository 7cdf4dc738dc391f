#pragma once

#include "origami/crease_pattern.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace origami {

struct DxfImport {
    CreasePattern pattern;
    std::vector<std::string> warnings;
};

inline constexpr double kDxfMergeTolerance = 1e-3;

/// ASCII DXF subset: LINE and LWPOLYLINE entities in the ENTITIES section. Layers MOUNTAIN
/// and VALLEY map to fold kinds, BORDER and 0 to borders (case-insensitive). Endpoints closer
/// than the merge tolerance are joined, crossings are split and panels are the bounded faces.
/// Throws ParseError for malformed group codes and GeometryError for dangling edges.
DxfImport parse_dxf(std::string_view text, double merge_tolerance = kDxfMergeTolerance);

/// Planar arrangement of loose segments into a pattern (shared by the DXF importer).
DxfImport build_pattern(const std::vector<std::pair<Vec2, Vec2>>& segments, const std::vector<CreaseKind>& kinds,
                        double merge_tolerance = kDxfMergeTolerance);

/// R12 ENTITIES with one LINE per crease on layer MOUNTAIN, VALLEY or BORDER.
std::string export_dxf(const CreasePattern& pattern);

}  // namespace origami
