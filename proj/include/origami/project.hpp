#pragma once

#include "origami/json_io.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace origami {

inline constexpr int kProjectVersion = 1;

struct FabricationSection {
    FabricationParams params;
    std::vector<Hole> holes;
};

struct RoutingSection {
    TsaConfig tsa;
    RoutingPlan plan;
};

/// One versioned JSON document holding everything needed to rerun a session.
struct Project {
    int version = kProjectVersion;
    std::optional<TransitionGraphDesign> design;
    std::optional<CreasePattern> pattern;
    std::optional<DesignTask> task;
    std::optional<FabricationSection> fab;
    std::optional<RoutingSection> routing;
    io::json provenance = io::json::object();
    io::json preserved = io::json::object();  // document as loaded, so unknown fields survive a save
};

/// Throws ReferenceError for holes or waypoints naming missing panels.
void check_references(const Project& project);

std::string save_project(const Project& project);
/// Throws ParseError (with byte offset) for malformed JSON and SchemaError for bad fields.
Project load_project(std::string_view text);

void save_project_file(const Project& project, const std::string& path);
Project load_project_file(const std::string& path);

/// Equality of the saved documents.
bool operator==(const Project& a, const Project& b);

}  // namespace origami
