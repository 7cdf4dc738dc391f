#pragma once

#include "origami/design_optimizer.hpp"
#include "origami/fab_model.hpp"
#include "origami/fold_kinematics.hpp"
#include "origami/string_sim.hpp"

#include <json.hpp>

#include <string>

namespace origami::io {

using json = nlohmann::ordered_json;

json to_json(const Vec2& v);
json to_json(const Vec3& v);
json to_json(const TransitionGraphDesign& design);
json to_json(const CreasePattern& pattern);
json to_json(const Region& region);
json to_json(const DesignTask& task);
json to_json(const FabricationParams& params);
json to_json(const Hole& hole);
json to_json(const TsaConfig& config);
json to_json(const RoutingPlan& plan);

json to_json(const PlanarState& state);
json to_json(const FitnessBreakdown& fitness);
json to_json(const ValidationReport& report);
json to_json(const RoutingReport& report);
json to_json(const MeshReport& report);
json to_json(const EvolutionRun& run, bool with_history);
json to_json(const DesignArmResult& result);
json fold_snapshot(const FoldedGeometry& folded);
json to_json(const SimulationResult& result);

// Readers throw SchemaError naming the offending path (JSON pointer style).
Vec2 vec2_from(const json& j, const std::string& path);
TransitionGraphDesign design_from(const json& j, const std::string& path);
CreasePattern pattern_from(const json& j, const std::string& path);
Region region_from(const json& j, const std::string& path);
DesignTask task_from(const json& j, const std::string& path);
FabricationParams fab_params_from(const json& j, const std::string& path);
Hole hole_from(const json& j, const std::string& path);
TsaConfig tsa_from(const json& j, const std::string& path);
RoutingPlan routing_from(const json& j, const std::string& path);

}  // namespace origami::io
