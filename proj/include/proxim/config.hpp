#pragma once

// The single JSON configuration document: schema, sources, aggregation,
// threshold and (optionally) a simulation scene.
//
//   {
//     "features": [
//       {"name": "position", "kind": "quantitative", "weight": 0.5, "dimension": 2, "sigma_min": 10},
//       {"name": "type", "kind": "nominal", "weight": 0.5, "delta": 0.1},
//       {"name": "hazard", "kind": "ordinal", "weight": 0.0, "shape": "triangular",
//        "width": 2, "terms": ["low", "medium", "high"]}
//     ],
//     "sources": [
//       {"id": "S1", "accuracy": {"position": {"sigma": 20}, "hazard": {"relative_error": 0.3}}},
//       {"id": "S2", "accuracy": {"position": {"max_error": 90}, "hazard": {"half_width": 1}}}
//     ],
//     "aggregation": {"method": "multiplicative"},
//     "threshold": 0.01,
//     "scene": {...}
//   }

#include <filesystem>
#include <optional>

#include "json.hpp"
#include "proxim/aggregate.hpp"
#include "proxim/model.hpp"
#include "proxim/simulation.hpp"

namespace proxim::config {

struct Config {
    Schema schema;
    std::vector<SourceProfile> sources;
    aggregate::AggregationSpec aggregation;
    double threshold = 0.01;
    std::optional<sim::SceneSpec> scene;
};

/// Throws ValidationError listing every structural problem (wrong types,
/// unknown kinds, missing keys). Defaults ξ from `sigma_min` or the sources.
Config parse_config(const nlohmann::json& doc);

/// Throws std::runtime_error if the file cannot be read, ValidationError if
/// its content is malformed.
Config load_config(const std::filesystem::path& path);

sim::SceneSpec parse_scene(const nlohmann::json& scene);

/// Schema, source and threshold invariants.
ValidationIssues validate_config(const Config& config);

}  // namespace proxim::config
