#pragma once

// Two-source planar scene: ground-truth physical objects, noisy observations
// of position and type, and the resulting candidate report.

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "proxim/engine.hpp"
#include "proxim/io.hpp"
#include "proxim/model.hpp"

namespace proxim::sim {

inline constexpr const char* kGeneratorVersion = "proxim-sim 1.0";
inline constexpr const char* kRngName = "mt19937_64/splitmix64-streams/box-muller";
inline constexpr const char* kPositionFeature = "position";
inline constexpr const char* kTypeFeature = "type";

/// Portable seeded generator: mt19937_64 output is fixed by the standard; the
/// uniform and normal transforms are done here rather than by <random>
/// distributions, whose algorithms vary between library vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair();

    static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

private:
    std::mt19937_64 engine_;
};

struct SceneSpec {
    std::size_t object_count = 20;
    double width = 1000.0;   // meters
    double height = 1000.0;  // meters
    std::vector<std::string> type_alphabet{"tank", "truck"};
    std::vector<double> source_rmse{20.0, 30.0};  // one entry per source; exactly two
    double type_error = 0.1;                       // Δ
    double sigma_min = 10.0;                       // best σ in the whole fleet; ξ = 3σ_min
    std::uint64_t seed = 1;

    bool operator==(const SceneSpec&) const = default;
};

ValidationIssues validate_scene_spec(const SceneSpec& spec);

struct PhysicalObject {
    std::string id;
    double x;
    double y;
    std::string type;
};

struct Scene {
    std::vector<PhysicalObject> objects;
};

struct ObservationProfile {
    std::string source_id;
    double rmse;
    double type_error;
};

struct ObservedDataset {
    std::string source_id;
    std::vector<InformationObject> objects;
    std::vector<std::size_t> truth;  // scene index behind objects[i]
};

/// Uniform positions in the area and uniform types; throws ValidationError on
/// an invalid spec.
Scene generate_scene(const SceneSpec& spec);

/// Per-axis Gaussian position noise with the source RMSE; the type is kept
/// with probability 1 - Δ, else replaced by a uniformly chosen other label.
ObservedDataset observe(const Scene& scene, const ObservationProfile& profile,
                        const std::vector<std::string>& type_alphabet, std::uint64_t seed);

/// position (2-D quantitative, ξ = 3σ_min) and type (nominal Δ), weights 0.5/0.5.
Schema scene_schema(const SceneSpec& spec);
std::vector<SourceProfile> scene_sources(const SceneSpec& spec);
std::string source_id(std::size_t index);

/// Largest aggregate proximity two observations of one object can reach: both
/// report the same position and the given type relation.
double coincident_proximity_bound(const SceneSpec& spec, bool types_match = true);

struct MismatchCandidate {
    std::string first_id;
    std::string second_id;
    bool same_object;
    double proximity;
};

struct Summary {
    std::size_t true_pairs = 0;
    std::size_t distinct_pairs = 0;
    std::size_t far_distinct_pairs = 0;
    double far_separation = 100.0;
    double mean_true_proximity = 0.0;
    double mean_distinct_proximity = 0.0;
    double mean_far_distinct_proximity = 0.0;
    std::size_t true_candidates = 0;
    std::size_t false_candidates = 0;
    std::vector<MismatchCandidate> type_mismatch_candidates;
    double nominal_cap = 0.0;  // Δ^w_type
    double coincident_bound = 0.0;
};

struct ExperimentReport {
    SceneSpec spec;
    double threshold = engine::kDefaultCandidateThreshold;
    Scene scene;
    std::vector<ObservedDataset> datasets;  // two
    Schema schema;
    std::vector<SourceProfile> sources;
    std::vector<ProximityBreakdown> breakdowns;  // row-major over datasets[0] × datasets[1]
    std::vector<ProximityBreakdown> candidates;
    Summary summary;

    bool same_object(const ProximityBreakdown& b) const;
};

ExperimentReport run_experiment(const SceneSpec& spec, double threshold = engine::kDefaultCandidateThreshold,
                                unsigned threads = 0);

io::ordered_json report_to_json(const ExperimentReport& report);
std::string render_svg(const ExperimentReport& report);

enum class OutputFormat { Csv, Json, Svg };

/// Writes the selected artifacts into `dir` (created if needed):
/// csv → objects_<source>.csv and breakdowns.csv; json → report.json;
/// svg → scene.svg. Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ExperimentReport& report, const std::filesystem::path& dir,
                                                 const std::set<OutputFormat>& formats);

}  // namespace proxim::sim
