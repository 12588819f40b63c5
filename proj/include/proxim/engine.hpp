#pragma once

// Full proximity breakdowns over every cross-source object pair, and the
// thresholded candidate list.

#include <span>
#include <vector>

#include "proxim/aggregate.hpp"
#include "proxim/fuzzy.hpp"
#include "proxim/model.hpp"

namespace proxim::engine {

inline constexpr double kDefaultCandidateThreshold = 0.01;

struct MatchRun {
    Schema schema;
    std::vector<SourceProfile> sources;
    std::vector<InformationObject> first;
    std::vector<InformationObject> second;
    aggregate::AggregationSpec aggregation;
    double candidate_threshold = kDefaultCandidateThreshold;
};

/// Schema, sources and every object of both datasets; also rejects a source id
/// that appears on both sides.
ValidationIssues validate_run(const MatchRun& run);

/// Membership of one ordinal value as reported by `source`, with its certainty applied.
fuzzy::FuzzyMembership ordinal_membership(const FeatureSchema& feature, const SourceProfile& source,
                                          const FeatureValue& value);

/// ρ' for one feature. A multi-component quantitative feature multiplies its
/// per-axis proximities, each carrying its own P_ξ.
double feature_proximity(const FeatureSchema& feature, const SourceProfile& source_a, const FeatureValue& a,
                         const SourceProfile& source_b, const FeatureValue& b);

ProximityBreakdown evaluate_pair(const Schema& schema, std::span<const SourceProfile> sources,
                                 const aggregate::AggregationSpec& spec, const InformationObject& a,
                                 const InformationObject& b);

/// One breakdown per (first × second) pair in row-major order. Throws
/// ValidationError if the run is invalid. `threads` = 0 uses the hardware
/// concurrency.
std::vector<ProximityBreakdown> pairwise_breakdowns(const MatchRun& run, unsigned threads = 0);

/// Pairs with aggregate proximity strictly above `threshold`, by descending
/// proximity; ties by (first_id, second_id).
std::vector<ProximityBreakdown> candidates(std::span<const ProximityBreakdown> breakdowns, double threshold);

}  // namespace proxim::engine
