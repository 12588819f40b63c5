#pragma once

// Shared domain records: feature schema, source profiles, information
// objects and per-pair proximity results.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace proxim {

enum class FeatureKind { Quantitative, OrdinalFuzzy, Nominal };

enum class MembershipShape { Triangular, Gaussian };

/// Linguistic confidence attached to a reported value. The numeric scale is
/// fixed: Certain = 1, Probable = 0.7, Possible = 0.5, Doubtful = 0.25.
enum class Certainty { Certain, Probable, Possible, Doubtful };

double certainty_value(Certainty level) noexcept;
std::string_view certainty_name(Certainty level) noexcept;
std::optional<Certainty> certainty_from_value(double value) noexcept;
std::optional<Certainty> certainty_from_name(std::string_view name) noexcept;

std::string_view feature_kind_name(FeatureKind kind) noexcept;
std::optional<FeatureKind> feature_kind_from_name(std::string_view name) noexcept;

struct OrdinalParams {
    MembershipShape shape = MembershipShape::Triangular;
    // Default half-width (triangular) or spread (gaussian) for sources that
    // do not state their own accuracy.
    std::optional<double> width;
    // Linguistic terms in increasing property strength; term i has rank i.
    std::vector<std::string> terms;

    bool operator==(const OrdinalParams&) const = default;
};

struct FeatureSchema {
    std::string name;
    FeatureKind kind = FeatureKind::Quantitative;
    double weight = 0.0;

    // Quantitative only.
    std::optional<double> quantitative_xi;
    std::size_t dimension = 1;
    // Zhuravlev baseline threshold; optional.
    std::optional<double> epsilon;

    // Nominal only.
    std::optional<double> nominal_delta;

    // Ordinal only.
    std::optional<OrdinalParams> ordinal_params;

    bool operator==(const FeatureSchema&) const = default;
};

struct Schema {
    std::vector<FeatureSchema> features;

    const FeatureSchema* find(std::string_view name) const noexcept;
    std::size_t count(FeatureKind kind) const noexcept;

    bool operator==(const Schema&) const = default;
};

// Per-source accuracy statements.
struct Sigma { double value; bool operator==(const Sigma&) const = default; };
struct MaxError { double value; bool operator==(const MaxError&) const = default; };
struct RelativeError { double value; bool operator==(const RelativeError&) const = default; };
struct HalfWidth { double value; bool operator==(const HalfWidth&) const = default; };

using Accuracy = std::variant<Sigma, MaxError, RelativeError, HalfWidth>;

struct SourceProfile {
    std::string source_id;
    std::map<std::string, Accuracy, std::less<>> accuracy;

    /// Resolved standard deviation for a quantitative feature (σ directly, or
    /// Δ_max / 3). Empty when the source states no quantitative accuracy.
    std::optional<double> sigma_for(std::string_view feature) const;
    const Accuracy* accuracy_for(std::string_view feature) const;

    bool operator==(const SourceProfile&) const = default;
};

// Value payloads, one per feature kind.
struct Measurement {
    std::vector<double> components;
    bool operator==(const Measurement&) const = default;
};
struct Rank {
    long value;
    bool operator==(const Rank&) const = default;
};
struct Label {
    std::string value;
    bool operator==(const Label&) const = default;
};

using Payload = std::variant<Measurement, Rank, Label>;

struct FeatureValue {
    Payload payload;
    Certainty certainty = Certainty::Certain;

    bool operator==(const FeatureValue&) const = default;
};

/// One source's report about one physical object. A feature missing from
/// `values` is absent and takes no part in aggregation.
struct InformationObject {
    std::string object_id;
    std::string source_id;
    std::map<std::string, FeatureValue, std::less<>> values;

    const FeatureValue* value(std::string_view feature) const;

    bool operator==(const InformationObject&) const = default;
};

struct FeatureProximity {
    std::string feature;
    double proximity = 0.0;
    double distance = 1.0;

    bool operator==(const FeatureProximity&) const = default;
};

struct ProximityBreakdown {
    std::string first_id;
    std::string second_id;
    // Schema order; features absent from either object are omitted.
    std::vector<FeatureProximity> per_feature;
    double aggregate_proximity = 0.0;
    double aggregate_distance = 1.0;

    const FeatureProximity* feature(std::string_view name) const;

    bool operator==(const ProximityBreakdown&) const = default;
};

struct ValidationIssues {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const noexcept { return errors.empty(); }
    void merge(const ValidationIssues& other);
};

template <typename T>
struct Validated {
    std::optional<T> value;
    ValidationIssues issues;

    bool ok() const noexcept { return value.has_value(); }
};

/// Thrown where a validated input is required but violations were found.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> errors);
    const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

inline constexpr double kWeightTolerance = 1e-9;
inline constexpr double kMaxNominalDelta = 0.5;

/// Checks every schema invariant; returns the schema unchanged when all hold,
/// otherwise the full list of violations.
Validated<Schema> validate_schema(const Schema& schema);

/// Checks that every source resolves the accuracy parameters the schema needs.
ValidationIssues validate_sources(const Schema& schema, const std::vector<SourceProfile>& sources);

/// Checks one object against the schema and the known source ids.
ValidationIssues validate_object(const Schema& schema, const std::vector<SourceProfile>& sources,
                                 const InformationObject& object);

/// Fills in ξ = 3·σ_min for quantitative features that lack it. `fleet_sigma_min`
/// maps feature name to the best σ of any source in the fleet; features not in
/// the map fall back to the minimum σ over `sources`.
void resolve_default_xi(Schema& schema, const std::vector<SourceProfile>& sources,
                        const std::map<std::string, double, std::less<>>& fleet_sigma_min = {});

}  // namespace proxim
