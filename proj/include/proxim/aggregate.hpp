#pragma once

// Combining per-feature proximities/distances into one object-level measure.

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace proxim::aggregate {

enum class Method { Additive, CountNormalized, WeightedAdditive, TwoClassWeighted, Multiplicative };

std::string_view method_name(Method method) noexcept;
std::optional<Method> method_from_name(std::string_view name) noexcept;

struct AggregationSpec {
    Method method = Method::Multiplicative;
    // Scalar class weight w for TwoClassWeighted; per-feature weights come
    // from the schema.
    double class_weight = 0.5;
    // TwoClassWeighted: divide each class sum by its feature count.
    bool normalized = true;

    bool operator==(const AggregationSpec&) const = default;
};

/// ρ_Y = Σρ_K + Σρ_Q. Range [0, L].
double additive_distance(std::span<const double> quant, std::span<const double> qual);

/// ρ_Y = Σρ_K / L₁ + Σρ_Q / (L - L₁); an empty class contributes 0. Range [0, 2].
double count_normalized_distance(std::span<const double> quant, std::span<const double> qual);

/// ρ_Y = Σ wˡρˡ with Σ wˡ = 1. Throws on a weight-sum violation.
double weighted_additive_distance(std::span<const double> values, std::span<const double> weights);

/// ρ_Y = w·Σρ_K + (1-w)·Σρ_Q, or with each sum divided by its class count.
double two_class_weighted_distance(double w, std::span<const double> quant, std::span<const double> qual,
                                   bool normalized);

/// ρ'_Y = ∏ ρ'^(wˡ) with Σ wˡ = 1; 0^0 is taken as 1.
double multiplicative_proximity(std::span<const double> proximities, std::span<const double> weights);

/// Plain product of all proximities (every exponent 1).
double unit_product_proximity(std::span<const double> proximities);

struct QuantitativeComparison {
    double first;
    double second;
    std::optional<double> epsilon;
};
struct QualitativeComparison {
    bool equal;
};
using ZhuravlevTerm = std::variant<QuantitativeComparison, QualitativeComparison>;

/// Baseline count of features whose values agree: |xᵢ - xⱼ| ≤ ε for
/// quantitative features, exact equality for qualitative ones.
int zhuravlev_distance(std::span<const ZhuravlevTerm> terms);

/// One present feature of a pair, as seen by the aggregator.
struct FeatureInput {
    bool quantitative;
    double proximity;
    double weight;
};

struct Aggregate {
    double proximity;
    double distance;
};

/// Applies `spec` to the present features of one pair. Weights are
/// renormalized over the features given. Additive methods are scaled into
/// [0, 1] by their value at all-unit distances so that proximity and distance
/// stay complementary. No present feature (or zero total weight) yields
/// proximity 0.
Aggregate combine(const AggregationSpec& spec, std::span<const FeatureInput> features);

}  // namespace proxim::aggregate
