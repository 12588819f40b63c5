#include "proxim/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "proxim/model.hpp"

namespace proxim::aggregate {

namespace {

double sum(std::span<const double> xs) { return std::accumulate(xs.begin(), xs.end(), 0.0); }

double mean_or_zero(std::span<const double> xs) { return xs.empty() ? 0.0 : sum(xs) / static_cast<double>(xs.size()); }

void require_weights(std::span<const double> values, std::span<const double> weights) {
    if (values.size() != weights.size()) throw std::invalid_argument("one weight per value required");
    for (double w : weights)
        if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("weights must lie in [0, 1]");
    if (std::abs(sum(weights) - 1.0) > kWeightTolerance) throw std::invalid_argument("weights must sum to 1");
}

void require_unit_interval(std::span<const double> xs) {
    for (double x : xs)
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("proximities must lie in [0, 1]");
}

double weighted_product(std::span<const double> proximities, std::span<const double> weights) {
    double result = 1.0;
    for (std::size_t i = 0; i < proximities.size(); ++i) {
        if (weights[i] == 0.0) continue;
        if (proximities[i] == 0.0) return 0.0;
        result *= std::pow(proximities[i], weights[i]);
    }
    return result;
}

}  // namespace

std::string_view method_name(Method method) noexcept {
    switch (method) {
        case Method::Additive: return "additive";
        case Method::CountNormalized: return "count-normalized";
        case Method::WeightedAdditive: return "weighted-additive";
        case Method::TwoClassWeighted: return "two-class-weighted";
        case Method::Multiplicative: return "multiplicative";
    }
    return "multiplicative";
}

std::optional<Method> method_from_name(std::string_view name) noexcept {
    for (Method m : {Method::Additive, Method::CountNormalized, Method::WeightedAdditive, Method::TwoClassWeighted,
                     Method::Multiplicative})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

double additive_distance(std::span<const double> quant, std::span<const double> qual) {
    return sum(quant) + sum(qual);
}

double count_normalized_distance(std::span<const double> quant, std::span<const double> qual) {
    return mean_or_zero(quant) + mean_or_zero(qual);
}

double weighted_additive_distance(std::span<const double> values, std::span<const double> weights) {
    require_weights(values, weights);
    return std::inner_product(values.begin(), values.end(), weights.begin(), 0.0);
}

double two_class_weighted_distance(double w, std::span<const double> quant, std::span<const double> qual,
                                   bool normalized) {
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("class weight must lie in [0, 1]");
    if (normalized) return w * mean_or_zero(quant) + (1.0 - w) * mean_or_zero(qual);
    return w * sum(quant) + (1.0 - w) * sum(qual);
}

double multiplicative_proximity(std::span<const double> proximities, std::span<const double> weights) {
    require_weights(proximities, weights);
    require_unit_interval(proximities);
    return weighted_product(proximities, weights);
}

double unit_product_proximity(std::span<const double> proximities) {
    require_unit_interval(proximities);
    return std::accumulate(proximities.begin(), proximities.end(), 1.0, std::multiplies<>());
}

int zhuravlev_distance(std::span<const ZhuravlevTerm> terms) {
    int count = 0;
    for (const auto& term : terms) {
        if (const auto* q = std::get_if<QuantitativeComparison>(&term)) {
            if (!q->epsilon) throw std::invalid_argument("missing threshold for quantitative feature");
            if (std::abs(q->first - q->second) <= *q->epsilon) ++count;
        } else if (std::get<QualitativeComparison>(term).equal) {
            ++count;
        }
    }
    return count;
}

Aggregate combine(const AggregationSpec& spec, std::span<const FeatureInput> features) {
    const Aggregate no_evidence{0.0, 1.0};
    if (features.empty()) return no_evidence;

    std::vector<double> quant, qual, all_prox, all_dist, weights;
    double weight_total = 0.0;
    for (const auto& f : features) {
        const double dist = 1.0 - f.proximity;
        (f.quantitative ? quant : qual).push_back(dist);
        all_prox.push_back(f.proximity);
        all_dist.push_back(dist);
        weights.push_back(f.weight);
        weight_total += f.weight;
    }

    const bool weighted = spec.method == Method::WeightedAdditive || spec.method == Method::Multiplicative;
    if (weighted) {
        if (!(weight_total > 0.0)) return no_evidence;
        for (double& w : weights) w /= weight_total;
    }

    if (spec.method == Method::Multiplicative) {
        const double p = weighted_product(all_prox, weights);
        return {p, 1.0 - p};
    }

    auto distance_for = [&](std::span<const double> qd, std::span<const double> ld,
                            std::span<const double> ad) -> double {
        switch (spec.method) {
            case Method::Additive: return additive_distance(qd, ld);
            case Method::CountNormalized: return count_normalized_distance(qd, ld);
            case Method::WeightedAdditive: return std::inner_product(ad.begin(), ad.end(), weights.begin(), 0.0);
            case Method::TwoClassWeighted: return two_class_weighted_distance(spec.class_weight, qd, ld, spec.normalized);
            case Method::Multiplicative: break;
        }
        return 0.0;
    };

    const std::vector<double> unit_quant(quant.size(), 1.0), unit_qual(qual.size(), 1.0),
        unit_all(all_dist.size(), 1.0);
    const double scale = distance_for(unit_quant, unit_qual, unit_all);
    if (!(scale > 0.0)) return no_evidence;
    const double d = std::clamp(distance_for(quant, qual, all_dist) / scale, 0.0, 1.0);
    return {1.0 - d, d};
}

}  // namespace proxim::aggregate
