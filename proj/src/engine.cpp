#include "proxim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "proxim/quant.hpp"

namespace proxim::engine {

namespace {

const SourceProfile& find_source(std::span<const SourceProfile> sources, std::string_view id) {
    auto it = std::find_if(sources.begin(), sources.end(), [&](const SourceProfile& s) { return s.source_id == id; });
    if (it == sources.end()) throw std::invalid_argument("unknown source '" + std::string(id) + "'");
    return *it;
}

double quantitative_feature(const FeatureSchema& feature, const SourceProfile& sa, const Measurement& a,
                            const SourceProfile& sb, const Measurement& b) {
    const auto sigma_a = sa.sigma_for(feature.name);
    const auto sigma_b = sb.sigma_for(feature.name);
    if (!sigma_a || !sigma_b) throw std::invalid_argument("feature '" + feature.name + "': missing source sigma");
    if (a.components.size() != b.components.size())
        throw std::invalid_argument("feature '" + feature.name + "': component count mismatch");
    double proximity = 1.0;
    for (std::size_t axis = 0; axis < a.components.size(); ++axis) {
        const quant::NormalErrorModel ma(a.components[axis], *sigma_a);
        const quant::NormalErrorModel mb(b.components[axis], *sigma_b);
        proximity *= quant::quantitative_proximity(ma, mb, feature.quantitative_xi);
    }
    return proximity;
}

double nominal_feature(const FeatureSchema& feature, const FeatureValue& a, const FeatureValue& b) {
    const double delta = feature.nominal_delta.value_or(kMaxNominalDelta);
    const auto& la = std::get<Label>(a.payload).value;
    const auto& lb = std::get<Label>(b.payload).value;
    if (a.certainty == Certainty::Certain && b.certainty == Certainty::Certain)
        return fuzzy::nominal_proximity(la, lb, delta);
    return fuzzy::possibility(fuzzy::apply_certainty(fuzzy::nominal_membership(la, delta), a.certainty),
                              fuzzy::apply_certainty(fuzzy::nominal_membership(lb, delta), b.certainty));
}

}  // namespace

ValidationIssues validate_run(const MatchRun& run) {
    ValidationIssues issues = validate_schema(run.schema).issues;
    issues.merge(validate_sources(run.schema, run.sources));
    if (!(run.candidate_threshold >= 0.0 && run.candidate_threshold <= 1.0))
        issues.errors.push_back("candidate threshold must lie in [0, 1]");
    if (!(run.aggregation.class_weight >= 0.0 && run.aggregation.class_weight <= 1.0))
        issues.errors.push_back("class weight must lie in [0, 1]");

    std::set<std::string, std::less<>> first_sources;
    std::set<std::string, std::less<>> first_ids;
    for (const auto& obj : run.first) {
        issues.merge(validate_object(run.schema, run.sources, obj));
        first_sources.insert(obj.source_id);
        if (!first_ids.insert(obj.object_id).second)
            issues.errors.push_back("object '" + obj.object_id + "': duplicate id in first dataset");
    }
    std::set<std::string, std::less<>> second_ids;
    std::set<std::string, std::less<>> shared;
    for (const auto& obj : run.second) {
        issues.merge(validate_object(run.schema, run.sources, obj));
        if (first_sources.contains(obj.source_id)) shared.insert(obj.source_id);
        if (!second_ids.insert(obj.object_id).second)
            issues.errors.push_back("object '" + obj.object_id + "': duplicate id in second dataset");
    }
    for (const auto& s : shared) issues.errors.push_back("source '" + s + "' appears in both datasets");
    return issues;
}

fuzzy::FuzzyMembership ordinal_membership(const FeatureSchema& feature, const SourceProfile& source,
                                          const FeatureValue& value) {
    const double peak = static_cast<double>(std::get<Rank>(value.payload).value);
    const MembershipShape shape = feature.ordinal_params ? feature.ordinal_params->shape : MembershipShape::Triangular;
    const Accuracy* acc = source.accuracy_for(feature.name);

    std::optional<double> width;
    std::optional<double> relative;
    if (acc) {
        if (const auto* hw = std::get_if<HalfWidth>(acc)) width = hw->value;
        if (const auto* k = std::get_if<RelativeError>(acc)) relative = k->value;
    }
    if (!width && !relative && feature.ordinal_params) width = feature.ordinal_params->width;

    auto base = [&]() {
        if (shape == MembershipShape::Gaussian) {
            if (!width) throw std::invalid_argument("feature '" + feature.name + "': gaussian spread not configured");
            return fuzzy::gaussian_membership(peak, *width);
        }
        if (relative) return fuzzy::triangular_from_relative_error(peak, *relative);
        if (!width) throw std::invalid_argument("feature '" + feature.name + "': ordinal width not configured");
        return fuzzy::triangular_from_halfwidth(peak, *width);
    }();
    return fuzzy::apply_certainty(base, value.certainty);
}

double feature_proximity(const FeatureSchema& feature, const SourceProfile& source_a, const FeatureValue& a,
                         const SourceProfile& source_b, const FeatureValue& b) {
    switch (feature.kind) {
        case FeatureKind::Quantitative:
            return quantitative_feature(feature, source_a, std::get<Measurement>(a.payload), source_b,
                                        std::get<Measurement>(b.payload));
        case FeatureKind::OrdinalFuzzy:
            return fuzzy::possibility(ordinal_membership(feature, source_a, a), ordinal_membership(feature, source_b, b));
        case FeatureKind::Nominal:
            return nominal_feature(feature, a, b);
    }
    return 0.0;
}

ProximityBreakdown evaluate_pair(const Schema& schema, std::span<const SourceProfile> sources,
                                 const aggregate::AggregationSpec& spec, const InformationObject& a,
                                 const InformationObject& b) {
    const SourceProfile& sa = find_source(sources, a.source_id);
    const SourceProfile& sb = find_source(sources, b.source_id);

    ProximityBreakdown out;
    out.first_id = a.object_id;
    out.second_id = b.object_id;

    std::vector<aggregate::FeatureInput> inputs;
    for (const auto& feature : schema.features) {
        const FeatureValue* va = a.value(feature.name);
        const FeatureValue* vb = b.value(feature.name);
        if (!va || !vb) continue;
        const double p = feature_proximity(feature, sa, *va, sb, *vb);
        out.per_feature.push_back({feature.name, p, 1.0 - p});
        inputs.push_back({feature.kind == FeatureKind::Quantitative, p, feature.weight});
    }
    const auto agg = aggregate::combine(spec, inputs);
    out.aggregate_proximity = agg.proximity;
    out.aggregate_distance = agg.distance;
    return out;
}

std::vector<ProximityBreakdown> pairwise_breakdowns(const MatchRun& run, unsigned threads) {
    if (auto issues = validate_run(run); !issues.ok()) throw ValidationError(std::move(issues.errors));

    const std::size_t cols = run.second.size();
    const std::size_t total = run.first.size() * cols;
    std::vector<ProximityBreakdown> out(total);
    if (total == 0) return out;

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto work = [&] {
        try {
            for (std::size_t k = next++; k < total; k = next++)
                out[k] = evaluate_pair(run.schema, run.sources, run.aggregation, run.first[k / cols],
                                       run.second[k % cols]);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            next = total;
        }
    };
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::vector<ProximityBreakdown> candidates(std::span<const ProximityBreakdown> breakdowns, double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0, 1]");
    std::vector<ProximityBreakdown> out;
    for (const auto& b : breakdowns)
        if (b.aggregate_proximity > threshold) out.push_back(b);
    std::stable_sort(out.begin(), out.end(), [](const ProximityBreakdown& x, const ProximityBreakdown& y) {
        if (x.aggregate_proximity != y.aggregate_proximity) return x.aggregate_proximity > y.aggregate_proximity;
        if (x.first_id != y.first_id) return x.first_id < y.first_id;
        return x.second_id < y.second_id;
    });
    return out;
}

}  // namespace proxim::engine
