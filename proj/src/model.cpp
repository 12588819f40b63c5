#include "proxim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace proxim {

namespace {

struct CertaintyEntry {
    Certainty level;
    double value;
    std::string_view name;
};

constexpr CertaintyEntry kCertaintyTable[] = {
    {Certainty::Certain, 1.0, "certain"},
    {Certainty::Probable, 0.7, "probable"},
    {Certainty::Possible, 0.5, "possible"},
    {Certainty::Doubtful, 0.25, "doubtful"},
};

std::string join_errors(const std::vector<std::string>& errors) {
    std::ostringstream out;
    out << "validation failed";
    for (const auto& e : errors) out << "\n  " << e;
    return out.str();
}

bool is_positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

double certainty_value(Certainty level) noexcept {
    for (const auto& e : kCertaintyTable)
        if (e.level == level) return e.value;
    return 1.0;
}

std::string_view certainty_name(Certainty level) noexcept {
    for (const auto& e : kCertaintyTable)
        if (e.level == level) return e.name;
    return "certain";
}

std::optional<Certainty> certainty_from_value(double value) noexcept {
    for (const auto& e : kCertaintyTable)
        if (e.value == value) return e.level;
    return std::nullopt;
}

std::optional<Certainty> certainty_from_name(std::string_view name) noexcept {
    for (const auto& e : kCertaintyTable)
        if (e.name == name) return e.level;
    return std::nullopt;
}

std::string_view feature_kind_name(FeatureKind kind) noexcept {
    switch (kind) {
        case FeatureKind::Quantitative: return "quantitative";
        case FeatureKind::OrdinalFuzzy: return "ordinal";
        case FeatureKind::Nominal: return "nominal";
    }
    return "quantitative";
}

std::optional<FeatureKind> feature_kind_from_name(std::string_view name) noexcept {
    if (name == "quantitative") return FeatureKind::Quantitative;
    if (name == "ordinal") return FeatureKind::OrdinalFuzzy;
    if (name == "nominal") return FeatureKind::Nominal;
    return std::nullopt;
}

const FeatureSchema* Schema::find(std::string_view name) const noexcept {
    auto it = std::find_if(features.begin(), features.end(),
                           [&](const FeatureSchema& f) { return f.name == name; });
    return it == features.end() ? nullptr : &*it;
}

std::size_t Schema::count(FeatureKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(features.begin(), features.end(), [&](const FeatureSchema& f) { return f.kind == kind; }));
}

const Accuracy* SourceProfile::accuracy_for(std::string_view feature) const {
    auto it = accuracy.find(feature);
    return it == accuracy.end() ? nullptr : &it->second;
}

std::optional<double> SourceProfile::sigma_for(std::string_view feature) const {
    const Accuracy* acc = accuracy_for(feature);
    if (!acc) return std::nullopt;
    if (const auto* s = std::get_if<Sigma>(acc)) return s->value;
    if (const auto* m = std::get_if<MaxError>(acc)) return m->value / 3.0;
    return std::nullopt;
}

const FeatureValue* InformationObject::value(std::string_view feature) const {
    auto it = values.find(feature);
    return it == values.end() ? nullptr : &it->second;
}

const FeatureProximity* ProximityBreakdown::feature(std::string_view name) const {
    auto it = std::find_if(per_feature.begin(), per_feature.end(),
                           [&](const FeatureProximity& f) { return f.feature == name; });
    return it == per_feature.end() ? nullptr : &*it;
}

void ValidationIssues::merge(const ValidationIssues& other) {
    errors.insert(errors.end(), other.errors.begin(), other.errors.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

ValidationError::ValidationError(std::vector<std::string> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

Validated<Schema> validate_schema(const Schema& schema) {
    Validated<Schema> result;
    auto& errors = result.issues.errors;
    auto& warnings = result.issues.warnings;

    if (schema.features.empty()) errors.push_back("schema declares no features");

    std::set<std::string, std::less<>> seen;
    double weight_sum = 0.0;
    for (const auto& f : schema.features) {
        const std::string where = "feature '" + f.name + "': ";
        if (f.name.empty()) errors.push_back("feature with empty name");
        if (!seen.insert(f.name).second) errors.push_back(where + "duplicate feature name");
        if (!std::isfinite(f.weight) || f.weight < 0.0 || f.weight > 1.0)
            errors.push_back(where + "weight must lie in [0, 1]");
        weight_sum += f.weight;

        const bool quant = f.kind == FeatureKind::Quantitative;
        const bool nominal = f.kind == FeatureKind::Nominal;
        const bool ordinal = f.kind == FeatureKind::OrdinalFuzzy;

        if (quant) {
            if (!f.quantitative_xi)
                errors.push_back(where + "missing accuracy parameter xi");
            else if (!is_positive_finite(*f.quantitative_xi))
                errors.push_back(where + "xi must be > 0");
            if (f.dimension == 0) errors.push_back(where + "dimension must be >= 1");
            if (f.epsilon && !(std::isfinite(*f.epsilon) && *f.epsilon >= 0.0))
                errors.push_back(where + "epsilon must be >= 0");
        } else {
            if (f.quantitative_xi) errors.push_back(where + "xi is only valid for quantitative features");
            if (f.epsilon) errors.push_back(where + "epsilon is only valid for quantitative features");
        }

        if (nominal) {
            if (!f.nominal_delta) {
                errors.push_back(where + "missing accuracy parameter delta");
            } else {
                const double d = *f.nominal_delta;
                if (!(std::isfinite(d) && d > 0.0 && d <= kMaxNominalDelta)) {
                    errors.push_back(where + (d > kMaxNominalDelta ? "delta > 0.5 meaningless"
                                                                   : "delta must lie in (0, 0.5]"));
                } else if (d == kMaxNominalDelta) {
                    warnings.push_back(where + "delta = 0.5 removes the feature's identification power");
                }
            }
        } else if (f.nominal_delta) {
            errors.push_back(where + "delta is only valid for nominal features");
        }

        if (ordinal) {
            if (f.ordinal_params && f.ordinal_params->width && !is_positive_finite(*f.ordinal_params->width))
                errors.push_back(where + "ordinal width must be > 0");
            if (f.ordinal_params) {
                std::set<std::string, std::less<>> terms(f.ordinal_params->terms.begin(),
                                                         f.ordinal_params->terms.end());
                if (terms.size() != f.ordinal_params->terms.size())
                    errors.push_back(where + "duplicate ordinal term");
            }
        } else if (f.ordinal_params) {
            errors.push_back(where + "ordinal parameters are only valid for ordinal features");
        }
    }

    if (!schema.features.empty() && std::abs(weight_sum - 1.0) > kWeightTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "feature weights sum to " << weight_sum << ", expected 1";
        errors.push_back(msg.str());
    }

    if (errors.empty()) result.value = schema;
    return result;
}

ValidationIssues validate_sources(const Schema& schema, const std::vector<SourceProfile>& sources) {
    ValidationIssues issues;
    std::set<std::string, std::less<>> ids;
    for (const auto& src : sources) {
        const std::string where = "source '" + src.source_id + "': ";
        if (src.source_id.empty()) issues.errors.push_back("source with empty id");
        if (!ids.insert(src.source_id).second) issues.errors.push_back(where + "duplicate source id");

        for (const auto& [name, acc] : src.accuracy) {
            const FeatureSchema* f = schema.find(name);
            if (!f) {
                issues.errors.push_back(where + "accuracy given for unknown feature '" + name + "'");
                continue;
            }
            const std::string fwhere = where + "feature '" + name + "': ";
            switch (f->kind) {
                case FeatureKind::Quantitative:
                    if (!std::holds_alternative<Sigma>(acc) && !std::holds_alternative<MaxError>(acc))
                        issues.errors.push_back(fwhere + "quantitative accuracy must be sigma or max_error");
                    break;
                case FeatureKind::OrdinalFuzzy:
                    if (const auto* k = std::get_if<RelativeError>(&acc)) {
                        if (!(k->value > 0.0 && k->value < 1.0))
                            issues.errors.push_back(fwhere + "relative_error must lie in (0, 1)");
                        if (f->ordinal_params && f->ordinal_params->shape == MembershipShape::Gaussian)
                            issues.errors.push_back(fwhere + "gaussian memberships need half_width (spread)");
                    } else if (!std::holds_alternative<HalfWidth>(acc)) {
                        issues.errors.push_back(fwhere + "ordinal accuracy must be relative_error or half_width");
                    }
                    break;
                case FeatureKind::Nominal:
                    issues.errors.push_back(fwhere + "nominal features take no per-source accuracy");
                    break;
            }
            std::visit(
                [&](const auto& a) {
                    if (!is_positive_finite(a.value)) issues.errors.push_back(fwhere + "accuracy must be > 0");
                },
                acc);
        }

        for (const auto& f : schema.features) {
            const std::string fwhere = where + "feature '" + f.name + "': ";
            if (f.kind == FeatureKind::Quantitative && !src.sigma_for(f.name))
                issues.errors.push_back(fwhere + "missing accuracy parameter (sigma or max_error)");
            if (f.kind == FeatureKind::OrdinalFuzzy && !src.accuracy_for(f.name) &&
                !(f.ordinal_params && f.ordinal_params->width))
                issues.errors.push_back(fwhere + "missing accuracy parameter (relative_error or half_width)");
        }
    }
    return issues;
}

ValidationIssues validate_object(const Schema& schema, const std::vector<SourceProfile>& sources,
                                 const InformationObject& object) {
    ValidationIssues issues;
    const std::string where = "object '" + object.object_id + "': ";
    if (object.object_id.empty()) issues.errors.push_back("object with empty id");
    const bool known_source = std::any_of(sources.begin(), sources.end(),
                                          [&](const SourceProfile& s) { return s.source_id == object.source_id; });
    if (!known_source) issues.errors.push_back(where + "unknown source '" + object.source_id + "'");

    for (const auto& [name, value] : object.values) {
        const FeatureSchema* f = schema.find(name);
        if (!f) {
            issues.errors.push_back(where + "value for unknown feature '" + name + "'");
            continue;
        }
        const std::string fwhere = where + "feature '" + name + "': ";
        switch (f->kind) {
            case FeatureKind::Quantitative: {
                const auto* m = std::get_if<Measurement>(&value.payload);
                if (!m) {
                    issues.errors.push_back(fwhere + "expected a numeric measurement");
                } else if (m->components.size() != f->dimension) {
                    issues.errors.push_back(fwhere + "expected " + std::to_string(f->dimension) + " components");
                } else if (!std::all_of(m->components.begin(), m->components.end(),
                                        [](double v) { return std::isfinite(v); })) {
                    issues.errors.push_back(fwhere + "non-finite measurement");
                }
                break;
            }
            case FeatureKind::OrdinalFuzzy:
                if (const auto* r = std::get_if<Rank>(&value.payload)) {
                    if (f->ordinal_params && !f->ordinal_params->terms.empty() &&
                        (r->value < 0 || r->value >= static_cast<long>(f->ordinal_params->terms.size())))
                        issues.errors.push_back(fwhere + "rank outside the term scale");
                } else {
                    issues.errors.push_back(fwhere + "expected an ordinal rank");
                }
                break;
            case FeatureKind::Nominal:
                if (!std::holds_alternative<Label>(value.payload))
                    issues.errors.push_back(fwhere + "expected a nominal label");
                break;
        }
    }
    return issues;
}

void resolve_default_xi(Schema& schema, const std::vector<SourceProfile>& sources,
                        const std::map<std::string, double, std::less<>>& fleet_sigma_min) {
    for (auto& f : schema.features) {
        if (f.kind != FeatureKind::Quantitative || f.quantitative_xi) continue;
        if (auto it = fleet_sigma_min.find(f.name); it != fleet_sigma_min.end()) {
            f.quantitative_xi = 3.0 * it->second;
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& src : sources)
            if (auto s = src.sigma_for(f.name); s && *s > 0.0) best = std::min(best, *s);
        if (std::isfinite(best)) f.quantitative_xi = 3.0 * best;
    }
}

}  // namespace proxim
