#include "proxim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

namespace proxim::config {

namespace {

using nlohmann::json;

class Reader {
public:
    std::vector<std::string> errors;

    std::optional<double> number(const json& obj, const char* key, const std::string& where, bool required) {
        if (!obj.contains(key)) {
            if (required) errors.push_back(where + "missing '" + key + "'");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            errors.push_back(where + "'" + key + "' must be a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<std::string> string(const json& obj, const char* key, const std::string& where, bool required) {
        if (!obj.contains(key)) {
            if (required) errors.push_back(where + "missing '" + key + "'");
            return std::nullopt;
        }
        const json& v = obj.at(key);
        if (!v.is_string()) {
            errors.push_back(where + "'" + key + "' must be a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    std::vector<std::string> strings(const json& obj, const char* key, const std::string& where) {
        std::vector<std::string> out;
        if (!obj.contains(key)) return out;
        const json& v = obj.at(key);
        if (!v.is_array()) {
            errors.push_back(where + "'" + key + "' must be an array of strings");
            return out;
        }
        for (const auto& e : v) {
            if (!e.is_string()) {
                errors.push_back(where + "'" + key + "' must be an array of strings");
                return {};
            }
            out.push_back(e.get<std::string>());
        }
        return out;
    }
};

FeatureSchema parse_feature(Reader& r, const json& f, std::size_t index,
                            std::map<std::string, double, std::less<>>& sigma_min) {
    FeatureSchema out;
    std::string where = "features[" + std::to_string(index) + "]: ";
    if (!f.is_object()) {
        r.errors.push_back(where + "must be an object");
        return out;
    }
    out.name = r.string(f, "name", where, true).value_or("");
    if (!out.name.empty()) where = "feature '" + out.name + "': ";
    const auto kind_name = r.string(f, "kind", where, true);
    if (kind_name) {
        if (auto kind = feature_kind_from_name(*kind_name))
            out.kind = *kind;
        else
            r.errors.push_back(where + "unknown kind '" + *kind_name + "'");
    }
    out.weight = r.number(f, "weight", where, true).value_or(0.0);

    // Presence is checked by schema validation; here keys are only read.
    out.quantitative_xi = r.number(f, "xi", where, false);
    out.epsilon = r.number(f, "epsilon", where, false);
    out.nominal_delta = r.number(f, "delta", where, false);
    if (auto dim = r.number(f, "dimension", where, false)) {
        if (*dim >= 1.0 && *dim == std::floor(*dim))
            out.dimension = static_cast<std::size_t>(*dim);
        else
            r.errors.push_back(where + "'dimension' must be a positive integer");
    }
    if (auto s = r.number(f, "sigma_min", where, false)) {
        if (*s > 0.0)
            sigma_min[out.name] = *s;
        else
            r.errors.push_back(where + "'sigma_min' must be > 0");
    }

    const bool has_ordinal_keys = f.contains("shape") || f.contains("width") || f.contains("terms");
    if (out.kind == FeatureKind::OrdinalFuzzy || has_ordinal_keys) {
        OrdinalParams params;
        if (auto shape = r.string(f, "shape", where, false)) {
            if (*shape == "triangular")
                params.shape = MembershipShape::Triangular;
            else if (*shape == "gaussian")
                params.shape = MembershipShape::Gaussian;
            else
                r.errors.push_back(where + "unknown shape '" + *shape + "'");
        }
        params.width = r.number(f, "width", where, false);
        params.terms = r.strings(f, "terms", where);
        out.ordinal_params = std::move(params);
    }
    return out;
}

SourceProfile parse_source(Reader& r, const json& s, std::size_t index) {
    SourceProfile out;
    std::string where = "sources[" + std::to_string(index) + "]: ";
    if (!s.is_object()) {
        r.errors.push_back(where + "must be an object");
        return out;
    }
    out.source_id = r.string(s, "id", where, true).value_or("");
    if (!out.source_id.empty()) where = "source '" + out.source_id + "': ";
    if (!s.contains("accuracy")) return out;
    const json& acc = s.at("accuracy");
    if (!acc.is_object()) {
        r.errors.push_back(where + "'accuracy' must be an object");
        return out;
    }
    for (const auto& [feature, spec] : acc.items()) {
        const std::string fwhere = where + "accuracy '" + feature + "': ";
        if (!spec.is_object() || spec.size() != 1) {
            r.errors.push_back(fwhere + "expected exactly one of sigma, max_error, relative_error, half_width");
            continue;
        }
        const auto& [key, value] = *spec.items().begin();
        if (!value.is_number()) {
            r.errors.push_back(fwhere + "'" + key + "' must be a number");
            continue;
        }
        const double v = value.get<double>();
        if (key == "sigma")
            out.accuracy.emplace(feature, Sigma{v});
        else if (key == "max_error")
            out.accuracy.emplace(feature, MaxError{v});
        else if (key == "relative_error")
            out.accuracy.emplace(feature, RelativeError{v});
        else if (key == "half_width")
            out.accuracy.emplace(feature, HalfWidth{v});
        else
            r.errors.push_back(fwhere + "unknown accuracy kind '" + key + "'");
    }
    return out;
}

}  // namespace

sim::SceneSpec parse_scene(const nlohmann::json& scene) {
    Reader r;
    sim::SceneSpec spec;
    const std::string where = "scene: ";
    if (!scene.is_object()) throw ValidationError({"scene must be an object"});
    if (auto n = r.number(scene, "object_count", where, false)) {
        if (*n >= 0.0 && *n == std::floor(*n))
            spec.object_count = static_cast<std::size_t>(*n);
        else
            r.errors.push_back(where + "'object_count' must be a non-negative integer");
    }
    if (scene.contains("area")) {
        const json& area = scene.at("area");
        if (area.is_array() && area.size() == 2 && area[0].is_number() && area[1].is_number()) {
            spec.width = area[0].get<double>();
            spec.height = area[1].get<double>();
        } else {
            r.errors.push_back(where + "'area' must be [width, height]");
        }
    }
    if (scene.contains("types")) spec.type_alphabet = r.strings(scene, "types", where);
    if (scene.contains("rmse")) {
        const json& rmse = scene.at("rmse");
        if (rmse.is_array() && std::all_of(rmse.begin(), rmse.end(), [](const json& v) { return v.is_number(); }))
            spec.source_rmse = rmse.get<std::vector<double>>();
        else
            r.errors.push_back(where + "'rmse' must be an array of numbers");
    }
    spec.type_error = r.number(scene, "type_error", where, false).value_or(spec.type_error);
    spec.sigma_min = r.number(scene, "sigma_min", where, false).value_or(spec.sigma_min);
    if (scene.contains("seed")) {
        if (scene.at("seed").is_number_unsigned())
            spec.seed = scene.at("seed").get<std::uint64_t>();
        else
            r.errors.push_back(where + "'seed' must be a non-negative integer");
    }
    if (!r.errors.empty()) throw ValidationError(std::move(r.errors));
    return spec;
}

Config parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError({"configuration must be a JSON object"});
    Reader r;
    Config cfg;
    std::map<std::string, double, std::less<>> sigma_min;

    if (doc.contains("features")) {
        const json& features = doc.at("features");
        if (!features.is_array()) {
            r.errors.push_back("'features' must be an array");
        } else {
            for (std::size_t i = 0; i < features.size(); ++i)
                cfg.schema.features.push_back(parse_feature(r, features[i], i, sigma_min));
        }
    }
    if (doc.contains("sources")) {
        const json& sources = doc.at("sources");
        if (!sources.is_array()) {
            r.errors.push_back("'sources' must be an array");
        } else {
            for (std::size_t i = 0; i < sources.size(); ++i) cfg.sources.push_back(parse_source(r, sources[i], i));
        }
    }
    if (doc.contains("aggregation")) {
        const json& agg = doc.at("aggregation");
        if (!agg.is_object()) {
            r.errors.push_back("'aggregation' must be an object");
        } else {
            if (auto m = r.string(agg, "method", "aggregation: ", false)) {
                if (auto method = aggregate::method_from_name(*m))
                    cfg.aggregation.method = *method;
                else
                    r.errors.push_back("aggregation: unknown method '" + *m + "'");
            }
            cfg.aggregation.class_weight =
                r.number(agg, "class_weight", "aggregation: ", false).value_or(cfg.aggregation.class_weight);
            if (agg.contains("normalized")) {
                if (agg.at("normalized").is_boolean())
                    cfg.aggregation.normalized = agg.at("normalized").get<bool>();
                else
                    r.errors.push_back("aggregation: 'normalized' must be a boolean");
            }
        }
    }
    cfg.threshold = r.number(doc, "threshold", "", false).value_or(cfg.threshold);
    if (doc.contains("scene")) {
        try {
            cfg.scene = parse_scene(doc.at("scene"));
        } catch (const ValidationError& e) {
            r.errors.insert(r.errors.end(), e.errors().begin(), e.errors().end());
        }
    }
    if (!r.errors.empty()) throw ValidationError(std::move(r.errors));

    resolve_default_xi(cfg.schema, cfg.sources, sigma_min);
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open configuration '" + path.string() + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError({std::string("malformed JSON: ") + e.what()});
    }
    return parse_config(doc);
}

ValidationIssues validate_config(const Config& config) {
    ValidationIssues issues;
    if (!config.schema.features.empty() || config.sources.size() > 0 || !config.scene) {
        issues = validate_schema(config.schema).issues;
        issues.merge(validate_sources(config.schema, config.sources));
    }
    if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) issues.errors.push_back("threshold must lie in [0, 1]");
    if (!(config.aggregation.class_weight >= 0.0 && config.aggregation.class_weight <= 1.0))
        issues.errors.push_back("aggregation: class_weight must lie in [0, 1]");
    if (config.scene) issues.merge(sim::validate_scene_spec(*config.scene));
    return issues;
}

}  // namespace proxim::config
