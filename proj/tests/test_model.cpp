#include <algorithm>
#include <string>

#include "doctest.h"
#include "proxim/config.hpp"
#include "proxim/model.hpp"

using namespace proxim;

namespace {

FeatureSchema quantitative(std::string name, double weight, double xi = 3.0) {
    FeatureSchema f;
    f.name = std::move(name);
    f.kind = FeatureKind::Quantitative;
    f.weight = weight;
    f.quantitative_xi = xi;
    return f;
}

FeatureSchema nominal(std::string name, double weight, double delta) {
    FeatureSchema f;
    f.name = std::move(name);
    f.kind = FeatureKind::Nominal;
    f.weight = weight;
    f.nominal_delta = delta;
    return f;
}

bool mentions(const std::vector<std::string>& messages, const std::string& needle) {
    return std::any_of(messages.begin(), messages.end(),
                       [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("valid schemas") {
    const Schema two{{quantitative("position", 0.5), nominal("type", 0.5, 0.1)}};
    const auto v = validate_schema(two);
    CHECK(v.ok());
    CHECK(v.issues.warnings.empty());
    CHECK(*v.value == two);

    CHECK(validate_schema(Schema{{quantitative("x", 1.0)}}).ok());
}

TEST_CASE("validation is idempotent") {
    const Schema s{{quantitative("a", 0.3), nominal("b", 0.7, 0.2)}};
    const auto once = validate_schema(s);
    REQUIRE(once.ok());
    const auto twice = validate_schema(*once.value);
    REQUIRE(twice.ok());
    CHECK(*twice.value == *once.value);
}

TEST_CASE("nominal delta bounds") {
    auto r = validate_schema(Schema{{nominal("type", 1.0, 0.6)}});
    CHECK_FALSE(r.ok());
    CHECK(mentions(r.issues.errors, "delta > 0.5 meaningless"));

    r = validate_schema(Schema{{nominal("type", 1.0, 0.0)}});
    CHECK(mentions(r.issues.errors, "(0, 0.5]"));

    r = validate_schema(Schema{{nominal("type", 1.0, 0.5)}});
    CHECK(r.ok());
    CHECK(r.issues.warnings.size() == 1);
}

TEST_CASE("every violation is reported") {
    FeatureSchema no_xi = quantitative("x", 0.4);
    no_xi.quantitative_xi.reset();
    FeatureSchema no_delta = nominal("t", 0.4, 0.1);
    no_delta.nominal_delta.reset();
    const auto r = validate_schema(Schema{{no_xi, no_delta}});
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.value.has_value());
    CHECK(mentions(r.issues.errors, "missing accuracy parameter xi"));
    CHECK(mentions(r.issues.errors, "missing accuracy parameter delta"));
    CHECK(mentions(r.issues.errors, "weights sum"));
    CHECK(r.issues.errors.size() == 3);
}

TEST_CASE("other schema errors") {
    CHECK_FALSE(validate_schema(Schema{}).ok());
    CHECK_FALSE(validate_schema(Schema{{quantitative("x", 0.5), quantitative("x", 0.5)}}).ok());
    CHECK_FALSE(validate_schema(Schema{{quantitative("x", 1.5), quantitative("y", -0.5)}}).ok());
    CHECK(validate_schema(Schema{{quantitative("x", 0.5 + 1e-10), quantitative("y", 0.5)}}).ok());
    CHECK_FALSE(validate_schema(Schema{{quantitative("x", 0.5 + 1e-8), quantitative("y", 0.5)}}).ok());

    auto misplaced = quantitative("x", 1.0);
    misplaced.nominal_delta = 0.1;
    CHECK_FALSE(validate_schema(Schema{{misplaced}}).ok());

    FeatureSchema ord;
    ord.name = "size";
    ord.kind = FeatureKind::OrdinalFuzzy;
    ord.weight = 1.0;
    ord.ordinal_params = OrdinalParams{MembershipShape::Triangular, -1.0, {"small", "small"}};
    const auto r = validate_schema(Schema{{ord}});
    CHECK(r.issues.errors.size() == 2);
}

TEST_CASE("certainty scale round-trips") {
    for (auto c : {Certainty::Certain, Certainty::Probable, Certainty::Possible, Certainty::Doubtful}) {
        CHECK(certainty_from_value(certainty_value(c)) == c);
        CHECK(certainty_from_name(certainty_name(c)) == c);
    }
    CHECK(certainty_value(Certainty::Certain) == 1.0);
    CHECK(certainty_value(Certainty::Probable) == 0.7);
    CHECK(certainty_value(Certainty::Possible) == 0.5);
    CHECK(certainty_value(Certainty::Doubtful) == 0.25);
    CHECK_FALSE(certainty_from_value(0.6).has_value());
    CHECK_FALSE(certainty_from_name("likely").has_value());
}

TEST_CASE("source accuracy resolution") {
    SourceProfile s{"S1", {{"x", MaxError{60.0}}, {"y", Sigma{4.0}}, {"size", HalfWidth{2.0}}}};
    CHECK(s.sigma_for("x") == 20.0);
    CHECK(s.sigma_for("y") == 4.0);
    CHECK_FALSE(s.sigma_for("size").has_value());
    CHECK_FALSE(s.sigma_for("z").has_value());

    const Schema schema{{quantitative("x", 1.0)}};
    CHECK(validate_sources(schema, {s}).errors.size() == 2);  // y and size are unknown
    CHECK(validate_sources(schema, {SourceProfile{"S2", {}}}).errors.size() == 1);
    CHECK(validate_sources(schema, {SourceProfile{"S2", {{"x", Sigma{0.0}}}}}).errors.size() == 1);
}

TEST_CASE("object validation") {
    const Schema schema{{quantitative("pos", 0.5), nominal("type", 0.5, 0.1)}};
    const std::vector<SourceProfile> sources{{"S1", {{"pos", Sigma{1.0}}}}};
    InformationObject ok{"a", "S1", {{"pos", {Measurement{{1.0}}}}, {"type", {Label{"tank"}}}}};
    CHECK(validate_object(schema, sources, ok).ok());

    InformationObject partial{"a", "S1", {{"pos", {Measurement{{1.0}}}}}};
    CHECK(validate_object(schema, sources, partial).ok());

    InformationObject bad{"a", "S9", {{"pos", {Label{"x"}}}, {"mass", {Measurement{{1.0}}}}}};
    CHECK(validate_object(schema, sources, bad).errors.size() == 3);

    InformationObject wrong_dim{"a", "S1", {{"pos", {Measurement{{1.0, 2.0}}}}}};
    CHECK_FALSE(validate_object(schema, sources, wrong_dim).ok());
}

TEST_CASE("default xi from the best sigma") {
    Schema schema{{quantitative("x", 1.0)}};
    schema.features[0].quantitative_xi.reset();
    const std::vector<SourceProfile> sources{{"S1", {{"x", Sigma{2.0}}}}, {"S2", {{"x", MaxError{3.0}}}}};
    Schema a = schema;
    resolve_default_xi(a, sources);
    CHECK(a.features[0].quantitative_xi == 3.0);
    Schema b = schema;
    resolve_default_xi(b, sources, {{"x", 0.5}});
    CHECK(b.features[0].quantitative_xi == 1.5);
}

TEST_CASE("configuration documents") {
    const auto doc = nlohmann::json::parse(R"({
        "features": [
            {"name": "pos", "kind": "quantitative", "weight": 0.5, "dimension": 2, "sigma_min": 10},
            {"name": "type", "kind": "nominal", "weight": 0.5, "delta": 0.1}
        ],
        "sources": [{"id": "S1", "accuracy": {"pos": {"sigma": 20}}},
                    {"id": "S2", "accuracy": {"pos": {"max_error": 90}}}],
        "aggregation": {"method": "multiplicative"},
        "threshold": 0.05
    })");
    const auto cfg = config::parse_config(doc);
    CHECK(cfg.schema.features.size() == 2);
    CHECK(cfg.schema.features[0].dimension == 2);
    CHECK(cfg.schema.features[0].quantitative_xi == 30.0);
    CHECK(cfg.sources[1].sigma_for("pos") == 30.0);
    CHECK(cfg.threshold == 0.05);
    CHECK(config::validate_config(cfg).ok());

    const auto broken = nlohmann::json::parse(R"({
        "features": [{"name": "t", "kind": "colour", "weight": "half"}],
        "aggregation": {"method": "median"}
    })");
    try {
        config::parse_config(broken);
        FAIL("expected a ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.errors().size() == 3);
    }
}

}  // TEST_SUITE
