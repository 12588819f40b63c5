#include "proxim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "proxim/fuzzy.hpp"

namespace proxim::sim {

namespace {

std::string padded(const std::string& prefix, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04zu", index);
    return prefix + "-" + buf;
}

std::string coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::size_t pick(double u, std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n))); }

double planar_distance(const PhysicalObject& a, const PhysicalObject& b) { return std::hypot(a.x - b.x, a.y - b.y); }

const std::string& label_of(const InformationObject& obj) {
    return std::get<Label>(obj.value(kTypeFeature)->payload).value;
}

const std::vector<double>& position_of(const InformationObject& obj) {
    return std::get<Measurement>(obj.value(kPositionFeature)->payload).components;
}

}  // namespace

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::pair<double, double> Rng::normal_pair() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t Rng::stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ValidationIssues validate_scene_spec(const SceneSpec& spec) {
    ValidationIssues issues;
    if (spec.object_count == 0) issues.errors.push_back("scene: object_count must be > 0");
    if (!(spec.width > 0.0 && spec.height > 0.0 && std::isfinite(spec.width) && std::isfinite(spec.height)))
        issues.errors.push_back("scene: area sides must be > 0");
    if (spec.type_alphabet.size() < 2) issues.errors.push_back("scene: at least two type labels required");
    if (std::set<std::string>(spec.type_alphabet.begin(), spec.type_alphabet.end()).size() !=
        spec.type_alphabet.size())
        issues.errors.push_back("scene: duplicate type label");
    if (spec.source_rmse.size() != 2) issues.errors.push_back("scene: exactly two source RMSE values required");
    for (double r : spec.source_rmse)
        if (!(r > 0.0 && std::isfinite(r))) issues.errors.push_back("scene: RMSE values must be > 0");
    if (!(spec.type_error > 0.0 && spec.type_error <= kMaxNominalDelta))
        issues.errors.push_back("scene: type_error must lie in (0, 0.5]");
    else if (spec.type_error == kMaxNominalDelta)
        issues.warnings.push_back("scene: type_error = 0.5 removes the type's identification power");
    if (!(spec.sigma_min > 0.0 && std::isfinite(spec.sigma_min))) issues.errors.push_back("scene: sigma_min must be > 0");
    return issues;
}

Scene generate_scene(const SceneSpec& spec) {
    if (auto issues = validate_scene_spec(spec); !issues.ok()) throw ValidationError(std::move(issues.errors));
    Rng rng(Rng::stream_seed(spec.seed, 0));
    Scene scene;
    scene.objects.reserve(spec.object_count);
    for (std::size_t i = 0; i < spec.object_count; ++i) {
        const double x = rng.uniform() * spec.width;
        const double y = rng.uniform() * spec.height;
        const std::string& type = spec.type_alphabet[pick(rng.uniform(), spec.type_alphabet.size())];
        scene.objects.push_back({padded("PO", i), x, y, type});
    }
    return scene;
}

ObservedDataset observe(const Scene& scene, const ObservationProfile& profile,
                        const std::vector<std::string>& type_alphabet, std::uint64_t seed) {
    Rng rng(seed);
    ObservedDataset out;
    out.source_id = profile.source_id;
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        const PhysicalObject& po = scene.objects[i];
        // Fixed draw count per object keeps streams aligned across RMSE settings.
        const auto [nx, ny] = rng.normal_pair();
        const double flip = rng.uniform();
        const double replacement = rng.uniform();

        std::string type = po.type;
        if (flip < profile.type_error && type_alphabet.size() > 1) {
            std::vector<std::string> others;
            for (const auto& t : type_alphabet)
                if (t != po.type) others.push_back(t);
            type = others[pick(replacement, others.size())];
        }

        InformationObject obj;
        obj.object_id = padded(profile.source_id, i);
        obj.source_id = profile.source_id;
        obj.values.emplace(kPositionFeature,
                           FeatureValue{Measurement{{po.x + profile.rmse * nx, po.y + profile.rmse * ny}}});
        obj.values.emplace(kTypeFeature, FeatureValue{Label{std::move(type)}});
        out.objects.push_back(std::move(obj));
        out.truth.push_back(i);
    }
    return out;
}

std::string source_id(std::size_t index) { return "S" + std::to_string(index + 1); }

Schema scene_schema(const SceneSpec& spec) {
    FeatureSchema position;
    position.name = kPositionFeature;
    position.kind = FeatureKind::Quantitative;
    position.weight = 0.5;
    position.dimension = 2;
    position.quantitative_xi = 3.0 * spec.sigma_min;

    FeatureSchema type;
    type.name = kTypeFeature;
    type.kind = FeatureKind::Nominal;
    type.weight = 0.5;
    type.nominal_delta = spec.type_error;
    return Schema{{position, type}};
}

std::vector<SourceProfile> scene_sources(const SceneSpec& spec) {
    std::vector<SourceProfile> sources;
    for (std::size_t i = 0; i < spec.source_rmse.size(); ++i) {
        SourceProfile s;
        s.source_id = source_id(i);
        s.accuracy.emplace(kPositionFeature, Sigma{spec.source_rmse[i]});
        sources.push_back(std::move(s));
    }
    return sources;
}

double coincident_proximity_bound(const SceneSpec& spec, bool types_match) {
    const auto schema = scene_schema(spec);
    const auto sources = scene_sources(spec);
    auto make = [&](std::size_t src, const std::string& type) {
        InformationObject obj;
        obj.object_id = source_id(src);
        obj.source_id = source_id(src);
        obj.values.emplace(kPositionFeature, FeatureValue{Measurement{{0.0, 0.0}}});
        obj.values.emplace(kTypeFeature, FeatureValue{Label{type}});
        return obj;
    };
    const auto a = make(0, "a");
    const auto b = make(1, types_match ? "a" : "b");
    return engine::evaluate_pair(schema, sources, aggregate::AggregationSpec{}, a, b).aggregate_proximity;
}

bool ExperimentReport::same_object(const ProximityBreakdown& b) const {
    const auto index_of = [](const ObservedDataset& ds, const std::string& id) {
        auto it = std::find_if(ds.objects.begin(), ds.objects.end(),
                               [&](const InformationObject& o) { return o.object_id == id; });
        return static_cast<std::size_t>(it - ds.objects.begin());
    };
    const std::size_t i = index_of(datasets[0], b.first_id);
    const std::size_t j = index_of(datasets[1], b.second_id);
    if (i >= datasets[0].truth.size() || j >= datasets[1].truth.size()) return false;
    return datasets[0].truth[i] == datasets[1].truth[j];
}

ExperimentReport run_experiment(const SceneSpec& spec, double threshold, unsigned threads) {
    ExperimentReport report;
    report.spec = spec;
    report.threshold = threshold;
    report.scene = generate_scene(spec);
    report.schema = scene_schema(spec);
    report.sources = scene_sources(spec);
    for (std::size_t k = 0; k < report.sources.size(); ++k) {
        const ObservationProfile profile{report.sources[k].source_id, spec.source_rmse[k], spec.type_error};
        report.datasets.push_back(observe(report.scene, profile, spec.type_alphabet, Rng::stream_seed(spec.seed, k + 1)));
    }

    engine::MatchRun run;
    run.schema = report.schema;
    run.sources = report.sources;
    run.first = report.datasets[0].objects;
    run.second = report.datasets[1].objects;
    run.candidate_threshold = threshold;
    report.breakdowns = engine::pairwise_breakdowns(run, threads);
    report.candidates = engine::candidates(report.breakdowns, threshold);

    Summary& s = report.summary;
    s.nominal_cap = std::pow(spec.type_error, report.schema.find(kTypeFeature)->weight);
    s.coincident_bound = coincident_proximity_bound(spec);
    double true_sum = 0.0, distinct_sum = 0.0, far_sum = 0.0;
    const std::size_t cols = run.second.size();
    for (std::size_t k = 0; k < report.breakdowns.size(); ++k) {
        const std::size_t ti = report.datasets[0].truth[k / cols];
        const std::size_t tj = report.datasets[1].truth[k % cols];
        const double p = report.breakdowns[k].aggregate_proximity;
        if (ti == tj) {
            ++s.true_pairs;
            true_sum += p;
        } else {
            ++s.distinct_pairs;
            distinct_sum += p;
            if (planar_distance(report.scene.objects[ti], report.scene.objects[tj]) > s.far_separation) {
                ++s.far_distinct_pairs;
                far_sum += p;
            }
        }
    }
    if (s.true_pairs) s.mean_true_proximity = true_sum / static_cast<double>(s.true_pairs);
    if (s.distinct_pairs) s.mean_distinct_proximity = distinct_sum / static_cast<double>(s.distinct_pairs);
    if (s.far_distinct_pairs) s.mean_far_distinct_proximity = far_sum / static_cast<double>(s.far_distinct_pairs);

    for (const auto& c : report.candidates) {
        const bool same = report.same_object(c);
        ++(same ? s.true_candidates : s.false_candidates);
        const auto& a = *std::find_if(run.first.begin(), run.first.end(),
                                      [&](const InformationObject& o) { return o.object_id == c.first_id; });
        const auto& b = *std::find_if(run.second.begin(), run.second.end(),
                                      [&](const InformationObject& o) { return o.object_id == c.second_id; });
        if (label_of(a) != label_of(b))
            s.type_mismatch_candidates.push_back({c.first_id, c.second_id, same, c.aggregate_proximity});
    }
    return report;
}

io::ordered_json report_to_json(const ExperimentReport& report) {
    using io::ordered_json;
    using io::round4;
    const SceneSpec& spec = report.spec;

    ordered_json scene = ordered_json::array();
    for (const auto& po : report.scene.objects)
        scene.push_back({{"id", po.id}, {"x", round4(po.x)}, {"y", round4(po.y)}, {"type", po.type}});

    ordered_json datasets = ordered_json::array();
    for (const auto& ds : report.datasets) {
        ordered_json objects = ordered_json::array();
        for (std::size_t i = 0; i < ds.objects.size(); ++i) {
            const auto& pos = position_of(ds.objects[i]);
            objects.push_back({{"object_id", ds.objects[i].object_id},
                               {"truth", report.scene.objects[ds.truth[i]].id},
                               {"x", round4(pos[0])},
                               {"y", round4(pos[1])},
                               {"type", label_of(ds.objects[i])}});
        }
        ordered_json entry = {{"source_id", ds.source_id}, {"objects", std::move(objects)}};
        datasets.push_back(std::move(entry));
    }

    ordered_json candidates = ordered_json::array();
    for (const auto& c : report.candidates) {
        ordered_json j = io::breakdown_to_json(c);
        j["same_object"] = report.same_object(c);
        candidates.push_back(std::move(j));
    }

    const Summary& s = report.summary;
    ordered_json mismatches = ordered_json::array();
    for (const auto& m : s.type_mismatch_candidates)
        mismatches.push_back({{"first_id", m.first_id},
                              {"second_id", m.second_id},
                              {"same_object", m.same_object},
                              {"aggregate_proximity", round4(m.proximity)}});

    return {
        {"metadata", {{"generator", kGeneratorVersion}, {"rng", kRngName}, {"seed", spec.seed}}},
        {"scene_spec",
         {{"object_count", spec.object_count},
          {"area", {round4(spec.width), round4(spec.height)}},
          {"types", spec.type_alphabet},
          {"rmse", spec.source_rmse},
          {"type_error", round4(spec.type_error)},
          {"sigma_min", round4(spec.sigma_min)}}},
        {"aggregation", "multiplicative"},
        {"threshold", round4(report.threshold)},
        {"scene", std::move(scene)},
        {"datasets", std::move(datasets)},
        {"breakdowns", io::breakdowns_to_json(report.breakdowns)},
        {"candidates", std::move(candidates)},
        {"summary",
         {{"true_pairs", s.true_pairs},
          {"distinct_pairs", s.distinct_pairs},
          {"far_distinct_pairs", s.far_distinct_pairs},
          {"far_separation", round4(s.far_separation)},
          {"mean_true_proximity", round4(s.mean_true_proximity)},
          {"mean_distinct_proximity", round4(s.mean_distinct_proximity)},
          {"mean_far_distinct_proximity", round4(s.mean_far_distinct_proximity)},
          {"true_candidates", s.true_candidates},
          {"false_candidates", s.false_candidates},
          {"nominal_cap", round4(s.nominal_cap)},
          {"coincident_bound", round4(s.coincident_bound)},
          {"type_mismatch_candidates", std::move(mismatches)}}},
    };
}

std::string render_svg(const ExperimentReport& report) {
    constexpr double kCanvas = 800.0;
    constexpr double kMargin = 40.0;
    const double scale = kCanvas / std::max(report.spec.width, report.spec.height);
    auto px = [&](double x) { return kMargin + x * scale; };
    auto py = [&](double y) { return kMargin + (report.spec.height - y) * scale; };
    const double w = report.spec.width * scale + 2 * kMargin;
    const double h = report.spec.height * scale + 2 * kMargin;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<!-- generator: " << kGeneratorVersion << " -->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << coord(w) << "\" height=\"" << coord(h)
        << "\" viewBox=\"0 0 " << coord(w) << ' ' << coord(h) << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    svg << "<rect x=\"" << coord(kMargin) << "\" y=\"" << coord(kMargin) << "\" width=\""
        << coord(report.spec.width * scale) << "\" height=\"" << coord(report.spec.height * scale)
        << "\" fill=\"none\" stroke=\"#999\"/>\n";

    auto find = [](const ObservedDataset& ds, const std::string& id) -> const InformationObject& {
        return *std::find_if(ds.objects.begin(), ds.objects.end(),
                             [&](const InformationObject& o) { return o.object_id == id; });
    };

    // Candidate annotations underneath the markers.
    for (const auto& c : report.candidates) {
        const auto& a = find(report.datasets[0], c.first_id);
        const auto& b = find(report.datasets[1], c.second_id);
        const auto& pa = position_of(a);
        const auto& pb = position_of(b);
        const double ax = px(pa[0]), ay = py(pa[1]), bx = px(pb[0]), by = py(pb[1]);
        const double cx = (ax + bx) / 2, cy = (ay + by) / 2;
        const double r = std::hypot(ax - bx, ay - by) / 2 + 8.0;
        svg << "<circle cx=\"" << coord(cx) << "\" cy=\"" << coord(cy) << "\" r=\"" << coord(r)
            << "\" fill=\"#2ca02c\" fill-opacity=\"0.2\" stroke=\"#2ca02c\" stroke-opacity=\"0.5\"/>\n";
        if (label_of(a) != label_of(b)) {
            svg << "<rect x=\"" << coord(cx - r - 3) << "\" y=\"" << coord(cy - r - 3) << "\" width=\""
                << coord(2 * r + 6) << "\" height=\"" << coord(2 * r + 6)
                << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
        }
        svg << "<text x=\"" << coord(cx + r + 2) << "\" y=\"" << coord(cy) << "\">"
            << io::fixed4(c.aggregate_proximity) << "</text>\n";
    }

    for (std::size_t k = 0; k < report.datasets.size(); ++k) {
        for (const auto& obj : report.datasets[k].objects) {
            const auto& p = position_of(obj);
            const double x = px(p[0]), y = py(p[1]);
            if (k == 0) {
                svg << "<circle cx=\"" << coord(x) << "\" cy=\"" << coord(y) << "\" r=\"3\" fill=\"#1f77b4\"><title>"
                    << obj.object_id << ' ' << label_of(obj) << "</title></circle>\n";
            } else {
                svg << "<polygon points=\"" << coord(x) << ',' << coord(y - 4) << ' ' << coord(x - 3.5) << ','
                    << coord(y + 3) << ' ' << coord(x + 3.5) << ',' << coord(y + 3)
                    << "\" fill=\"#ff7f0e\"><title>" << obj.object_id << ' ' << label_of(obj)
                    << "</title></polygon>\n";
            }
        }
    }

    svg << "<text x=\"" << coord(kMargin) << "\" y=\"" << coord(kMargin - 12) << "\">"
        << "circles: " << report.datasets[0].source_id << " (RMSE " << coord(report.spec.source_rmse[0])
        << " m), triangles: " << report.datasets[1].source_id << " (RMSE " << coord(report.spec.source_rmse[1])
        << " m), shaded: proximity &gt; " << io::fixed4(report.threshold) << ", boxed: type mismatch</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::filesystem::path> write_outputs(const ExperimentReport& report, const std::filesystem::path& dir,
                                                 const std::set<OutputFormat>& formats) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto open = [&](const std::filesystem::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
        written.push_back(p);
        return out;
    };
    if (formats.contains(OutputFormat::Csv)) {
        for (const auto& ds : report.datasets) {
            auto out = open(dir / ("objects_" + ds.source_id + ".csv"));
            io::write_dataset(out, report.schema, ds.objects);
        }
        auto out = open(dir / "breakdowns.csv");
        io::write_breakdowns_csv(out, report.schema, report.breakdowns);
    }
    if (formats.contains(OutputFormat::Json)) {
        auto out = open(dir / "report.json");
        out << report_to_json(report).dump(2) << '\n';
    }
    if (formats.contains(OutputFormat::Svg)) {
        auto out = open(dir / "scene.svg");
        out << render_svg(report);
    }
    return written;
}

}  // namespace proxim::sim
