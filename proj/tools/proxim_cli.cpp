// proxim: command-line front end.
//
//   proxim measure  --config cfg.json objects.csv [--first ID --second ID]
//   proxim match    --config cfg.json first.csv second.csv [--threshold T] [--out DIR]
//   proxim simulate [--config scene.json] [--seed N] [--rmse 20,30] [--out DIR] [--format csv|json|svg]
//   proxim validate --config cfg.json [datasets...]
//
// Exit status: 0 success, 1 validation failure, 2 runtime error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "proxim/aggregate.hpp"
#include "proxim/config.hpp"
#include "proxim/engine.hpp"
#include "proxim/fuzzy.hpp"
#include "proxim/io.hpp"
#include "proxim/quant.hpp"
#include "proxim/simulation.hpp"

namespace fs = std::filesystem;
using namespace proxim;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kRuntime = 2;

void print_issues(const ValidationIssues& issues) {
    for (const auto& w : issues.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& e : issues.errors) std::cerr << "error: " << e << '\n';
}

config::Config load_checked(const fs::path& path) {
    auto cfg = config::load_config(path);
    auto issues = config::validate_config(cfg);
    print_issues(ValidationIssues{{}, issues.warnings});
    if (!issues.ok()) throw ValidationError(std::move(issues.errors));
    return cfg;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

void print_feature_detail(const FeatureSchema& f, const SourceProfile& sa, const FeatureValue& va,
                          const SourceProfile& sb, const FeatureValue& vb) {
    using io::fixed4;
    if (f.kind == FeatureKind::Quantitative) {
        const auto& ma = std::get<Measurement>(va.payload).components;
        const auto& mb = std::get<Measurement>(vb.payload).components;
        const double sig_a = *sa.sigma_for(f.name);
        const double sig_b = *sb.sigma_for(f.name);
        for (std::size_t axis = 0; axis < ma.size(); ++axis) {
            const quant::NormalErrorModel a(ma[axis], sig_a), b(mb[axis], sig_b);
            const auto ov = quant::overlap_interval(a, b);
            std::cout << "    axis " << axis << ": " << fixed4(ma[axis]) << " (sigma " << fixed4(sig_a) << ") vs "
                      << fixed4(mb[axis]) << " (sigma " << fixed4(sig_b) << ")";
            if (ov.empty()) {
                std::cout << ", windows disjoint\n";
                continue;
            }
            std::cout << ", overlap [" << fixed4(ov.c) << ", " << fixed4(ov.d) << "]"
                      << ", P_i " << fixed4(quant::interval_probability(a, ov.c, ov.d)) << ", P_j "
                      << fixed4(quant::interval_probability(b, ov.c, ov.d)) << ", P_S "
                      << fixed4(quant::joint_overlap_probability(a, b));
            if (f.quantitative_xi)
                std::cout << ", xi " << fixed4(*f.quantitative_xi) << ", P_xi "
                          << fixed4(quant::confidence_coefficient(sig_a, sig_b, *f.quantitative_xi));
            std::cout << '\n';
        }
    } else if (f.kind == FeatureKind::OrdinalFuzzy) {
        for (const auto* side : {&va, &vb}) {
            const auto& src = side == &va ? sa : sb;
            const auto m = engine::ordinal_membership(f, src, *side);
            std::cout << "    " << src.source_id << ": rank " << std::get<Rank>(side->payload).value << ", height "
                      << fixed4(m.peak_height());
            if (const auto* t = std::get_if<fuzzy::Triangular>(&m.shape()))
                std::cout << ", support [" << fixed4(t->lower) << ", " << fixed4(t->upper) << "]";
            if (const auto* g = std::get_if<fuzzy::Gaussian>(&m.shape())) std::cout << ", spread " << fixed4(g->spread);
            std::cout << '\n';
        }
    } else {
        std::cout << "    " << std::get<Label>(va.payload).value << " (" << certainty_name(va.certainty) << ") vs "
                  << std::get<Label>(vb.payload).value << " (" << certainty_name(vb.certainty) << "), delta "
                  << fixed4(*f.nominal_delta) << '\n';
    }
}

std::optional<int> zhuravlev_for(const Schema& schema, const InformationObject& a, const InformationObject& b) {
    std::vector<aggregate::ZhuravlevTerm> terms;
    for (const auto& f : schema.features) {
        const FeatureValue* va = a.value(f.name);
        const FeatureValue* vb = b.value(f.name);
        if (!va || !vb) continue;
        if (f.kind == FeatureKind::Quantitative) {
            if (!f.epsilon) return std::nullopt;
            const auto& ca = std::get<Measurement>(va->payload).components;
            const auto& cb = std::get<Measurement>(vb->payload).components;
            double worst = 0.0;
            for (std::size_t i = 0; i < ca.size(); ++i) worst = std::max(worst, std::abs(ca[i] - cb[i]));
            terms.push_back(aggregate::QuantitativeComparison{worst, 0.0, f.epsilon});
        } else {
            terms.push_back(aggregate::QualitativeComparison{va->payload == vb->payload});
        }
    }
    return aggregate::zhuravlev_distance(terms);
}

int cmd_measure(const fs::path& cfg_path, const fs::path& objects_path, const std::string& first,
                const std::string& second, const std::string& format) {
    const auto cfg = load_checked(cfg_path);
    const auto objects = io::read_dataset(objects_path, cfg.schema);
    for (const auto& obj : objects) {
        auto issues = validate_object(cfg.schema, cfg.sources, obj);
        if (!issues.ok()) throw ValidationError(std::move(issues.errors));
    }

    auto find = [&](const std::string& id) -> const InformationObject& {
        for (const auto& o : objects)
            if (o.object_id == id) return o;
        throw ValidationError({"object '" + id + "' not found"});
    };
    const InformationObject* a = nullptr;
    const InformationObject* b = nullptr;
    if (!first.empty() || !second.empty()) {
        if (first.empty() || second.empty()) throw ValidationError({"--first and --second must be given together"});
        a = &find(first);
        b = &find(second);
    } else {
        if (objects.size() != 2)
            throw ValidationError({"objects file must hold exactly two objects unless --first/--second are given"});
        a = &objects[0];
        b = &objects[1];
    }

    const auto breakdown = engine::evaluate_pair(cfg.schema, cfg.sources, cfg.aggregation, *a, *b);
    if (format == "json") {
        std::cout << io::breakdown_to_json(breakdown).dump(2) << '\n';
        return kOk;
    }
    if (format == "csv") {
        io::write_breakdowns_csv(std::cout, cfg.schema, std::span(&breakdown, 1));
        return kOk;
    }

    const auto source = [&](const std::string& id) -> const SourceProfile& {
        for (const auto& s : cfg.sources)
            if (s.source_id == id) return s;
        throw ValidationError({"unknown source '" + id + "'"});
    };
    std::cout << "pair " << a->object_id << " (" << a->source_id << ") vs " << b->object_id << " (" << b->source_id
              << ")\n";
    std::cout << pad("feature", 20) << pad("kind", 20) << pad("proximity", 12) << "distance\n";
    for (const auto& f : cfg.schema.features) {
        const auto* fp = breakdown.feature(f.name);
        if (!fp) {
            std::cout << pad(f.name, 20) << pad(std::string(feature_kind_name(f.kind)), 20) << "absent\n";
            continue;
        }
        std::cout << pad(f.name, 20) << pad(std::string(feature_kind_name(f.kind)), 20)
                  << pad(io::fixed4(fp->proximity), 12) << io::fixed4(fp->distance) << '\n';
        print_feature_detail(f, source(a->source_id), *a->value(f.name), source(b->source_id), *b->value(f.name));
    }
    std::cout << pad("aggregate", 20) << pad(std::string(aggregate::method_name(cfg.aggregation.method)), 20)
              << pad(io::fixed4(breakdown.aggregate_proximity), 12) << io::fixed4(breakdown.aggregate_distance)
              << '\n';
    if (auto z = zhuravlev_for(cfg.schema, *a, *b))
        std::cout << "zhuravlev agreement count: " << *z << " of " << breakdown.per_feature.size() << '\n';
    return kOk;
}

int cmd_match(const fs::path& cfg_path, const fs::path& first_path, const fs::path& second_path,
              std::optional<double> threshold, const std::optional<fs::path>& out_dir, const std::string& format,
              unsigned threads) {
    const auto cfg = load_checked(cfg_path);
    engine::MatchRun run;
    run.schema = cfg.schema;
    run.sources = cfg.sources;
    run.first = io::read_dataset(first_path, cfg.schema);
    run.second = io::read_dataset(second_path, cfg.schema);
    run.aggregation = cfg.aggregation;
    run.candidate_threshold = threshold.value_or(cfg.threshold);

    const auto breakdowns = engine::pairwise_breakdowns(run, threads);
    const auto found = engine::candidates(breakdowns, run.candidate_threshold);

    if (out_dir) {
        fs::create_directories(*out_dir);
        if (format.empty() || format == "csv") {
            std::ofstream out(*out_dir / "breakdowns.csv", std::ios::binary);
            io::write_breakdowns_csv(out, run.schema, breakdowns);
        }
        if (format.empty() || format == "json") {
            std::ofstream out(*out_dir / "breakdowns.json", std::ios::binary);
            io::ordered_json doc = {{"threshold", io::round4(run.candidate_threshold)},
                                    {"aggregation", aggregate::method_name(run.aggregation.method)},
                                    {"breakdowns", io::breakdowns_to_json(breakdowns)},
                                    {"candidates", io::breakdowns_to_json(found)}};
            out << doc.dump(2) << '\n';
        }
    }

    if (format == "json") {
        std::cout << io::breakdowns_to_json(found).dump(2) << '\n';
    } else {
        io::write_breakdowns_csv(std::cout, run.schema, found);
    }
    std::cerr << found.size() << " candidate pair(s) above " << io::fixed4(run.candidate_threshold) << " out of "
              << breakdowns.size() << '\n';
    return kOk;
}

int cmd_simulate(const std::optional<fs::path>& cfg_path, std::optional<std::uint64_t> seed,
                 std::optional<std::size_t> object_count, const std::vector<double>& rmse,
                 std::optional<double> threshold, const fs::path& out_dir, const std::vector<std::string>& formats,
                 unsigned threads) {
    sim::SceneSpec spec;
    double th = engine::kDefaultCandidateThreshold;
    if (cfg_path) {
        std::ifstream in(*cfg_path);
        if (!in) throw std::runtime_error("cannot open configuration '" + cfg_path->string() + "'");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError({std::string("malformed JSON: ") + e.what()});
        }
        if (doc.contains("scene")) spec = config::parse_scene(doc.at("scene"));
        if (doc.contains("threshold") && doc.at("threshold").is_number()) th = doc.at("threshold").get<double>();
    }
    if (seed) spec.seed = *seed;
    if (object_count) spec.object_count = *object_count;
    if (!rmse.empty()) spec.source_rmse = rmse;
    if (threshold) th = *threshold;
    if (!(th >= 0.0 && th <= 1.0)) throw ValidationError({"threshold must lie in [0, 1]"});
    auto issues = sim::validate_scene_spec(spec);
    print_issues(ValidationIssues{{}, issues.warnings});
    if (!issues.ok()) throw ValidationError(std::move(issues.errors));

    std::set<sim::OutputFormat> selected;
    for (const auto& f : formats) {
        if (f == "csv") selected.insert(sim::OutputFormat::Csv);
        if (f == "json") selected.insert(sim::OutputFormat::Json);
        if (f == "svg") selected.insert(sim::OutputFormat::Svg);
    }
    if (selected.empty()) selected = {sim::OutputFormat::Csv, sim::OutputFormat::Json, sim::OutputFormat::Svg};

    const auto report = sim::run_experiment(spec, th, threads);
    const auto written = sim::write_outputs(report, out_dir, selected);

    const auto& s = report.summary;
    std::cout << "objects " << spec.object_count << ", rmse " << io::fixed4(spec.source_rmse[0]) << "/"
              << io::fixed4(spec.source_rmse[1]) << " m, seed " << spec.seed << '\n';
    std::cout << "candidates above " << io::fixed4(th) << ": " << report.candidates.size() << " (" << s.true_candidates
              << " same-object, " << s.false_candidates << " distinct)\n";
    std::cout << "mean proximity, same-object pairs: " << io::fixed4(s.mean_true_proximity) << '\n';
    std::cout << "mean proximity, distinct pairs > " << io::fixed4(s.far_separation)
              << " m: " << io::fixed4(s.mean_far_distinct_proximity) << '\n';
    std::cout << "coincident bound " << io::fixed4(s.coincident_bound) << ", nominal mismatch cap "
              << io::fixed4(s.nominal_cap) << '\n';
    for (const auto& m : s.type_mismatch_candidates)
        std::cout << "type mismatch candidate " << m.first_id << " / " << m.second_id << ": "
                  << io::fixed4(m.proximity) << (m.same_object ? " (same object)" : "") << '\n';
    for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
    return kOk;
}

int cmd_validate(const fs::path& cfg_path, const std::vector<fs::path>& datasets) {
    const auto cfg = config::load_config(cfg_path);
    auto issues = config::validate_config(cfg);
    if (issues.ok()) {
        for (const auto& path : datasets) {
            try {
                for (const auto& obj : io::read_dataset(path, cfg.schema))
                    issues.merge(validate_object(cfg.schema, cfg.sources, obj));
            } catch (const ValidationError& e) {
                for (const auto& err : e.errors()) issues.errors.push_back(path.string() + ": " + err);
            }
        }
    }
    print_issues(issues);
    if (!issues.ok()) return kInvalid;
    std::cout << "ok: " << cfg.schema.features.size() << " feature(s), " << cfg.sources.size() << " source(s)";
    if (!datasets.empty()) std::cout << ", " << datasets.size() << " dataset(s)";
    std::cout << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantitative-qualitative proximity of information objects"};
    app.require_subcommand(1);

    fs::path cfg_path;
    std::optional<fs::path> opt_cfg;
    std::optional<fs::path> out_dir;
    fs::path sim_out = "sim_out";
    std::optional<double> threshold;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> object_count;
    std::vector<double> rmse;
    std::string format;
    std::vector<std::string> formats;
    unsigned threads = 0;
    fs::path objects_path, first_path, second_path;
    std::string first_id, second_id;
    std::vector<fs::path> datasets;

    auto* measure = app.add_subcommand("measure", "Print the full breakdown for one object pair");
    measure->add_option("--config", cfg_path, "Configuration document")->required();
    measure->add_option("objects", objects_path, "CSV with the objects")->required();
    measure->add_option("--first", first_id, "First object id");
    measure->add_option("--second", second_id, "Second object id");
    measure->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

    auto* match = app.add_subcommand("match", "Score every cross-source pair and list candidates");
    match->add_option("--config", cfg_path, "Configuration document")->required();
    match->add_option("first", first_path, "First dataset (CSV)")->required();
    match->add_option("second", second_path, "Second dataset (CSV)")->required();
    match->add_option("--threshold", threshold, "Candidate threshold (default from config, else 0.01)");
    match->add_option("--out", out_dir, "Directory for breakdown files");
    match->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    match->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* simulate = app.add_subcommand("simulate", "Run the two-source scene experiment");
    simulate->add_option("--config", opt_cfg, "Document with a \"scene\" section");
    simulate->add_option("--seed", seed, "RNG seed");
    simulate->add_option("--objects", object_count, "Number of physical objects");
    simulate->add_option("--rmse", rmse, "Source coordinate RMSE values, e.g. 20,30")->delimiter(',');
    simulate->add_option("--threshold", threshold, "Candidate threshold (default 0.01)");
    simulate->add_option("--out", sim_out, "Output directory")->capture_default_str();
    simulate->add_option("--format", formats, "csv, json, svg (repeatable; default all)")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");

    auto* validate = app.add_subcommand("validate", "Lint a configuration and optional datasets");
    validate->add_option("--config", cfg_path, "Configuration document")->required();
    validate->add_option("datasets", datasets, "Datasets to check against the schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kRuntime;
    }

    try {
        if (*measure) return cmd_measure(cfg_path, objects_path, first_id, second_id, format);
        if (*match) return cmd_match(cfg_path, first_path, second_path, threshold, out_dir, format, threads);
        if (*simulate)
            return cmd_simulate(opt_cfg, seed, object_count, rmse, threshold, sim_out, formats, threads);
        if (*validate) return cmd_validate(cfg_path, datasets);
    } catch (const ValidationError& e) {
        for (const auto& err : e.errors()) std::cerr << "error: " << err << '\n';
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntime;
    }
    return kOk;
}
