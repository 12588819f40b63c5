#include "proxim/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace proxim::io {

namespace {

constexpr std::array<const char*, 3> kAxisNames{"x", "y", "z"};

std::string certainty_column(const FeatureSchema& f) { return f.name + "_certainty"; }

bool qualitative(const FeatureSchema& f) { return f.kind != FeatureKind::Quantitative; }

std::optional<double> parse_double(const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return v;
}

std::optional<long> parse_long(const std::string& text) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

std::string ordinal_text(const FeatureSchema& f, long rank) {
    if (f.ordinal_params && rank >= 0 && rank < static_cast<long>(f.ordinal_params->terms.size()))
        return f.ordinal_params->terms[static_cast<std::size_t>(rank)];
    return std::to_string(rank);
}

std::optional<long> ordinal_rank(const FeatureSchema& f, const std::string& text) {
    if (f.ordinal_params) {
        const auto& terms = f.ordinal_params->terms;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i] == text) return static_cast<long>(i);
    }
    return parse_long(text);
}

}  // namespace

std::string fixed4(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    std::string s(buf);
    if (s == "-0.0000") s = "0.0000";
    return s;
}

double round4(double value) {
    const double r = std::round(value * 1e4) / 1e4;
    return r == 0.0 ? 0.0 : r;
}

std::string exact(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::vector<std::string> value_columns(const FeatureSchema& feature) {
    if (feature.kind != FeatureKind::Quantitative || feature.dimension == 1) return {feature.name};
    std::vector<std::string> cols;
    for (std::size_t i = 0; i < feature.dimension; ++i) {
        const std::string suffix = feature.dimension <= kAxisNames.size() ? kAxisNames[i] : std::to_string(i);
        cols.push_back(feature.name + "_" + suffix);
    }
    return cols;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

void write_dataset(std::ostream& out, const Schema& schema, std::span<const InformationObject> objects) {
    std::vector<std::string> header{"object_id", "source_id"};
    for (const auto& f : schema.features)
        for (auto& c : value_columns(f)) header.push_back(std::move(c));
    for (const auto& f : schema.features)
        if (qualitative(f)) header.push_back(certainty_column(f));

    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
        out << '\n';
    };
    emit(header);

    for (const auto& obj : objects) {
        std::vector<std::string> row{obj.object_id, obj.source_id};
        for (const auto& f : schema.features) {
            const FeatureValue* v = obj.value(f.name);
            const std::size_t width = value_columns(f).size();
            if (!v) {
                row.insert(row.end(), width, "");
                continue;
            }
            if (const auto* m = std::get_if<Measurement>(&v->payload)) {
                for (std::size_t i = 0; i < width; ++i)
                    row.push_back(i < m->components.size() ? exact(m->components[i]) : "");
            } else if (const auto* r = std::get_if<Rank>(&v->payload)) {
                row.push_back(ordinal_text(f, r->value));
            } else {
                row.push_back(std::get<Label>(v->payload).value);
            }
        }
        for (const auto& f : schema.features) {
            if (!qualitative(f)) continue;
            const FeatureValue* v = obj.value(f.name);
            row.emplace_back(v ? certainty_name(v->certainty) : "");
        }
        emit(row);
    }
}

std::vector<InformationObject> read_dataset(std::istream& in, const Schema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError({"dataset is empty (missing header)"});
    const auto header = split_csv_line(line);
    std::map<std::string, std::size_t, std::less<>> column;
    for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;

    std::vector<std::string> errors;
    for (const char* required : {"object_id", "source_id"})
        if (!column.contains(required)) errors.push_back(std::string("dataset header lacks '") + required + "'");
    // A feature's columns must appear all together or not at all.
    std::set<std::string, std::less<>> known{"object_id", "source_id"};
    for (const auto& f : schema.features) {
        const auto cols = value_columns(f);
        const auto present = std::count_if(cols.begin(), cols.end(), [&](const auto& c) { return column.contains(c); });
        if (present != 0 && static_cast<std::size_t>(present) != cols.size())
            errors.push_back("dataset header has only some columns of feature '" + f.name + "'");
        known.insert(cols.begin(), cols.end());
        if (qualitative(f)) known.insert(certainty_column(f));
    }
    for (const auto& name : header)
        if (!known.contains(name)) errors.push_back("dataset header has unknown column '" + name + "'");
    if (!errors.empty()) throw ValidationError(std::move(errors));

    std::vector<InformationObject> objects;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        const std::string where = "line " + std::to_string(line_no) + ": ";
        auto cell = [&](std::string_view name) -> std::string {
            auto it = column.find(name);
            if (it == column.end() || it->second >= cells.size()) return {};
            return cells[it->second];
        };

        InformationObject obj;
        obj.object_id = cell("object_id");
        obj.source_id = cell("source_id");
        for (const auto& f : schema.features) {
            const auto cols = value_columns(f);
            std::vector<std::string> raw;
            for (const auto& c : cols) raw.push_back(cell(c));
            const auto filled = std::count_if(raw.begin(), raw.end(), [](const std::string& s) { return !s.empty(); });
            if (filled == 0) continue;
            if (static_cast<std::size_t>(filled) != raw.size()) {
                errors.push_back(where + "feature '" + f.name + "' partially filled");
                continue;
            }

            FeatureValue value;
            switch (f.kind) {
                case FeatureKind::Quantitative: {
                    Measurement m;
                    for (const auto& r : raw) {
                        auto v = parse_double(r);
                        if (!v) {
                            errors.push_back(where + "feature '" + f.name + "': not a number '" + r + "'");
                            break;
                        }
                        m.components.push_back(*v);
                    }
                    if (m.components.size() != raw.size()) continue;
                    value.payload = std::move(m);
                    break;
                }
                case FeatureKind::OrdinalFuzzy: {
                    auto rank = ordinal_rank(f, raw[0]);
                    if (!rank) {
                        errors.push_back(where + "feature '" + f.name + "': unknown ordinal value '" + raw[0] + "'");
                        continue;
                    }
                    value.payload = Rank{*rank};
                    break;
                }
                case FeatureKind::Nominal:
                    value.payload = Label{raw[0]};
                    break;
            }

            if (qualitative(f)) {
                const std::string c = cell(certainty_column(f));
                if (!c.empty()) {
                    auto level = certainty_from_name(c);
                    if (!level)
                        if (auto num = parse_double(c)) level = certainty_from_value(*num);
                    if (!level) {
                        errors.push_back(where + "feature '" + f.name + "': unknown certainty '" + c + "'");
                        continue;
                    }
                    value.certainty = *level;
                }
            }
            obj.values.emplace(f.name, std::move(value));
        }
        objects.push_back(std::move(obj));
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return objects;
}

std::vector<InformationObject> read_dataset(const std::filesystem::path& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset '" + path.string() + "'");
    return read_dataset(in, schema);
}

void write_dataset(const std::filesystem::path& path, const Schema& schema, std::span<const InformationObject> objects) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    write_dataset(out, schema, objects);
}

void write_breakdowns_csv(std::ostream& out, const Schema& schema, std::span<const ProximityBreakdown> breakdowns) {
    out << "first_id,second_id";
    for (const auto& f : schema.features) out << ',' << f.name << "_proximity," << f.name << "_distance";
    out << ",aggregate_proximity,aggregate_distance\n";
    for (const auto& b : breakdowns) {
        out << csv_escape(b.first_id) << ',' << csv_escape(b.second_id);
        for (const auto& f : schema.features) {
            if (const auto* fp = b.feature(f.name))
                out << ',' << fixed4(fp->proximity) << ',' << fixed4(fp->distance);
            else
                out << ",,";
        }
        out << ',' << fixed4(b.aggregate_proximity) << ',' << fixed4(b.aggregate_distance) << '\n';
    }
}

ordered_json breakdown_to_json(const ProximityBreakdown& breakdown) {
    ordered_json features = ordered_json::object();
    for (const auto& f : breakdown.per_feature)
        features[f.feature] = {{"proximity", round4(f.proximity)}, {"distance", round4(f.distance)}};
    return {{"first_id", breakdown.first_id},
            {"second_id", breakdown.second_id},
            {"features", std::move(features)},
            {"aggregate_proximity", round4(breakdown.aggregate_proximity)},
            {"aggregate_distance", round4(breakdown.aggregate_distance)}};
}

ordered_json breakdowns_to_json(std::span<const ProximityBreakdown> breakdowns) {
    ordered_json arr = ordered_json::array();
    for (const auto& b : breakdowns) arr.push_back(breakdown_to_json(b));
    return arr;
}

}  // namespace proxim::io
