#pragma once

// Flat-file formats: object datasets (CSV), breakdown reports (CSV/JSON).

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "proxim/model.hpp"

namespace proxim::io {

using ordered_json = nlohmann::ordered_json;

/// Report numbers are printed with four decimal places.
std::string fixed4(double value);
double round4(double value);

/// Shortest text that reads back to the same double.
std::string exact(double value);

/// Column names for a feature's value cells, in file order.
std::vector<std::string> value_columns(const FeatureSchema& feature);

/// Objects as CSV: `object_id,source_id,<value columns...>,<feature>_certainty...`.
/// Certainty columns exist for qualitative features only. An empty cell marks
/// an absent value.
void write_dataset(std::ostream& out, const Schema& schema, std::span<const InformationObject> objects);

/// Throws ValidationError on malformed rows (unknown term, bad number, ...).
std::vector<InformationObject> read_dataset(std::istream& in, const Schema& schema);
std::vector<InformationObject> read_dataset(const std::filesystem::path& path, const Schema& schema);
void write_dataset(const std::filesystem::path& path, const Schema& schema, std::span<const InformationObject> objects);

void write_breakdowns_csv(std::ostream& out, const Schema& schema, std::span<const ProximityBreakdown> breakdowns);
ordered_json breakdown_to_json(const ProximityBreakdown& breakdown);
ordered_json breakdowns_to_json(std::span<const ProximityBreakdown> breakdowns);

/// Minimal RFC 4180 record splitting/joining.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

}  // namespace proxim::io
