#pragma once

// JSON and CSV readers/writers for module specs, resolution shapes, series
// and cohomology tables.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fiperiod/cohom.hpp"
#include "fiperiod/fimod.hpp"
#include "fiperiod/periodcalc.hpp"
#include "fiperiod/periodet.hpp"

namespace fiperiod::io {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// Malformed input; the message names the line or the JSON field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax errors are reported as "<source>:<line>:<column>: ...".
json parse_json(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

/// Presented: {"p", "generators", "relations"}; kernel: {"kernel_of": {"source", "target", "images"}};
/// shift: {"shift": {"of", "a"}}.
fimod::FIPresentation module_from_json(const json& j);

/// {"p", "columns": [{"rows": [{"degrees"}], "wiring": [{"pairs"}], "C", "Dx"}],
///  "wiring": [{"pairs"} | {"rows": [{"pairs"}]}]}
periodcalc::ResolutionShape shape_from_json(const json& j);

/// Header "n,value"; n must be consecutive.
fimod::DimensionSeries series_from_csv(const std::string& text, const std::string& source = "<input>");
std::string series_to_csv(const fimod::DimensionSeries& s);

json table_to_json(const cohom::CohomologyTable& t);
cohom::CohomologyTable table_from_json(const json& j);

json report_to_json(const periodet::PeriodReport& r);

}  // namespace fiperiod::io
