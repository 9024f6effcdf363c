#include "fiperiod/io.hpp"

#include <fstream>
#include <sstream>

namespace fiperiod::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing field");
  return *it;
}

std::int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

int as_small_int(const json& j, const std::string& path) {
  const auto v = as_int(j, path);
  if (v < -1000000 || v > 1000000) fail(path, "integer out of range");
  return static_cast<int>(v);
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<int> int_list(const json& j, const std::string& path) {
  std::vector<int> out;
  const auto& arr = as_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(as_small_int(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::uint32_t prime_field(const json& j, const std::string& path) {
  const auto p = as_int(field(j, path, "p"), path + ".p");
  if (p < 2 || p > 65521 || !gfla::is_prime(static_cast<std::uint64_t>(p))) fail(path + ".p", "expected a prime below 65536");
  return static_cast<std::uint32_t>(p);
}

fimod::Element element_from_json(const json& j, const fimod::FreeShape& shape, std::optional<int> default_degree,
                                 const std::string& path) {
  int degree = 0;
  if (j.is_object() && j.contains("degree")) {
    degree = as_small_int(j["degree"], path + ".degree");
  } else if (default_degree) {
    degree = *default_degree;
  } else {
    fail(path + ".degree", "missing field");
  }
  if (degree < 0) fail(path + ".degree", "must be non-negative");
  fimod::Element e(shape, degree);
  const auto& terms = as_array(field(j, path, "terms"), path + ".terms");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string tp = path + ".terms[" + std::to_string(k) + "]";
    const int gen = as_small_int(field(terms[k], tp, "gen"), tp + ".gen");
    if (gen < 0 || gen >= shape.d()) fail(tp + ".gen", "generator index out of range");
    std::int64_t c = 1;
    if (terms[k].contains("c")) c = as_int(terms[k]["c"], tp + ".c");
    const auto& inj = field(terms[k], tp, "inj");
    const int m = shape.degrees[static_cast<std::size_t>(gen)];
    try {
      if (inj.is_string()) {
        if (inj.get<std::string>() != "*") fail(tp + ".inj", "expected an array or \"*\"");
        e.add_all_injections(gen, c);
      } else {
        const auto f = int_list(inj, tp + ".inj");
        if (static_cast<int>(f.size()) != m) fail(tp + ".inj", "length must equal the generator degree " + std::to_string(m));
        e.add(gen, f, c);
      }
    } catch (const std::invalid_argument& ex) {
      fail(tp + ".inj", ex.what());
    }
  }
  return e;
}

fimod::FIPresentation module_at(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  try {
    if (j.contains("kernel_of")) {
      const std::string kp = path + ".kernel_of";
      const auto& k = j["kernel_of"];
      auto source = module_at(field(k, kp, "source"), kp + ".source");
      auto target = module_at(field(k, kp, "target"), kp + ".target");
      if (source.kind() != fimod::FIPresentation::Kind::presented ||
          target.kind() != fimod::FIPresentation::Kind::presented)
        fail(kp, "source and target must be presented modules");
      const auto& imgs = as_array(field(k, kp, "images"), kp + ".images");
      if (imgs.size() != source.shape().degrees.size())
        fail(kp + ".images", "need one image per source generator");
      std::vector<fimod::Element> images;
      for (std::size_t i = 0; i < imgs.size(); ++i)
        images.push_back(element_from_json(imgs[i], target.shape(), source.shape().degrees[i],
                                           kp + ".images[" + std::to_string(i) + "]"));
      try {
        return fimod::FIPresentation::kernel_of(fimod::FIMorphism(source, target, images));
      } catch (const std::invalid_argument& ex) {
        fail(kp, ex.what());
      }
    }
    if (j.contains("shift")) {
      const std::string sp = path + ".shift";
      const auto& s = j["shift"];
      auto base = module_at(field(s, sp, "of"), sp + ".of");
      const int a = as_small_int(field(s, sp, "a"), sp + ".a");
      if (a < 0) fail(sp + ".a", "must be non-negative");
      return fimod::FIPresentation::shifted(base, a);
    }
    const auto p = prime_field(j, path);
    const auto degrees = int_list(field(j, path, "generators"), path + ".generators");
    for (std::size_t i = 0; i < degrees.size(); ++i)
      if (degrees[i] < 0) fail(path + ".generators[" + std::to_string(i) + "]", "must be non-negative");
    fimod::FreeShape shape(p, degrees);
    std::vector<fimod::Element> rels;
    if (j.contains("relations")) {
      const auto& rs = as_array(j["relations"], path + ".relations");
      for (std::size_t i = 0; i < rs.size(); ++i)
        rels.push_back(element_from_json(rs[i], shape, std::nullopt, path + ".relations[" + std::to_string(i) + "]"));
    }
    return fimod::FIPresentation::presented(shape, rels);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    fail(path, ex.what());
  }
}

periodcalc::SequentialWiring wiring_from_json(const json& j, const periodcalc::CoverShape& s,
                                              const periodcalc::CoverShape& t, const std::string& path) {
  std::vector<std::pair<int, int>> pairs;
  const auto& arr = as_array(field(j, path, "pairs"), path + ".pairs");
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto pr = int_list(arr[k], path + ".pairs[" + std::to_string(k) + "]");
    if (pr.size() != 2) fail(path + ".pairs[" + std::to_string(k) + "]", "expected [source, target]");
    pairs.emplace_back(pr[0], pr[1]);
  }
  try {
    return periodcalc::SequentialWiring(s, t, pairs);
  } catch (const std::invalid_argument& ex) {
    fail(path, ex.what());
  }
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(ex.byte == 0 ? 0 : ex.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

fimod::FIPresentation module_from_json(const json& j) { return module_at(j, "$"); }

periodcalc::ResolutionShape shape_from_json(const json& j) {
  const std::string path = "$";
  periodcalc::ResolutionShape shape;
  shape.p = prime_field(j, path);
  const auto& cols = as_array(field(j, path, "columns"), "$.columns");
  if (cols.empty()) fail("$.columns", "need at least one column");
  for (std::size_t x = 0; x < cols.size(); ++x) {
    const std::string cp = "$.columns[" + std::to_string(x) + "]";
    periodcalc::ResolutionColumn col;
    const auto& rows = as_array(field(cols[x], cp, "rows"), cp + ".rows");
    if (rows.empty()) fail(cp + ".rows", "need at least one row");
    for (std::size_t u = 0; u < rows.size(); ++u) {
      const std::string rp = cp + ".rows[" + std::to_string(u) + "]";
      const auto deg = int_list(field(rows[u], rp, "degrees"), rp + ".degrees");
      try {
        col.rows.emplace_back(shape.p, deg);
      } catch (const std::invalid_argument& ex) {
        fail(rp, ex.what());
      }
    }
    if (cols[x].contains("wiring")) {
      const auto& w = as_array(cols[x]["wiring"], cp + ".wiring");
      if (w.size() + 1 > col.rows.size() && !w.empty()) fail(cp + ".wiring", "more vertical wirings than row pairs");
      for (std::size_t u = 0; u < w.size(); ++u)
        col.row_wiring.push_back(
            wiring_from_json(w[u], col.rows[u], col.rows[u + 1], cp + ".wiring[" + std::to_string(u) + "]"));
    }
    col.Dx = as_small_int(field(cols[x], cp, "Dx"), cp + ".Dx");
    if (cols[x].contains("C") && !cols[x]["C"].is_null()) col.C = as_small_int(cols[x]["C"], cp + ".C");
    shape.columns.push_back(std::move(col));
  }
  if (j.contains("wiring")) {
    const auto& w = as_array(j["wiring"], "$.wiring");
    for (std::size_t x = 0; x < w.size(); ++x) {
      const std::string wp = "$.wiring[" + std::to_string(x) + "]";
      if (x + 1 >= shape.columns.size()) fail(wp, "no target column");
      const auto& src = shape.columns[x];
      const auto& dst = shape.columns[x + 1];
      std::vector<periodcalc::SequentialWiring> per_row;
      if (w[x].contains("rows")) {
        const auto& rs = as_array(w[x]["rows"], wp + ".rows");
        for (std::size_t u = 0; u < rs.size(); ++u) {
          if (u >= src.rows.size() || u >= dst.rows.size()) fail(wp + ".rows[" + std::to_string(u) + "]", "row missing in a column");
          per_row.push_back(wiring_from_json(rs[u], src.rows[u], dst.rows[u], wp + ".rows[" + std::to_string(u) + "]"));
        }
      } else {
        per_row.push_back(wiring_from_json(w[x], src.rows[0], dst.rows[0], wp));
      }
      shape.wiring.push_back(std::move(per_row));
    }
  }
  try {
    shape.validate();
  } catch (const std::invalid_argument& ex) {
    fail("$", ex.what());
  }
  return shape;
}

fimod::DimensionSeries series_from_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  fimod::DimensionSeries s;
  s.label = source;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (!header) {
      if (line != "n,value") throw ParseError(where + ": expected header n,value");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(where + ": expected n,value");
    long long n = 0, v = 0;
    try {
      std::size_t a = 0, b = 0;
      n = std::stoll(line.substr(0, comma), &a);
      v = std::stoll(line.substr(comma + 1), &b);
      if (a != comma || b != line.size() - comma - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(where + ": expected two integers");
    }
    if (s.values.empty()) {
      s.n_min = static_cast<int>(n);
    } else if (n != s.n_max() + 1) {
      throw ParseError(where + ": n must be consecutive");
    }
    s.values.push_back(v);
  }
  if (!header) throw ParseError(source + ":1: expected header n,value");
  if (s.values.empty()) throw ParseError(source + ": no data rows");
  return s;
}

std::string series_to_csv(const fimod::DimensionSeries& s) {
  std::string out = "n,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    out += std::to_string(s.n_min + static_cast<int>(i)) + "," + std::to_string(s.values[i]) + "\n";
  return out;
}

json table_to_json(const cohom::CohomologyTable& t) {
  json entries = json::array();
  for (const auto& [key, dim] : t.entries) entries.push_back({{"m", key.first}, {"t", key.second}, {"dim", dim}});
  return {{"module", t.module}, {"entries", entries}};
}

cohom::CohomologyTable table_from_json(const json& j) {
  cohom::CohomologyTable t;
  const auto& mod = field(j, "$", "module");
  if (!mod.is_string()) fail("$.module", "expected a string");
  t.module = mod.get<std::string>();
  const auto& es = as_array(field(j, "$", "entries"), "$.entries");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string ep = "$.entries[" + std::to_string(i) + "]";
    t.set(as_small_int(field(es[i], ep, "m"), ep + ".m"), as_small_int(field(es[i], ep, "t"), ep + ".t"),
          as_int(field(es[i], ep, "dim"), ep + ".dim"));
  }
  return t;
}

json report_to_json(const periodet::PeriodReport& r) {
  json j;
  j["schema_version"] = schema_version;
  if (r.period) {
    j["period"] = *r.period;
  } else {
    j["period"] = "inconclusive";
  }
  j["onset"] = r.onset;
  j["window"] = {r.window_min, r.window_max};
  j["margin"] = r.margin;
  return j;
}

}  // namespace fiperiod::io
