#include "fiperiod/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fiperiod/cohom.hpp"
#include "fiperiod/io.hpp"
#include "fiperiod/oracles.hpp"
#include "fiperiod/periodcalc.hpp"
#include "fiperiod/periodet.hpp"

namespace fiperiod::cli {

namespace {

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t dim_cap() {
  if (const char* env = std::getenv("FIPERIOD_DIM_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw io::ParseError("FIPERIOD_DIM_CAP: expected a positive integer");
  }
  return 200000;
}

std::vector<int> parse_degrees(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument("bad");
      out.push_back(v);
    } catch (const std::exception&) {
      throw io::ParseError("--cover: expected comma-separated non-negative integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw io::ParseError("--cover: empty cover");
  return out;
}

std::string pow_string(std::uint32_t p, std::int64_t e) {
  // exact decimal p^e
  std::vector<int> digits{1};
  for (std::int64_t k = 0; k < e; ++k) {
    int carry = 0;
    for (auto& d : digits) {
      const int v = d * static_cast<int>(p) + carry;
      d = v % 10;
      carry = v / 10;
    }
    while (carry) {
      digits.push_back(carry % 10);
      carry /= 10;
    }
  }
  std::string s;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(static_cast<char>('0' + *it));
  return s;
}

io::json period_value(std::uint32_t p, std::int64_t e) {
  std::uint64_t v = 1;
  for (std::int64_t k = 0; k < e; ++k) {
    if (v > UINT64_MAX / p) return pow_string(p, e);
    v *= p;
  }
  return v;
}

fimod::FIPresentation load_module(const std::string& spec, const std::string& builtin, int d, std::uint32_t p) {
  if (!spec.empty() && !builtin.empty()) throw io::ParseError("give either --spec or --builtin");
  if (!spec.empty()) return io::module_from_json(io::read_json_file(spec));
  if (builtin == "intro-kernel") return oracles::intro_kernel_presentation(p);
  if (builtin == "example1") {
    if (d < 3) throw io::ParseError("--builtin example1 needs --d >= 3");
    return oracles::example1_presentation(d, p);
  }
  if (builtin.empty()) throw io::ParseError("one of --spec or --builtin is required");
  throw io::ParseError("unknown builtin '" + builtin + "'");
}

std::vector<std::int64_t> evaluate_range(const fimod::FIPresentation& P, int lo, int hi, const std::string& what) {
  const auto cap = dim_cap();
  for (int n = lo; n <= hi; ++n) {
    const auto amb = fimod::ambient_dim(P, n);
    if (amb > cap)
      throw Infeasible("level " + std::to_string(n) + " needs ambient dimension " + std::to_string(amb) +
                       " above the cap " + std::to_string(cap) + " (set FIPERIOD_DIM_CAP to raise it)");
  }
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<std::int64_t> values(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        const auto L = fimod::evaluate(P, lo + static_cast<int>(i));
        if (what == "dims") {
          values[i] = static_cast<std::int64_t>(L.dim());
        } else if (what == "h0") {
          values[i] = static_cast<std::int64_t>(cohom::invariants_dim(L));
        } else {
          values[i] = static_cast<std::int64_t>(cohom::h1_dim(L));
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return values;
}

void emit_series(std::ostream& out, const fimod::DimensionSeries& s, const std::string& format, const std::string& what) {
  if (format == "csv") {
    out << io::series_to_csv(s);
    return;
  }
  io::json rows = io::json::array();
  for (std::size_t i = 0; i < s.values.size(); ++i) rows.push_back({{"n", s.n_min + static_cast<int>(i)}, {"value", s.values[i]}});
  io::json j{{"schema_version", io::schema_version}, {"quantity", what}, {"rows", rows}};
  out << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodicity bounds and exact cohomology for FI-modules over F_p", "fiperiod"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Dimensions, H^0 or H^1 per level");
  std::string spec, builtin, what = "dims", format = "csv";
  int d = 0, lo = 0, hi = 0;
  std::uint32_t p = 2;
  eval->add_option("--spec", spec, "module JSON");
  eval->add_option("--builtin", builtin, "intro-kernel | example1")->check(CLI::IsMember({"intro-kernel", "example1"}));
  eval->add_option("--d", d, "degree for example1");
  eval->add_option("--p", p, "prime for builtins");
  eval->add_option("--from", lo, "first level")->required();
  eval->add_option("--to", hi, "last level")->required();
  eval->add_option("--what", what, "dims | h0 | h1")->check(CLI::IsMember({"dims", "h0", "h1"}));
  eval->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // bound
  auto* bound = app.add_subcommand("bound", "Period exponent and stable range for a cover");
  std::string cover;
  int t = 0;
  bound->add_option("--cover", cover, "ordered degrees, e.g. 0,5")->required();
  bound->add_option("--p", p, "prime");
  bound->add_option("--t", t, "cohomological degree");

  // resolve-bound
  auto* resolve = app.add_subcommand("resolve-bound", "Page recursion on a resolution shape");
  std::string shape_path;
  resolve->add_option("--shape", shape_path, "shape JSON")->required();
  resolve->add_option("--t", t, "cohomological degree");

  // period
  auto* period = app.add_subcommand("period", "Detect period and onset of a series");
  std::string series_path, oracle_name, period_cover;
  int min_margin = 3;
  bool strict = false;
  period->add_option("--series", series_path, "CSV with header n,value");
  period->add_option("--oracle", oracle_name, "example1 | intro_kernel | sphere_h1 | trivial_h1");
  period->add_option("--p", p, "prime");
  period->add_option("--d", d, "degree for example1");
  period->add_option("--from", lo, "first n for oracles");
  period->add_option("--to", hi, "last n for oracles");
  period->add_option("--min-margin", min_margin, "confirmed periods required");
  period->add_option("--cover", period_cover, "cover whose bound the period should divide");
  period->add_option("--t", t, "cohomological degree for --cover");
  period->add_flag("--strict", strict, "exit 4 when inconclusive");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Closed-form reference series as CSV");
  oracle->add_option("--name", oracle_name, "example1 | intro_kernel | sphere_h1 | trivial_h1")->required();
  oracle->add_option("--p", p, "prime");
  oracle->add_option("--d", d, "degree for example1");
  oracle->add_option("--from", lo, "first n")->required();
  oracle->add_option("--to", hi, "last n")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  }

  try {
    if (!gfla::is_prime(p)) throw io::ParseError("--p: " + std::to_string(p) + " is not prime");

    if (*eval) {
      if (hi < lo) throw io::ParseError("--to must be at least --from");
      if (lo < 0) throw io::ParseError("--from must be non-negative");
      const auto P = load_module(spec, builtin, d, p);
      fimod::DimensionSeries s;
      s.n_min = lo;
      s.label = what;
      s.values = evaluate_range(P, lo, hi, what);
      emit_series(out, s, format, what);
      return ok;
    }

    if (*bound) {
      if (t < 0) throw io::ParseError("--t must be non-negative");
      const periodcalc::CoverShape c(p, parse_degrees(cover));
      const auto fb = periodcalc::filtered_bounds(c, t);
      io::json j{{"schema_version", io::schema_version},
                 {"exponent", fb.exponent},
                 {"period", period_value(p, fb.exponent)},
                 {"stable_range", fb.stable_range}};
      out << j.dump(2) << "\n";
      return ok;
    }

    if (*resolve) {
      if (t < 0) throw io::ParseError("--t must be non-negative");
      const auto shape = io::shape_from_json(io::read_json_file(shape_path));
      const auto tables = periodcalc::resolution_recursion(shape, t);
      io::json pages = io::json::array();
      for (const auto& [key, m] : tables.M) {
        const auto [r, x, y] = key;
        io::json row{{"r", r}, {"x", x}, {"y", y}, {"M", m}, {"SD", tables.SD.at(key)}};
        if (auto it = tables.N.find(key); it != tables.N.end()) row["N"] = it->second;
        pages.push_back(row);
      }
      io::json j{{"schema_version", io::schema_version},
                 {"t", t},
                 {"M_inf", tables.M_inf},
                 {"SD_inf", tables.SD_inf},
                 {"period", period_value(shape.p, tables.M_inf)}};
      if (tables.C) {
        j["C"] = *tables.C;
        j["stable_from"] = std::max<std::int64_t>(tables.SD_inf, *tables.C);
      } else {
        j["C"] = nullptr;
        j["caveat"] = "stable range is n - a >= max(SD_inf, C); C unknown";
      }
      j["pages"] = pages;
      out << j.dump(2) << "\n";
      return ok;
    }

    if (*period) {
      fimod::DimensionSeries s;
      if (!series_path.empty() == !oracle_name.empty()) throw io::ParseError("give exactly one of --series or --oracle");
      if (!series_path.empty()) {
        s = io::series_from_csv(io::read_text_file(series_path), series_path);
      } else {
        if (hi == 0 && lo == 0) {
          // default windows
          lo = oracle_name == "example1" ? d : 1;
          hi = oracle_name == "example1" ? 200 : 20 * static_cast<int>(p);
        }
        try {
          s = oracles::oracle_series(oracle_name, p, d, lo, hi);
        } catch (const std::invalid_argument& e) {
          throw io::ParseError(std::string("--oracle: ") + e.what());
        }
      }
      if (min_margin < 2) throw io::ParseError("--min-margin must be at least 2");
      const auto rep = periodet::detect_period(s, min_margin);
      auto j = io::report_to_json(rep);
      if (rep.conclusive()) {
        j["power_of_p"] = periodet::check_power_of_p(rep, p);
        if (!period_cover.empty()) {
          const auto fb = periodcalc::filtered_bounds(periodcalc::CoverShape(p, parse_degrees(period_cover)), t);
          j["bound_exponent"] = fb.exponent;
          j["divides_bound"] = periodet::check_divides_bound(rep, p, fb.exponent);
        }
      }
      out << j.dump(2) << "\n";
      return !rep.conclusive() && strict ? inconclusive : ok;
    }

    if (*oracle) {
      if (hi < lo) throw io::ParseError("--to must be at least --from");
      try {
        out << io::series_to_csv(oracles::oracle_series(oracle_name, p, d, lo, hi));
      } catch (const std::invalid_argument& e) {
        throw io::ParseError(e.what());
      }
      return ok;
    }
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  } catch (const Infeasible& e) {
    err << "error: " << e.what() << "\n";
    return infeasible;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return parse_error;
  }
  return ok;
}

}  // namespace fiperiod::cli
