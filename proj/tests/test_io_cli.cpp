#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fiperiod/cli.hpp"
#include "fiperiod/io.hpp"

using namespace fiperiod;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(FIPERIOD_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string values_of(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  std::getline(in, line);
  while (std::getline(in, line)) out += line.substr(line.find(',') + 1) + " ";
  return out;
}

}  // namespace

TEST_CASE("module JSON: presented, kernel and shift forms") {
  const auto P = io::module_from_json(io::parse_json(R"({"p":2,"generators":[0,5],
    "relations":[{"degree":5,"terms":[{"gen":0,"inj":[],"c":1},{"gen":1,"inj":"*","c":1}]}]})"));
  CHECK(P.kind() == fimod::FIPresentation::Kind::presented);
  CHECK(P.relations().size() == 1);
  CHECK(P.relations()[0].terms().size() == 121);

  const auto K = io::module_from_json(io::parse_json(R"({"kernel_of":{
    "source":{"p":3,"generators":[1]}, "target":{"p":3,"generators":[0]},
    "images":[{"terms":[{"gen":0,"inj":[]}]}]}})"));
  CHECK(K.kind() == fimod::FIPresentation::Kind::kernel);
  CHECK(fimod::evaluate(K, 4).dim() == 3);

  const auto S = io::module_from_json(io::parse_json(R"({"shift":{"of":{"p":2,"generators":[1]},"a":2}})"));
  CHECK(fimod::evaluate(S, 3).dim() == 5);
}

TEST_CASE("module JSON errors name the field") {
  auto msg = [](const std::string& text) {
    try {
      io::module_from_json(io::parse_json(text));
    } catch (const io::ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(msg(R"({"p":4,"generators":[1]})").find("$.p") != std::string::npos);
  CHECK(msg(R"({"p":2})").find("$.generators") != std::string::npos);
  CHECK(msg(R"({"p":2,"generators":[1],"relations":[{"degree":2,"terms":[{"gen":3,"inj":[1]}]}]})")
            .find("$.relations[0].terms[0].gen") != std::string::npos);
  CHECK(msg(R"({"p":2,"generators":[2],"relations":[{"degree":2,"terms":[{"gen":0,"inj":[1]}]}]})")
            .find("$.relations[0].terms[0].inj") != std::string::npos);
  CHECK(msg("{\"p\":2,\n\"generators\":[1,\n}").find("<input>:3:") != std::string::npos);
}

TEST_CASE("shape JSON") {
  const auto sh = io::shape_from_json(io::parse_json(R"({"p":2,
    "columns":[{"rows":[{"degrees":[0,3,3]},{"degrees":[3]}],"wiring":[{"pairs":[[2,1]]}],"C":null,"Dx":3},
               {"rows":[{"degrees":[3,3]}],"C":4,"Dx":3}],
    "wiring":[{"pairs":[[2,1],[3,2]]}]})"));
  CHECK(sh.columns.size() == 2);
  CHECK(sh.columns[0].rows[0].degrees == std::vector<int>{0, 3, 3});
  CHECK(sh.columns[1].C == 4);
  CHECK(sh.horizontal(0, 0).pairs.size() == 2);
  CHECK_THROWS_AS(io::shape_from_json(io::parse_json(R"({"p":2,"columns":[{"rows":[{"degrees":[1]}],"Dx":1}],
    "wiring":[{"pairs":[[1,1]]}]})")), io::ParseError);
  CHECK_THROWS_AS(io::shape_from_json(io::parse_json(R"({"p":2,"columns":[{"rows":[{"degrees":[1]}],"Dx":1},
    {"rows":[{"degrees":[2]}],"Dx":2}],"wiring":[{"pairs":[[1,1]]}]})")), io::ParseError);
}

TEST_CASE("series CSV round trip and errors") {
  const auto s = io::series_from_csv("n,value\n3,1\n4,0\n5,1\n");
  CHECK(s.n_min == 3);
  CHECK(io::series_to_csv(s) == "n,value\n3,1\n4,0\n5,1\n");
  CHECK_THROWS_AS(io::series_from_csv("n,v\n3,1\n"), io::ParseError);
  CHECK_THROWS_AS(io::series_from_csv("n,value\n3,1\n5,1\n"), io::ParseError);
  CHECK_THROWS_AS(io::series_from_csv("n,value\n3,x\n"), io::ParseError);
}

TEST_CASE("cohomology table JSON round trip") {
  cohom::CohomologyTable t{"M(1)", {}};
  t.set(3, 1, 0);
  t.set(2, 0, 1);
  const auto j = io::table_to_json(t);
  CHECK(j.dump() == R"j({"module":"M(1)","entries":[{"m":2,"t":0,"dim":1},{"m":3,"t":1,"dim":0}]})j");
  const auto back = io::table_from_json(j);
  CHECK(back.entries == t.entries);
  CHECK(back.module == "M(1)");
}

TEST_CASE("cli eval") {
  auto r = run({"eval", "--builtin", "intro-kernel", "--what", "h0", "--from", "2", "--to", "10"});
  CHECK(r.code == 0);
  CHECK(values_of(r.out) == "1 0 1 0 1 0 1 0 1 ");
  const auto m1 = write_temp("m1.json", R"({"p":2,"generators":[1]})");
  r = run({"eval", "--spec", m1, "--from", "0", "--to", "4"});
  CHECK(r.out == "n,value\n0,0\n1,1\n2,2\n3,3\n4,4\n");
  const auto ex = run({"eval", "--builtin", "example1", "--d", "3", "--what", "h0", "--from", "3", "--to", "9"});
  const auto orc = run({"oracle", "--name", "example1", "--d", "3", "--from", "3", "--to", "9"});
  CHECK(ex.out == orc.out);
}

TEST_CASE("cli bound and resolve-bound") {
  auto r = run({"bound", "--cover", "0,5", "--p", "2", "--t", "0"});
  CHECK(r.code == 0);
  auto j = io::parse_json(r.out);
  CHECK(j["exponent"] == 4);
  CHECK(j["period"] == 16);
  CHECK(j["stable_range"] == 7);
  CHECK(j["schema_version"] == io::schema_version);
  j = io::parse_json(run({"bound", "--cover", "0", "--t", "2"}).out);
  CHECK(j["exponent"] == 0);
  CHECK(j["period"] == 1);
  CHECK(run({"bound", "--cover", "0,x"}).code == cli::parse_error);

  const auto shape = write_temp("s.json", R"({"p":2,"columns":[{"rows":[{"degrees":[3]}],"C":null,"Dx":3}]})");
  j = io::parse_json(run({"resolve-bound", "--shape", shape, "--t", "1"}).out);
  CHECK(j["M_inf"] == 6);
  CHECK(j.contains("caveat"));
}

TEST_CASE("cli period") {
  auto j = io::parse_json(run({"period", "--oracle", "sphere_h1", "--p", "3"}).out);
  CHECK(j["period"] == 3);
  j = io::parse_json(run({"period", "--oracle", "example1", "--d", "5", "--cover", "0,5"}).out);
  CHECK(j["period"] == 4);
  CHECK(j["divides_bound"] == true);
  const auto c = write_temp("c.csv", "n,value\n1,5\n2,5\n3,5\n4,5\n5,5\n");
  j = io::parse_json(run({"period", "--series", c}).out);
  CHECK(j["period"] == 1);
  const auto short_csv = write_temp("short.csv", "n,value\n1,5\n2,6\n3,5\n");
  auto r = run({"period", "--series", short_csv});
  CHECK(r.code == 0);
  CHECK(io::parse_json(r.out)["period"] == "inconclusive");
  CHECK(run({"period", "--series", short_csv, "--strict"}).code == cli::inconclusive);
}

TEST_CASE("cli exit codes") {
  CHECK(run({"eval", "--builtin", "intro-kernel", "--from", "2"}).code == cli::parse_error);
  CHECK(run({"nope"}).code == cli::parse_error);
  const auto bad = write_temp("bad.json", "{\"p\":2,\n \"generators\": [1,\n}");
  const auto r = run({"eval", "--spec", bad, "--from", "0", "--to", "2"});
  CHECK(r.code == cli::parse_error);
  CHECK(r.err.find(":3:") != std::string::npos);
  setenv("FIPERIOD_DIM_CAP", "100", 1);
  CHECK(run({"eval", "--builtin", "example1", "--d", "3", "--from", "3", "--to", "9"}).code == cli::infeasible);
  unsetenv("FIPERIOD_DIM_CAP");
}

TEST_CASE("property: round trip from eval to period, byte-stable") {
  const std::vector<std::string> args{"eval", "--builtin", "example1", "--d", "3", "--what", "h0", "--from", "3", "--to", "14"};
  const auto a = run(args), b = run(args);
  CHECK(a.out == b.out);
  const auto csv = write_temp("ex1.csv", a.out);
  const auto j = io::parse_json(run({"period", "--series", csv, "--cover", "0,3"}).out);
  CHECK(j["period"] == 2);
  CHECK(j["divides_bound"] == true);
  const auto k = run({"eval", "--builtin", "intro-kernel", "--what", "h0", "--from", "2", "--to", "14"});
  const auto kc = write_temp("k.csv", k.out);
  CHECK(io::parse_json(run({"period", "--series", kc}).out)["period"] == 2);
  const auto s2 = write_temp("s2.json", R"({"p":3,"columns":[{"rows":[{"degrees":[1,2]}],"Dx":2},{"rows":[{"degrees":[2]}],"Dx":2}],"wiring":[{"pairs":[[2,1]]}]})");
  const auto first = run({"resolve-bound", "--shape", s2, "--t", "2"});
  const auto second = run({"resolve-bound", "--shape", s2, "--t", "2"});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
}
