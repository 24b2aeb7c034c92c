#include "kgo/cli.hpp"
#include "kgo/serialize.hpp"

#include <doctest.h>

#include <cstring>
#include <sstream>
#include <string>
#include <vector>

using namespace kgo;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kgo");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) cells.push_back(c);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("table columns follow the published order") {
    const auto r = run_cli({"table", "--gamma-list", "0", "--n", "0,1,2"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 4);
    const auto header = split(lines[0]);
    const std::vector<std::string> expected{"n",  "gamma", "x2", "dx", "p2", "dp", "dxdp",
                                            "Fx", "Fp",    "FxFp", "Sx", "Sp", "S_sum"};
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(header[i] == expected[i]);
    for (int n = 0; n <= 2; ++n)
      CHECK(std::stod(split(lines[1 + n])[7]) == doctest::Approx(4.0 * n + 2.0).epsilon(1e-9));
  }

  TEST_CASE("negative coupling lists parse") {
    const auto r = run_cli({"table", "--gamma-list", "-0.16,-0.32", "--n", "0"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(split(lines[1])[1] == "-0.16");
    CHECK(split(lines[2])[1] == "-0.32");
    const auto single = run_cli({"density", "--gamma", "-0.32", "--n", "1", "--grid", "-1:1:3"});
    CHECK(single.code == 0);
  }

  TEST_CASE("non-normalizable momentum row is flagged, not fatal") {
    const auto r = run_cli({"table", "--gamma-list", "-0.80", "--n", "0"});
    CHECK(r.code == cli::exit_code::ok);
    CHECK(r.out.find("momentum:non_normalizable") != std::string::npos);
    const auto f = run_cli({"table", "--gamma-list", "-0.80", "--n", "0", "--forensic"});
    CHECK(f.code == cli::exit_code::forensic_rows);
  }

  TEST_CASE("exit codes") {
    CHECK(run_cli({"density", "--gamma", "-0.80", "--n", "0", "--space", "momentum", "--kind",
                   "shannon"})
              .code == cli::exit_code::invalid_density);
    CHECK(run_cli({"density", "--gamma", "-0.16", "--n", "0", "--space", "momentum", "--kind",
                   "fisher"})
              .code == cli::exit_code::invalid_density);
    CHECK(run_cli({"spectrum", "--gamma", "-1.5", "--n-max", "2"}).code ==
          cli::exit_code::spectrum_failure);
    CHECK(run_cli({"table", "--gamma-list", "-1.5", "--n", "1"}).code ==
          cli::exit_code::spectrum_failure);
    CHECK(run_cli({"table", "--gamma-list", "5"}).code == cli::exit_code::usage);
    CHECK(run_cli({"bogus"}).code == cli::exit_code::usage);
    CHECK(run_cli({"density", "--grid", "1:2"}).code == cli::exit_code::usage);
  }

  TEST_CASE("spectrum command") {
    const auto r = run_cli({"spectrum", "--gamma", "0", "--n-max", "3"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 5);
    const double expected[] = {1.0, 1.7320508, 2.2360680, 2.6457513};
    for (int n = 0; n <= 3; ++n)
      CHECK(std::stod(split(lines[1 + n])[2]) == doctest::Approx(expected[n]).epsilon(1e-7));
    const auto anti = data_lines(run_cli({"spectrum", "--gamma", "-0.5", "--branch",
                                          "antiparticle", "--n-max", "3"})
                                     .out);
    const auto part = data_lines(run_cli({"spectrum", "--gamma", "0.5", "--n-max", "3"}).out);
    for (int n = 1; n <= 4; ++n)
      CHECK(std::stod(split(anti[n])[2]) == -std::stod(split(part[n])[2]));
  }

  TEST_CASE("density command") {
    const auto r = run_cli({"density", "--gamma", "0", "--n", "0", "--space", "coordinate",
                            "--kind", "rho", "--grid", "-5:5:11"});
    REQUIRE(r.code == 0);
    const auto lines = data_lines(r.out);
    REQUIRE(lines.size() == 12);
    CHECK(lines[0] == "a,value");
    CHECK(std::stod(split(lines[6])[1]) == doctest::Approx(0.5641896).epsilon(1e-7));
    for (int i = 1; i <= 11; ++i) CHECK(split(lines[i])[1] == split(lines[12 - i])[1]);
    const auto dflt = run_cli({"density", "--gamma", "-0.32", "--n", "1", "--kind", "fisher"});
    REQUIRE(dflt.code == 0);
    CHECK(data_lines(dflt.out).size() == 2002);
  }

  TEST_CASE("check command reports published violations with recomputed values") {
    const auto r = run_cli({"check", "--gamma-list", "-0.32", "--n", "0", "--compare-paper",
                            "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    bool found = false;
    for (const auto& f : j["findings"])
      if (f["item"] == "bbm" && f["source"] == "published") {
        found = true;
        CHECK(f["status"] == "violated");
        CHECK(f["lhs"].get<double>() == 2.0555);
      }
    CHECK(found);
    CHECK(j["summary"]["bbm"]["published"]["violated"] == 1);
  }

  TEST_CASE("check at zero coupling: all six inequalities hold") {
    const auto r = run_cli({"check", "--gamma-list", "0", "--n", "0,1,2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    int count = 0;
    for (const auto& f : j["findings"])
      if (f["source"] == "recomputed" && f["item"] != "state" &&
          f["item"].get<std::string>().rfind("fisher_paper", 0) != 0) {
        ++count;
        CHECK(f["status"] == "satisfied");
        CHECK(f["margin"].get<double>() >= -1e-9);
      }
    CHECK(count == 18);
  }

  TEST_CASE("output is byte-identical across runs") {
    const auto a = run_cli({"check", "--compare-paper"});
    const auto b = run_cli({"check", "--compare-paper"});
    CHECK(a.out == b.out);
    const auto c = run_cli({"table", "--format", "json", "--compare-paper"});
    const auto d = run_cli({"table", "--format", "json", "--compare-paper"});
    CHECK(c.out == d.out);
  }

  TEST_CASE("JSON rows round-trip bit-exactly") {
    const auto r = run_cli({"table", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    REQUIRE(j["rows"].size() == 18);
    for (const auto& row : j["rows"]) {
      const MeasureReport rep = report_from_json(row);
      CHECK(to_json(rep) == row);
      CHECK(to_json(rep).dump() == row.dump());
    }
    const auto direct = report(-0.16, 1, Branch::particle);
    const auto back = report_from_json(json::parse(to_json(direct).dump()));
    CHECK(std::memcmp(&*back.x2, &*direct.x2, sizeof(double)) == 0);
    CHECK(std::memcmp(&*back.Fx, &*direct.Fx, sizeof(double)) == 0);
    CHECK(back.stam_x->margin == direct.stam_x->margin);
    CHECK(back.flags == direct.flags);
  }

  TEST_CASE("paper mode swaps in the closed-form Fisher") {
    const auto r = run_cli({"table", "--gamma-list", "0", "--n", "1", "--mode", "paper"});
    REQUIRE(r.code == 0);
    const auto row = split(data_lines(r.out)[1]);
    CHECK(std::stod(row[7]) == doctest::Approx(22.0).epsilon(1e-10));
    CHECK(std::stod(row[9]) == doctest::Approx(484.0).epsilon(1e-10));
    const auto d = run_cli({"table", "--gamma-list", "0", "--n", "1", "--mode", "direct"});
    CHECK(split(data_lines(d.out)[1])[16] == "NA");
  }

  TEST_CASE("output file") {
    const std::string path = "kgo_test_output.csv";
    const auto r = run_cli({"table", "--gamma-list", "0", "--n", "0", "--output", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::remove(path.c_str());
  }

  TEST_CASE("grid parsing") {
    const auto g = cli::parse_grid("-5:5:11");
    CHECK(g.min == -5.0);
    CHECK(g.max == 5.0);
    CHECK(g.count == 11);
    CHECK_THROWS(cli::parse_grid("0:1:1"));
    CHECK_THROWS(cli::parse_grid("0:1"));
    CHECK_THROWS(cli::parse_grid("a:1:3"));
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(NAN) == "NA");
    CHECK(format_optional(std::nullopt) == "NA");
  }

  TEST_CASE("selftest") {
    const auto r = run_cli({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}
