#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
using sewkit::cli::RunOptions;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "sewkit_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p.string();
}

struct Ran {
  int code;
  std::string out;
  std::string log;
};

Ran run(const std::string& path, std::uint64_t seed = 1) {
  std::ostringstream out, log;
  RunOptions o;
  o.config_path = path;
  o.seed = seed;
  const int code = sewkit::cli::run(o, out, log);
  return {code, out.str(), log.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string field(const std::string& line, std::size_t index) {
  std::istringstream in(line);
  std::string cell;
  for (std::size_t i = 0; i <= index; ++i) std::getline(in, cell, ',');
  return cell;
}

}  // namespace

TEST_CASE("sew experiment") {
  const auto r = run(write_config("euler.json", R"({
    "experiment": "sew",
    "model": {"name": "euler", "A": [[1.0]]},
    "interval": [0, 1], "tol": 1e-6, "reference": [1.0]
  })"));
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() > 3);
  CHECK(rows[0] == "level,mesh,successive_distance,bound,value");
  CHECK(std::abs(std::stod(field(rows.back(), 4)) - std::exp(1.0)) < 2e-6);
  CHECK(r.log.find("converged") != std::string::npos);
}

TEST_CASE("holonomy experiment") {
  const auto r = run(write_config("circle.json", R"({
    "experiment": "holonomy",
    "model": {"name": "flat_connection", "rule": "exact_segment"},
    "path": {"kind": "circle", "radius": 1.0, "segments": 32},
    "tol": 1e-9
  })"));
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows[0] == "level,mesh,successive_distance,bound,value,angle");
  CHECK(std::abs(std::stod(field(rows.back(), 5)) - 2 * std::numbers::pi) < 1e-6);
}

TEST_CASE("knit experiment with class separation") {
  const auto r = run(write_config("winding.json", R"({
    "experiment": "knit",
    "model": {"name": "flat_connection", "rule": "exact_segment"},
    "homotopy": {"kind": "ellipse_family", "ry0": 1.0, "ry1": 0.6},
    "ks": [8, 16],
    "separation": {"a": {"kind": "arc", "theta1": 3.141592653589793, "segments": 32},
                   "b": {"kind": "arc", "theta1": -3.141592653589793, "segments": 32}},
    "tol": 1e-9
  })"));
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "row,k,measured,bound,rate,net_mesh");
  CHECK(rows[1].rfind("knit,8,", 0) == 0);
  CHECK(rows[5].rfind("separation,,", 0) == 0);
  CHECK(std::stod(field(rows[5], 2)) <= 1e-6);
}

TEST_CASE("certify experiment") {
  const auto r = run(write_config("young.json", R"({
    "experiment": "certify", "mode": "three_point",
    "model": {"name": "young", "x": {"kind": "poly", "coeffs": [0, 1]},
              "y": {"kind": "poly", "coeffs": [0, 1]}, "alpha": 1, "beta": 1},
    "expect_eps": 1.0
  })"));
  CHECK(r.code == 0);
  const auto rows = lines(r.out);
  CHECK(rows.back().rfind("fit,40,", 0) == 0);
  CHECK(std::abs(std::stod(field(rows.back(), 8)) - 1.0) < 1e-6);

  const auto wrong = run(write_config("young_wrong.json", R"({
    "experiment": "certify",
    "model": {"name": "young", "x": {"kind": "sin"}, "y": {"kind": "cos"}, "alpha": 1, "beta": 1},
    "expect_eps": 0.2
  })"));
  CHECK(wrong.code == 2);
  CHECK(wrong.log.find("violation") != std::string::npos);
}

TEST_CASE("config errors carry the offending field") {
  auto expect = [](const std::string& name, const std::string& body, const std::string& where) {
    const auto r = run(write_config(name, body));
    CHECK(r.code == 1);
    INFO(r.log);
    CHECK(r.log.find(where) != std::string::npos);
  };
  expect("bad_model.json", R"({"experiment": "sew", "model": {"name": "heat"}, "interval": [0, 1]})",
         "/model/name");
  expect("bad_field.json",
         R"({"experiment": "sew", "model": {"name": "euler", "A": [[1]], "B": 2}, "interval": [0, 1]})",
         "/model/B");
  expect("bad_experiment.json", R"({"experiment": "paint"})", "/experiment");
  expect("bad_type.json", R"({"experiment": "sew", "model": {"name": "euler", "A": [[1]]}, "interval": [0, "x"]})",
         "/interval/1");
  expect("missing.json", R"({"experiment": "sew", "model": {"name": "euler", "A": [[1]]}})", "/interval");
  expect("young_bad.json",
         R"({"experiment": "sew", "model": {"name": "young", "x": {"kind": "power", "alpha": 0.4},
             "y": {"kind": "power", "alpha": 0.4}, "alpha": 0.4, "beta": 0.4}, "interval": [0, 1]})",
         "/model");
  expect("syntax.json", "{\"experiment\": ", "syntax.json");
  const auto none = run((scratch() / "does_not_exist.json").string());
  CHECK(none.code == 1);
}

TEST_CASE("experiment named on the command line must match the config") {
  const auto path = write_config("mismatch.json", R"({
    "experiment": "sew", "model": {"name": "euler", "A": [[1]]}, "interval": [0, 1], "tol": 1e-3})");
  std::ostringstream out, log;
  RunOptions o;
  o.config_path = path;
  o.experiment = "knit";
  CHECK(sewkit::cli::run(o, out, log) == 1);
}

TEST_CASE("output file and byte-identical reruns") {
  const fs::path csv = scratch() / "repro.csv";
  const auto path = write_config("repro.json", R"({
    "experiment": "certify", "mode": "four_point",
    "model": {"name": "flat_connection", "rule": "midpoint"},
    "output": ")" + csv.string() + R"("})");
  auto read = [&] {
    std::ifstream in(csv, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(run(path, 7).code == 0);
  const std::string first = read();
  CHECK(run(path, 7).code == 0);
  CHECK(read() == first);
  CHECK(run(path, 8).code == 0);
  CHECK(read() != first);
}

TEST_CASE("command-line entry point") {
  const auto path = write_config("main.json", R"({
    "experiment": "sew", "model": {"name": "additive", "h": [{"kind": "sin"}]}, "interval": [0, 1],
    "tol": 1e-4, "output": ")" + (scratch() / "main.csv").string() + R"("})");
  std::vector<std::string> args{"sewkit", "sew", "--config", path, "--quiet"};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  CHECK(sewkit::cli::main(static_cast<int>(argv.size()), argv.data()) == 0);
  std::vector<std::string> bad{"sewkit", "sew"};
  std::vector<char*> argv2;
  for (auto& a : bad) argv2.push_back(a.data());
  CHECK(sewkit::cli::main(static_cast<int>(argv2.size()), argv2.data()) == 1);
}
