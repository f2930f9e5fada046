#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ncg/io.hpp"
#include "ncg/scenario.hpp"

using namespace ncg;

namespace {

Json base_config() {
  return Json::parse(R"({
    "theta": [[0, 0.3, 0], [-0.3, 0, 0], [0, 0, 0]],
    "n": 2, "m": 1, "lambda": 3, "spectra": false
  })");
}

}  // namespace

TEST_CASE("config defaults and validation") {
  const auto c = parse_config(base_config());
  CHECK(c.lambda == 3);
  CHECK(c.tolerance == 1e-12);
  CHECK(c.seed == 7);
  CHECK(c.connection == "canonical");
  CHECK_FALSE(c.expect_compatible.has_value());

  auto bad = base_config();
  bad["lamda"] = 3;
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
  bad = base_config();
  bad["n"] = 3;
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
  bad = base_config();
  bad["gamma_sign"] = 2;
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
  bad = base_config();
  bad["n"] = "two";
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(Json::array()), std::invalid_argument);
}

TEST_CASE("theta presets") {
  auto j = base_config();
  j["theta"] = "zero";
  CHECK(parse_config(j).theta == ThetaMatrix(3));
  j["theta"] = "random";
  const auto a = parse_config(j).theta;
  CHECK(a == parse_config(j).theta);
  CHECK_FALSE(a == ThetaMatrix(3));
  j["theta"] = "golden";
  CHECK_THROWS_AS(parse_config(j), std::invalid_argument);
}

TEST_CASE("connection presets") {
  auto j = base_config();
  j["lambda"] = 4;
  j["connection"] = "constant:[1,-2]";
  const auto c = parse_config(j);
  const auto theta = make_theta(c.theta);
  const auto f = build_family(c, theta);
  CHECK(f.b[1][0].coefficient({0, 0, 0}) == Complex(-2.0));
  j["connection"] = "constant:[1]";
  CHECK_THROWS_AS(build_family(parse_config(j), theta), std::invalid_argument);
  j["connection"] = "flat";
  CHECK_THROWS_AS(build_family(parse_config(j), theta), std::invalid_argument);
}

TEST_CASE("run of the canonical T^3 scenario") {
  auto c = parse_config(base_config());
  c.id = "unit";
  const auto run = run_scenario(c);
  CHECK(run.passed());
  CHECK(run.stages.size() == kStages.size());
  REQUIRE(run.compatible.has_value());
  CHECK(*run.compatible);
  const auto j = run.to_json();
  CHECK(j["passed"] == true);
  CHECK(j["stages"].contains("twist"));
  CHECK(j == run_scenario(c).to_json());
}

TEST_CASE("restricted runs report only the requested stages") {
  auto c = parse_config(base_config());
  const auto run = run_scenario(c, {"base"});
  REQUIRE(run.stages.size() == 1);
  CHECK(run.stages[0].stage == "base");
  CHECK(run.passed());
  CHECK_THROWS_AS(run_scenario(c, {"everything"}), std::invalid_argument);
}

TEST_CASE("spectra files") {
  auto j = base_config();
  j["spectra"] = true;
  j["lambda"] = 2;
  auto c = parse_config(j);
  c.out_dir = std::filesystem::temp_directory_path() / "ncg_test_scenario";
  const auto run = run_scenario(c);
  CHECK(run.spectra_files.size() == 4);
  const auto rows = parse_spectrum_csv(
      [&] {
        std::ifstream in(c.out_dir / "spectrum_D.csv");
        return std::string(std::istreambuf_iterator<char>(in), {});
      }());
  int total = 0;
  for (const auto& r : rows) total += r.multiplicity;
  CHECK(total == 250);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("real-structure sweep over small dimensions") {
  const auto sweep = run_kr_sweep(3, 2, 3, 1e-12);
  CHECK(sweep.passed());
  CHECK(sweep.entries.size() == 6);
}
