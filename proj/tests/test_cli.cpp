#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

using Json = nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ghz::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') break;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ghzlhv_test_" + name);
}

TEST(Check, GhzIsInfeasible) {
  const Result r = run_cli({"check", "1", "1", "1", "-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("infeasible, F=4"), std::string::npos);
}

TEST(Check, ZeroIsFeasible) {
  const Result r = run_cli({"check", "0", "0", "0", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("witness"), std::string::npos);
}

TEST(Check, JsonCarriesEightSlacks) {
  const Result r = run_cli({"check", "0.9", "0.9", "0.9", "-0.9", "--json"});
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["feasible"].get<bool>());
  EXPECT_FALSE(j["oracle_feasible"].get<bool>());
  ASSERT_EQ(j["slacks"].size(), 8U);
  const double expected[] = {5.6, -1.6, 2, 2, 2, 2, 2, 2};
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(j["slacks"][k].get<double>(), expected[k], 1e-12);
  EXPECT_NEAR(j["f_value"].get<double>(), 3.6, 1e-12);
}

TEST(Check, InputErrors) {
  EXPECT_EQ(run_cli({"check", "1", "x", "1", "1"}).code, 2);
  EXPECT_EQ(run_cli({"check", "2", "0", "0", "0"}).code, 2);
  EXPECT_EQ(run_cli({"check", "0", "0", "0"}).code, 2);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bogus"}).code, 2);
}

TEST(ConstructJoint, MidpointAndPreconditions) {
  const Result r = run_cli({"construct-joint", "--p", "0.5", "--q", "0.5", "--json"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["joint"]["abc"].get<double>(), 0.25, 1e-15);
  EXPECT_NEAR(j["joint"]["a~bc"].get<double>(), 1.0 / 12.0, 1e-15);
  const Result bad = run_cli({"construct-joint", "--p", "0.9", "--q", "0.1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("3p - q <= 2"), std::string::npos);
}

TEST(Correlation, PaperRates) {
  const Result r =
      run_cli({"correlation", "--d", "0.5", "--dark-rate", "300", "--window", "2e-9", "--ratio", "1e10", "--json"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["E"].get<double>(), 0.9205, 5e-4);
  EXPECT_NEAR(j["sigma"].get<double>(), 0.391, 1e-3);
  EXPECT_NEAR(j["separation"].get<double>(), 1.08, 5e-3);
}

TEST(Correlation, CountRatio) {
  const Json j = Json::parse(run_cli({"correlation", "--ratio-counts", "1:12", "--json"}).out);
  EXPECT_NEAR(j["E"].get<double>(), 0.923, 5e-4);
  EXPECT_NEAR(j["sigma"].get<double>(), 0.385, 5e-4);
  EXPECT_NEAR(j["separation"].get<double>(), 1.10, 5e-3);
  const Json rounded = Json::parse(run_cli({"correlation", "--observed", "0.92", "--json"}).out);
  EXPECT_NEAR(rounded["sigma"].get<double>(), 0.392, 5e-4);
  EXPECT_NEAR(rounded["separation"].get<double>(), 1.07, 5e-3);
}

TEST(Correlation, NoDarkCountsSaturates) {
  const Result r = run_cli({"correlation", "--d", "0.5", "--gamma", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("E = 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("saturated"), std::string::npos);
}

TEST(Correlation, DomainErrorsExitTwo) {
  EXPECT_EQ(run_cli({"correlation", "--d", "0", "--gamma", "1e-6"}).code, 2);
  EXPECT_EQ(run_cli({"correlation", "--d", "0.5"}).code, 2);
  EXPECT_EQ(run_cli({"correlation", "--ratio-counts", "1-12"}).code, 2);
  EXPECT_EQ(run_cli({"correlation", "--gamma", "1e-6", "--mode", "fancy"}).code, 2);
}

// Text output and JSON agree to 12 significant digits.
TEST(Correlation, TextRoundTripsThroughJson) {
  const std::vector<std::string> base{"correlation", "--d", "0.37", "--gamma", "3.3e-7", "--ratio", "7e9"};
  std::vector<std::string> with_json = base;
  with_json.push_back("--json");
  const Json j = Json::parse(run_cli(with_json).out);
  const std::string text = run_cli(base).out;
  for (const char* key : {"E", "sigma", "separation"}) {
    const std::string expected = std::string(key) + " = " + ghz::cli::format_number(j[key].get<double>(), 12);
    EXPECT_NE(text.find(expected), std::string::npos) << key;
  }
}

TEST(Sweep, RowCountAndHeader) {
  const auto path = temp_path("sweep.csv");
  const Result r = run_cli({"sweep", "--gamma-steps", "2", "--d-steps", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto rows = csv_rows(ss.str());
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"gamma", "d", "E", "sigma", "separation"}));
  std::filesystem::remove(path);
}

TEST(Sweep, ContourAndMonotonicity) {
  const Result r = run_cli({"sweep", "--d-min", "0.5", "--d-max", "1", "--d-steps", "2", "--gamma-steps", "40",
                            "--contour", "0.92"});
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 81U);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    if (rows[i][1] != rows[i - 1][1]) continue;
    EXPECT_LE(std::stod(rows[i][2]), std::stod(rows[i - 1][2]));
  }
  const auto block = r.out.find("# contour E=0.92\nd,gamma\n0.5,");
  ASSERT_NE(block, std::string::npos);
  const double gamma = std::stod(r.out.substr(block + std::string("# contour E=0.92\nd,gamma\n0.5,").size()));
  EXPECT_NEAR(gamma, 6.0e-7, 0.05e-7);
}

TEST(Sweep, Errors) {
  EXPECT_EQ(run_cli({"sweep", "--gamma-steps", "1"}).code, 2);
  EXPECT_EQ(run_cli({"sweep", "--d-min", "0"}).code, 2);
  EXPECT_EQ(run_cli({"sweep", "--out", "/nonexistent-dir/x.csv"}).code, 2);
}

TEST(Simulate, PerfectXxx) {
  const Result r = run_cli({"simulate", "--seed", "1", "--gamma", "0", "--d", "1", "--twopair", "1", "--setting", "XXX",
                            "--trials", "1000", "--json"});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["stats"]["e_hat"].get<double>(), -1.0);
}

TEST(Simulate, RequiresSeed) {
  EXPECT_EQ(run_cli({"simulate", "--twopair", "1", "--trials", "10"}).code, 2);
}

TEST(Simulate, NoCoincidencesMarker) {
  const Result r = run_cli({"simulate", "--seed", "3", "--gamma", "0", "--pair", "1", "--trials", "1000"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("no-coincidences"), std::string::npos);
}

TEST(Simulate, ByteIdenticalAcrossRunsAndWorkers) {
  const std::vector<std::string> args{"simulate", "--seed", "42",    "--d",      "0.5",   "--gamma", "0.01",
                                      "--pair",   "0.99", "--trials", "500000", "--json"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  auto with_workers = args;
  with_workers.insert(with_workers.end(), {"--workers", "4"});
  const Result c = run_cli(with_workers);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Simulate, ConfigFileWithFlagOverride) {
  const auto path = temp_path("sim.ini");
  {
    std::ofstream f(path);
    f << "seed=5\nd=1\ngamma=0\ntwopair=1\nsetting=XYY\ntrials=200\n";
  }
  const Json from_file = Json::parse(run_cli({"simulate", "--config", path.string(), "--json"}).out);
  EXPECT_EQ(from_file["config"]["setting"], "XYY");
  EXPECT_EQ(from_file["stats"]["e_hat"].get<double>(), 1.0);
  const Json overridden =
      Json::parse(run_cli({"simulate", "--config", path.string(), "--setting", "XXX", "--json"}).out);
  EXPECT_EQ(overridden["config"]["setting"], "XXX");
  EXPECT_EQ(overridden["stats"]["e_hat"].get<double>(), -1.0);
  std::filesystem::remove(path);
}

TEST(Simulate, EventLog) {
  const auto path = temp_path("events.log");
  const Result r = run_cli({"simulate", "--seed", "9", "--d", "0.5", "--gamma", "0.3", "--pair", "0.5", "--trials",
                            "250", "--events", path.string()});
  ASSERT_EQ(r.code, 0);
  std::ifstream f(path);
  int lines = 0;
  std::string line;
  while (std::getline(f, line)) ++lines;
  EXPECT_EQ(lines, 250);
  std::filesystem::remove(path);
}

TEST(Quantum, PaperSettings) {
  const Result a = run_cli({"quantum", "XYY"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("<psi|XYY|psi> = 1\n"), std::string::npos);
  EXPECT_NE(run_cli({"quantum", "XXX"}).out.find("<psi|XXX|psi> = -1\n"), std::string::npos);
  const Json j = Json::parse(run_cli({"quantum", "YYX", "--json"}).out);
  double sum = 0.0;
  for (const auto& row : j["distribution"]) sum += row["probability"].get<double>();
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_EQ(run_cli({"quantum", "XQZ"}).code, 2);
}

TEST(Format, LocaleIndependentSignificantDigits) {
  EXPECT_EQ(ghz::cli::format_number(0.920471281296023, 12), "0.920471281296");
  EXPECT_EQ(ghz::cli::format_number(6e-7, 12), "6e-07");
  EXPECT_EQ(ghz::cli::format_number(1.0, 12), "1");
}

}  // namespace
