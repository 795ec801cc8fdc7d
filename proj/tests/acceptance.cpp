// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "ghz/detector.hpp"
#include "ghz/lhv.hpp"
#include "ghz/montecarlo.hpp"
#include "ghz/quantum.hpp"

namespace {

using namespace ghz;
using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Result()>& body) {
  const auto t0 = Clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!r.pass) ++failures;
  std::printf("%s %2d %s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", id, name.c_str(), secs, r.detail.c_str());
  std::fflush(stdout);
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Result ghz_contradiction() {
  const auto t0 = Clock::now();
  const lhv::CorrelationSet w = quantum::ghz_witness();
  const bool exact = std::abs(w.e_a - 1) <= 1e-12 && std::abs(w.e_b - 1) <= 1e-12 && std::abs(w.e_c - 1) <= 1e-12 &&
                     std::abs(w.e_abc + 1) <= 1e-12;
  const lhv::FeasibilityReport rep = lhv::analyze(w);
  const bool infeasible = !rep.feasible && !rep.witness.has_value();
  const bool f4 = std::abs(rep.f_value - 4.0) <= 1e-12;
  const double secs = seconds_since(t0);
  return {exact && infeasible && f4 && secs < 1.0,
          fmt("witness=(%.3g,%.3g,%.3g,", w.e_a, w.e_b, w.e_c) + fmt("%.3g) F=%.12g", w.e_abc, rep.f_value)};
}

Result oracle_equivalence() {
  const auto t0 = Clock::now();
  std::vector<lhv::CorrelationSet> points;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      for (int c = 0; c < 9; ++c)
        for (int e = 0; e < 9; ++e)
          points.emplace_back(-1 + a / 4.0, -1 + b / 4.0, -1 + c / 4.0, -1 + e / 4.0);
  std::mt19937_64 gen(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 10000; ++i) points.emplace_back(u(gen), u(gen), u(gen), u(gen));

  std::size_t disagree = 0;
  for (const auto& c : points) {
    if (lhv::check_inequalities(c).feasible != lhv::feasible_oracle(c).has_value()) ++disagree;
  }
  const double secs = seconds_since(t0);
  return {disagree == 0 && secs < 30.0,
          std::to_string(points.size()) + " points, " + std::to_string(disagree) + " disagreements"};
}

Result symmetric_round_trip() {
  int checked = 0;
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i) {
    for (int k = 0; k <= 40; ++k) {
      const double p = i / 40.0, q = k / 40.0;
      const double t = 3 * p - q;
      if (t < -1e-12 || t > 2 + 1e-12) continue;
      const auto j = lhv::construct_symmetric_joint({p, q});
      const auto e = lhv::expectations_from_joint(j);
      for (double diff : {e.e_a - (2 * p - 1), e.e_b - (2 * p - 1), e.e_c - (2 * p - 1), e.e_abc - (2 * q - 1)}) {
        worst = std::max(worst, std::abs(diff));
      }
      ++checked;
    }
  }
  return {checked > 0 && worst <= 1e-12, std::to_string(checked) + " grid points, max error " + fmt("%.3g", worst)};
}

Result epsilon_threshold() {
  bool ok = true;
  std::string detail;
  for (double eps : {0.499, 0.5, 0.501}) {
    const bool f = lhv::epsilon_feasible(eps);
    const bool expect = eps >= 0.5;
    const auto tetrad = lhv::epsilon_tetrad(eps);
    const bool oracle = lhv::feasible_oracle(tetrad).has_value();
    const bool ineq = lhv::check_inequalities(tetrad).feasible;
    ok = ok && f == expect && oracle == f && ineq == f;
    detail += fmt("eps=%.3f:", eps) + (f ? "feasible " : "infeasible ");
  }
  return {ok, detail};
}

Result paper_numerics() {
  using namespace detector;
  const auto t0 = Clock::now();
  const double gamma = gamma_from_rates({300, 2e-9});
  const double e18 = corrected_correlation(DetectorParams::from_ratio(0.5, gamma, 1e10), CorrelationMode::kApprox);
  const double e12 = correlation_from_ratio(1.0 / 12.0);
  const double s = sigma_of_correlation(0.92);
  const Separation sep = sigma_separation(0.92);
  const bool ok = std::abs(gamma - 6e-7) <= 1e-18 && std::abs(e18 - 0.9205) <= 5e-4 &&
                  std::abs(e12 - 0.9231) <= 1e-4 && std::abs(s - 0.392) <= 1e-3 && sep.value > 1.0 &&
                  std::abs(sep.value - 1.07) <= 0.01 && seconds_since(t0) < 1.0;
  return {ok, fmt("E=%.6f E(1:12)=%.6f sigma=%.6f separation=%.6f", e18, e12, s, sep.value)};
}

Result corrected_inequality() {
  const double e = 0.92;
  const lhv::CorrelationSet tetrad(e, e, e, -e);
  const bool above = e > 1.0 - 0.5;
  const bool infeasible = !lhv::check_inequalities(tetrad).feasible && !lhv::feasible_oracle(tetrad).has_value();
  return {above && infeasible, fmt("F=%.4f", lhv::mermin_f(tetrad))};
}

Result diamond_scenario() {
  using namespace detector;
  const double gamma = gamma_from_rates({50, 2e-9});
  const double e = corrected_correlation(DetectorParams::from_ratio(0.5, gamma, 1e10), CorrelationMode::kApprox);
  const double sep = sigma_separation(e).value;
  const bool ok = std::abs(gamma - 1e-7) <= 1e-18 && std::abs(e - 0.9976) <= 5e-5 && std::abs(sep / 7.2 - 1) <= 0.05;
  return {ok, fmt("gamma=%.3g E=%.6f separation=%.4f", gamma, e, sep)};
}

Result monte_carlo() {
  const auto t0 = Clock::now();
  detector::DetectorParams params;
  params.d = 0.5;
  params.gamma = 1e-2;
  params.p_pair = 0.99;
  params.p_twopair = 0.01;
  int passed = 0;
  std::string detail;
  for (std::uint64_t seed : {11ULL, 22ULL, 33ULL, 44ULL, 55ULL}) {
    mc::RunConfig cfg;
    cfg.params = params;
    cfg.setting = quantum::kSettingA;
    cfg.n_trials = 10'000'000;
    cfg.master_seed = seed;
    cfg.workers = std::max(1U, std::thread::hardware_concurrency());
    const mc::RunStats st = mc::run(cfg);
    const mc::ComparisonReport cmp = mc::compare_analytic(st, params, cfg.setting);
    const bool ok = cmp.comparable && st.e_hat && st.std_err &&
                    std::abs(*st.e_hat - cmp.e_analytic) <= 3.0 * *st.std_err && std::abs(cmp.z_fourfold) <= 4.0;
    if (ok) ++passed;
    detail += fmt("[z_E=%.2f z_4=%.2f] ", cmp.z_correlation, cmp.z_fourfold);
  }
  const double secs = seconds_since(t0);
  return {passed >= 4 && secs < 120.0, std::to_string(passed) + "/5 seeds " + detail};
}

std::string simulate_json(const std::string& workers) {
  std::ostringstream out, err;
  const int code = cli::run({"simulate", "--d", "0.5", "--gamma", "0.01", "--pair", "0.99", "--twopair", "0.01",
                             "--trials", "2000000", "--seed", "7", "--workers", workers, "--json"},
                            out, err);
  if (code != 0) throw std::runtime_error("simulate exited " + std::to_string(code) + ": " + err.str());
  return out.str();
}

Result determinism() {
  const std::string a = simulate_json("1");
  const std::string b = simulate_json("1");
  const std::string c = simulate_json("4");
  return {!a.empty() && a == b && a == c, std::to_string(a.size()) + " bytes"};
}

Result contour_inversion() {
  const double g = detector::find_gamma_for_correlation(0.5, 1e10, 0.92);
  return {g >= 5.9e-7 && g <= 6.1e-7, fmt("gamma=%.6g", g)};
}

}  // namespace

int main() {
  report(1, "ghz-contradiction", ghz_contradiction);
  report(2, "inequalities-match-oracle", oracle_equivalence);
  report(3, "symmetric-construction", symmetric_round_trip);
  report(4, "epsilon-threshold", epsilon_threshold);
  report(5, "operating-point-numerics", paper_numerics);
  report(6, "corrected-correlation-infeasible", corrected_inequality);
  report(7, "low-dark-rate-separation", diamond_scenario);
  report(8, "monte-carlo-vs-analytic", monte_carlo);
  report(9, "simulate-determinism", determinism);
  report(10, "contour-inversion", contour_inversion);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
