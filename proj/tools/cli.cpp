#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghz/detector.hpp"
#include "ghz/lhv.hpp"
#include "ghz/montecarlo.hpp"
#include "ghz/quantum.hpp"

namespace ghz::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::array<const char*, 8> kAtomNames{"abc", "a~bc", "ab~c", "a~b~c", "~abc", "~a~bc", "~ab~c", "~a~b~c"};

// Thrown by command bodies for bad input; mapped to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) { return format_number(v, output_precision()); }

Json json_number_or_null(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json joint_json(const lhv::JointDistribution8& j) {
  Json out = Json::object();
  for (std::size_t i = 0; i < lhv::kAtomCount; ++i) out[kAtomNames[i]] = j[i];
  return out;
}

void print_joint(std::ostream& out, const lhv::JointDistribution8& j) {
  for (std::size_t i = 0; i < lhv::kAtomCount; ++i) {
    out << "  P(" << kAtomNames[i] << ") = " << num(j[i]) << '\n';
  }
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::vector<double> values;
  bool json = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  if (a.values.size() != 4) throw InputError("check expects four correlations: E(A) E(B) E(C) E(ABC)");
  lhv::CorrelationSet c;
  try {
    c = lhv::CorrelationSet(a.values[0], a.values[1], a.values[2], a.values[3]);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  const lhv::FeasibilityReport r = lhv::analyze(c);
  static constexpr std::array<const char*, 4> kForms{"E(A)+E(B)+E(C)-E(ABC)", "-E(A)+E(B)+E(C)+E(ABC)",
                                                     "E(A)-E(B)+E(C)+E(ABC)", "E(A)+E(B)-E(C)+E(ABC)"};
  if (a.json) {
    Json j;
    j["correlations"] = {c.e_a, c.e_b, c.e_c, c.e_abc};
    j["feasible"] = r.feasible;
    j["f_value"] = r.f_value;
    j["slacks"] = r.flat_slacks();
    Json ineq = Json::array();
    for (std::size_t k = 0; k < 4; ++k) {
      ineq.push_back({{"form", kForms[k]},
                      {"value", lhv::inequality_value(c, k)},
                      {"lower_slack", r.slacks[k].lower},
                      {"upper_slack", r.slacks[k].upper},
                      {"holds", r.slacks[k].lower >= 0.0 && r.slacks[k].upper >= 0.0}});
    }
    j["inequalities"] = ineq;
    j["oracle_feasible"] = r.witness.has_value();
    j["witness"] = r.witness ? joint_json(*r.witness) : Json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << (r.feasible ? "feasible" : "infeasible") << ", F=" << num(r.f_value) << '\n';
    for (std::size_t k = 0; k < 4; ++k) {
      const bool holds = r.slacks[k].lower >= 0.0 && r.slacks[k].upper >= 0.0;
      out << "  (" << k + 1 << ") -2 <= " << kForms[k] << " = " << num(lhv::inequality_value(c, k))
          << " <= 2  slack [" << num(r.slacks[k].lower) << ", " << num(r.slacks[k].upper) << "] "
          << (holds ? "ok" : "VIOLATED") << '\n';
    }
    if (r.witness) {
      out << "witness joint distribution:\n";
      print_joint(out, *r.witness);
    } else {
      out << "no joint distribution exists\n";
    }
  }
  return r.feasible ? kSuccess : kInfeasible;
}

// ------------------------------------------------------- construct-joint

struct ConstructArgs {
  double p = 0.0;
  double q = 0.0;
  bool json = false;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  std::optional<lhv::JointDistribution8> j;
  try {
    j = lhv::construct_symmetric_joint({a.p, a.q});
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  const lhv::CorrelationSet c = lhv::expectations_from_joint(*j);
  if (a.json) {
    Json out_json;
    out_json["p"] = a.p;
    out_json["q"] = a.q;
    out_json["joint"] = joint_json(*j);
    out_json["correlations"] = {c.e_a, c.e_b, c.e_c, c.e_abc};
    out << out_json.dump(2) << '\n';
  } else {
    out << "joint distribution for p=" << num(a.p) << ", q=" << num(a.q) << ":\n";
    print_joint(out, *j);
    out << "E(A)=" << num(c.e_a) << " E(B)=" << num(c.e_b) << " E(C)=" << num(c.e_c) << " E(ABC)=" << num(c.e_abc)
        << '\n';
  }
  return kSuccess;
}

// ----------------------------------------------------------- correlation

struct CorrelationArgs {
  double d = 0.5;
  std::optional<double> gamma;
  std::optional<double> dark_rate;
  std::optional<double> window;
  double ratio = 1e10;
  double e_ghz = 1.0;
  std::string mode = "approx";
  std::optional<std::string> ratio_counts;
  std::optional<double> observed;
  bool json = false;
};

detector::CorrelationMode parse_mode(const std::string& m) {
  if (m == "approx") return detector::CorrelationMode::kApprox;
  if (m == "exact") return detector::CorrelationMode::kExact;
  throw InputError("mode must be 'approx' or 'exact'");
}

double parse_count_ratio(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("ratio counts must look like NONGHZ:GHZ, e.g. 1:12");
  double lhs = 0.0, rhs = 0.0;
  const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
  auto [p1, e1] = std::from_chars(a.data(), a.data() + a.size(), lhs);
  auto [p2, e2] = std::from_chars(b.data(), b.data() + b.size(), rhs);
  if (e1 != std::errc() || e2 != std::errc() || p1 != a.data() + a.size() || p2 != b.data() + b.size() ||
      !(lhs >= 0.0) || !(rhs > 0.0)) {
    throw InputError("ratio counts must look like NONGHZ:GHZ with nonnegative numbers, got '" + s + "'");
  }
  return lhs / rhs;
}

int cmd_correlation(const CorrelationArgs& a, std::ostream& out) {
  Json j;
  double e = 0.0;
  try {
    if (a.observed) {
      e = *a.observed;
      if (!(e >= -1.0 && e <= 1.0)) throw InputError("observed correlation must lie in [-1, 1]");
      j["source"] = "observed";
    } else if (a.ratio_counts) {
      const double r = parse_count_ratio(*a.ratio_counts);
      e = detector::correlation_from_ratio(r, a.e_ghz);
      j["source"] = "count-ratio";
      j["count_ratio"] = r;
    } else {
      double gamma = 0.0;
      if (a.gamma) {
        if (a.dark_rate || a.window) throw InputError("give either --gamma or --dark-rate with --window");
        gamma = *a.gamma;
      } else if (a.dark_rate && a.window) {
        gamma = detector::gamma_from_rates({*a.dark_rate, *a.window});
      } else {
        throw InputError("need --gamma, --dark-rate with --window, --ratio-counts, or --observed");
      }
      const auto params = detector::DetectorParams::from_ratio(a.d, gamma, a.ratio, a.e_ghz);
      e = detector::corrected_correlation(params, parse_mode(a.mode));
      j["source"] = "model";
      j["mode"] = a.mode;
      j["d"] = a.d;
      j["gamma"] = gamma;
      j["ratio"] = a.ratio;
      j["e_ghz"] = a.e_ghz;
    }
  } catch (const std::domain_error& ex) {
    throw InputError(ex.what());
  }

  const double sigma = detector::sigma_of_correlation(e);
  std::optional<detector::Separation> sep;
  if (e > detector::kLhvBoundary) sep = detector::sigma_separation(e);

  j["E"] = e;
  j["sigma"] = sigma;
  j["separation"] = sep ? Json(sep->value) : Json(nullptr);
  j["separation_saturated"] = sep ? sep->saturated : false;
  j["exceeds_lhv_boundary"] = e > detector::kLhvBoundary;

  if (a.json) {
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  if (j.contains("gamma")) out << "gamma = " << num(j["gamma"].get<double>()) << '\n';
  out << "E = " << num(e) << '\n';
  out << "sigma = " << num(sigma) << '\n';
  if (!sep) {
    out << "separation = none (E <= 0.5)\n";
  } else if (sep->saturated) {
    out << "separation = saturated (>= " << num(detector::kSeparationCap) << ")\n";
  } else {
    out << "separation = " << num(sep->value) << '\n';
  }
  return kSuccess;
}

// ----------------------------------------------------------------- sweep

struct SweepArgs {
  double gamma_min = 1e-8;
  double gamma_max = 1e-5;
  int gamma_steps = 31;
  double d_min = 0.1;
  double d_max = 1.0;
  int d_steps = 10;
  double ratio = 1e10;
  double e_ghz = 1.0;
  std::string mode = "approx";
  std::string out = "-";
  std::optional<double> contour;
};

void validate_grid(const SweepArgs& g) {
  if (g.gamma_steps < 2 || g.d_steps < 2) throw InputError("grid steps must be >= 2");
  if (!(g.gamma_min > 0.0 && g.gamma_max <= 1.0 && g.gamma_min < g.gamma_max)) {
    throw InputError("gamma bounds must satisfy 0 < gamma_min < gamma_max <= 1");
  }
  if (!(g.d_min > 0.0 && g.d_max <= 1.0 && g.d_min < g.d_max)) {
    throw InputError("d bounds must satisfy 0 < d_min < d_max <= 1");
  }
}

void write_sweep(const SweepArgs& g, std::ostream& os) {
  const int prec = 12;
  const auto mode = parse_mode(g.mode);
  std::vector<double> ds(g.d_steps);
  for (int i = 0; i < g.d_steps; ++i) ds[i] = g.d_min + (g.d_max - g.d_min) * i / (g.d_steps - 1);
  const double lg0 = std::log(g.gamma_min), lg1 = std::log(g.gamma_max);

  os << "gamma,d,E,sigma,separation\n";
  for (double d : ds) {
    for (int k = 0; k < g.gamma_steps; ++k) {
      const double gamma = k == 0 ? g.gamma_min
                           : k == g.gamma_steps - 1 ? g.gamma_max
                                                    : std::exp(lg0 + (lg1 - lg0) * k / (g.gamma_steps - 1));
      const double e = detector::corrected_correlation(detector::DetectorParams::from_ratio(d, gamma, g.ratio, g.e_ghz), mode);
      const double sigma = detector::sigma_of_correlation(e);
      std::string sep = "nan";
      if (e > detector::kLhvBoundary) sep = format_number(detector::sigma_separation(e).value, prec);
      os << format_number(gamma, prec) << ',' << format_number(d, prec) << ',' << format_number(e, prec) << ','
         << format_number(sigma, prec) << ',' << sep << '\n';
    }
  }

  if (g.contour) {
    os << "\n# contour E=" << format_number(*g.contour, prec) << '\n';
    os << "d,gamma\n";
    for (double d : ds) {
      std::string gamma = "nan";
      try {
        gamma = format_number(detector::find_gamma_for_correlation(d, g.ratio, *g.contour, g.e_ghz), prec);
      } catch (const std::domain_error&) {
      }
      os << format_number(d, prec) << ',' << gamma << '\n';
    }
  }
}

int cmd_sweep(const SweepArgs& g, std::ostream& out) {
  validate_grid(g);
  if (g.contour && !(*g.contour > 0.0 && *g.contour <= g.e_ghz)) {
    throw InputError("contour target must lie in (0, e_ghz]");
  }
  std::ostringstream table;
  try {
    write_sweep(g, table);
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }
  if (g.out == "-") {
    out << table.str();
    return kSuccess;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InputError("cannot open '" + g.out + "' for writing");
  f << table.str();
  if (!f.flush()) throw InputError("failed writing '" + g.out + "'");
  return kSuccess;
}

// -------------------------------------------------------------- simulate

struct SimulateArgs {
  double d = 0.5;
  double gamma = 0.0;
  std::optional<double> pair;
  std::optional<double> twopair;
  std::optional<double> ratio;
  double e_ghz = 1.0;
  std::string setting = "XYY";
  std::uint64_t trials = 1000000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::uint64_t chunk_size = mc::kDefaultChunkSize;
  std::vector<double> weights;
  std::optional<std::string> events;
  bool json = false;
};

mc::RunConfig make_run_config(const SimulateArgs& a) {
  if (!a.seed) throw InputError("simulate requires --seed");
  mc::RunConfig cfg;
  cfg.params.d = a.d;
  cfg.params.gamma = a.gamma;
  cfg.params.e_ghz = a.e_ghz;
  if (a.ratio) {
    if (a.pair || a.twopair) throw InputError("give either --ratio or --pair/--twopair");
    cfg.params = detector::DetectorParams::from_ratio(a.d, a.gamma, *a.ratio, a.e_ghz);
  } else if (a.pair && a.twopair) {
    cfg.params.p_pair = *a.pair;
    cfg.params.p_twopair = *a.twopair;
  } else if (a.pair) {
    cfg.params.p_pair = *a.pair;
    cfg.params.p_twopair = 1.0 - *a.pair;
  } else if (a.twopair) {
    cfg.params.p_twopair = *a.twopair;
    cfg.params.p_pair = 1.0 - *a.twopair;
  } else {
    throw InputError("need --pair, --twopair or --ratio");
  }
  try {
    cfg.setting = quantum::SettingTriple::parse(a.setting);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  cfg.n_trials = a.trials;
  cfg.master_seed = *a.seed;
  cfg.workers = a.workers;
  cfg.chunk_size = a.chunk_size;
  if (!a.weights.empty()) {
    if (a.weights.size() != detector::kArrivalCount) throw InputError("--weights needs exactly 10 values");
    detector::ArrivalWeights w{};
    std::copy(a.weights.begin(), a.weights.end(), w.begin());
    cfg.arrival_weights = w;
  }
  cfg.validate();
  return cfg;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  mc::RunConfig cfg;
  mc::RunStats stats;
  mc::ComparisonReport cmp;
  try {
    cfg = make_run_config(a);
    if (a.events) {
      std::ofstream ev(*a.events, std::ios::binary);
      if (!ev) throw InputError("cannot open '" + *a.events + "' for writing");
      stats = mc::run(cfg, &ev);
    } else {
      stats = mc::run(cfg);
    }
    cmp = mc::compare_analytic(stats, cfg.params, cfg.setting, cfg.weights());
  } catch (const std::domain_error& e) {
    throw InputError(e.what());
  }

  if (a.json) {
    Json j;
    j["config"] = {{"d", cfg.params.d},
                   {"gamma", cfg.params.gamma},
                   {"p_pair", cfg.params.p_pair},
                   {"p_twopair", cfg.params.p_twopair},
                   {"e_ghz", cfg.params.e_ghz},
                   {"setting", cfg.setting.str()},
                   {"n_trials", cfg.n_trials},
                   {"seed", cfg.master_seed},
                   {"chunk_size", cfg.chunk_size},
                   {"arrival_weights", cfg.weights()}};
    j["stats"] = {{"n_trials", stats.n_trials},
                  {"n_fourfold", stats.n_fourfold},
                  {"n_ghz_fourfold", stats.n_ghz_fourfold},
                  {"no_coincidences", stats.no_coincidences()},
                  {"e_hat", json_number_or_null(stats.e_hat)},
                  {"std_err", json_number_or_null(stats.std_err)},
                  {"p4_hat", stats.p4_hat},
                  {"raw_fourfold_rate", stats.raw_fourfold_rate()},
                  {"creation_norm", stats.creation_norm}};
    j["comparison"] = {{"comparable", cmp.comparable},
                       {"e_analytic", cmp.comparable ? Json(cmp.e_analytic) : Json(nullptr)},
                       {"z_correlation", cmp.comparable ? Json(cmp.z_correlation) : Json(nullptr)},
                       {"p4_analytic", cmp.p4_analytic},
                       {"z_fourfold", cmp.comparable ? Json(cmp.z_fourfold) : Json(nullptr)},
                       {"flagged", cmp.flagged}};
    out << j.dump(2) << '\n';
    return kSuccess;
  }

  out << "trials = " << stats.n_trials << '\n';
  out << "fourfold = " << stats.n_fourfold << '\n';
  out << "ghz_fourfold = " << stats.n_ghz_fourfold << '\n';
  out << "p4_hat = " << num(stats.p4_hat) << '\n';
  if (stats.no_coincidences()) {
    out << "no-coincidences\n";
    out << "comparison = not-comparable\n";
    return kSuccess;
  }
  out << "e_hat = " << num(*stats.e_hat) << '\n';
  out << "std_err = " << num(*stats.std_err) << '\n';
  out << "e_analytic = " << num(cmp.e_analytic) << '\n';
  out << "z_correlation = " << num(cmp.z_correlation) << '\n';
  out << "p4_analytic = " << num(cmp.p4_analytic) << '\n';
  out << "z_fourfold = " << num(cmp.z_fourfold) << '\n';
  out << "flagged = " << (cmp.flagged ? "yes" : "no") << '\n';
  return kSuccess;
}

// --------------------------------------------------------------- quantum

struct QuantumArgs {
  std::string setting;
  bool json = false;
};

int cmd_quantum(const QuantumArgs& a, std::ostream& out) {
  quantum::SettingTriple s;
  try {
    s = quantum::SettingTriple::parse(a.setting);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const quantum::StateVector8 psi = quantum::ghz_state();
  const double value = quantum::operator_expectation(psi, s);
  const auto probs = quantum::outcome_probabilities(psi, s);

  auto label = [](std::size_t k) {
    const auto o = quantum::OutcomeTriple::from_index(k);
    std::string l;
    for (int v : {o.s1, o.s2, o.s3}) l.push_back(v > 0 ? '+' : '-');
    return l;
  };
  if (a.json) {
    Json j;
    j["setting"] = s.str();
    j["expectation"] = value;
    Json dist = Json::array();
    for (std::size_t k = 0; k < 8; ++k) dist.push_back({{"outcome", label(k)}, {"probability", probs[k]}});
    j["distribution"] = dist;
    out << j.dump(2) << '\n';
    return kSuccess;
  }
  out << "<psi|" << s.str() << "|psi> = " << num(value) << '\n';
  out << "outcome,probability\n";
  for (std::size_t k = 0; k < 8; ++k) out << label(k) << ',' << num(probs[k]) << '\n';
  return kSuccess;
}

}  // namespace

int output_precision() {
  if (const char* env = std::getenv("GHZ_PRECISION")) {
    int p = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
    if (ec == std::errc() && ptr == s.data() + s.size() && p >= 1 && p <= 17) return p;
  }
  return 12;
}

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, precision);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

// Expands `simulate --config FILE` into flags. Keys already given on the
// command line are skipped so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty() || args[0] != "simulate") return args;
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return args;
  std::ifstream in(*path);
  if (!in) throw InputError("cannot read config file " + *path);

  auto given = [&](const std::string& flag) {
    for (const auto& a : rest) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t\r");
    const auto e = v.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };

  std::vector<std::string> out{"simulate"};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find_first_of("#;")));
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(*path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    if (key == "config" || given(flag)) continue;
    if (key == "json") {
      if (value == "true" || value == "1") out.push_back(flag);
      continue;
    }
    out.push_back(flag);
    out.push_back(value);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  CLI::App app{"GHZ local-hidden-variable inequalities and detector-inefficiency model", "ghzlhv"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* sc_check = app.add_subcommand("check", "test E(A) E(B) E(C) E(ABC) against the four inequalities");
  sc_check->add_option("values", check.values, "E(A) E(B) E(C) E(ABC)")->expected(4)->required()->allow_extra_args(false);
  sc_check->add_flag("--json", check.json, "structured output");

  ConstructArgs construct;
  auto* sc_construct = app.add_subcommand("construct-joint", "joint distribution for the symmetric case");
  sc_construct->add_option("--p", construct.p, "P(a) = P(b) = P(c)")->required();
  sc_construct->add_option("--q", construct.q, "P(ABC = 1)")->required();
  sc_construct->add_flag("--json", construct.json, "structured output");

  CorrelationArgs corr;
  auto* sc_corr = app.add_subcommand("correlation", "corrected conditional correlation, sigma and separation");
  sc_corr->add_option("--d", corr.d, "detector efficiency")->capture_default_str();
  sc_corr->add_option("--gamma", corr.gamma, "dark-count probability per window");
  sc_corr->add_option("--dark-rate", corr.dark_rate, "dark counts per second");
  sc_corr->add_option("--window", corr.window, "coincidence window in seconds");
  sc_corr->add_option("--ratio", corr.ratio, "P(pair)/P(two-pair)")->capture_default_str();
  sc_corr->add_option("--e-ghz", corr.e_ghz, "GHZ-conditional correlation")->capture_default_str();
  sc_corr->add_option("--mode", corr.mode, "approx or exact")->capture_default_str();
  sc_corr->add_option("--ratio-counts", corr.ratio_counts, "observed nonGHZ:GHZ counts, e.g. 1:12");
  sc_corr->add_option("--observed", corr.observed, "use this correlation directly");
  sc_corr->add_flag("--json", corr.json, "structured output");

  SweepArgs sweep;
  auto* sc_sweep = app.add_subcommand("sweep", "tabulate E, sigma and separation over a (gamma, d) grid");
  sc_sweep->add_option("--gamma-min", sweep.gamma_min)->capture_default_str();
  sc_sweep->add_option("--gamma-max", sweep.gamma_max)->capture_default_str();
  sc_sweep->add_option("--gamma-steps", sweep.gamma_steps, "log-spaced")->capture_default_str();
  sc_sweep->add_option("--d-min", sweep.d_min)->capture_default_str();
  sc_sweep->add_option("--d-max", sweep.d_max)->capture_default_str();
  sc_sweep->add_option("--d-steps", sweep.d_steps, "linearly spaced")->capture_default_str();
  sc_sweep->add_option("--ratio", sweep.ratio, "P(pair)/P(two-pair)")->capture_default_str();
  sc_sweep->add_option("--e-ghz", sweep.e_ghz)->capture_default_str();
  sc_sweep->add_option("--mode", sweep.mode, "approx or exact")->capture_default_str();
  sc_sweep->add_option("--out", sweep.out, "output path, '-' for stdout")->capture_default_str();
  sc_sweep->add_option("--contour", sweep.contour, "also solve E(gamma) = target per d");

  SimulateArgs sim;
  auto* sc_sim = app.add_subcommand("simulate", "Monte Carlo run compared against the analytic model");
  std::string config_path;
  sc_sim->add_option("--config", config_path, "key=value file with the same names as the flags");
  sc_sim->add_option("--d", sim.d)->capture_default_str();
  sc_sim->add_option("--gamma", sim.gamma)->capture_default_str();
  sc_sim->add_option("--pair", sim.pair, "P(pair)");
  sc_sim->add_option("--twopair", sim.twopair, "P(two-pair)");
  sc_sim->add_option("--ratio", sim.ratio, "P(pair)/P(two-pair)");
  sc_sim->add_option("--e-ghz", sim.e_ghz)->capture_default_str();
  sc_sim->add_option("--setting", sim.setting, "three axes from {X, Y}")->capture_default_str();
  sc_sim->add_option("--trials", sim.trials)->capture_default_str();
  sc_sim->add_option("--seed", sim.seed, "master seed (required)");
  sc_sim->add_option("--workers", sim.workers)->capture_default_str();
  sc_sim->add_option("--chunk-size", sim.chunk_size)->capture_default_str();
  sc_sim->add_option("--weights", sim.weights, "10 arrival-channel weights")->delimiter(',');
  sc_sim->add_option("--events", sim.events, "write one line per trial to this path");
  sc_sim->add_flag("--json", sim.json, "structured output");

  QuantumArgs qa;
  auto* sc_quantum = app.add_subcommand("quantum", "GHZ expectation and outcome distribution for a setting");
  sc_quantum->add_option("setting", qa.setting, "e.g. XYY")->required();
  sc_quantum->add_flag("--json", qa.json, "structured output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (sc_check->parsed()) return cmd_check(check, out);
    if (sc_construct->parsed()) return cmd_construct(construct, out);
    if (sc_corr->parsed()) return cmd_correlation(corr, out);
    if (sc_sweep->parsed()) return cmd_sweep(sweep, out);
    if (sc_sim->parsed()) return cmd_simulate(sim, out);
    if (sc_quantum->parsed()) return cmd_quantum(qa, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace ghz::cli
