#include "ghz/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ghz::mc {

namespace {

using detector::Arrival;
using detector::kArrivalCount;

struct Tally {
  std::uint64_t n_trials = 0;
  std::uint64_t n_fourfold = 0;
  std::uint64_t n_ghz_fourfold = 0;
  std::int64_t product_sum = 0;
  std::int64_t ghz_product_sum = 0;

  void add(const TrialOutcome& t) {
    ++n_trials;
    if (const auto p = t.product()) {
      ++n_fourfold;
      product_sum += *p;
      if (t.classified_ghz) {
        ++n_ghz_fourfold;
        ghz_product_sum += *p;
      }
    }
  }

  void merge(const Tally& o) {
    n_trials += o.n_trials;
    n_fourfold += o.n_fourfold;
    n_ghz_fourfold += o.n_ghz_fourfold;
    product_sum += o.product_sum;
    ghz_product_sum += o.ghz_product_sum;
  }
};

Tally run_chunk(const TrialSimulator& sim, const RunConfig& cfg, std::uint64_t chunk, std::ostream* events) {
  Rng rng = Rng::child(cfg.master_seed, chunk);
  const std::uint64_t begin = chunk * cfg.chunk_size;
  const std::uint64_t end = std::min(cfg.n_trials, begin + cfg.chunk_size);
  Tally tally;
  for (std::uint64_t i = begin; i < end; ++i) {
    const TrialOutcome t = sim(rng);
    tally.add(t);
    if (events != nullptr) *events << t.log_line() << '\n';
  }
  return tally;
}

char bit(bool b) { return b ? '1' : '0'; }

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (n_trials < 1) throw std::domain_error("n_trials must be >= 1");
  if (chunk_size < 1) throw std::domain_error("chunk_size must be >= 1");
  if (arrival_weights) {
    double sum = 0.0;
    for (double w : *arrival_weights) {
      if (!(w >= 0.0) || std::isinf(w)) throw std::domain_error("arrival weights must be finite and >= 0");
      sum += w;
    }
    if (!(sum > 0.0)) throw std::domain_error("arrival weights must sum to a positive value");
  }
}

std::optional<int> TrialOutcome::product() const {
  if (!spins) return std::nullopt;
  return spins->product();
}

std::string TrialOutcome::log_line() const {
  std::string line = creation == Creation::kPair ? "pair," : "twopair,";
  line += arrival ? std::string(detector::arrival_tag(*arrival)) : std::string("T|D1|D2|D3");
  line += ',';
  for (bool f : fired) line.push_back(bit(f));
  line += ',';
  for (bool f : dark) line.push_back(bit(f));
  line += ',';
  line += fourfold() ? (classified_ghz ? "ghz" : "nonghz") : "-";
  line += ',';
  if (spins) {
    for (int s : {spins->s1, spins->s2, spins->s3}) line.push_back(s > 0 ? '+' : '-');
  } else {
    line += "...";
  }
  return line;
}

TrialSimulator::TrialSimulator(const RunConfig& cfg)
    : params_(cfg.params), sampler_(quantum::ghz_state(), cfg.setting) {
  cfg.validate();
  const detector::ArrivalWeights w = cfg.weights();
  double acc = params_.p_twopair;
  for (std::size_t k = 0; k < kArrivalCount; ++k) {
    acc += params_.p_pair * w[k];
    channel_cdf_[k] = acc;
  }
  norm_ = acc;
}

TrialOutcome TrialSimulator::operator()(Rng& rng) const {
  const double d = params_.d;
  const double gamma = params_.gamma;
  TrialOutcome t;
  std::array<bool, 4> real{};

  const double u = rng.uniform() * norm_;
  if (u < params_.p_twopair) {
    t.creation = Creation::kTwoPair;
    for (std::size_t i = 0; i < 4; ++i) {
      real[i] = rng.bernoulli(d);
      t.dark[i] = !real[i] && rng.bernoulli(gamma);
      t.fired[i] = real[i] || t.dark[i];
    }
  } else {
    t.creation = Creation::kPair;
    std::size_t k = 0;
    while (k + 1 < kArrivalCount && u >= channel_cdf_[k]) ++k;
    // Rounding can leave u past the last cdf entry; never land on a zero-weight channel.
    while (k > 0 && channel_cdf_[k] == channel_cdf_[k - 1]) --k;
    const auto arrival = static_cast<Arrival>(k);
    t.arrival = arrival;
    const auto [first, second] = detector::arrival_detectors(arrival);

    std::array<bool, 4> vetoed{};
    if (first == second) {
      // Single-credit rule: the detector counts only if the first photon is
      // detected and the second is not; a detected second photon vetoes it.
      const bool hit1 = rng.bernoulli(d);
      const bool hit2 = rng.bernoulli(d);
      vetoed[first] = hit2;
      real[first] = hit1 && !hit2;
    } else {
      real[first] = rng.bernoulli(d);
      real[second] = rng.bernoulli(d);
    }
    for (std::size_t i = 0; i < 4; ++i) {
      t.dark[i] = !real[i] && !vetoed[i] && rng.bernoulli(gamma);
      t.fired[i] = real[i] || t.dark[i];
    }
  }

  if (!t.fourfold()) return t;

  if (t.creation == Creation::kTwoPair && real[1] && real[2] && real[3]) {
    t.classified_ghz = true;
    quantum::OutcomeTriple o = sampler_(rng);
    if (params_.e_ghz != 1.0 && rng.bernoulli((1.0 - params_.e_ghz) / 2.0)) o.s3 = -o.s3;
    t.spins = o;
  } else {
    t.spins = quantum::OutcomeTriple{rng.sign(), rng.sign(), rng.sign()};
  }
  return t;
}

TrialOutcome simulate_trial(const RunConfig& cfg, Rng& rng) { return TrialSimulator(cfg)(rng); }

RunStats run(const RunConfig& cfg, std::ostream* events) {
  cfg.validate();
  const TrialSimulator sim(cfg);
  const std::uint64_t n_chunks = (cfg.n_trials + cfg.chunk_size - 1) / cfg.chunk_size;
  std::vector<Tally> tallies(n_chunks);

  const unsigned workers = events != nullptr ? 1U : std::max(1U, cfg.workers);
  if (workers == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) tallies[c] = run_chunk(sim, cfg, c, events);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t c = next++; c < n_chunks; c = next++) tallies[c] = run_chunk(sim, cfg, c, nullptr);
      });
    }
    for (auto& th : pool) th.join();
  }

  Tally total;
  for (const Tally& t : tallies) total.merge(t);

  RunStats s;
  s.n_trials = total.n_trials;
  s.n_fourfold = total.n_fourfold;
  s.n_ghz_fourfold = total.n_ghz_fourfold;
  s.product_sum = total.product_sum;
  s.ghz_product_sum = total.ghz_product_sum;
  s.creation_norm = sim.creation_norm();
  s.p4_hat = s.raw_fourfold_rate() * s.creation_norm;
  if (s.n_fourfold > 0) {
    const double e = static_cast<double>(s.product_sum) / static_cast<double>(s.n_fourfold);
    s.e_hat = e;
    s.std_err = detector::sigma_of_correlation(e) / std::sqrt(static_cast<double>(s.n_fourfold));
  }
  return s;
}

ComparisonReport compare_analytic(const RunStats& stats, const detector::DetectorParams& params,
                                  const quantum::SettingTriple& setting, const detector::ArrivalWeights& w) {
  ComparisonReport r;
  const detector::FourfoldBreakdown b = detector::fourfold_breakdown(params, w);
  r.p4_analytic = b.total();
  if (stats.no_coincidences() || b.total() == 0.0) return r;
  r.comparable = true;

  const double q = quantum::operator_expectation(quantum::ghz_state(), setting);
  r.e_analytic = q * params.e_ghz * b.ghz / b.total();

  auto z_score = [](double diff, double se) {
    if (se > 0.0) return diff / se;
    return std::abs(diff) <= 1e-12 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  };
  r.z_correlation = z_score(*stats.e_hat - r.e_analytic, *stats.std_err);

  const double z_norm = stats.creation_norm;
  const double rate = r.p4_analytic / z_norm;
  const double se = z_norm * std::sqrt(rate * (1.0 - rate) / static_cast<double>(stats.n_trials));
  r.z_fourfold = z_score(stats.p4_hat - r.p4_analytic, se);

  r.flagged = std::abs(r.z_correlation) > kFlagThreshold || std::abs(r.z_fourfold) > kFlagThreshold;
  return r;
}

}  // namespace ghz::mc
