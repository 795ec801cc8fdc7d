#pragma once

// Event-level simulation of the four-detector coincidence experiment.
//
// Each trial is one creation event: a single pair routed to one of ten
// arrival channels, or two pairs sending one GHZ photon to each of T, D1,
// D2, D3. Real photons are detected with probability d and any detector not
// fired by a real photon fires dark with probability gamma. Only trials in
// which all four detectors fire contribute to the conditional correlation.
//
// Arrival weights are absolute channel intensities: creation events are
// drawn from the measure {p_pair * w_k, p_twopair}, normalized by
// Z = p_pair * sum(w) + p_twopair. With unit weights this matches the
// analytic channel sum 6 * distinct + 4 * same.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "ghz/detector.hpp"
#include "ghz/quantum.hpp"
#include "ghz/random.hpp"

namespace ghz::mc {

inline constexpr std::uint64_t kDefaultChunkSize = 1ULL << 16;

struct RunConfig {
  detector::DetectorParams params;
  quantum::SettingTriple setting = quantum::kSettingA;
  std::uint64_t n_trials = 1;
  std::uint64_t master_seed = 0;
  std::optional<detector::ArrivalWeights> arrival_weights;
  // Part of the reproducibility contract; worker count is not.
  std::uint64_t chunk_size = kDefaultChunkSize;
  unsigned workers = 1;

  /// Throws std::domain_error on invalid parameters.
  void validate() const;
  detector::ArrivalWeights weights() const {
    return arrival_weights.value_or(detector::unit_arrival_weights());
  }
};

enum class Creation { kPair, kTwoPair };

// Detector slots: 0 = T, 1..3 = D1..D3.
struct TrialOutcome {
  Creation creation = Creation::kPair;
  std::optional<detector::Arrival> arrival;  // empty for two-pair events
  std::array<bool, 4> fired{};
  std::array<bool, 4> dark{};
  bool classified_ghz = false;
  std::optional<quantum::OutcomeTriple> spins;  // present iff all four fired

  bool fourfold() const { return fired[0] && fired[1] && fired[2] && fired[3]; }
  std::optional<int> product() const;
  /// One log line: creation,arrival,fired,dark,class,spins
  std::string log_line() const;
};

/// Precomputed per-config state for the trial loop.
class TrialSimulator {
 public:
  explicit TrialSimulator(const RunConfig& cfg);

  TrialOutcome operator()(Rng& rng) const;
  double creation_norm() const { return norm_; }

 private:
  detector::DetectorParams params_;
  quantum::OutcomeSampler sampler_;
  std::array<double, detector::kArrivalCount> channel_cdf_{};
  double norm_ = 1.0;
};

TrialOutcome simulate_trial(const RunConfig& cfg, Rng& rng);

struct RunStats {
  std::uint64_t n_trials = 0;
  std::uint64_t n_fourfold = 0;
  std::uint64_t n_ghz_fourfold = 0;
  std::int64_t product_sum = 0;
  std::int64_t ghz_product_sum = 0;
  double creation_norm = 1.0;

  // Empty when there were no coincidences.
  std::optional<double> e_hat;
  std::optional<double> std_err;
  double p4_hat = 0.0;  // fourfold rate per unit creation weight

  bool no_coincidences() const { return n_fourfold == 0; }
  double raw_fourfold_rate() const {
    return n_trials == 0 ? 0.0 : static_cast<double>(n_fourfold) / static_cast<double>(n_trials);
  }
};

/// Runs n_trials in fixed-size chunks seeded from (master_seed, chunk index)
/// and merges exact integer tallies. If `events` is non-null every trial is
/// written as one line, in trial order.
RunStats run(const RunConfig& cfg, std::ostream* events = nullptr);

struct ComparisonReport {
  bool comparable = false;
  double e_analytic = 0.0;
  double z_correlation = 0.0;
  double p4_analytic = 0.0;
  double z_fourfold = 0.0;
  bool flagged = false;  // |z| > 4 for either statistic
};

inline constexpr double kFlagThreshold = 4.0;

/// z-scores of the run against the exact-mode analytic model. The GHZ-
/// conditional correlation used is <GHZ|setting|GHZ> * e_ghz.
ComparisonReport compare_analytic(const RunStats& stats, const detector::DetectorParams& params,
                                  const quantum::SettingTriple& setting,
                                  const detector::ArrivalWeights& w = detector::unit_arrival_weights());

}  // namespace ghz::mc
