#pragma once

// Closed-form fourfold-coincidence model for a trigger T and three signal
// detectors D1..D3 with efficiency d and per-window dark-count probability
// gamma, fed either by one photon pair or by two pairs (the GHZ source).

#include <array>
#include <cstddef>
#include <string_view>

namespace ghz::detector {

struct DetectorParams {
  double d = 0.5;
  double gamma = 0.0;
  double p_pair = 0.0;
  double p_twopair = 1.0;
  double e_ghz = 1.0;

  /// Throws std::domain_error on any invariant violation, including
  /// |p_pair + p_twopair - 1| > 1e-12.
  void validate() const;

  /// p_pair = ratio/(1+ratio), p_twopair = 1/(1+ratio).
  static DetectorParams from_ratio(double d, double gamma, double pair_to_twopair, double e_ghz = 1.0);
  double pair_ratio() const { return p_pair / p_twopair; }
};

struct RateSpec {
  double dark_rate = 0.0;  // counts per second
  double window = 0.0;     // seconds
};

/// Pair-arrival combinations. The first six put the two photons at distinct
/// detectors, the last four at the same one.
enum class Arrival : std::size_t {
  kTD1, kTD2, kTD3, kD1D2, kD1D3, kD2D3, kD1D1, kD2D2, kD3D3, kTT,
};

inline constexpr std::size_t kArrivalCount = 10;
using ArrivalWeights = std::array<double, kArrivalCount>;

/// One unit weight per combination, reproducing the 6/4 aggregate.
constexpr ArrivalWeights unit_arrival_weights() {
  ArrivalWeights w{};
  for (double& v : w) v = 1.0;
  return w;
}

std::string_view arrival_tag(Arrival a);
bool is_same_detector(Arrival a);
/// Detectors (0 = T, 1..3 = D1..D3) hit by the two photons.
std::array<std::size_t, 2> arrival_detectors(Arrival a);

enum class PairMode { kPaper, kDerived };
enum class CorrelationMode { kApprox, kExact };

/// First-order Poisson dark probability dark_rate * window.
double gamma_from_rates(const RateSpec& r);

/// Fourfold probability when the pair reaches two distinct detectors.
double p4_pair_distinct(double d, double gamma);
/// Fourfold probability when both photons reach the same detector.
double p4_pair_same(double d, double gamma);
/// Aggregate over the ten arrival combinations.
double p4_pair_total(double d, double gamma, PairMode mode = PairMode::kDerived);
/// Sum of per-combination probabilities weighted by w.
double p4_pair_weighted(double d, double gamma, const ArrivalWeights& w);
/// True GHZ fourfold from a two-pair event (trigger may be dark).
double p4_ghz(double d, double gamma);
/// Non-GHZ fourfold from a two-pair event.
double p4_nonghz_fourphoton(double d, double gamma);

/// Absolute probabilities P(GHZ) and P(nonGHZ) of the exact model.
struct FourfoldBreakdown {
  double ghz = 0.0;
  double nonghz_pair = 0.0;
  double nonghz_twopair = 0.0;

  double nonghz() const { return nonghz_pair + nonghz_twopair; }
  double total() const { return ghz + nonghz(); }
};

FourfoldBreakdown fourfold_breakdown(const DetectorParams& params,
                                     const ArrivalWeights& w = unit_arrival_weights());

/// Conditional correlation E(S1 S2 S3 | fourfold). Approx mode is the
/// first-order closed form e_ghz / (1 + 6 ratio gamma^2 / d^2); exact mode is
/// e_ghz * P(GHZ)/(P(GHZ) + P(nonGHZ)). Throws std::domain_error for d = 0
/// or p_twopair = 0.
double corrected_correlation(const DetectorParams& params, CorrelationMode mode,
                             const ArrivalWeights& w = unit_arrival_weights());

/// e_ghz / (1 + r) for an observed nonGHZ:GHZ count ratio r.
double correlation_from_ratio(double ratio, double e_ghz = 1.0);

/// P(S1 S2 S3 = +1) = (1 + e)/2.
double product_prob_plus(double e);

/// sqrt(1 - e^2), the standard deviation of a +-1 variable with mean e.
double sigma_of_correlation(double e);

inline constexpr double kLhvBoundary = 0.5;
inline constexpr double kSeparationCap = 1e6;

struct Separation {
  double value = 0.0;
  bool saturated = false;  // sigma vanished or value exceeded kSeparationCap
};

/// (e - boundary)/sigma. Throws std::domain_error if e <= boundary or e > 1.
Separation sigma_separation(double e, double boundary = kLhvBoundary);

inline constexpr double kGammaBracketMax = 1e-3;
inline constexpr double kGammaTolerance = 1e-12;

/// Bisection for the gamma at which the approx-mode correlation equals
/// e_target, with gamma in [0, 1e-3]. Throws std::domain_error when the
/// target is outside (0, e_ghz] or not bracketed.
double find_gamma_for_correlation(double d, double ratio, double e_target, double e_ghz = 1.0);

}  // namespace ghz::detector
