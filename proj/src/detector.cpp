#include "ghz/detector.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ghz::detector {

namespace {

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

void require_probability(double v, const char* name) {
  if (!is_probability(v)) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(v) + " is not a probability");
  }
}

void require_correlation(double e) {
  if (!(e >= -1.0 && e <= 1.0)) {
    throw std::domain_error("correlation " + std::to_string(e) + " is outside [-1, 1]");
  }
}

// Probability that a detector reached by one real photon fires.
double fire_with_photon(double d, double gamma) { return d + gamma * (1.0 - d); }

}  // namespace

void DetectorParams::validate() const {
  require_probability(d, "efficiency d");
  require_probability(gamma, "dark probability gamma");
  require_probability(p_pair, "p_pair");
  require_probability(p_twopair, "p_twopair");
  require_correlation(e_ghz);
  if (std::abs(p_pair + p_twopair - 1.0) > 1e-12) {
    throw std::domain_error("p_pair + p_twopair must equal 1");
  }
}

DetectorParams DetectorParams::from_ratio(double d, double gamma, double pair_to_twopair, double e_ghz) {
  if (!(pair_to_twopair >= 0.0) || std::isinf(pair_to_twopair)) {
    throw std::domain_error("pair-to-two-pair ratio must be finite and >= 0");
  }
  DetectorParams p;
  p.d = d;
  p.gamma = gamma;
  p.p_twopair = 1.0 / (1.0 + pair_to_twopair);
  p.p_pair = pair_to_twopair / (1.0 + pair_to_twopair);
  p.e_ghz = e_ghz;
  p.validate();
  return p;
}

std::string_view arrival_tag(Arrival a) {
  switch (a) {
    case Arrival::kTD1: return "TD1";
    case Arrival::kTD2: return "TD2";
    case Arrival::kTD3: return "TD3";
    case Arrival::kD1D2: return "D1D2";
    case Arrival::kD1D3: return "D1D3";
    case Arrival::kD2D3: return "D2D3";
    case Arrival::kD1D1: return "D1D1";
    case Arrival::kD2D2: return "D2D2";
    case Arrival::kD3D3: return "D3D3";
    case Arrival::kTT: return "TT";
  }
  return "?";
}

bool is_same_detector(Arrival a) { return static_cast<std::size_t>(a) >= 6; }

std::array<std::size_t, 2> arrival_detectors(Arrival a) {
  switch (a) {
    case Arrival::kTD1: return {0, 1};
    case Arrival::kTD2: return {0, 2};
    case Arrival::kTD3: return {0, 3};
    case Arrival::kD1D2: return {1, 2};
    case Arrival::kD1D3: return {1, 3};
    case Arrival::kD2D3: return {2, 3};
    case Arrival::kD1D1: return {1, 1};
    case Arrival::kD2D2: return {2, 2};
    case Arrival::kD3D3: return {3, 3};
    case Arrival::kTT: return {0, 0};
  }
  return {0, 0};
}

double gamma_from_rates(const RateSpec& r) {
  if (!(r.dark_rate >= 0.0) || !(r.window >= 0.0)) {
    throw std::domain_error("dark rate and window must be >= 0");
  }
  const double g = r.dark_rate * r.window;
  if (g > 1.0) {
    throw std::domain_error("dark_rate * window = " + std::to_string(g) + " exceeds 1");
  }
  return g;
}

double p4_pair_distinct(double d, double gamma) {
  const double f = fire_with_photon(d, gamma);
  return gamma * gamma * f * f;
}

double p4_pair_same(double d, double gamma) {
  const double g3 = gamma * gamma * gamma;
  return d * (1.0 - d) * g3 + (1.0 - d) * (1.0 - d) * g3 * gamma;
}

double p4_pair_total(double d, double gamma, PairMode mode) {
  const double distinct = 6.0 * p4_pair_distinct(d, gamma);
  if (mode == PairMode::kPaper) {
    return distinct + 4.0 * gamma * gamma * gamma * (1.0 - d) * (d + gamma);
  }
  return distinct + 4.0 * p4_pair_same(d, gamma);
}

double p4_pair_weighted(double d, double gamma, const ArrivalWeights& w) {
  const double distinct = p4_pair_distinct(d, gamma);
  const double same = p4_pair_same(d, gamma);
  double total = 0.0;
  for (std::size_t k = 0; k < kArrivalCount; ++k) {
    total += w[k] * (is_same_detector(static_cast<Arrival>(k)) ? same : distinct);
  }
  return total;
}

double p4_ghz(double d, double gamma) {
  const double d3 = d * d * d;
  return d3 * d + gamma * (1.0 - d) * d3;
}

double p4_nonghz_fourphoton(double d, double gamma) {
  const double m = 1.0 - d;
  return 3.0 * gamma * d * d * d * m + 6.0 * gamma * gamma * d * d * m * m +
         4.0 * gamma * gamma * gamma * d * m * m * m + gamma * gamma * gamma * gamma * m * m * m * m;
}

FourfoldBreakdown fourfold_breakdown(const DetectorParams& params, const ArrivalWeights& w) {
  params.validate();
  FourfoldBreakdown b;
  b.ghz = params.p_twopair * p4_ghz(params.d, params.gamma);
  b.nonghz_pair = params.p_pair * p4_pair_weighted(params.d, params.gamma, w);
  b.nonghz_twopair = params.p_twopair * p4_nonghz_fourphoton(params.d, params.gamma);
  return b;
}

double corrected_correlation(const DetectorParams& params, CorrelationMode mode, const ArrivalWeights& w) {
  params.validate();
  if (params.d == 0.0) throw std::domain_error("efficiency d = 0 leaves no GHZ signal");
  if (params.p_twopair == 0.0) throw std::domain_error("p_twopair = 0 leaves no GHZ signal");

  if (mode == CorrelationMode::kApprox) {
    const double g_over_d = params.gamma / params.d;
    return params.e_ghz / (1.0 + 6.0 * params.pair_ratio() * g_over_d * g_over_d);
  }
  const FourfoldBreakdown b = fourfold_breakdown(params, w);
  return params.e_ghz * b.ghz / b.total();
}

double correlation_from_ratio(double ratio, double e_ghz) {
  if (!(ratio >= 0.0)) throw std::domain_error("count ratio must be >= 0");
  require_correlation(e_ghz);
  return e_ghz / (1.0 + ratio);
}

double product_prob_plus(double e) {
  require_correlation(e);
  return (1.0 + e) / 2.0;
}

double sigma_of_correlation(double e) {
  require_correlation(e);
  const double variance = (1.0 - e) * (1.0 + e);
  const double p1 = product_prob_plus(e);
  if (std::abs(variance - 4.0 * p1 * (1.0 - p1)) > 1e-12) {
    throw std::logic_error("variance of a +-1 variable disagrees with 4 P(1)(1 - P(1))");
  }
  return std::sqrt(variance);
}

Separation sigma_separation(double e, double boundary) {
  require_correlation(e);
  if (!(e > boundary)) {
    throw std::domain_error("correlation " + std::to_string(e) + " does not exceed the boundary " +
                            std::to_string(boundary));
  }
  const double sigma = sigma_of_correlation(e);
  const double value = sigma > 0.0 ? (e - boundary) / sigma : std::numeric_limits<double>::infinity();
  if (value > kSeparationCap) return {kSeparationCap, true};
  return {value, false};
}

double find_gamma_for_correlation(double d, double ratio, double e_target, double e_ghz) {
  if (!(e_ghz > 0.0 && e_ghz <= 1.0)) throw std::domain_error("e_ghz must lie in (0, 1]");
  if (!(e_target > 0.0 && e_target <= e_ghz)) {
    throw std::domain_error("target correlation must lie in (0, e_ghz]");
  }
  auto correlation_at = [&](double gamma) {
    return corrected_correlation(DetectorParams::from_ratio(d, gamma, ratio, e_ghz), CorrelationMode::kApprox);
  };
  if (e_target == e_ghz) return 0.0;

  double lo = 0.0;
  double hi = kGammaBracketMax;
  if (correlation_at(hi) > e_target) {
    throw std::domain_error("target correlation is not reached for gamma <= 1e-3");
  }
  while (hi - lo > kGammaTolerance * 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (correlation_at(mid) > e_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ghz::detector
