#pragma once

// Three-qubit GHZ predictions from explicit Pauli matrices.
//
// Basis order is |s1 s2 s3> with + before - per particle, so index
// 4*b1 + 2*b2 + b3 with b = 0 for + and b = 1 for -.

#include <array>
#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "ghz/lhv.hpp"
#include "ghz/random.hpp"

namespace ghz::quantum {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;
using Vector8 = Eigen::Matrix<Complex, 8, 1>;

inline constexpr double kNormTolerance = 1e-12;

class StateVector8 {
 public:
  /// Throws std::domain_error unless the squared norm is 1 within 1e-12.
  explicit StateVector8(const Vector8& amplitudes);

  const Vector8& amplitudes() const { return amp_; }
  Complex operator[](std::size_t i) const { return amp_(static_cast<Eigen::Index>(i)); }
  double squared_norm() const { return amp_.squaredNorm(); }

 private:
  Vector8 amp_;
};

enum class Axis { kX, kY };

struct SettingTriple {
  std::array<Axis, 3> axes{};

  /// Parses a three-letter token such as "XYY" (case-insensitive).
  /// Throws std::invalid_argument on any other input.
  static SettingTriple parse(std::string_view token);
  std::string str() const;
  /// Dense index 0..7 with X = 0, Y = 1, particle 1 most significant.
  std::size_t index() const;

  friend bool operator==(const SettingTriple&, const SettingTriple&) = default;
};

struct OutcomeTriple {
  int s1 = 1;
  int s2 = 1;
  int s3 = 1;

  int product() const { return s1 * s2 * s3; }
  /// Index in the 8-outcome table, + before -.
  std::size_t index() const;
  static OutcomeTriple from_index(std::size_t i);
};

// Canonical settings of the four GHZ observables.
inline const SettingTriple kSettingA{{Axis::kX, Axis::kY, Axis::kY}};
inline const SettingTriple kSettingB{{Axis::kY, Axis::kX, Axis::kY}};
inline const SettingTriple kSettingC{{Axis::kY, Axis::kY, Axis::kX}};
inline const SettingTriple kSettingD{{Axis::kX, Axis::kX, Axis::kX}};

/// Observable matrix of `axis` on particle 0..2 in the +/- basis. Particle 3's
/// analyzer frame is rotated by pi about y relative to particles 1 and 2,
/// which flips the sign of its x observable.
Matrix2 pauli(std::size_t particle, Axis axis);

/// sigma_{1a} (x) sigma_{2b} (x) sigma_{3c} as a dense 8x8 matrix.
Matrix8 observable(const SettingTriple& s);

/// (|++-> + |--+>)/sqrt(2).
StateVector8 ghz_state();

/// <psi|O|psi>. Throws std::logic_error if the imaginary part exceeds 1e-12.
double operator_expectation(const StateVector8& state, const SettingTriple& s);

/// Born probabilities of the 8 outcome triples, indexed by OutcomeTriple::index.
std::array<double, 8> outcome_probabilities(const StateVector8& state, const SettingTriple& s);

/// (E(A), E(B), E(C), E(D)) evaluated on the GHZ state.
lhv::CorrelationSet ghz_witness();

/// Inverse-CDF sampler over the 8 outcome probabilities of one setting.
class OutcomeSampler {
 public:
  OutcomeSampler(const StateVector8& state, const SettingTriple& s);

  OutcomeTriple operator()(Rng& rng) const;
  const std::array<double, 8>& probabilities() const { return probs_; }

 private:
  std::array<double, 8> probs_{};
  std::array<double, 8> cdf_{};
};

/// One Born-rule draw; builds a fresh sampler. Prefer OutcomeSampler in loops.
OutcomeTriple sample_outcomes(const StateVector8& state, const SettingTriple& s, Rng& rng);

}  // namespace ghz::quantum
