#include "ghz/quantum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ghz::quantum {

namespace {

Matrix8 kron3(const Matrix2& a, const Matrix2& b, const Matrix2& c) {
  Matrix8 out;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
    }
  }
  return out;
}

Matrix2 projector(std::size_t particle, Axis axis, int outcome) {
  return (Matrix2::Identity() + static_cast<double>(outcome) * pauli(particle, axis)) / 2.0;
}

}  // namespace

StateVector8::StateVector8(const Vector8& amplitudes) : amp_(amplitudes) {
  const double n = amp_.squaredNorm();
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw std::domain_error("state vector is not normalized (squared norm " + std::to_string(n) + ")");
  }
}

SettingTriple SettingTriple::parse(std::string_view token) {
  if (token.size() != 3) {
    throw std::invalid_argument("setting must be three letters from {X, Y}, got '" + std::string(token) + "'");
  }
  SettingTriple s;
  for (std::size_t i = 0; i < 3; ++i) {
    const char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(token[i])));
    if (ch == 'X') {
      s.axes[i] = Axis::kX;
    } else if (ch == 'Y') {
      s.axes[i] = Axis::kY;
    } else {
      throw std::invalid_argument("setting must be three letters from {X, Y}, got '" + std::string(token) + "'");
    }
  }
  return s;
}

std::string SettingTriple::str() const {
  std::string out;
  for (Axis a : axes) out.push_back(a == Axis::kX ? 'X' : 'Y');
  return out;
}

std::size_t SettingTriple::index() const {
  std::size_t i = 0;
  for (Axis a : axes) i = 2 * i + (a == Axis::kY ? 1 : 0);
  return i;
}

std::size_t OutcomeTriple::index() const {
  return (s1 < 0 ? 4U : 0U) + (s2 < 0 ? 2U : 0U) + (s3 < 0 ? 1U : 0U);
}

OutcomeTriple OutcomeTriple::from_index(std::size_t i) {
  return {(i & 4U) != 0 ? -1 : 1, (i & 2U) != 0 ? -1 : 1, (i & 1U) != 0 ? -1 : 1};
}

Matrix2 pauli(std::size_t particle, Axis axis) {
  if (particle > 2) throw std::out_of_range("particle index must be 0, 1 or 2");
  const Complex i(0.0, 1.0);
  Matrix2 m;
  if (axis == Axis::kX) {
    const double sign = particle == 2 ? -1.0 : 1.0;
    m << 0.0, sign, sign, 0.0;
  } else {
    m << 0.0, -i, i, 0.0;
  }
  return m;
}

Matrix8 observable(const SettingTriple& s) {
  return kron3(pauli(0, s.axes[0]), pauli(1, s.axes[1]), pauli(2, s.axes[2]));
}

StateVector8 ghz_state() {
  Vector8 v = Vector8::Zero();
  const double h = 1.0 / std::sqrt(2.0);
  v(OutcomeTriple{1, 1, -1}.index()) = h;
  v(OutcomeTriple{-1, -1, 1}.index()) = h;
  return StateVector8(v);
}

double operator_expectation(const StateVector8& state, const SettingTriple& s) {
  const Vector8& psi = state.amplitudes();
  const Complex value = psi.dot(observable(s) * psi);  // conjugates psi
  if (std::abs(value.imag()) > 1e-12) {
    throw std::logic_error("expectation of a Hermitian observable has an imaginary part");
  }
  return value.real();
}

std::array<double, 8> outcome_probabilities(const StateVector8& state, const SettingTriple& s) {
  const Vector8& psi = state.amplitudes();
  std::array<double, 8> probs{};
  for (std::size_t k = 0; k < 8; ++k) {
    const OutcomeTriple o = OutcomeTriple::from_index(k);
    const Matrix8 proj = kron3(projector(0, s.axes[0], o.s1), projector(1, s.axes[1], o.s2),
                               projector(2, s.axes[2], o.s3));
    probs[k] = std::max(0.0, psi.dot(proj * psi).real());
  }
  return probs;
}

lhv::CorrelationSet ghz_witness() {
  const StateVector8 psi = ghz_state();
  return {operator_expectation(psi, kSettingA), operator_expectation(psi, kSettingB),
          operator_expectation(psi, kSettingC), operator_expectation(psi, kSettingD)};
}

OutcomeSampler::OutcomeSampler(const StateVector8& state, const SettingTriple& s)
    : probs_(outcome_probabilities(state, s)) {
  double acc = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    acc += probs_[k];
    cdf_[k] = acc;
  }
  for (double& c : cdf_) c /= acc;
}

OutcomeTriple OutcomeSampler::operator()(Rng& rng) const {
  const double u = rng.uniform();
  std::size_t k = 0;
  while (k < 7 && (u >= cdf_[k] || probs_[k] == 0.0)) ++k;
  while (k > 0 && probs_[k] == 0.0) --k;
  return OutcomeTriple::from_index(k);
}

OutcomeTriple sample_outcomes(const StateVector8& state, const SettingTriple& s, Rng& rng) {
  return OutcomeSampler(state, s)(rng);
}

}  // namespace ghz::quantum
