#include "ghz/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ghz::lhv {

namespace {

constexpr std::size_t kMoments = 5;

void require_correlation(double v, const char* name) {
  if (!(v >= -1.0 && v <= 1.0)) {
    throw std::domain_error(std::string("correlation ") + name + " = " + std::to_string(v) +
                            " is outside [-1, 1]");
  }
}

// Row r of the moment matrix evaluated at atom i: 1, A, B, C, ABC.
double moment_entry(std::size_t r, std::size_t i) {
  switch (r) {
    case 0: return 1.0;
    case 1: return atom_a(i);
    case 2: return atom_b(i);
    case 3: return atom_c(i);
    default: return atom_a(i) * atom_b(i) * atom_c(i);
  }
}

// Gaussian elimination with partial pivoting; false if singular.
bool solve5(std::array<std::array<double, kMoments + 1>, kMoments>& m,
            std::array<double, kMoments>& x) {
  for (std::size_t col = 0; col < kMoments; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < kMoments; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) < 1e-9) return false;
    std::swap(m[piv], m[col]);
    for (std::size_t r = col + 1; r < kMoments; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k <= kMoments; ++k) m[r][k] -= f * m[col][k];
    }
  }
  for (std::size_t i = kMoments; i-- > 0;) {
    double s = m[i][kMoments];
    for (std::size_t k = i + 1; k < kMoments; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return true;
}

bool reproduces(const JointDistribution8& j, const CorrelationSet& c) {
  const CorrelationSet r = expectations_from_joint(j);
  return std::abs(r.e_a - c.e_a) <= kWitnessTolerance && std::abs(r.e_b - c.e_b) <= kWitnessTolerance &&
         std::abs(r.e_c - c.e_c) <= kWitnessTolerance && std::abs(r.e_abc - c.e_abc) <= kWitnessTolerance;
}

}  // namespace

CorrelationSet::CorrelationSet(double a, double b, double c, double abc)
    : e_a(a), e_b(b), e_c(c), e_abc(abc) {
  require_correlation(a, "E(A)");
  require_correlation(b, "E(B)");
  require_correlation(c, "E(C)");
  require_correlation(abc, "E(ABC)");
}

JointDistribution8::JointDistribution8(const std::array<double, kAtomCount>& p) : p_(p) {
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw std::domain_error("joint distribution has a negative or NaN entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    throw std::domain_error("joint distribution sums to " + std::to_string(sum) + ", not 1");
  }
}

JointDistribution8 JointDistribution8::point_mass(Atom atom) {
  std::array<double, kAtomCount> p{};
  p[static_cast<std::size_t>(atom)] = 1.0;
  return JointDistribution8(p);
}

JointDistribution8 JointDistribution8::uniform() {
  std::array<double, kAtomCount> p;
  p.fill(1.0 / kAtomCount);
  return JointDistribution8(p);
}

std::array<double, 8> FeasibilityReport::flat_slacks() const {
  std::array<double, 8> out{};
  for (std::size_t k = 0; k < 4; ++k) {
    out[2 * k] = slacks[k].lower;
    out[2 * k + 1] = slacks[k].upper;
  }
  return out;
}

std::optional<std::size_t> FeasibilityReport::first_violation() const {
  for (std::size_t k = 0; k < 4; ++k) {
    if (slacks[k].lower < 0.0 || slacks[k].upper < 0.0) return k;
  }
  return std::nullopt;
}

double mermin_f(const CorrelationSet& c) { return c.e_a + c.e_b + c.e_c - c.e_abc; }

double inequality_value(const CorrelationSet& c, std::size_t k) {
  switch (k) {
    case 0: return c.e_a + c.e_b + c.e_c - c.e_abc;
    case 1: return -c.e_a + c.e_b + c.e_c + c.e_abc;
    case 2: return c.e_a - c.e_b + c.e_c + c.e_abc;
    case 3: return c.e_a + c.e_b - c.e_c + c.e_abc;
    default: throw std::out_of_range("inequality index must be in [0, 4)");
  }
}

FeasibilityReport check_inequalities(const CorrelationSet& c) {
  FeasibilityReport report;
  report.f_value = mermin_f(c);
  report.feasible = true;
  for (std::size_t k = 0; k < 4; ++k) {
    const double v = inequality_value(c, k);
    report.slacks[k] = {v + 2.0, 2.0 - v};
    if (report.slacks[k].lower < 0.0 || report.slacks[k].upper < 0.0) report.feasible = false;
  }
  return report;
}

std::optional<JointDistribution8> feasible_oracle(const CorrelationSet& c) {
  const std::array<double, kMoments> rhs{1.0, c.e_a, c.e_b, c.e_c, c.e_abc};

  // Lexicographic 5-subsets of the 8 atoms via a selection mask.
  std::array<bool, kAtomCount> select{};
  std::fill(select.begin(), select.begin() + kMoments, true);
  do {
    std::array<std::size_t, kMoments> basis{};
    for (std::size_t i = 0, k = 0; i < kAtomCount; ++i) {
      if (select[i]) basis[k++] = i;
    }

    std::array<std::array<double, kMoments + 1>, kMoments> m{};
    for (std::size_t r = 0; r < kMoments; ++r) {
      for (std::size_t k = 0; k < kMoments; ++k) m[r][k] = moment_entry(r, basis[k]);
      m[r][kMoments] = rhs[r];
    }
    std::array<double, kMoments> x{};
    if (!solve5(m, x)) continue;
    if (std::any_of(x.begin(), x.end(), [](double v) { return v < -kSimplexTolerance; })) continue;

    std::array<double, kAtomCount> p{};
    for (std::size_t k = 0; k < kMoments; ++k) p[basis[k]] = std::max(0.0, x[k]);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& v : p) v /= sum;

    JointDistribution8 witness(p);
    if (reproduces(witness, c)) return witness;
  } while (std::prev_permutation(select.begin(), select.end()));

  return std::nullopt;
}

FeasibilityReport analyze(const CorrelationSet& c) {
  FeasibilityReport report = check_inequalities(c);
  report.witness = feasible_oracle(c);
  return report;
}

JointDistribution8 construct_symmetric_joint(const SymmetricParams& s) {
  if (!(s.p >= 0.0 && s.p <= 1.0) || !(s.q >= 0.0 && s.q <= 1.0)) {
    throw std::domain_error("symmetric parameters p and q must lie in [0, 1]");
  }
  double t = 3.0 * s.p - s.q;
  if (t < -kSimplexTolerance) {
    throw std::domain_error("lower bound 0 <= 3p - q violated (3p - q = " + std::to_string(t) + ")");
  }
  if (t > 2.0 + kSimplexTolerance) {
    throw std::domain_error("upper bound 3p - q <= 2 violated (3p - q = " + std::to_string(t) + ")");
  }
  t = std::clamp(t, 0.0, 2.0);

  // lambda on {x=(1-q)/3, y=0, z=q, w=0}; 1-lambda on {x=0, y=q/3, z=0, w=1-q}.
  const double lambda = t / 2.0;
  const double x = lambda * (1.0 - s.q) / 3.0;
  const double y = (1.0 - lambda) * s.q / 3.0;
  const double z = lambda * s.q;
  const double w = (1.0 - lambda) * (1.0 - s.q);

  std::array<double, kAtomCount> p{};
  p[static_cast<std::size_t>(Atom::kABC)] = z;
  p[static_cast<std::size_t>(Atom::kAnBC)] = x;
  p[static_cast<std::size_t>(Atom::kABnC)] = x;
  p[static_cast<std::size_t>(Atom::kNABC)] = x;
  p[static_cast<std::size_t>(Atom::kAnBnC)] = y;
  p[static_cast<std::size_t>(Atom::kNAnBC)] = y;
  p[static_cast<std::size_t>(Atom::kNABnC)] = y;
  p[static_cast<std::size_t>(Atom::kNAnBnC)] = w;
  return JointDistribution8(p);
}

CorrelationSet expectations_from_joint(const JointDistribution8& j) {
  double ea = 0.0, eb = 0.0, ec = 0.0, eabc = 0.0;
  for (std::size_t i = 0; i < kAtomCount; ++i) {
    ea += atom_a(i) * j[i];
    eb += atom_b(i) * j[i];
    ec += atom_c(i) * j[i];
    eabc += atom_a(i) * atom_b(i) * atom_c(i) * j[i];
  }
  auto clamp = [](double v) { return std::clamp(v, -1.0, 1.0); };
  return {clamp(ea), clamp(eb), clamp(ec), clamp(eabc)};
}

CorrelationSet epsilon_tetrad(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("epsilon must lie in [0, 1]");
  }
  const double e = 1.0 - epsilon;
  return {e, e, e, -1.0 + epsilon};
}

bool epsilon_feasible(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("epsilon must lie in [0, 1]");
  }
  // F = 3(1 - eps) - (-1 + eps) = 4 - 4 eps <= 2.
  return epsilon >= 0.5;
}

}  // namespace ghz::lhv
