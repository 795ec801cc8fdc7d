#pragma once

// Local-hidden-variable compatibility of three-particle GHZ correlations.
//
// A tetrad of expectations (E(A), E(B), E(C), E(ABC)) of three +-1 random
// variables admits a joint distribution over the eight atoms abc..~a~b~c
// iff the four two-sided Mermin-type inequalities hold. This header exposes
// both routes: the closed-form inequality check and an exact enumeration
// over basic solutions of the 5x8 moment system.

#include <array>
#include <cstddef>
#include <optional>

namespace ghz::lhv {

inline constexpr double kSimplexTolerance = 1e-12;
inline constexpr double kWitnessTolerance = 1e-9;

/// Expectations E(A), E(B), E(C), E(ABC). Each must lie in [-1, 1].
struct CorrelationSet {
  double e_a = 0.0;
  double e_b = 0.0;
  double e_c = 0.0;
  double e_abc = 0.0;

  CorrelationSet() = default;
  /// Throws std::domain_error if any value is NaN or outside [-1, 1].
  CorrelationSet(double a, double b, double c, double abc);

  friend bool operator==(const CorrelationSet&, const CorrelationSet&) = default;
};

/// Atom order: abc, a~bc, ab~c, a~b~c, ~abc, ~a~bc, ~ab~c, ~a~b~c.
/// Bit 2 of the index negates A, bit 0 negates B, bit 1 negates C.
enum class Atom : std::size_t {
  kABC = 0,
  kAnBC = 1,
  kABnC = 2,
  kAnBnC = 3,
  kNABC = 4,
  kNAnBC = 5,
  kNABnC = 6,
  kNAnBnC = 7,
};

inline constexpr std::size_t kAtomCount = 8;

/// Value (+1 or -1) of A, B, C at atom index i.
constexpr int atom_a(std::size_t i) { return (i & 4U) != 0 ? -1 : 1; }
constexpr int atom_b(std::size_t i) { return (i & 1U) != 0 ? -1 : 1; }
constexpr int atom_c(std::size_t i) { return (i & 2U) != 0 ? -1 : 1; }

class JointDistribution8 {
 public:
  /// Throws std::domain_error unless all entries are >= 0 and sum to 1
  /// within kSimplexTolerance.
  explicit JointDistribution8(const std::array<double, kAtomCount>& p);

  static JointDistribution8 point_mass(Atom atom);
  static JointDistribution8 uniform();

  double operator[](std::size_t i) const { return p_[i]; }
  double operator[](Atom a) const { return p_[static_cast<std::size_t>(a)]; }
  const std::array<double, kAtomCount>& probabilities() const { return p_; }

 private:
  std::array<double, kAtomCount> p_;
};

/// Index k in [0, 4) of the inequality in which the sign pattern flips
/// E(ABC) (k = 0) or E(A), E(B), E(C) (k = 1, 2, 3).
struct InequalitySlack {
  double lower = 0.0;  // value + 2
  double upper = 0.0;  // 2 - value
};

struct FeasibilityReport {
  bool feasible = false;
  std::array<InequalitySlack, 4> slacks{};
  double f_value = 0.0;
  std::optional<JointDistribution8> witness;

  /// The eight slacks flattened as lower0, upper0, lower1, ... upper3.
  std::array<double, 8> flat_slacks() const;
  /// Index of the first violated inequality, if any.
  std::optional<std::size_t> first_violation() const;
};

struct SymmetricParams {
  double p = 0.0;  // P(a) = P(b) = P(c)
  double q = 0.0;  // P(ABC = 1)
};

/// F = E(A) + E(B) + E(C) - E(ABC).
double mermin_f(const CorrelationSet& c);

/// Value of the linear form of inequality k (0..3).
double inequality_value(const CorrelationSet& c, std::size_t k);

/// Evaluates the four two-sided inequalities. Bounds are inclusive.
/// The witness field is left empty.
FeasibilityReport check_inequalities(const CorrelationSet& c);

/// Exact feasibility over the 8-atom simplex by enumerating all 56 square
/// subsystems of the moment equations. Returns a witness distribution or
/// nothing.
std::optional<JointDistribution8> feasible_oracle(const CorrelationSet& c);

/// check_inequalities plus the oracle's witness.
FeasibilityReport analyze(const CorrelationSet& c);

/// Convex combination of the two boundary distributions of the symmetric
/// case with weight (3p - q)/2 on the 3p = q + 2 boundary.
/// Throws std::domain_error when 0 <= 3p - q <= 2 fails or p, q are not
/// probabilities.
JointDistribution8 construct_symmetric_joint(const SymmetricParams& s);

/// Expectations by atom sums. Rounding excursions past +-1 are clamped.
CorrelationSet expectations_from_joint(const JointDistribution8& j);

/// Whether correlations saturating E(A)=E(B)=E(C)=1-eps and
/// E(ABC)=-1+eps admit a joint distribution. Throws std::domain_error
/// for eps outside [0, 1].
bool epsilon_feasible(double epsilon);

/// The tetrad (1-eps, 1-eps, 1-eps, -1+eps).
CorrelationSet epsilon_tetrad(double epsilon);

}  // namespace ghz::lhv
