#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lindyn/seqspace.hpp"

namespace lindyn {

/// z -> (a z + b) / (c z + d).
class MoebiusMap {
 public:
  MoebiusMap(Complex a, Complex b, Complex c, Complex d);
  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

  Complex operator()(Complex z) const { return (a_ * z + b_) / (c_ * z + d_); }

  /// (*this) o inner.
  MoebiusMap compose(const MoebiusMap& inner) const;
  /// n-fold self-composition by repeated squaring; n >= 0.
  MoebiusMap power(std::uint64_t n) const;

  /// Checks |phi(z)| < 1 on the unit circle samples and that the pole lies
  /// outside the closed disk.
  bool maps_disk_into_disk() const;

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

 private:
  struct Unchecked {};
  // Products of automorphism matrices may be numerically singular while
  // still evaluating accurately away from the pole.
  MoebiusMap(Unchecked, Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}
  Complex a_, b_, c_, d_;
};

/// phi(z) = e^{i theta} (z - alpha) / (1 - conj(alpha) z), |alpha| < 1.
/// theta is kept in (-pi, pi].
class DiskAutomorphism {
 public:
  DiskAutomorphism(double theta, Complex alpha);
  static DiskAutomorphism identity() { return {0.0, 0.0}; }
  static DiskAutomorphism rotation(double theta) { return {theta, 0.0}; }
  /// Recovers the canonical form from any coefficient matrix of an automorphism.
  static DiskAutomorphism from_moebius(const MoebiusMap& map);

  double theta() const { return theta_; }
  Complex alpha() const { return alpha_; }
  bool is_identity() const { return theta_ == 0.0 && alpha_ == Complex(0.0); }

  /// Coefficients (e^{i theta}, -e^{i theta} alpha, -conj(alpha), 1).
  MoebiusMap to_moebius() const;
  /// Evaluates through to_moebius() so that every route agrees bit for bit.
  Complex operator()(Complex z) const { return to_moebius()(z); }

 private:
  double theta_;
  Complex alpha_;
};

/// phi o psi.
DiskAutomorphism compose_auto(const DiskAutomorphism& phi, const DiskAutomorphism& psi);
DiskAutomorphism invert_auto(const DiskAutomorphism& phi);
/// Closed-form n-fold iterate (negative n iterates the inverse). Throws
/// PreconditionFailed once |alpha_n| rounds to 1, which happens for large n
/// whenever phi is not elliptic.
DiskAutomorphism iterate_auto(const DiskAutomorphism& phi, std::int64_t n);
/// Coefficient-matrix power of phi (or its inverse), usable for every n.
MoebiusMap iterate_map(const DiskAutomorphism& phi, std::int64_t n);

enum class AutomorphismKind { identity, elliptic, parabolic, hyperbolic };
std::string to_string(AutomorphismKind kind);

inline constexpr double kParabolicTol = 1e-12;

struct FixedPointInfo {
  AutomorphismKind kind = AutomorphismKind::identity;
  std::optional<Complex> interior_fixed;
  std::vector<Complex> boundary_fixed;
  /// Interior fixed point (elliptic) or the attracting boundary fixed point.
  std::optional<Complex> denjoy_wolff;
  /// tr^2 / det - 4: negative elliptic, zero parabolic, positive hyperbolic.
  double discriminant = 0.0;
  /// |discriminant| is small but above the parabolic tolerance.
  bool near_parabolic = false;
};

FixedPointInfo fixed_points(const DiskAutomorphism& phi);

/// Holomorphic function on the disk as an expression tree, evaluated pointwise.
class AnalyticFn {
 public:
  static AnalyticFn constant(Complex value);
  /// sum coeffs[k] z^k.
  static AnalyticFn polynomial(std::vector<Complex> coeffs);
  static AnalyticFn moebius(MoebiusMap map);
  /// scale * prod (z - r_j).
  static AnalyticFn root_product(std::vector<Complex> roots, Complex scale = 1.0);
  /// 1 / f, certified nonvanishing on `grid` (throws VanishingFunction).
  static AnalyticFn reciprocal(const AnalyticFn& f, const std::vector<Complex>& grid);
  /// f o map.
  static AnalyticFn compose(const AnalyticFn& f, MoebiusMap map);
  static AnalyticFn product(std::vector<AnalyticFn> factors);

  Complex operator()(Complex z) const;
  std::string describe() const;

  struct Node;

 private:
  explicit AnalyticFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline constexpr double kVanishTol = 1e-12;

/// Raised when a function that must be nonvanishing has |f(z)| <= kVanishTol.
class VanishingFunction : public Error {
 public:
  VanishingFunction(const std::string& what, Complex point) : Error(what), point_(point) {}
  Complex point() const { return point_; }

 private:
  Complex point_;
};

/// 200 points: the origin plus 67/66/66 equally spaced points on circles of
/// radius 0.3, 0.6 and 0.9.
std::vector<Complex> default_grid();

/// C f = weight * (f o symbol).
class WeightedCompOp {
 public:
  WeightedCompOp(AnalyticFn weight, DiskAutomorphism symbol);
  /// Non-automorphic self-maps; throws unless the map sends the disk into itself.
  WeightedCompOp(AnalyticFn weight, MoebiusMap symbol);

  const AnalyticFn& weight() const { return weight_; }
  const MoebiusMap& symbol() const { return symbol_; }
  const std::optional<DiskAutomorphism>& automorphism() const { return automorphism_; }

  /// k-th iterate of the symbol as a coefficient-matrix power.
  MoebiusMap symbol_iterate(std::uint64_t k) const;

 private:
  AnalyticFn weight_;
  MoebiusMap symbol_;
  std::optional<DiskAutomorphism> automorphism_;
};

AnalyticFn wcomp_apply(const WeightedCompOp& op, const AnalyticFn& f);
/// C^n f = w (w o phi_1) ... (w o phi_{n-1}) (f o phi_n), built directly from
/// the product formula.
AnalyticFn wcomp_iterate(const WeightedCompOp& op, std::uint64_t n, const AnalyticFn& f);
/// C^{-1} = C_{(1/w) o phi^{-1}, phi^{-1}}; needs an automorphic symbol and a
/// weight with no zero on `grid`.
WeightedCompOp wcomp_inverse(const WeightedCompOp& op, const std::vector<Complex>& grid);

enum class ObstructionCase { weight_zero, interior_fixed_point, boundary_denjoy_wolff };
std::string to_string(ObstructionCase kind);

/// Evaluations showing that the orbit of a test function under the inverse
/// semigroup cannot approach the constant 1.
struct ObstructionReport {
  ObstructionCase kind = ObstructionCase::weight_zero;
  /// Classification of rho = phi^{-1} (of phi in the weight-zero case).
  AutomorphismKind symbol_kind = AutomorphismKind::identity;
  /// Where the orbit is evaluated: the zero of w, the fixed point a, or 0.
  Complex point;
  std::optional<Complex> denjoy_wolff;
  std::string test_function;
  /// Zeros of the test function (boundary case: rho_n(0), n = 1..M).
  std::vector<Complex> zero_set;
  /// values[n-1] = orbit element n evaluated at `point`.
  std::vector<Complex> values;
  double max_abs_value = 0.0;
  double target_value = 1.0;
  /// The report certifies exponents 1..certified_up_to only.
  std::size_t certified_up_to = 0;
  double tolerance = kVanishTol;
  bool certified = false;
};

ObstructionReport obstruction_report(const AnalyticFn& weight, const DiskAutomorphism& phi,
                                     std::size_t elliptic_count = 50, std::size_t boundary_count = 20,
                                     const std::vector<Complex>& grid = default_grid());

}  // namespace lindyn
