#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lindyn/error.hpp"

namespace lindyn {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

/// Identifies the ambient space: l^p for 1 <= p < inf, or c0 with the sup norm.
class SpaceTag {
 public:
  enum class Kind { ellP, c0 };

  static SpaceTag ell_p(double p);
  static SpaceTag c0() { return SpaceTag(Kind::c0, 0.0); }

  Kind kind() const { return kind_; }
  bool is_c0() const { return kind_ == Kind::c0; }
  bool is_ell2() const { return kind_ == Kind::ellP && p_ == 2.0; }
  /// Exponent; throws for c0.
  double p() const;

  /// "l2", "l1.5", "c0".
  std::string name() const;
  /// Inverse of name(); also accepts "lp:<p>".
  static SpaceTag parse(const std::string& text);

  friend bool operator==(const SpaceTag&, const SpaceTag&) = default;

 private:
  SpaceTag(Kind kind, double p) : kind_(kind), p_(p) {}
  Kind kind_;
  double p_;
};

struct Entry {
  std::size_t index;
  Complex value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Finitely supported complex sequence. Coordinates are kept sorted by index
/// with no stored zeros; duplicate indices passed to the constructor are summed.
class SeqVector {
 public:
  explicit SeqVector(SpaceTag space) : space_(space) {}
  SeqVector(SpaceTag space, std::vector<Entry> coords);

  static SeqVector basis(SpaceTag space, std::size_t index, Complex value = 1.0);
  static SeqVector dense(SpaceTag space, std::span<const Complex> values);

  const SpaceTag& space() const { return space_; }
  std::span<const Entry> coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }
  std::size_t support_size() const { return coords_.size(); }
  std::optional<std::size_t> max_support() const;

  Complex operator[](std::size_t index) const;

  SeqVector scaled(Complex factor) const;

  friend SeqVector operator+(const SeqVector& a, const SeqVector& b);
  friend SeqVector operator-(const SeqVector& a, const SeqVector& b);
  friend bool operator==(const SeqVector&, const SeqVector&) = default;

 private:
  SpaceTag space_;
  std::vector<Entry> coords_;
};

void require_same_space(const SpaceTag& a, const SpaceTag& b);

/// Norm of a dense coordinate block in the given space.
double norm_of(const SpaceTag& space, std::span<const Complex> values);
/// Same norm from coordinate moduli alone.
double norm_of_moduli(const SpaceTag& space, std::span<const double> moduli);
double norm(const SeqVector& v);

/// Spanning set; zero and repeated vectors are allowed and ignored by the solvers.
class Subspace {
 public:
  explicit Subspace(SpaceTag space) : space_(space) {}
  Subspace(SpaceTag space, std::vector<SeqVector> vectors);

  const SpaceTag& space() const { return space_; }
  std::span<const SeqVector> vectors() const { return vectors_; }
  std::size_t size() const { return vectors_.size(); }

  void append(SeqVector v);
  Subspace with(SeqVector v) const;

 private:
  SpaceTag space_;
  std::vector<SeqVector> vectors_;
};

/// inf over c of ||x - sum c_i v_i||. The l2 case uses Gram-Schmidt projection;
/// every other space goes through dist_to_span_convex.
double dist_to_span(const SeqVector& x, const Subspace& span, double tol = kDefaultTol);

/// Same quantity computed by convex minimization over the coefficients, for any
/// space including l2. Result is within tol of the optimum.
double dist_to_span_convex(const SeqVector& x, const Subspace& span, double tol = kDefaultTol);

}  // namespace lindyn
