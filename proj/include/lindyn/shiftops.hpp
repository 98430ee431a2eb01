#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lindyn/seqspace.hpp"

namespace lindyn {

/// Positive bounded weights w_1, w_2, ... given as an explicit prefix
/// w_1..w_N followed by a tail rule for n > N. The tail rules are the ones
/// whose infimum and supremum are known in closed form.
class WeightSeq {
 public:
  /// No tail: indexing past the prefix is an error.
  struct TableOnly {};
  struct ConstantTail {
    double value;
  };
  /// w_n = base + slope / n.
  struct RationalTail {
    double base;
    double slope;
  };
  /// w_n = scale * ratio^n with 0 < ratio <= 1.
  struct GeometricTail {
    double scale;
    double ratio;
  };
  using Tail = std::variant<TableOnly, ConstantTail, RationalTail, GeometricTail>;

  WeightSeq(std::vector<double> prefix, Tail tail);

  static WeightSeq constant(double value) { return WeightSeq({}, ConstantTail{value}); }

  /// w_n for n >= 1.
  double at(std::size_t n) const;

  std::span<const double> prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  bool has_tail() const { return !std::holds_alternative<TableOnly>(tail_); }

  double exact_inf() const { return inf_; }
  /// False when the infimum is only a limit (e.g. 2 + 1/n, or a geometric tail).
  bool inf_attained() const { return inf_attained_; }
  std::optional<std::size_t> argmin() const { return argmin_; }
  double exact_sup() const { return sup_; }

  /// Smallest n > after with w_n < threshold.
  std::optional<std::size_t> first_index_below(double threshold, std::size_t after = 0) const;

  std::string describe() const;

 private:
  std::vector<double> prefix_;
  Tail tail_;
  double inf_ = 0.0;
  bool inf_attained_ = true;
  std::optional<std::size_t> argmin_;
  double sup_ = 0.0;
};

/// B_W e_0 = 0, B_W e_n = w_n e_{n-1}.
struct BackwardShift {
  WeightSeq weights;
  SpaceTag space;
};

SeqVector apply(const BackwardShift& shift, const SeqVector& v);
SeqVector apply_iterate(const BackwardShift& shift, std::size_t n, const SeqVector& v);

/// The z with B^n z = y of least norm: z_{i+n} = y_i / (w_{i+1} ... w_{i+n}),
/// with the n free leading coordinates set to zero. This is minimal in every
/// l^p and in c0. n = 0 returns y.
SeqVector min_norm_preimage(const BackwardShift& shift, const SeqVector& y, std::size_t n);

/// Smallest n with B^n v = 0.
std::size_t kernel_index(const BackwardShift& shift, const SeqVector& v);

}  // namespace lindyn
