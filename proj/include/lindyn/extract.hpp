#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "lindyn/shiftops.hpp"

namespace lindyn {

/// Bounded operator acting on finitely supported vectors: a weighted
/// backward shift, or a d x d complex matrix acting on coordinates 0..d-1.
class LinearOp {
 public:
  static LinearOp shift(BackwardShift shift);
  static LinearOp matrix(Eigen::MatrixXcd matrix, SpaceTag space);

  const SpaceTag& space() const;
  bool is_shift() const { return std::holds_alternative<BackwardShift>(rep_); }
  const BackwardShift* as_shift() const { return std::get_if<BackwardShift>(&rep_); }
  const Eigen::MatrixXcd* as_matrix() const { return std::get_if<MatrixRep>(&rep_) ? &std::get<MatrixRep>(rep_).matrix : nullptr; }

  SeqVector operator()(const SeqVector& v) const;

 private:
  struct MatrixRep {
    Eigen::MatrixXcd matrix;
    SpaceTag space;
  };
  explicit LinearOp(std::variant<BackwardShift, MatrixRep> rep) : rep_(std::move(rep)) {}
  std::variant<BackwardShift, MatrixRep> rep_;
};

inline constexpr double kDefaultMargin = 1e-9;
inline constexpr std::size_t kDefaultSearchCap = 10000;

enum class ExtractionStatus { completed, search_cap_exceeded, precond_failed };
std::string to_string(ExtractionStatus status);

/// Record of a greedy exponent selection n_1 = 1 < n_2 < ... < n_K whose
/// orbit span keeps the rescaled start vector at distance > 1.
struct ExtractionTrace {
  ExtractionStatus status = ExtractionStatus::precond_failed;
  double scale = 0.0;
  /// Rescaled start vector s * x.
  SeqVector x;
  std::vector<std::size_t> exponents;
  /// Entry k is dist(x, span{T^{n_1} x, ..., T^{n_{k+1}} x}).
  std::vector<double> step_distances;
  double final_distance = 0.0;
  std::size_t requested = 0;
  std::size_t search_cap = kDefaultSearchCap;
  double eta = 0.5;
  double margin = kDefaultMargin;
  std::string message;
};

struct NormalizedStart {
  double scale;
  SeqVector x;
  /// dist(x, span{T x}) before rescaling.
  double base_distance;
};

/// s = (1 + eta) max(1/||x||, 1/d) with d = dist(x, span{T x}), so that
/// ||s x|| > 1 and dist(s x, span{T s x}) = s d > 1.
/// Throws PreconditionFailed when x = 0 or d <= tol.
NormalizedStart normalize_start(const LinearOp& op, const SeqVector& x, double eta,
                                double tol = kDefaultTol);

/// Smallest n with chosen.back() < n <= search_cap and
/// dist(x, span{T^{chosen} x, T^n x}) > 1 + margin; nullopt past the cap.
std::optional<std::size_t> select_next(const LinearOp& op, const SeqVector& x,
                                       const std::vector<std::size_t>& chosen,
                                       std::size_t search_cap, double margin = kDefaultMargin);

ExtractionTrace extract_subsequence(const LinearOp& op, const SeqVector& x, std::size_t count,
                                    std::size_t search_cap = kDefaultSearchCap, double eta = 0.5,
                                    double margin = kDefaultMargin);

/// Recomputes the orbit and every distance with the convex solver and checks
/// the exponents, the recorded distances, each step distance > 1 and the
/// final distance >= 1 - 1e-9. A passing trace certifies that x is not in
/// the closed span of the selected orbit.
bool verify_trace(const LinearOp& op, const ExtractionTrace& trace);

}  // namespace lindyn
