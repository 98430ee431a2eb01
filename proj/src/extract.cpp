#include "lindyn/extract.hpp"

#include <algorithm>
#include <cmath>

namespace lindyn {

LinearOp LinearOp::shift(BackwardShift shift) { return LinearOp(std::move(shift)); }

LinearOp LinearOp::matrix(Eigen::MatrixXcd matrix, SpaceTag space) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw InvalidArgument("operator matrix must be square and nonempty");
  }
  if (!matrix.allFinite()) throw InvalidArgument("operator matrix has non-finite entries");
  return LinearOp(MatrixRep{std::move(matrix), space});
}

const SpaceTag& LinearOp::space() const {
  if (const auto* s = std::get_if<BackwardShift>(&rep_)) return s->space;
  return std::get<MatrixRep>(rep_).space;
}

SeqVector LinearOp::operator()(const SeqVector& v) const {
  if (const auto* s = std::get_if<BackwardShift>(&rep_)) return apply(*s, v);
  const auto& rep = std::get<MatrixRep>(rep_);
  require_same_space(rep.space, v.space());
  const Eigen::Index d = rep.matrix.rows();
  Eigen::VectorXcd dense = Eigen::VectorXcd::Zero(d);
  for (const auto& e : v.coords()) {
    if (e.index >= static_cast<std::size_t>(d)) {
      throw InvalidArgument("vector index " + std::to_string(e.index) + " outside matrix dimension " +
                            std::to_string(d));
    }
    dense(static_cast<Eigen::Index>(e.index)) = e.value;
  }
  const Eigen::VectorXcd image = rep.matrix * dense;
  return SeqVector::dense(v.space(), std::span<const Complex>(image.data(), static_cast<std::size_t>(d)));
}

std::string to_string(ExtractionStatus status) {
  switch (status) {
    case ExtractionStatus::completed: return "completed";
    case ExtractionStatus::search_cap_exceeded: return "searchCapExceeded";
    case ExtractionStatus::precond_failed: return "precondFailed";
  }
  return "unknown";
}

namespace {

// Directions of T^n x. Spans ignore scalars, so each iterate is renormalized
// before the next application and large exponents never overflow.
class Orbit {
 public:
  Orbit(const LinearOp& op, SeqVector x) : op_(op) { directions_.push_back(std::move(x)); }

  const SeqVector& at(std::size_t n) {
    while (directions_.size() <= n) {
      SeqVector next = op_(directions_.back());
      const double length = norm(next);
      if (length > 0.0 && std::isfinite(length)) next = next.scaled(1.0 / length);
      directions_.push_back(std::move(next));
    }
    return directions_[n];
  }

 private:
  const LinearOp& op_;
  std::vector<SeqVector> directions_;
};

Subspace span_of(Orbit& orbit, const SpaceTag& space, const std::vector<std::size_t>& exponents) {
  Subspace span(space);
  for (std::size_t n : exponents) span.append(orbit.at(n));
  return span;
}

std::optional<std::size_t> select_in_orbit(Orbit& orbit, const SeqVector& x,
                                           const std::vector<std::size_t>& chosen,
                                           std::size_t search_cap, double margin) {
  const Subspace base = span_of(orbit, x.space(), chosen);
  const std::size_t last = chosen.empty() ? 0 : chosen.back();
  for (std::size_t n = last + 1; n <= search_cap; ++n) {
    if (dist_to_span(x, base.with(orbit.at(n))) > 1.0 + margin) return n;
  }
  return std::nullopt;
}

}  // namespace

NormalizedStart normalize_start(const LinearOp& op, const SeqVector& x, double eta, double tol) {
  require_same_space(op.space(), x.space());
  if (!(eta > 0.0)) throw InvalidArgument("eta must be positive");
  if (x.is_zero()) throw PreconditionFailed("start vector is zero");
  const double length = norm(x);
  const double d = dist_to_span(x, Subspace(x.space(), {op(x)}), tol);
  if (!(d > tol)) {
    throw PreconditionFailed("x and T x are linearly dependent (dist = " + std::to_string(d) + ")");
  }
  const double scale = (1.0 + eta) * std::max(1.0 / length, 1.0 / d);
  return {scale, x.scaled(scale), d};
}

std::optional<std::size_t> select_next(const LinearOp& op, const SeqVector& x,
                                       const std::vector<std::size_t>& chosen,
                                       std::size_t search_cap, double margin) {
  require_same_space(op.space(), x.space());
  Orbit orbit(op, x);
  return select_in_orbit(orbit, x, chosen, search_cap, margin);
}

ExtractionTrace extract_subsequence(const LinearOp& op, const SeqVector& x, std::size_t count,
                                    std::size_t search_cap, double eta, double margin) {
  if (count < 1) throw InvalidArgument("need at least one exponent");
  ExtractionTrace trace{.x = x, .exponents = {}, .step_distances = {}, .message = {}};
  trace.requested = count;
  trace.search_cap = search_cap;
  trace.eta = eta;
  trace.margin = margin;

  NormalizedStart start{0.0, x, 0.0};
  try {
    start = normalize_start(op, x, eta);
  } catch (const PreconditionFailed& failure) {
    trace.status = ExtractionStatus::precond_failed;
    trace.message = failure.what();
    return trace;
  }
  trace.scale = start.scale;
  trace.x = start.x;

  Orbit orbit(op, trace.x);
  trace.exponents = {1};
  trace.step_distances = {dist_to_span(trace.x, span_of(orbit, trace.x.space(), trace.exponents))};
  trace.status = ExtractionStatus::completed;
  if (!(trace.step_distances.back() > 1.0 + margin)) {
    trace.status = ExtractionStatus::precond_failed;
    trace.message = "normalized start is not at distance > 1 + margin from span{T x}";
  }

  while (trace.status == ExtractionStatus::completed && trace.exponents.size() < count) {
    const auto next = select_in_orbit(orbit, trace.x, trace.exponents, search_cap, margin);
    if (!next) {
      trace.status = ExtractionStatus::search_cap_exceeded;
      trace.message = "no admissible exponent up to " + std::to_string(search_cap) + " after " +
                      std::to_string(trace.exponents.size()) + " selections";
      break;
    }
    trace.exponents.push_back(*next);
    trace.step_distances.push_back(dist_to_span(trace.x, span_of(orbit, trace.x.space(), trace.exponents)));
  }
  trace.final_distance = dist_to_span(trace.x, span_of(orbit, trace.x.space(), trace.exponents));
  return trace;
}

bool verify_trace(const LinearOp& op, const ExtractionTrace& trace) {
  constexpr double kAgreement = 1e-7;
  constexpr double kClosedSlack = 1e-9;
  if (trace.status != ExtractionStatus::completed) return false;
  if (!(op.space() == trace.x.space()) || trace.x.is_zero()) return false;
  const auto& exps = trace.exponents;
  if (exps.empty() || exps.front() != 1 || trace.step_distances.size() != exps.size()) return false;
  if (std::adjacent_find(exps.begin(), exps.end(), std::greater_equal<>()) != exps.end()) return false;

  // Fresh orbit, rescaled by the largest coordinate instead of the norm.
  std::vector<SeqVector> iterates;
  SeqVector current = trace.x;
  std::size_t power = 0;
  for (std::size_t n : exps) {
    for (; power < n; ++power) {
      current = op(current);
      double largest = 0.0;
      for (const auto& e : current.coords()) largest = std::max(largest, std::abs(e.value));
      if (largest > 0.0 && std::isfinite(largest)) current = current.scaled(1.0 / largest);
    }
    iterates.push_back(current);
  }

  Subspace span(trace.x.space());
  double distance = 0.0;
  for (std::size_t k = 0; k < iterates.size(); ++k) {
    span.append(iterates[k]);
    distance = dist_to_span_convex(trace.x, span);
    const double recorded = trace.step_distances[k];
    if (!(std::abs(distance - recorded) <= kAgreement * std::max(1.0, distance))) return false;
    if (!(distance >= 1.0 - kClosedSlack)) return false;
  }
  if (!(std::abs(distance - trace.final_distance) <= kAgreement * std::max(1.0, distance))) return false;
  return distance >= 1.0 - kClosedSlack;
}

}  // namespace lindyn
