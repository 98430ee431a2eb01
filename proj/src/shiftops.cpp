#include "lindyn/shiftops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lindyn {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

struct TailBounds {
  double inf;
  bool inf_attained;
  std::size_t inf_index;
  double sup;
};

// Bounds of the tail over n > start.
TailBounds tail_bounds(const WeightSeq::Tail& tail, std::size_t start) {
  const double first = static_cast<double>(start + 1);
  return std::visit(
      Overloaded{
          [](const WeightSeq::TableOnly&) {
            return TailBounds{std::numeric_limits<double>::infinity(), false, 0, 0.0};
          },
          [&](const WeightSeq::ConstantTail& c) { return TailBounds{c.value, true, start + 1, c.value}; },
          [&](const WeightSeq::RationalTail& r) {
            const double w_first = r.base + r.slope / first;
            if (r.slope > 0.0) return TailBounds{r.base, false, 0, w_first};
            if (r.slope < 0.0) return TailBounds{w_first, true, start + 1, r.base};
            return TailBounds{r.base, true, start + 1, r.base};
          },
          [&](const WeightSeq::GeometricTail& g) {
            const double w_first = g.scale * std::pow(g.ratio, first);
            if (g.ratio < 1.0) return TailBounds{0.0, false, 0, w_first};
            return TailBounds{g.scale, true, start + 1, g.scale};
          },
      },
      tail);
}

void validate_tail(const WeightSeq::Tail& tail, std::size_t start) {
  const double first = static_cast<double>(start + 1);
  std::visit(Overloaded{
                 [](const WeightSeq::TableOnly&) {},
                 [](const WeightSeq::ConstantTail& c) {
                   if (!(c.value > 0.0) || !std::isfinite(c.value)) {
                     throw InvalidArgument("constant tail weight must be a finite positive real");
                   }
                 },
                 [&](const WeightSeq::RationalTail& r) {
                   if (!std::isfinite(r.base) || !std::isfinite(r.slope) || r.base < 0.0 ||
                       !(r.base + r.slope / first > 0.0) || (r.base == 0.0 && r.slope <= 0.0)) {
                     throw InvalidArgument("rational tail base + slope/n must stay positive");
                   }
                 },
                 [](const WeightSeq::GeometricTail& g) {
                   if (!(g.scale > 0.0) || !std::isfinite(g.scale)) {
                     throw InvalidArgument("geometric tail scale must be a finite positive real");
                   }
                   if (!(g.ratio > 0.0) || g.ratio > 1.0) {
                     throw InvalidArgument("geometric tail ratio must lie in (0, 1]; larger ratios are unbounded");
                   }
                 },
             },
             tail);
}

}  // namespace

WeightSeq::WeightSeq(std::vector<double> prefix, Tail tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (double w : prefix_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be finite positive reals");
  }
  if (prefix_.empty() && !has_tail()) throw InvalidArgument("weight table is empty and has no tail");
  validate_tail(tail_, prefix_.size());

  const TailBounds tb = tail_bounds(tail_, prefix_.size());
  inf_ = tb.inf;
  inf_attained_ = tb.inf_attained;
  if (tb.inf_attained) argmin_ = tb.inf_index;
  sup_ = tb.sup;
  if (!prefix_.empty()) {
    const auto lo = std::min_element(prefix_.begin(), prefix_.end());
    if (*lo <= inf_) {
      inf_ = *lo;
      inf_attained_ = true;
      argmin_ = static_cast<std::size_t>(lo - prefix_.begin()) + 1;
    }
    sup_ = std::max(sup_, *std::max_element(prefix_.begin(), prefix_.end()));
  }
}

double WeightSeq::at(std::size_t n) const {
  if (n == 0) throw InvalidArgument("weights are indexed from 1");
  if (n <= prefix_.size()) return prefix_[n - 1];
  const double x = static_cast<double>(n);
  return std::visit(
      Overloaded{
          [&](const TableOnly&) -> double {
            throw WeightIndexError("weight w_" + std::to_string(n) + " requested past table of length " +
                                   std::to_string(prefix_.size()));
          },
          [](const ConstantTail& c) { return c.value; },
          [&](const RationalTail& r) { return r.base + r.slope / x; },
          [&](const GeometricTail& g) { return g.scale * std::pow(g.ratio, x); },
      },
      tail_);
}

std::optional<std::size_t> WeightSeq::first_index_below(double threshold, std::size_t after) const {
  for (std::size_t n = after + 1; n <= prefix_.size(); ++n) {
    if (prefix_[n - 1] < threshold) return n;
  }
  const std::size_t start = std::max(after, prefix_.size()) + 1;
  constexpr double kLimit = 4.0e18;
  // Both formula tails are non-increasing, so bracket the answer around the
  // closed-form estimate and bisect down to the exact first index.
  auto settle = [&](double estimate) -> std::optional<std::size_t> {
    if (!(estimate < kLimit)) return std::nullopt;
    std::size_t hi = std::max<std::size_t>(start, static_cast<std::size_t>(std::max(1.0, estimate)));
    for (std::size_t step = 1; !(at(hi) < threshold); step *= 2) {
      if (static_cast<double>(hi) > kLimit) return std::nullopt;
      hi += step;
    }
    std::size_t lo = start;
    if (at(lo) < threshold) return lo;
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      (at(mid) < threshold ? hi : lo) = mid;
    }
    return hi;
  };
  return std::visit(
      Overloaded{
          [](const TableOnly&) -> std::optional<std::size_t> { return std::nullopt; },
          [&](const ConstantTail& c) -> std::optional<std::size_t> {
            if (c.value < threshold) return start;
            return std::nullopt;
          },
          [&](const RationalTail& r) -> std::optional<std::size_t> {
            if (r.slope <= 0.0) {
              if (at(start) < threshold) return start;
              return std::nullopt;
            }
            if (!(threshold > r.base)) return std::nullopt;
            return settle(std::floor(r.slope / (threshold - r.base)));
          },
          [&](const GeometricTail& g) -> std::optional<std::size_t> {
            if (g.ratio == 1.0) {
              if (g.scale < threshold) return start;
              return std::nullopt;
            }
            if (!(threshold > 0.0)) return std::nullopt;
            if (g.scale < threshold) return start;
            return settle(std::floor(std::log(threshold / g.scale) / std::log(g.ratio)));
          },
      },
      tail_);
}

std::string WeightSeq::describe() const {
  std::ostringstream out;
  out.precision(17);
  if (!prefix_.empty()) {
    out << "table:";
    for (std::size_t i = 0; i < prefix_.size(); ++i) out << (i ? "," : "") << prefix_[i];
    out << " ";
  }
  std::visit(Overloaded{
                 [&](const TableOnly&) { out << "tail:none"; },
                 [&](const ConstantTail& c) { out << "tail:const:" << c.value; },
                 [&](const RationalTail& r) { out << "tail:" << r.base << (r.slope < 0 ? "-" : "+") << std::abs(r.slope) << "/n"; },
                 [&](const GeometricTail& g) { out << "tail:" << g.scale << "*" << g.ratio << "^n"; },
             },
             tail_);
  return out.str();
}

SeqVector apply(const BackwardShift& shift, const SeqVector& v) {
  require_same_space(shift.space, v.space());
  std::vector<Entry> out;
  out.reserve(v.support_size());
  for (const auto& e : v.coords()) {
    if (e.index == 0) continue;
    out.push_back({e.index - 1, shift.weights.at(e.index) * e.value});
  }
  return SeqVector(v.space(), std::move(out));
}

SeqVector apply_iterate(const BackwardShift& shift, std::size_t n, const SeqVector& v) {
  SeqVector current = v;
  for (std::size_t k = 0; k < n && !current.is_zero(); ++k) current = apply(shift, current);
  require_same_space(shift.space, current.space());
  return current;
}

SeqVector min_norm_preimage(const BackwardShift& shift, const SeqVector& y, std::size_t n) {
  require_same_space(shift.space, y.space());
  if (n == 0) return y;
  std::vector<Entry> out;
  out.reserve(y.support_size());
  for (const auto& e : y.coords()) {
    double product = 1.0;
    for (std::size_t k = e.index + 1; k <= e.index + n; ++k) product *= shift.weights.at(k);
    Complex value;
    if (std::isfinite(product) && product > 0.0) {
      value = e.value / product;
    } else {
      value = e.value;
      for (std::size_t k = e.index + 1; k <= e.index + n; ++k) value /= shift.weights.at(k);
    }
    out.push_back({e.index + n, value});
  }
  return SeqVector(y.space(), std::move(out));
}

std::size_t kernel_index(const BackwardShift& shift, const SeqVector& v) {
  require_same_space(shift.space, v.space());
  const auto top = v.max_support();
  return top ? *top + 1 : 0;
}

}  // namespace lindyn
