#include "lindyn/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "convex_distance.hpp"

namespace lindyn {

SpaceTag SpaceTag::ell_p(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw InvalidArgument("l^p exponent must be a finite real >= 1");
  }
  return SpaceTag(Kind::ellP, p);
}

double SpaceTag::p() const {
  if (kind_ != Kind::ellP) throw InvalidArgument("c0 has no exponent");
  return p_;
}

std::string SpaceTag::name() const {
  if (is_c0()) return "c0";
  std::ostringstream out;
  out.precision(17);
  out << "l" << p_;
  return out.str();
}

SpaceTag SpaceTag::parse(const std::string& text) {
  if (text == "c0") return c0();
  std::string digits;
  if (text.rfind("lp:", 0) == 0) {
    digits = text.substr(3);
  } else if (text.size() > 1 && text[0] == 'l') {
    digits = text.substr(1);
  } else {
    throw InvalidArgument("unknown space '" + text + "' (expected l<p>, lp:<p> or c0)");
  }
  char* end = nullptr;
  const double p = std::strtod(digits.c_str(), &end);
  if (digits.empty() || end != digits.c_str() + digits.size()) {
    throw InvalidArgument("bad exponent in space '" + text + "'");
  }
  return ell_p(p);
}

SeqVector::SeqVector(SpaceTag space, std::vector<Entry> coords) : space_(space) {
  std::stable_sort(coords.begin(), coords.end(),
                   [](const Entry& a, const Entry& b) { return a.index < b.index; });
  for (const auto& e : coords) {
    if (!coords_.empty() && coords_.back().index == e.index) {
      coords_.back().value += e.value;
    } else {
      coords_.push_back(e);
    }
  }
  std::erase_if(coords_, [](const Entry& e) { return e.value == Complex(0.0); });
}

SeqVector SeqVector::basis(SpaceTag space, std::size_t index, Complex value) {
  return SeqVector(space, {{index, value}});
}

SeqVector SeqVector::dense(SpaceTag space, std::span<const Complex> values) {
  std::vector<Entry> coords;
  coords.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) coords.push_back({i, values[i]});
  return SeqVector(space, std::move(coords));
}

std::optional<std::size_t> SeqVector::max_support() const {
  if (coords_.empty()) return std::nullopt;
  return coords_.back().index;
}

Complex SeqVector::operator[](std::size_t index) const {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.index < i; });
  if (it != coords_.end() && it->index == index) return it->value;
  return 0.0;
}

SeqVector SeqVector::scaled(Complex factor) const {
  std::vector<Entry> out;
  out.reserve(coords_.size());
  for (const auto& e : coords_) out.push_back({e.index, e.value * factor});
  return SeqVector(space_, std::move(out));
}

void require_same_space(const SpaceTag& a, const SpaceTag& b) {
  if (!(a == b)) throw SpaceMismatch("space mismatch: " + a.name() + " vs " + b.name());
}

SeqVector operator+(const SeqVector& a, const SeqVector& b) {
  require_same_space(a.space_, b.space_);
  std::vector<Entry> out(a.coords_.begin(), a.coords_.end());
  out.insert(out.end(), b.coords_.begin(), b.coords_.end());
  return SeqVector(a.space_, std::move(out));
}

SeqVector operator-(const SeqVector& a, const SeqVector& b) { return a + b.scaled(-1.0); }

namespace {

// |z|^p for the common integer exponents without calling pow.
double abs_pow(double modulus, double p) {
  if (p == 1.0) return modulus;
  if (p == 2.0) return modulus * modulus;
  if (p == 3.0) return modulus * modulus * modulus;
  if (p == 4.0) {
    const double sq = modulus * modulus;
    return sq * sq;
  }
  return std::pow(modulus, p);
}

}  // namespace

double norm_of_moduli(const SpaceTag& space, std::span<const double> moduli) {
  double largest = 0.0;
  for (const double m : moduli) largest = std::max(largest, m);
  if (space.is_c0() || largest == 0.0 || !std::isfinite(largest)) return largest;
  const double p = space.p();
  double sum = 0.0;
  if (p == 1.0) {
    for (const double m : moduli) sum += m;
    return sum;
  }
  // Division (not a reciprocal multiply) keeps m / largest exactly 1 for the
  // largest entry, so single-coordinate norms are exact.
  if (p == 2.0) {
    for (const double m : moduli) sum += (m / largest) * (m / largest);
    return largest * std::sqrt(sum);
  }
  for (const double m : moduli) sum += abs_pow(m / largest, p);
  return largest * std::pow(sum, 1.0 / p);
}

double norm_of(const SpaceTag& space, std::span<const Complex> values) {
  std::vector<double> moduli(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) moduli[k] = std::abs(values[k]);
  return norm_of_moduli(space, moduli);
}

double norm(const SeqVector& v) {
  std::vector<Complex> values;
  values.reserve(v.support_size());
  for (const auto& e : v.coords()) values.push_back(e.value);
  return norm_of(v.space(), values);
}

Subspace::Subspace(SpaceTag space, std::vector<SeqVector> vectors) : space_(space) {
  for (auto& v : vectors) append(std::move(v));
}

void Subspace::append(SeqVector v) {
  require_same_space(space_, v.space());
  vectors_.push_back(std::move(v));
}

Subspace Subspace::with(SeqVector v) const {
  Subspace out = *this;
  out.append(std::move(v));
  return out;
}

namespace {

constexpr double kRankTol = 1e-12;

using detail::CoordinateProblem;

// Lays x and the nonzero spanning vectors out on the union of their supports.
// Columns are scaled to unit l2 length; the span is unchanged.
CoordinateProblem layout(const SeqVector& x, const Subspace& span) {
  std::map<std::size_t, Eigen::Index> rows;
  for (const auto& e : x.coords()) rows.emplace(e.index, 0);
  std::vector<const SeqVector*> columns;
  for (const auto& v : span.vectors()) {
    if (v.is_zero()) continue;
    columns.push_back(&v);
    for (const auto& e : v.coords()) rows.emplace(e.index, 0);
  }
  Eigen::Index next = 0;
  for (auto& [index, row] : rows) row = next++;

  CoordinateProblem problem;
  problem.x = Eigen::VectorXcd::Zero(next);
  for (const auto& e : x.coords()) problem.x(rows.at(e.index)) = e.value;
  problem.basis = Eigen::MatrixXcd::Zero(next, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (const auto& e : columns[j]->coords()) {
      problem.basis(rows.at(e.index), static_cast<Eigen::Index>(j)) = e.value;
    }
    const double length = problem.basis.col(static_cast<Eigen::Index>(j)).norm();
    if (length > 0.0 && std::isfinite(length)) {
      problem.basis.col(static_cast<Eigen::Index>(j)) /= length;
    }
  }
  return problem;
}

void check_inputs(const SeqVector& x, const Subspace& span, double tol) {
  require_same_space(x.space(), span.space());
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

}  // namespace

double dist_to_span(const SeqVector& x, const Subspace& span, double tol) {
  check_inputs(x, span, tol);
  if (!x.space().is_ell2()) return dist_to_span_convex(x, span, tol);
  if (x.is_zero()) return 0.0;

  const CoordinateProblem problem = layout(x, span);
  // Classical Gram-Schmidt with one reorthogonalization pass.
  std::vector<Eigen::VectorXcd> orthonormal;
  auto project_out = [&orthonormal](Eigen::VectorXcd& v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : orthonormal) v -= q * q.dot(v);
    }
  };
  for (Eigen::Index j = 0; j < problem.basis.cols(); ++j) {
    Eigen::VectorXcd v = problem.basis.col(j);
    project_out(v);
    const double residual = v.norm();
    if (residual > kRankTol) orthonormal.push_back(v / residual);
  }
  Eigen::VectorXcd r = problem.x;
  project_out(r);
  return r.norm();
}

double dist_to_span_convex(const SeqVector& x, const Subspace& span, double tol) {
  check_inputs(x, span, tol);
  if (x.is_zero()) return 0.0;
  const double scale = norm(x);
  CoordinateProblem problem = layout(x, span);
  problem.x /= scale;
  if (problem.basis.cols() == 0) return scale;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(problem.basis, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > kRankTol * sigma(0)) ++rank;
  problem.basis = svd.matrixU().leftCols(rank);
  if (rank == 0) return scale;

  return scale * detail::minimize_residual_norm(x.space(), problem, tol / scale);
}

}  // namespace lindyn
