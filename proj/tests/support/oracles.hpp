#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the solver paths it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lindyn/seqspace.hpp"

namespace lindyn::testing {

inline std::mt19937_64& rng_for(std::uint64_t seed) {
  thread_local std::mt19937_64 engine;
  engine.seed(seed);
  return engine;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline Complex complex_normal(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  return {n(g), n(g)};
}

inline SeqVector random_vector(std::mt19937_64& g, SpaceTag space, std::size_t dim,
                               double density = 1.0) {
  std::vector<Entry> coords;
  for (std::size_t i = 0; i < dim; ++i) {
    if (uniform(g, 0.0, 1.0) <= density) coords.push_back({i, complex_normal(g)});
  }
  if (coords.empty()) coords.push_back({0, complex_normal(g)});
  return SeqVector(space, std::move(coords));
}

inline std::vector<Complex> dense(const SeqVector& v, std::size_t dim) {
  std::vector<Complex> out(dim, 0.0);
  for (const auto& e : v.coords()) out.at(e.index) = e.value;
  return out;
}

inline double space_norm(const SpaceTag& space, const std::vector<Complex>& values) {
  if (space.is_c0()) {
    double m = 0.0;
    for (auto v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (auto v : values) s += std::pow(std::abs(v), space.p());
  return std::pow(s, 1.0 / space.p());
}

/// l2 distance by Householder least squares on the raw vectors.
inline double qr_distance(const SeqVector& x, const std::vector<SeqVector>& span, std::size_t dim) {
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) {
    const auto col = dense(span[j], dim);
    for (std::size_t i = 0; i < dim; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  const auto xd = dense(x, dim);
  Eigen::VectorXcd b(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) b(static_cast<Eigen::Index>(i)) = xd[i];
  if (span.empty()) return b.norm();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
  qr.setThreshold(1e-12);
  const Eigen::VectorXcd c = qr.solve(b);
  return (b - A * c).norm();
}

/// Grid search with successive zooming over the complex coefficients of at
/// most two spanning vectors.
inline double grid_distance(const SeqVector& x, const std::vector<SeqVector>& span, std::size_t dim) {
  const auto xd = dense(x, dim);
  std::vector<std::vector<Complex>> cols;
  for (const auto& v : span) cols.push_back(dense(v, dim));
  const std::size_t params = 2 * cols.size();
  auto objective = [&](const std::vector<double>& theta) {
    std::vector<Complex> r = xd;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const Complex c(theta[2 * j], theta[2 * j + 1]);
      for (std::size_t i = 0; i < dim; ++i) r[i] -= c * cols[j][i];
    }
    return space_norm(x.space(), r);
  };
  if (params == 0) return objective({});
  std::vector<double> center(params, 0.0);
  double best = objective(center);
  double radius = 4.0;
  const int steps = params <= 2 ? 40 : 14;
  for (int round = 0; round < 40; ++round) {
    std::vector<double> best_point = center;
    std::vector<int> idx(params, 0);
    for (;;) {
      std::vector<double> theta(params);
      for (std::size_t k = 0; k < params; ++k) theta[k] = center[k] + radius * (2.0 * idx[k] / steps - 1.0);
      const double value = objective(theta);
      if (value < best) {
        best = value;
        best_point = theta;
      }
      std::size_t k = 0;
      while (k < params && ++idx[k] > steps) idx[k++] = 0;
      if (k == params) break;
    }
    center = best_point;
    radius *= 0.5;
  }
  return best;
}

}  // namespace lindyn::testing
