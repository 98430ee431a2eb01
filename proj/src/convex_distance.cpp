#include "convex_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace lindyn::detail {
namespace {

// Real embedding: coefficient c_j = a_j + i b_j becomes theta = (a, b), and
// residual coordinate i becomes the pair (rows 2i, 2i+1) of xi - A theta.
struct RealProblem {
  Eigen::MatrixXd A;
  Eigen::VectorXd xi;
  Eigen::Index coords() const { return xi.size() / 2; }
  Eigen::Index params() const { return A.cols(); }
};

RealProblem embed(const CoordinateProblem& problem) {
  const Eigen::Index d = problem.basis.rows();
  const Eigen::Index m = problem.basis.cols();
  RealProblem out;
  out.A.resize(2 * d, 2 * m);
  out.xi.resize(2 * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.xi(2 * i) = problem.x(i).real();
    out.xi(2 * i + 1) = problem.x(i).imag();
    for (Eigen::Index j = 0; j < m; ++j) {
      const Complex v = problem.basis(i, j);
      out.A(2 * i, j) = v.real();
      out.A(2 * i, m + j) = -v.imag();
      out.A(2 * i + 1, j) = v.imag();
      out.A(2 * i + 1, m + j) = v.real();
    }
  }
  return out;
}

Eigen::VectorXd solve_spd(const Eigen::MatrixXd& H, const Eigen::VectorXd& rhs) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  Eigen::VectorXd step = ldlt.solve(rhs);
  if (ldlt.info() == Eigen::Success && step.allFinite()) return step;
  const double ridge = 1e-14 * std::max(1.0, H.diagonal().cwiseAbs().maxCoeff());
  Eigen::MatrixXd damped = H;
  damped.diagonal().array() += ridge;
  return damped.ldlt().solve(rhs);
}

double true_norm(const SpaceTag& space, const RealProblem& rp, const Eigen::VectorXd& theta) {
  const Eigen::VectorXd rho = rp.xi - rp.A * theta;
  std::vector<Complex> values(static_cast<std::size_t>(rp.coords()));
  for (Eigen::Index i = 0; i < rp.coords(); ++i) {
    values[static_cast<std::size_t>(i)] = Complex(rho(2 * i), rho(2 * i + 1));
  }
  return norm_of(space, values);
}

// 1 < p < inf: Newton on sum (|r_i|^2 + mu^2)^(p/2) with mu driven to zero.
// The smoothing moves the p-norm by at most d^(1/p) * mu.
double smoothed_newton(double p, const RealProblem& rp, Eigen::VectorXd theta, double tol) {
  const Eigen::Index d = rp.coords();
  const Eigen::Index n = rp.params();
  const double mu_final =
      std::max(1e-150, 0.1 * tol / std::pow(static_cast<double>(d), 1.0 / p));

  auto objective = [&](const Eigen::VectorXd& th, double mu2) {
    const Eigen::VectorXd rho = rp.xi - rp.A * th;
    double total = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double s = rho(2 * i) * rho(2 * i) + rho(2 * i + 1) * rho(2 * i + 1);
      total += std::pow(s + mu2, 0.5 * p);
    }
    return total;
  };

  for (double mu = 0.1;; mu = std::max(mu_final, mu * 0.1)) {
    const double mu2 = mu * mu;
    for (int iter = 0; iter < 200; ++iter) {
      const Eigen::VectorXd rho = rp.xi - rp.A * theta;
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(n);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n, n);
      double value = 0.0;
      for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Vector2d r(rho(2 * i), rho(2 * i + 1));
        const double q = r.squaredNorm() + mu2;
        value += std::pow(q, 0.5 * p);
        const double h1 = 0.5 * p * std::pow(q, 0.5 * p - 1.0);
        const double h2 = 0.5 * p * (0.5 * p - 1.0) * std::pow(q, 0.5 * p - 2.0);
        const auto Ai = rp.A.middleRows(2 * i, 2);
        grad.noalias() -= 2.0 * h1 * (Ai.transpose() * r);
        const Eigen::Matrix2d M = 2.0 * h1 * Eigen::Matrix2d::Identity() + 4.0 * h2 * r * r.transpose();
        hess.noalias() += Ai.transpose() * M * Ai;
      }
      const Eigen::VectorXd step = solve_spd(hess, -grad);
      const double decrement = -grad.dot(step);
      if (!(decrement > 1e-30 + 1e-16 * value)) break;
      double t = 1.0;
      while (t > 1e-14 && objective(theta + t * step, mu2) > value - 0.25 * t * decrement) t *= 0.5;
      if (t <= 1e-14) break;
      theta += t * step;
    }
    if (mu <= mu_final) break;
  }
  return true_norm(SpaceTag::ell_p(p), rp, theta);
}

// p = 1 and c0 as second-order cone programs: minimize sum_j t_j subject to
// |r_i| < t_{group(i)}, via the log barrier -log(t^2 - |r_i|^2).
// Each cone barrier has parameter 2, so after centering at weight tau the
// duality gap is at most 2d / tau.
double barrier_socp(const SpaceTag& space, const RealProblem& rp, Eigen::VectorXd theta,
                    double tol) {
  const Eigen::Index d = rp.coords();
  const Eigen::Index n = rp.params();
  const bool shared = space.is_c0();
  const Eigen::Index k = shared ? 1 : d;
  auto group = [shared](Eigen::Index i) { return shared ? Eigen::Index{0} : i; };

  Eigen::VectorXd z(n + k);
  z.head(n) = theta;
  {
    const Eigen::VectorXd rho = rp.xi - rp.A * theta;
    Eigen::VectorXd t = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double r = std::hypot(rho(2 * i), rho(2 * i + 1));
      t(group(i)) = std::max(t(group(i)), r + 1.0);
    }
    for (Eigen::Index j = 0; j < k; ++j) t(j) = std::max(t(j), 1.0);
    z.tail(k) = t;
  }

  // Returns +inf outside the domain.
  auto barrier_value = [&](const Eigen::VectorXd& zz, double tau) {
    const Eigen::VectorXd rho = rp.xi - rp.A * zz.head(n);
    double total = tau * zz.tail(k).sum();
    for (Eigen::Index j = 0; j < k; ++j) {
      if (!(zz(n + j) > 0.0)) return std::numeric_limits<double>::infinity();
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      const double t = zz(n + group(i));
      const double u = t * t - (rho(2 * i) * rho(2 * i) + rho(2 * i + 1) * rho(2 * i + 1));
      if (!(u > 0.0)) return std::numeric_limits<double>::infinity();
      total -= std::log(u);
    }
    return total;
  };

  const double nu = 2.0 * static_cast<double>(d);
  const double gap_target = std::max(1e-15, 0.1 * tol);
  for (double tau = 1.0;; tau *= 20.0) {
    for (int iter = 0; iter < 100; ++iter) {
      const Eigen::VectorXd rho = rp.xi - rp.A * z.head(n);
      Eigen::VectorXd grad = Eigen::VectorXd::Zero(n + k);
      grad.tail(k).setConstant(tau);
      Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(n + k, n + k);
      for (Eigen::Index i = 0; i < d; ++i) {
        const Eigen::Index col = n + group(i);
        const double t = z(col);
        const Eigen::Vector2d r(rho(2 * i), rho(2 * i + 1));
        const double u = t * t - r.squaredNorm();
        const auto Ai = rp.A.middleRows(2 * i, 2);
        Eigen::VectorXd du = Eigen::VectorXd::Zero(n + k);
        du.head(n) = 2.0 * (Ai.transpose() * r);
        du(col) = 2.0 * t;
        grad -= du / u;
        hess.noalias() += (du * du.transpose()) / (u * u);
        hess.topLeftCorner(n, n).noalias() += (2.0 / u) * (Ai.transpose() * Ai);
        hess(col, col) -= 2.0 / u;
      }
      const Eigen::VectorXd step = solve_spd(hess, -grad);
      const double decrement = -grad.dot(step);
      if (!(decrement > 1e-10)) break;
      const double value = barrier_value(z, tau);
      double s = 1.0;
      while (s > 1e-14 && barrier_value(z + s * step, tau) > value - 0.25 * s * decrement) s *= 0.5;
      if (s <= 1e-14) break;
      z += s * step;
    }
    if (nu / tau <= gap_target) break;
  }
  return true_norm(space, rp, z.head(n));
}

}  // namespace

double minimize_residual_norm(const SpaceTag& space, const CoordinateProblem& problem,
                              double tol) {
  const RealProblem rp = embed(problem);
  // Orthonormal columns: the l2 projection coefficients are basis^H x.
  const Eigen::VectorXcd c = problem.basis.adjoint() * problem.x;
  const Eigen::Index m = problem.basis.cols();
  Eigen::VectorXd theta(2 * m);
  theta.head(m) = c.real();
  theta.tail(m) = c.imag();

  if (space.is_c0() || space.p() == 1.0) return barrier_socp(space, rp, theta, tol);
  return smoothed_newton(space.p(), rp, theta, tol);
}

}  // namespace lindyn::detail
