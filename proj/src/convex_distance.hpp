#pragma once

#include <Eigen/Dense>

#include "lindyn/seqspace.hpp"

namespace lindyn::detail {

struct CoordinateProblem {
  Eigen::VectorXcd x;
  Eigen::MatrixXcd basis;
};

/// min over complex c of ||x - basis * c|| in the norm of `space`.
/// `basis` must have orthonormal columns; the result is within `tol`
/// of the minimum.
double minimize_residual_norm(const SpaceTag& space, const CoordinateProblem& problem,
                              double tol);

}  // namespace lindyn::detail
