#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lindyn/shiftops.hpp"

namespace lindyn {

/// eps(B) = inf { ||y|| : y not in B(open unit ball) }, which for a weighted
/// backward shift equals inf_n w_n.
double epsilon_closed_form(const BackwardShift& shift);

/// y lies in the image of the open unit ball iff its least-norm preimage has
/// norm strictly below one.
bool in_image_of_unit_ball(const BackwardShift& shift, const SeqVector& y);

struct EpsilonReport {
  double closed_form = 0.0;
  bool inf_attained = true;
  double estimate = 0.0;
  /// Minimum over the coordinate rays e_0 .. e_{N-1} alone.
  double coordinate_minimum = 0.0;
  std::size_t coord_directions = 0;
  std::size_t random_directions = 0;
  /// Direction that achieved the estimate: j < N is e_j, N + r is random ray r.
  std::size_t witness_direction = 0;
  std::optional<SeqVector> witness_outside;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

/// Brute-force estimate of eps over coordinate rays and `random_directions`
/// seeded random unit rays supported on [0, N). Along a ray t*y the smallest
/// norm outside B(ball) is ||y|| / ||min_norm_preimage(y)||.
EpsilonReport epsilon_estimate(const BackwardShift& shift, std::size_t coord_directions,
                               std::size_t random_directions = 64, std::uint64_t seed = 0,
                               double tol = kDefaultTol);

/// One outside-the-image vector y = B x from the constructive argument for eps.
struct OutsideWitness {
  std::size_t index;  // position of the single nonzero coordinate of x
  SeqVector x;
  SeqVector y;
  double norm_y;
};

/// inf w = 0 branch: x_k = e_{n_k} along strictly increasing n_k with
/// w_{n_k} below 2^-k * w_max; y_k = B x_k has norm w_{n_k} and lies outside B(ball).
/// Returns fewer than `count` entries if the weights do not decay that far.
std::vector<OutsideWitness> vanishing_weight_witnesses(const BackwardShift& shift, std::size_t count);

/// Upper-bound branch: for delta > 0, the first k with w_k < inf + delta and
/// x = (inf + delta) / w_k * e_k, so ||x|| > 1, y = B x has norm inf + delta
/// and lies outside B(ball).
OutsideWitness near_infimum_witness(const BackwardShift& shift, double delta);

}  // namespace lindyn
