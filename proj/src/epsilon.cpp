#include "lindyn/epsilon.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "random.hpp"

namespace lindyn {

double epsilon_closed_form(const BackwardShift& shift) { return shift.weights.exact_inf(); }

bool in_image_of_unit_ball(const BackwardShift& shift, const SeqVector& y) {
  return norm(min_norm_preimage(shift, y, 1)) < 1.0;
}

namespace {

// Scales y up by ulps until it leaves B(ball); only rounding can put the
// exact boundary vector back inside.
SeqVector push_outside(const BackwardShift& shift, SeqVector y) {
  double factor = 1.0;
  for (int guard = 0; guard < 8 && in_image_of_unit_ball(shift, y.scaled(factor)); ++guard) {
    factor = std::nextafter(factor, 2.0);
  }
  return y.scaled(factor);
}

}  // namespace

EpsilonReport epsilon_estimate(const BackwardShift& shift, std::size_t coord_directions,
                               std::size_t random_directions, std::uint64_t seed, double tol) {
  if (coord_directions < 1) throw InvalidArgument("need at least one coordinate direction");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const SpaceTag space = shift.space;

  EpsilonReport report;
  report.closed_form = epsilon_closed_form(shift);
  report.inf_attained = shift.weights.inf_attained();
  report.coord_directions = coord_directions;
  report.random_directions = random_directions;
  report.seed = seed;
  report.tol = tol;

  // Coordinate ray e_j: the preimage is e_{j+1} / w_{j+1}, so the boundary
  // scale is w_{j+1}, read directly to avoid a double reciprocal. Strict <
  // keeps the lowest index on ties.
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_direction = 0;
  for (std::size_t j = 0; j < coord_directions; ++j) {
    const double scale = shift.weights.at(j + 1);
    if (scale < best) {
      best = scale;
      best_direction = j;
    }
  }
  report.coordinate_minimum = best;

  // Random rays only displace the coordinate winner when strictly better by
  // more than tol, so rounding cannot reorder genuine ties. Norms depend on
  // moduli alone, so each ray draws moduli from the main stream and its
  // phases from a per-ray stream that is only sampled for the winner.
  std::vector<double> inv_weights(coord_directions);
  for (std::size_t j = 0; j < coord_directions; ++j) inv_weights[j] = 1.0 / shift.weights.at(j + 1);
  detail::Rng rng(seed);
  std::vector<double> moduli(coord_directions);
  std::vector<double> preimage(coord_directions);
  std::vector<double> best_moduli;
  for (std::size_t r = 0; r < random_directions; ++r) {
    rng.normal_moduli(moduli);
    for (std::size_t j = 0; j < coord_directions; ++j) preimage[j] = moduli[j] * inv_weights[j];
    const double scale = norm_of_moduli(space, moduli) / norm_of_moduli(space, preimage);
    if (scale < best - tol) {
      best = scale;
      best_direction = coord_directions + r;
      best_moduli = moduli;
    }
  }
  SeqVector best_random(space);
  if (!best_moduli.empty()) {
    detail::Rng phases(seed, best_direction - coord_directions);
    std::vector<Complex> values(coord_directions);
    for (std::size_t j = 0; j < coord_directions; ++j) values[j] = std::polar(best_moduli[j], phases.phase());
    best_random = SeqVector::dense(space, values);
    best_random = best_random.scaled(1.0 / norm(best_random));
  }
  report.estimate = best;
  report.witness_direction = best_direction;

  if (best_direction < coord_directions) {
    report.witness_outside = push_outside(shift, SeqVector::basis(space, best_direction, best));
  } else {
    const double m = norm(min_norm_preimage(shift, best_random, 1));
    report.witness_outside = push_outside(shift, best_random.scaled(1.0 / m));
  }
  return report;
}

std::vector<OutsideWitness> vanishing_weight_witnesses(const BackwardShift& shift, std::size_t count) {
  std::vector<OutsideWitness> out;
  const double top = shift.weights.exact_sup();
  std::size_t last = 0;
  for (std::size_t k = 1; k <= count; ++k) {
    const auto n = shift.weights.first_index_below(top * std::ldexp(1.0, -static_cast<int>(k)), last);
    if (!n) break;
    SeqVector x = SeqVector::basis(shift.space, *n);
    SeqVector y = apply(shift, x);
    const double ny = norm(y);
    out.push_back({*n, std::move(x), std::move(y), ny});
    last = *n;
  }
  return out;
}

OutsideWitness near_infimum_witness(const BackwardShift& shift, double delta) {
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  const double target = shift.weights.exact_inf() + delta;
  const auto k = shift.weights.first_index_below(target);
  if (!k) throw InvalidArgument("no weight below inf + delta could be located");
  SeqVector x = SeqVector::basis(shift.space, *k, target / shift.weights.at(*k));
  SeqVector y = apply(shift, x);
  const double ny = norm(y);
  return {*k, std::move(x), std::move(y), ny};
}

}  // namespace lindyn
