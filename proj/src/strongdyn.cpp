#include "lindyn/strongdyn.hpp"

#include <cmath>
#include <limits>

namespace lindyn {

StrongClassification classify(const BackwardShift& shift) {
  StrongClassification out;
  out.epsilon = epsilon_closed_form(shift);
  out.surjective = shift.weights.exact_inf() > 0.0;
  out.dense_generalized_kernel = true;
  out.strongly_supercyclic = out.surjective && out.dense_generalized_kernel;
  out.scalar_threshold = out.epsilon > 0.0 ? 1.0 / out.epsilon : std::numeric_limits<double>::infinity();
  return out;
}

std::string to_string(WitnessStatus status) {
  switch (status) {
    case WitnessStatus::found: return "found";
    case WitnessStatus::cap_exceeded: return "capExceeded";
    case WitnessStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

HCWitness strong_hc_witness(const BackwardShift& shift, Complex c, const SeqVector& u0, double r,
                            const SeqVector& v, std::size_t n_cap) {
  require_same_space(shift.space, u0.space());
  require_same_space(shift.space, v.space());
  if (v.is_zero()) throw InvalidArgument("target vector must be nonzero");
  if (!(r > 0.0)) throw InvalidArgument("radius must be positive");
  if (c == Complex(0.0)) throw InvalidArgument("scalar c must be nonzero");

  const double eps = epsilon_closed_form(shift);
  HCWitness out{.u = u0, .perturbation = SeqVector(shift.space)};
  out.above_threshold = std::abs(c) * eps > 1.0;
  out.start_exponent = kernel_index(shift, u0);
  out.exponent_cap = n_cap;

  // |p_i| = |v_i| / (|c|^n w_{i+1} ... w_{i+n}); the denominators are
  // advanced one factor per exponent.
  const auto coords = v.coords();
  std::vector<double> denominators(coords.size(), 1.0);
  std::vector<Complex> magnitudes(coords.size());
  const double modulus = std::abs(c);
  std::size_t n = 0;
  auto advance = [&]() {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      denominators[i] *= modulus * shift.weights.at(coords[i].index + n + 1);
    }
    ++n;
  };
  while (n < out.start_exponent) advance();

  for (;;) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      magnitudes[i] = std::abs(coords[i].value) / denominators[i];
    }
    if (norm_of(shift.space, magnitudes) < r) {
      out.perturbation = min_norm_preimage(shift, v, n).scaled(std::pow(c, -static_cast<double>(n)));
      out.perturbation_norm = norm(out.perturbation);
      // The incremental bound and the closed-form preimage can disagree by
      // rounding right at the radius; keep searching in that case.
      if (out.perturbation_norm < r) break;
    }
    if (n >= n_cap) {
      out.status = out.above_threshold ? WitnessStatus::cap_exceeded : WitnessStatus::inconclusive;
      out.n = n;
      out.perturbation = SeqVector(shift.space);
      out.perturbation_norm = 0.0;
      return out;
    }
    advance();
  }

  out.n = n;
  out.u = u0 + out.perturbation;
  const SeqVector image = apply_iterate(shift, n, out.u).scaled(std::pow(c, static_cast<double>(n)));
  out.residual = norm(image - v);
  out.status = WitnessStatus::found;
  return out;
}

}  // namespace lindyn
