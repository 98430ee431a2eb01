#pragma once

#include <cstddef>
#include <string>

#include "lindyn/epsilon.hpp"

namespace lindyn {

/// Strong supercyclicity of a weighted backward shift. B_W is never
/// invertible (e_0 is in its kernel), so strong supercyclicity reduces to
/// surjectivity plus a dense generalized kernel, and c B_W is strongly
/// hypercyclic whenever |c| > 1 / eps.
struct StrongClassification {
  bool surjective = false;
  /// Finitely supported vectors are dense and each is killed by some B^n.
  bool dense_generalized_kernel = true;
  bool strongly_supercyclic = false;
  double epsilon = 0.0;
  /// 1 / eps, +inf when eps = 0.
  double scalar_threshold = 0.0;
};

StrongClassification classify(const BackwardShift& shift);

enum class WitnessStatus { found, cap_exceeded, inconclusive };
std::string to_string(WitnessStatus status);

/// u in the ball of radius r around u0 with (c B)^n u = v.
struct HCWitness {
  WitnessStatus status = WitnessStatus::inconclusive;
  std::size_t n = 0;
  SeqVector u;
  /// u - u0 = c^-n * min_norm_preimage(v, n).
  SeqVector perturbation;
  double perturbation_norm = 0.0;
  /// ||(c B)^n u - v||.
  double residual = 0.0;
  /// |c| > 1 / eps, in which case a witness always exists.
  bool above_threshold = false;
  std::size_t start_exponent = 0;
  std::size_t exponent_cap = 0;
};

/// Smallest n >= kernel_index(u0), n <= n_cap, whose scaled least-norm
/// preimage of v fits in the radius-r ball. Exceeding the cap is reported as
/// cap_exceeded when |c| > 1/eps and inconclusive otherwise.
HCWitness strong_hc_witness(const BackwardShift& shift, Complex c, const SeqVector& u0, double r,
                            const SeqVector& v, std::size_t n_cap);

}  // namespace lindyn
