#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

#include "lindyn/seqspace.hpp"

namespace lindyn::detail {

// Engine is std::mt19937_64; the mapping to doubles is written out so that
// reports stay byte-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream keyed by (seed, stream) through std::seed_seq.
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Fills out with moduli of standard complex normals (Rayleigh,
  /// sqrt(-2 log u)). Each engine draw is split into two 32-bit uniforms:
  /// the tail past modulus 6.7 is cut at probability 2^-32, which is
  /// harmless for search directions and halves the engine cost.
  void normal_moduli(std::span<double> out) {
    const auto rayleigh = [](std::uint64_t bits) {
      return std::sqrt(-2.0 * std::log((static_cast<double>(bits) + 0.5) * 0x1.0p-32));
    };
    std::size_t k = 0;
    for (; k + 1 < out.size(); k += 2) {
      const std::uint64_t x = engine_();
      out[k] = rayleigh(x >> 32);
      out[k + 1] = rayleigh(x & 0xffffffffu);
    }
    if (k < out.size()) out[k] = rayleigh(engine_() >> 32);
  }

  /// Uniform phase in (-pi, pi).
  double phase() { return 2.0 * std::numbers::pi * (uniform() - 0.5); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lindyn::detail
