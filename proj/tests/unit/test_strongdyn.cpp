#include <cmath>

#include "doctest.h"
#include "lindyn/strongdyn.hpp"
#include "support/oracles.hpp"

using namespace lindyn;
using lindyn::testing::rng_for;

namespace {

const SpaceTag l2 = SpaceTag::ell_p(2.0);

BackwardShift constant_shift(double w, SpaceTag space = l2) { return {WeightSeq::constant(w), space}; }

SeqVector iterate_scaled(const BackwardShift& b, Complex c, std::size_t n, const SeqVector& u) {
  SeqVector out = u;
  for (std::size_t k = 0; k < n; ++k) out = apply(b, out).scaled(c);
  return out;
}

}  // namespace

TEST_CASE("classification examples") {
  const auto two = classify(constant_shift(2.0));
  CHECK(two.surjective);
  CHECK(two.dense_generalized_kernel);
  CHECK(two.strongly_supercyclic);
  CHECK(two.scalar_threshold == 0.5);

  const auto decaying = classify({WeightSeq({}, WeightSeq::GeometricTail{1.0, 0.5}), l2});
  CHECK_FALSE(decaying.surjective);
  CHECK_FALSE(decaying.strongly_supercyclic);
  CHECK(std::isinf(decaying.scalar_threshold));

  CHECK(classify(constant_shift(1.0)).scalar_threshold == 1.0);
}

TEST_CASE("classification agrees with the closed form") {
  auto& g = rng_for(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> prefix(10);
    for (auto& w : prefix) w = testing::uniform(g, 0.1, 5.0);
    const bool decays = trial % 3 == 0;
    const WeightSeq ws = decays ? WeightSeq(prefix, WeightSeq::GeometricTail{1.0, 0.8})
                                : WeightSeq(prefix, WeightSeq::ConstantTail{testing::uniform(g, 0.1, 5.0)});
    const BackwardShift b{ws, l2};
    const auto cls = classify(b);
    CHECK(cls.epsilon == epsilon_closed_form(b));
    CHECK(cls.surjective == !decays);
    CHECK(cls.strongly_supercyclic == (cls.surjective && cls.dense_generalized_kernel));
    if (!cls.strongly_supercyclic) CHECK(epsilon_closed_form(b) == 0.0);
  }
}

TEST_CASE("witness examples") {
  const auto a = strong_hc_witness(constant_shift(1.0), 2.0, SeqVector(l2), 0.1, SeqVector::basis(l2, 0), 100);
  CHECK(a.status == WitnessStatus::found);
  CHECK(a.n == 4);
  CHECK(a.u == SeqVector::basis(l2, 4, 1.0 / 16));
  CHECK(a.residual == 0.0);
  CHECK(a.above_threshold);

  const auto b = strong_hc_witness(constant_shift(1.0), 2.0, SeqVector::basis(l2, 0), 0.1,
                                   SeqVector::basis(l2, 0), 100);
  CHECK(b.status == WitnessStatus::found);
  CHECK(b.n == 4);
  CHECK(b.start_exponent == 1);
  CHECK(b.u == SeqVector(l2, {{0, 1.0}, {4, 1.0 / 16}}));
  CHECK(iterate_scaled(constant_shift(1.0), 2.0, 4, b.u) == SeqVector::basis(l2, 0));

  const auto c = strong_hc_witness(constant_shift(2.0), 1.0, SeqVector(l2), 0.5, SeqVector::basis(l2, 0), 100);
  CHECK(c.status == WitnessStatus::found);
  CHECK(c.n == 2);
  CHECK(c.u == SeqVector::basis(l2, 2, 0.25));
}

TEST_CASE("witness failure modes") {
  const auto cap = strong_hc_witness(constant_shift(1.0), 2.0, SeqVector(l2), 1e-6, SeqVector::basis(l2, 0), 10);
  CHECK(cap.status == WitnessStatus::cap_exceeded);
  CHECK(cap.exponent_cap == 10);

  const auto slow = strong_hc_witness(constant_shift(1.0), 0.9, SeqVector(l2), 0.1, SeqVector::basis(l2, 0), 50);
  CHECK(slow.status == WitnessStatus::inconclusive);
  CHECK_FALSE(slow.above_threshold);

  // Below the threshold a witness can still appear when early weights are large.
  const BackwardShift bumpy{WeightSeq({10.0, 10.0}, WeightSeq::ConstantTail{0.5}), l2};
  const auto lucky = strong_hc_witness(bumpy, 1.5, SeqVector(l2), 0.01, SeqVector::basis(l2, 0), 50);
  CHECK_FALSE(lucky.above_threshold);
  CHECK(lucky.status == WitnessStatus::found);
  CHECK(lucky.n == 2);

  CHECK_THROWS_AS(strong_hc_witness(constant_shift(1.0), 2.0, SeqVector(l2), 0.1, SeqVector(l2), 10),
                  InvalidArgument);
  CHECK_THROWS_AS(strong_hc_witness(constant_shift(1.0), 2.0, SeqVector(l2), 0.0, SeqVector::basis(l2, 0), 10),
                  InvalidArgument);
  CHECK_THROWS_AS(strong_hc_witness(constant_shift(1.0), 0.0, SeqVector(l2), 0.1, SeqVector::basis(l2, 0), 10),
                  InvalidArgument);
}

TEST_CASE("witness bound on random instances") {
  auto& g = rng_for(13);
  const SpaceTag spaces[] = {SpaceTag::ell_p(1.0), l2, SpaceTag::ell_p(3.0), SpaceTag::c0()};
  for (int trial = 0; trial < 100; ++trial) {
    const SpaceTag space = spaces[trial % 4];
    std::vector<double> prefix(1 + static_cast<std::size_t>(testing::uniform(g, 0, 20)));
    for (auto& w : prefix) w = testing::uniform(g, 0.5, 3.0);
    const BackwardShift b{WeightSeq(prefix, WeightSeq::ConstantTail{testing::uniform(g, 0.5, 3.0)}), space};
    const double eps = epsilon_closed_form(b);
    const double gain = testing::uniform(g, 1.1, 4.0);
    const Complex c = std::polar(gain / eps, testing::uniform(g, -M_PI, M_PI));
    const SeqVector u0 = testing::random_vector(g, space, 12, 0.5);
    SeqVector v = testing::random_vector(g, space, 12, 0.5);
    if (v.is_zero()) v = SeqVector::basis(space, 3);
    const double r = testing::uniform(g, 0.01, 1.0);

    const auto w = strong_hc_witness(b, c, u0, r, v, 10000);
    REQUIRE(w.status == WitnessStatus::found);
    const double bound = static_cast<double>(kernel_index(b, u0)) +
                         std::ceil(std::log(norm(v) / r) / std::log(gain)) + 1;
    CHECK(static_cast<double>(w.n) <= std::max(bound, static_cast<double>(kernel_index(b, u0))));
    CHECK(w.n >= kernel_index(b, u0));
    CHECK(norm(w.u - u0) < r);
    CHECK(w.perturbation_norm < r);
    CHECK(norm(iterate_scaled(b, c, w.n, w.u) - v) <= 1e-9 * std::max(1.0, norm(v)));
    CHECK(w.residual <= 1e-9 * std::max(1.0, norm(v)));
    CHECK(iterate_scaled(b, c, w.n, u0).is_zero());

    // Minimality: no smaller admissible exponent fits in the ball.
    for (std::size_t n = kernel_index(b, u0); n < w.n; ++n) {
      CHECK(norm(min_norm_preimage(b, v, n)) / std::pow(std::abs(c), static_cast<double>(n)) >= r * (1 - 1e-12));
    }
  }
}

TEST_CASE("witness preimage is linear in the target") {
  const BackwardShift b{WeightSeq({1.5, 2.0, 0.75}, WeightSeq::ConstantTail{1.25}), l2};
  const SeqVector v(l2, {{0, Complex(1, 2)}, {2, -0.5}});
  const auto base = strong_hc_witness(b, 3.0, SeqVector(l2), 0.2, v, 1000);
  REQUIRE(base.status == WitnessStatus::found);
  for (double t : {0.5, 0.125}) {
    const auto scaled = strong_hc_witness(b, 3.0, SeqVector(l2), 0.2, v.scaled(t), 1000);
    REQUIRE(scaled.status == WitnessStatus::found);
    CHECK(scaled.n <= base.n);
    const SeqVector same_n = min_norm_preimage(b, v.scaled(t), base.n);
    CHECK(norm(same_n - min_norm_preimage(b, v, base.n).scaled(t)) <= 1e-15 * norm(same_n) * 8);
  }
}
