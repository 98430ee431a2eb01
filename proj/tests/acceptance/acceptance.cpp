// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "lindyn/diskdyn.hpp"
#include "lindyn/epsilon.hpp"
#include "lindyn/extract.hpp"
#include "lindyn/report.hpp"
#include "lindyn/strongdyn.hpp"
#include "support/oracles.hpp"

using namespace lindyn;
using lindyn::testing::complex_normal;
using lindyn::testing::rng_for;
using lindyn::testing::uniform;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

const SpaceTag kSpaces[] = {SpaceTag::ell_p(1.0), SpaceTag::ell_p(2.0), SpaceTag::ell_p(3.0), SpaceTag::c0()};

WeightSeq random_weights(std::mt19937_64& g, double lo, double hi, std::size_t max_prefix) {
  std::vector<double> prefix(1 + static_cast<std::size_t>(uniform(g, 0, static_cast<double>(max_prefix))));
  for (auto& w : prefix) w = uniform(g, lo, hi);
  return WeightSeq(std::move(prefix), WeightSeq::ConstantTail{uniform(g, lo, hi)});
}

DiskAutomorphism random_auto(std::mt19937_64& g, double max_alpha = 0.9) {
  return {uniform(g, -M_PI, M_PI), std::polar(uniform(g, 0.0, max_alpha), uniform(g, -M_PI, M_PI))};
}

AnalyticFn nonvanishing_poly(std::mt19937_64& g) {
  std::vector<Complex> coeffs{std::polar(uniform(g, 2.0, 3.0), uniform(g, -M_PI, M_PI))};
  for (int k = 0; k < 3; ++k) coeffs.push_back(complex_normal(g) * 0.3);
  return AnalyticFn::polynomial(coeffs);
}

Eigen::MatrixXcd random_matrix(std::mt19937_64& g, Eigen::Index d) {
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = complex_normal(g);
  }
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  return m / es.eigenvalues().cwiseAbs().maxCoeff();
}

SeqVector dense_random(std::mt19937_64& g, std::size_t d, SpaceTag space) {
  std::vector<Complex> values(d);
  for (auto& v : values) v = complex_normal(g);
  return SeqVector::dense(space, values);
}

Verdict epsilon_vs_estimator() {
  Verdict v;
  auto& g = rng_for(1001);
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t runs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const WeightSeq w = random_weights(g, 0.1, 5.0, 200);
    for (const SpaceTag& space : kSpaces) {
      const BackwardShift b{w, space};
      const EpsilonReport r = epsilon_estimate(b, 10000, 64, static_cast<std::uint64_t>(trial));
      ++runs;
      // Prefix <= 201 entries and a constant tail, so the infimum is attained inside the scan.
      v.require(r.inf_attained, "infimum not attained for a constant tail");
      v.require(std::abs(r.estimate - r.closed_form) <= 1e-9, "estimate differs from closed form");
      v.require(r.estimate >= r.closed_form, "estimate below closed form");
      v.require(r.witness_outside && !in_image_of_unit_ball(b, *r.witness_outside), "witness inside the image");
      worst = std::max(worst, std::abs(r.estimate - r.closed_form));
    }
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 5.0, "runtime over 5 s");
  if (v.pass) {
    v.detail = std::to_string(runs) + " runs at N = 1e4, max |estimate - closedForm| = " + fmt("%.3g", worst) +
               ", " + fmt("%.2f s", elapsed);
  }
  return v;
}

Verdict membership_oracle() {
  Verdict v;
  auto& g = rng_for(1002);
  for (int trial = 0; trial < 1000; ++trial) {
    const SpaceTag space = kSpaces[trial % 4];
    const BackwardShift b{random_weights(g, 0.1, 5.0, 30), space};
    SeqVector x = testing::random_vector(g, space, 30, 0.5);
    x = x.scaled(uniform(g, 0.0, 0.999) / norm(x));
    v.require(in_image_of_unit_ball(b, apply(b, x)), "B x with ||x|| < 1 reported outside the image");
  }
  std::size_t witnesses = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const SpaceTag space = kSpaces[trial % 4];
    const WeightSeq w(std::vector<double>{uniform(g, 0.5, 5.0), uniform(g, 0.5, 5.0)},
                      WeightSeq::GeometricTail{uniform(g, 0.5, 2.0), uniform(g, 0.5, 0.95)});
    const BackwardShift b{w, space};
    for (const auto& wit : vanishing_weight_witnesses(b, 20)) {
      ++witnesses;
      v.require(wit.x == SeqVector::basis(space, wit.index), "x_k is not a basis vector");
      v.require(!in_image_of_unit_ball(b, wit.y), "y_k reported inside the image");
      v.require(norm(wit.y) == b.weights.at(wit.index), "||y_k|| differs from the weight");
    }
  }
  v.require(witnesses == 800, "fewer vanishing-weight witnesses than requested");
  if (v.pass) v.detail = "1000 forward images inside, " + std::to_string(witnesses) + " decay witnesses outside with ||y_k|| = w_{n_k}";
  return v;
}

Verdict hc_witness() {
  Verdict v;
  auto& g = rng_for(1003);
  double slowest = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const SpaceTag space = kSpaces[trial % 4];
    const BackwardShift b{random_weights(g, 0.5, 3.0, 20), space};
    const double eps = epsilon_closed_form(b);
    const double gain = uniform(g, 1.1, 4.0);
    const Complex c = std::polar(gain / eps, uniform(g, -M_PI, M_PI));
    const SeqVector u0 = testing::random_vector(g, space, 12, 0.5);
    const SeqVector target = testing::random_vector(g, space, 12, 0.5);
    const double r = uniform(g, 0.01, 1.0);
    const auto t0 = Clock::now();
    const auto w = strong_hc_witness(b, c, u0, r, target, 100000);
    slowest = std::max(slowest, seconds_since(t0));
    v.require(w.status == WitnessStatus::found, "no witness found");
    if (w.status != WitnessStatus::found) continue;
    const double k0 = static_cast<double>(kernel_index(b, u0));
    const double bound = k0 + std::max(0.0, std::ceil(std::log(norm(target) / r) / std::log(gain))) + 1;
    v.require(static_cast<double>(w.n) <= bound, "exponent above the bound");
    v.require(norm(w.u - u0) < r, "witness outside the ball");
    SeqVector image = w.u;
    for (std::size_t k = 0; k < w.n; ++k) image = apply(b, image).scaled(c);
    v.require(norm(image - target) <= 1e-9 * std::max(1.0, norm(target)), "reconstruction residual too large");
  }
  v.require(slowest < 1.0, "an instance took over 1 s");
  const SpaceTag l2 = SpaceTag::ell_p(2.0);
  const auto canon = strong_hc_witness({WeightSeq::constant(1.0), l2}, 2.0, SeqVector(l2), 0.1, SeqVector::basis(l2, 0), 100);
  v.require(canon.n == 4 && canon.u == SeqVector::basis(l2, 4, 1.0 / 16), "canonical case differs from n = 4, u = e_4/16");
  if (v.pass) v.detail = "100 instances within the exponent bound, slowest " + fmt("%.2e s", slowest) + "; canonical n = 4, u = e_4/16";
  return v;
}

Verdict extraction_certificate() {
  Verdict v;
  const SpaceTag l2 = SpaceTag::ell_p(2.0);
  const LinearOp shift = LinearOp::shift({WeightSeq::constant(2.0), l2});
  for (std::size_t k : {1UL, 3UL, 5UL, 8UL}) {
    const auto t = extract_subsequence(shift, SeqVector(l2, {{0, 1.0}, {1, 1.0}}), k);
    std::vector<std::size_t> expected(k);
    for (std::size_t j = 0; j < k; ++j) expected[j] = j + 1;
    v.require(t.status == ExtractionStatus::completed && t.exponents == expected, "vanishing family exponents");
    for (double d : t.step_distances) v.require(std::abs(d - t.scale) <= 1e-12, "vanishing family distance != scale");
    v.require(verify_trace(shift, t), "vanishing family trace failed verification");
  }
  auto& g = rng_for(1004);
  int completed = 0, capped = 0, tampered = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const SpaceTag space = trial % 5 == 4 ? SpaceTag::ell_p(1.0) : l2;
    const Eigen::MatrixXcd m = random_matrix(g, 10);
    const LinearOp op = LinearOp::matrix(m, space);
    const auto t = extract_subsequence(op, dense_random(g, 10, space), 6, 400);
    if (t.status == ExtractionStatus::completed) {
      ++completed;
      for (double d : t.step_distances) v.require(d > 1.0 + t.margin, "completed step distance not above 1 + margin");
      v.require(t.final_distance >= 1.0 - 1e-9, "final distance below 1");
      v.require(verify_trace(op, t), "completed trace failed verification");
      ExtractionTrace bad = t;
      bad.exponents.back() += 1;
      v.require(!verify_trace(op, bad), "tampered exponent accepted");
      ExtractionTrace inflated = t;
      inflated.step_distances.front() += 0.01;
      v.require(!verify_trace(op, inflated), "tampered distance accepted");
      tampered += 2;
    } else {
      v.require(t.status == ExtractionStatus::search_cap_exceeded, "unexpected status");
      v.require(!verify_trace(op, t), "cap-exceeded trace verified");
      ++capped;
    }
  }
  if (v.pass) {
    v.detail = "vanishing family exact; 20 random 10x10: " + std::to_string(completed) + " completed and verified, " +
               std::to_string(capped) + " searchCapExceeded; " + std::to_string(tampered) + " tampered traces rejected";
  }
  return v;
}

Verdict distance_oracles() {
  Verdict v;
  auto& g = rng_for(1005);
  const SpaceTag l2 = SpaceTag::ell_p(2.0);
  double worst2 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + static_cast<std::size_t>(uniform(g, 0, 20));
    const std::size_t count = static_cast<std::size_t>(uniform(g, 0, 9));
    std::vector<SeqVector> span;
    for (std::size_t k = 0; k < std::min(count, 8UL); ++k) span.push_back(testing::random_vector(g, l2, dim, 0.7));
    const SeqVector x = testing::random_vector(g, l2, dim, 0.8);
    const Subspace s(l2, span);
    const double closed = dist_to_span(x, s);
    const double convex = dist_to_span_convex(x, s);
    worst2 = std::max(worst2, std::abs(closed - convex));
    v.require(std::abs(closed - convex) <= 1e-7, "l2 closed form and convex solver disagree");
  }
  const SpaceTag l1 = SpaceTag::ell_p(1.0);
  double worst1 = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SeqVector> span{testing::random_vector(g, l1, 3)};
    if (trial % 2) span.push_back(testing::random_vector(g, l1, 3));
    const SeqVector x = testing::random_vector(g, l1, 3);
    const double solver = dist_to_span(x, Subspace(l1, span));
    const double grid = testing::grid_distance(x, span, 3);
    worst1 = std::max(worst1, std::abs(solver - grid));
    v.require(std::abs(solver - grid) <= 1e-3, "l1 solver and grid oracle disagree");
    v.require(solver <= grid + 1e-9, "l1 solver above the grid minimum");
  }
  if (v.pass) v.detail = "l2 max gap " + fmt("%.2e", worst2) + " over 100; l1 grid max gap " + fmt("%.2e", worst1) + " over 20";
  return v;
}

Verdict iterate_formula() {
  Verdict v;
  auto& g = rng_for(1006);
  const auto grid = default_grid();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const AnalyticFn w = AnalyticFn::polynomial({complex_normal(g), complex_normal(g), complex_normal(g) * 0.5});
    const AnalyticFn f = AnalyticFn::polynomial({complex_normal(g), complex_normal(g), complex_normal(g)});
    const WeightedCompOp op(w, random_auto(g, 0.8));
    AnalyticFn step = f;
    for (std::uint64_t n = 1; n <= 10; ++n) {
      step = wcomp_apply(op, step);
      const AnalyticFn formula = wcomp_iterate(op, n, f);
      for (const Complex z : grid) {
        const double gap = std::abs(formula(z) - step(z)) / std::max(1.0, std::abs(step(z)));
        worst = std::max(worst, gap);
      }
    }
  }
  v.require(worst <= 1e-9, "product formula and repeated application disagree");
  v.detail = "20 (w, phi), n <= 10, 200-point grid, max gap " + fmt("%.2e", worst);
  return v;
}

Verdict inverse_identity() {
  Verdict v;
  auto& g = rng_for(1007);
  const auto grid = default_grid();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const WeightedCompOp op(nonvanishing_poly(g), random_auto(g));
    const WeightedCompOp inv = wcomp_inverse(op, grid);
    const AnalyticFn f = AnalyticFn::polynomial({complex_normal(g), complex_normal(g), complex_normal(g)});
    const AnalyticFn left = wcomp_apply(op, wcomp_apply(inv, f));
    const AnalyticFn right = wcomp_apply(inv, wcomp_apply(op, f));
    for (const Complex z : grid) {
      worst = std::max({worst, std::abs(left(z) - f(z)), std::abs(right(z) - f(z))});
    }
  }
  v.require(worst <= 1e-10, "inverse identity violated");
  v.detail = "20 automorphisms with nonvanishing weights, max |C C^-1 f - f| = " + fmt("%.2e", worst);
  return v;
}

Verdict denjoy_wolff() {
  Verdict v;
  auto& g = rng_for(1008);
  int found = 0;
  double worst = 0.0;
  while (found < 20) {
    const DiskAutomorphism phi = random_auto(g, 0.95);
    const FixedPointInfo info = fixed_points(phi);
    if (info.kind == AutomorphismKind::elliptic) continue;
    ++found;
    // Plain iteration from the origin until the orbit settles.
    Complex z = 0.0;
    for (int k = 0; k < 1000000; ++k) {
      const Complex next = phi(z);
      const bool settled = std::abs(next - z) < 1e-16;
      z = next;
      if (settled) break;
    }
    worst = std::max(worst, std::abs(z - *info.denjoy_wolff));
  }
  v.require(worst <= 1e-8, "quadratic solver and iteration limit disagree");
  const auto worked = fixed_points(DiskAutomorphism(0.0, -0.5));
  v.require(std::abs(*worked.denjoy_wolff - 1.0) < 1e-14, "worked case is not a = 1");
  v.detail = "20 non-elliptic automorphisms, max |limit - a| = " + fmt("%.2e", worst) + "; worked case a = 1";
  return v;
}

Verdict obstructions() {
  Verdict v;
  auto& g = rng_for(1009);
  int elliptic = 0, boundary = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto report = obstruction_report(nonvanishing_poly(g), random_auto(g), 50, 20);
    v.require(report.target_value == 1.0, "target value not stated as 1");
    worst = std::max(worst, report.max_abs_value);
    if (report.kind == ObstructionCase::interior_fixed_point) {
      ++elliptic;
      v.require(report.values.size() == 50 && report.max_abs_value <= 1e-12, "elliptic values above 1e-12");
    } else {
      ++boundary;
      v.require(report.kind == ObstructionCase::boundary_denjoy_wolff, "unexpected case");
      v.require(report.values.size() == 20 && report.max_abs_value <= 1e-12, "boundary values above 1e-12");
    }
  }
  const auto rot = obstruction_report(AnalyticFn::constant(1.0), DiskAutomorphism::rotation(M_PI));
  v.require(rot.kind == ObstructionCase::interior_fixed_point && rot.max_abs_value == 0.0, "phi = -z case");
  const auto worked = obstruction_report(AnalyticFn::polynomial({2.0, 1.0}), DiskAutomorphism(0.0, -0.5), 50, 20);
  v.require(worked.kind == ObstructionCase::boundary_denjoy_wolff && worked.max_abs_value <= 1e-12 &&
                worked.denjoy_wolff && std::abs(*worked.denjoy_wolff + 1.0) < 1e-14,
            "worked boundary case");
  const auto zero = obstruction_report(AnalyticFn::polynomial({0.0, 1.0}), DiskAutomorphism(0.4, 0.3));
  v.require(zero.kind == ObstructionCase::weight_zero && zero.point == Complex(0.0) && zero.target_value == 1.0,
            "weight-zero case not reported at 0");
  if (v.pass) {
    v.detail = std::to_string(elliptic) + " elliptic + " + std::to_string(boundary) +
               " boundary random cases, max |value| = " + fmt("%.2e", worst) + "; weight zero reported at 0";
  }
  return v;
}

std::string run_cli(const std::string& cli, const std::string& args, const std::string& out) {
  const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out + "\"";
  if (std::system(cmd.c_str()) != 0) return "";
  std::ifstream in(out, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

Verdict determinism() {
  Verdict v;
  const SpaceTag l15 = SpaceTag::ell_p(1.5);
  const BackwardShift b{WeightSeq({2.0, 1.5, 3.0}, WeightSeq::ConstantTail{1.75}), l15};
  v.require(dump(to_json(epsilon_estimate(b, 200, 64, 42))) == dump(to_json(epsilon_estimate(b, 200, 64, 42))),
            "in-process reports differ");
  int compared = 1;
#ifdef LINDYN_CLI_PATH
  const std::string cli = LINDYN_CLI_PATH;
  const char* configs[] = {
      "epsilon --weights table:2,1.5,3 --tail const:1.75 --space l1.5 --N 200 --R 64 --seed 42",
      "witness --weights formula:1+1/n --c 1.5i --target 0:1,3:-2 --center 2:1 --radius 0.05 --seed 3",
      "classify --weights formula:2*0.9^n --seed 0",
      "extract --op matrix --dim 10 --K 4 --seed 17 --space l1",
      "disk --phi theta=0.7,alpha=0.3-0.2i --w poly:3,0.5,0.2i --seed 0",
      "epsilon --weights const:2 --N 50 --seed 9 --format csv",
  };
  int k = 0;
  for (const char* args : configs) {
    const std::string base = "acceptance_determinism_" + std::to_string(k++);
    const std::string first = run_cli(cli, args, base + "_a.out");
    const std::string second = run_cli(cli, args, base + "_b.out");
    v.require(!first.empty() && first == second, std::string("CLI output differs for: ") + args);
    std::remove((base + "_a.out").c_str());
    std::remove((base + "_b.out").c_str());
    ++compared;
  }
#endif
  if (v.pass) v.detail = std::to_string(compared) + " report pairs byte-identical";
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"epsilon closed form vs estimator", epsilon_vs_estimator},
      {"unit-ball membership oracle", membership_oracle},
      {"strong hypercyclicity witness", hc_witness},
      {"extraction certificate", extraction_certificate},
      {"distance oracle equivalence", distance_oracles},
      {"iterate formula equivalence", iterate_formula},
      {"inverse identity", inverse_identity},
      {"Denjoy-Wolff consistency", denjoy_wolff},
      {"obstruction certificates", obstructions},
      {"determinism", determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d %s: %s\n", v.pass ? "PASS" : "FAIL", index++, name, v.detail.c_str());
    failures += !v.pass;
  }
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
