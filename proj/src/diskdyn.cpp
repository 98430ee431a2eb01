#include "lindyn/diskdyn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

namespace lindyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kIdentityTol = 1e-14;

Complex unit(double theta) { return std::polar(1.0, theta); }

std::string format_complex(Complex z) {
  std::ostringstream out;
  out.precision(17);
  out << z.real() << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return out.str();
}

}  // namespace

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
  if (a * d - b * c == Complex(0.0)) throw InvalidArgument("Moebius coefficients have zero determinant");
}

MoebiusMap MoebiusMap::compose(const MoebiusMap& inner) const {
  Complex a = a_ * inner.a_ + b_ * inner.c_;
  Complex b = a_ * inner.b_ + b_ * inner.d_;
  Complex c = c_ * inner.a_ + d_ * inner.c_;
  Complex d = c_ * inner.b_ + d_ * inner.d_;
  const double largest = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (largest > 0.0) {
    a /= largest;
    b /= largest;
    c /= largest;
    d /= largest;
  }
  return {Unchecked{}, a, b, c, d};
}

MoebiusMap MoebiusMap::power(std::uint64_t n) const {
  MoebiusMap result = identity();
  MoebiusMap base = *this;
  while (n > 0) {
    if (n & 1U) result = result.compose(base);
    n >>= 1U;
    if (n > 0) base = base.compose(base);
  }
  return result;
}

bool MoebiusMap::maps_disk_into_disk() const {
  if (c_ != Complex(0.0) && !(std::abs(d_ / c_) > 1.0)) return false;
  constexpr int kSamples = 256;
  for (int k = 0; k < kSamples; ++k) {
    if (std::abs((*this)(unit(kTwoPi * k / kSamples))) > 1.0 + 1e-12) return false;
  }
  return std::abs((*this)(0.0)) < 1.0;
}

DiskAutomorphism::DiskAutomorphism(double theta, Complex alpha) : alpha_(alpha) {
  if (!std::isfinite(theta) || !std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidArgument("automorphism parameters must be finite");
  }
  if (!(std::abs(alpha) < 1.0)) throw InvalidArgument("automorphism needs |alpha| < 1");
  theta = std::remainder(theta, kTwoPi);
  if (theta <= -std::numbers::pi) theta += kTwoPi;
  theta_ = theta;
}

DiskAutomorphism DiskAutomorphism::from_moebius(const MoebiusMap& map) {
  if (map.d() == Complex(0.0) || map.a() == Complex(0.0)) {
    throw InvalidArgument("coefficients do not describe a disk automorphism");
  }
  const Complex rotation = map.a() / map.d();
  return {std::arg(rotation), -map.b() / map.a()};
}

MoebiusMap DiskAutomorphism::to_moebius() const {
  const Complex rotation = unit(theta_);
  return {rotation, -rotation * alpha_, -std::conj(alpha_), 1.0};
}

DiskAutomorphism compose_auto(const DiskAutomorphism& phi, const DiskAutomorphism& psi) {
  return DiskAutomorphism::from_moebius(phi.to_moebius().compose(psi.to_moebius()));
}

DiskAutomorphism invert_auto(const DiskAutomorphism& phi) {
  // w = e^{it}(z - a)/(1 - conj(a) z)  <=>  z = e^{-it}(w + e^{it} a)/(1 + e^{-it} conj(a) w).
  return {-phi.theta(), -unit(phi.theta()) * phi.alpha()};
}

namespace {

std::uint64_t magnitude(std::int64_t n) {
  return n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
}

}  // namespace

DiskAutomorphism iterate_auto(const DiskAutomorphism& phi, std::int64_t n) {
  DiskAutomorphism base = n < 0 ? invert_auto(phi) : phi;
  std::uint64_t count = magnitude(n);
  DiskAutomorphism result = DiskAutomorphism::identity();
  try {
    while (count > 0) {
      if (count & 1U) result = compose_auto(result, base);
      count >>= 1U;
      if (count > 0) base = compose_auto(base, base);
    }
  } catch (const InvalidArgument&) {
    throw PreconditionFailed("iterate " + std::to_string(n) +
                             " has |alpha| indistinguishable from 1 in double precision");
  }
  return result;
}

MoebiusMap iterate_map(const DiskAutomorphism& phi, std::int64_t n) {
  const DiskAutomorphism base = n < 0 ? invert_auto(phi) : phi;
  return base.to_moebius().power(magnitude(n));
}

std::string to_string(AutomorphismKind kind) {
  switch (kind) {
    case AutomorphismKind::identity: return "identity";
    case AutomorphismKind::elliptic: return "elliptic";
    case AutomorphismKind::parabolic: return "parabolic";
    case AutomorphismKind::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

FixedPointInfo fixed_points(const DiskAutomorphism& phi) {
  FixedPointInfo info;
  const double theta = phi.theta();
  const Complex alpha = phi.alpha();
  const double a2 = std::norm(alpha);
  const double half_cos = std::cos(0.5 * theta);
  // tr^2/det for the normalized matrix is 4 cos^2(theta/2) / (1 - |alpha|^2).
  info.discriminant = 4.0 * half_cos * half_cos / (1.0 - a2) - 4.0;

  if (std::abs(alpha) <= kIdentityTol) {
    if (std::abs(theta) <= kIdentityTol) {
      info.kind = AutomorphismKind::identity;
      return info;
    }
    info.kind = AutomorphismKind::elliptic;
    info.interior_fixed = 0.0;
    info.denjoy_wolff = 0.0;
    return info;
  }

  const MoebiusMap m = phi.to_moebius();
  // c z^2 + (d - a) z - b = 0.
  const Complex qa = m.c();
  const Complex qb = m.d() - m.a();
  const Complex qc = -m.b();
  const Complex root_disc = std::sqrt(qb * qb - 4.0 * qa * qc);
  const double sign = (std::conj(qb) * root_disc).real() >= 0.0 ? 1.0 : -1.0;
  const Complex q = -0.5 * (qb + sign * root_disc);
  Complex z1 = q / qa;
  Complex z2 = q != Complex(0.0) ? qc / q : z1;
  auto polish = [&](Complex z) {
    for (int k = 0; k < 2; ++k) {
      const Complex g = (qa * z + qb) * z + qc;
      const Complex dg = 2.0 * qa * z + qb;
      if (dg == Complex(0.0)) break;
      z -= g / dg;
    }
    return z;
  };

  info.near_parabolic =
      std::abs(info.discriminant) > kParabolicTol && std::abs(info.discriminant) < 1e-6;

  if (std::abs(info.discriminant) <= kParabolicTol) {
    info.kind = AutomorphismKind::parabolic;
    Complex z = -qb / (2.0 * qa);
    z /= std::abs(z);
    info.boundary_fixed = {z};
    info.denjoy_wolff = z;
    return info;
  }
  if (info.discriminant < 0.0) {
    info.kind = AutomorphismKind::elliptic;
    Complex inside = std::abs(z1) < std::abs(z2) ? z1 : z2;
    inside = polish(inside);
    info.interior_fixed = inside;
    info.denjoy_wolff = inside;
    return info;
  }
  info.kind = AutomorphismKind::hyperbolic;
  z1 = polish(z1);
  z2 = polish(z2);
  z1 /= std::abs(z1);
  z2 /= std::abs(z2);
  // |phi'(z)| = |det| / |c z + d|^2; the attracting point has |phi'| < 1.
  const double det = std::abs(m.a() * m.d() - m.b() * m.c());
  auto derivative = [&](Complex z) { return det / std::norm(m.c() * z + m.d()); };
  if (derivative(z2) < derivative(z1)) std::swap(z1, z2);
  info.boundary_fixed = {z1, z2};
  info.denjoy_wolff = z1;
  return info;
}

struct AnalyticFn::Node {
  struct Polynomial {
    std::vector<Complex> coeffs;
  };
  struct Moebius {
    MoebiusMap map;
  };
  struct RootProduct {
    std::vector<Complex> roots;
    Complex scale;
  };
  struct Reciprocal {
    AnalyticFn inner;
  };
  struct Composition {
    AnalyticFn outer;
    MoebiusMap inner;
  };
  struct Product {
    std::vector<AnalyticFn> factors;
  };
  std::variant<Polynomial, Moebius, RootProduct, Reciprocal, Composition, Product> rep;
};

AnalyticFn AnalyticFn::constant(Complex value) { return polynomial({value}); }

AnalyticFn AnalyticFn::polynomial(std::vector<Complex> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return AnalyticFn(std::make_shared<const Node>(Node{Node::Polynomial{std::move(coeffs)}}));
}

AnalyticFn AnalyticFn::moebius(MoebiusMap map) {
  if (map.c() != Complex(0.0) && !(std::abs(map.d() / map.c()) > 1.0)) {
    throw InvalidArgument("Moebius function has a pole in the closed disk");
  }
  return AnalyticFn(std::make_shared<const Node>(Node{Node::Moebius{map}}));
}

AnalyticFn AnalyticFn::root_product(std::vector<Complex> roots, Complex scale) {
  return AnalyticFn(std::make_shared<const Node>(Node{Node::RootProduct{std::move(roots), scale}}));
}

AnalyticFn AnalyticFn::reciprocal(const AnalyticFn& f, const std::vector<Complex>& grid) {
  for (const Complex z : grid) {
    if (!(std::abs(f(z)) > kVanishTol)) {
      throw VanishingFunction("function vanishes at grid point " + format_complex(z), z);
    }
  }
  return AnalyticFn(std::make_shared<const Node>(Node{Node::Reciprocal{f}}));
}

AnalyticFn AnalyticFn::compose(const AnalyticFn& f, MoebiusMap map) {
  return AnalyticFn(std::make_shared<const Node>(Node{Node::Composition{f, map}}));
}

AnalyticFn AnalyticFn::product(std::vector<AnalyticFn> factors) {
  return AnalyticFn(std::make_shared<const Node>(Node{Node::Product{std::move(factors)}}));
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

}  // namespace

Complex AnalyticFn::operator()(Complex z) const {
  return std::visit(Overloaded{
                        [&](const Node::Polynomial& p) {
                          Complex value = 0.0;
                          for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) value = value * z + *it;
                          return value;
                        },
                        [&](const Node::Moebius& m) { return m.map(z); },
                        [&](const Node::RootProduct& r) {
                          Complex value = r.scale;
                          for (const Complex root : r.roots) value *= (z - root);
                          return value;
                        },
                        [&](const Node::Reciprocal& r) { return 1.0 / r.inner(z); },
                        [&](const Node::Composition& c) { return c.outer(c.inner(z)); },
                        [&](const Node::Product& p) {
                          Complex value = 1.0;
                          for (const auto& f : p.factors) value *= f(z);
                          return value;
                        },
                    },
                    node_->rep);
}

std::string AnalyticFn::describe() const {
  return std::visit(Overloaded{
                        [](const Node::Polynomial& p) {
                          std::string out = "poly[";
                          for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
                            out += (k ? "," : "") + format_complex(p.coeffs[k]);
                          }
                          return out + "]";
                        },
                        [](const Node::Moebius&) { return std::string("moebius"); },
                        [](const Node::RootProduct& r) {
                          return "roots[" + std::to_string(r.roots.size()) + "]";
                        },
                        [](const Node::Reciprocal& r) { return "1/(" + r.inner.describe() + ")"; },
                        [](const Node::Composition& c) { return "(" + c.outer.describe() + ")o(moebius)"; },
                        [](const Node::Product& p) {
                          std::string out;
                          for (std::size_t k = 0; k < p.factors.size(); ++k) {
                            out += (k ? "*" : "") + p.factors[k].describe();
                          }
                          return "(" + out + ")";
                        },
                    },
                    node_->rep);
}

std::vector<Complex> default_grid() {
  std::vector<Complex> grid{0.0};
  const std::pair<double, int> circles[] = {{0.3, 67}, {0.6, 66}, {0.9, 66}};
  for (const auto& [radius, count] : circles) {
    for (int k = 0; k < count; ++k) grid.push_back(std::polar(radius, kTwoPi * k / count));
  }
  return grid;
}

WeightedCompOp::WeightedCompOp(AnalyticFn weight, DiskAutomorphism symbol)
    : weight_(std::move(weight)), symbol_(symbol.to_moebius()), automorphism_(symbol) {}

WeightedCompOp::WeightedCompOp(AnalyticFn weight, MoebiusMap symbol)
    : weight_(std::move(weight)), symbol_(symbol) {
  if (!symbol_.maps_disk_into_disk()) throw InvalidArgument("symbol does not map the disk into itself");
}

MoebiusMap WeightedCompOp::symbol_iterate(std::uint64_t k) const { return symbol_.power(k); }

AnalyticFn wcomp_apply(const WeightedCompOp& op, const AnalyticFn& f) {
  return AnalyticFn::product({op.weight(), AnalyticFn::compose(f, op.symbol())});
}

AnalyticFn wcomp_iterate(const WeightedCompOp& op, std::uint64_t n, const AnalyticFn& f) {
  if (n == 0) return f;
  std::vector<AnalyticFn> factors;
  factors.reserve(n + 1);
  factors.push_back(op.weight());
  for (std::uint64_t k = 1; k < n; ++k) factors.push_back(AnalyticFn::compose(op.weight(), op.symbol_iterate(k)));
  factors.push_back(AnalyticFn::compose(f, op.symbol_iterate(n)));
  return AnalyticFn::product(std::move(factors));
}

WeightedCompOp wcomp_inverse(const WeightedCompOp& op, const std::vector<Complex>& grid) {
  if (!op.automorphism()) throw InvalidArgument("inverse needs an automorphic symbol");
  const DiskAutomorphism rho = invert_auto(*op.automorphism());
  AnalyticFn psi = AnalyticFn::compose(AnalyticFn::reciprocal(op.weight(), grid), rho.to_moebius());
  return WeightedCompOp(std::move(psi), rho);
}

std::string to_string(ObstructionCase kind) {
  switch (kind) {
    case ObstructionCase::weight_zero: return "weightZero";
    case ObstructionCase::interior_fixed_point: return "interiorFixedPoint";
    case ObstructionCase::boundary_denjoy_wolff: return "boundaryDenjoyWolff";
  }
  return "unknown";
}

namespace {

void finish(ObstructionReport& report) {
  report.max_abs_value = 0.0;
  bool finite = true;
  for (const Complex v : report.values) {
    const double m = std::abs(v);
    if (!std::isfinite(m)) finite = false;
    report.max_abs_value = std::max(report.max_abs_value, m);
  }
  report.certified_up_to = report.values.size();
  report.certified = finite && report.max_abs_value <= report.tolerance;
}

}  // namespace

ObstructionReport obstruction_report(const AnalyticFn& weight, const DiskAutomorphism& phi,
                                     std::size_t elliptic_count, std::size_t boundary_count,
                                     const std::vector<Complex>& grid) {
  const FixedPointInfo phi_info = fixed_points(phi);
  if (phi_info.kind == AutomorphismKind::identity) {
    throw InvalidArgument("identity symbol is not supported by the obstruction report");
  }
  ObstructionReport report;

  // A zero of w at z0 kills every orbit element at z0 for n >= 1.
  for (const Complex z : grid) {
    if (std::abs(weight(z)) <= kVanishTol) {
      report.kind = ObstructionCase::weight_zero;
      report.symbol_kind = phi_info.kind;
      report.point = z;
      report.denjoy_wolff = phi_info.denjoy_wolff;
      report.test_function = "1";
      const WeightedCompOp op(weight, phi);
      const AnalyticFn one = AnalyticFn::constant(1.0);
      for (std::size_t n = 1; n <= elliptic_count; ++n) report.values.push_back(wcomp_iterate(op, n, one)(z));
      finish(report);
      return report;
    }
  }

  const WeightedCompOp inverse = wcomp_inverse(WeightedCompOp(weight, phi), grid);
  const DiskAutomorphism rho = *inverse.automorphism();
  const FixedPointInfo info = fixed_points(rho);
  report.symbol_kind = info.kind;
  report.denjoy_wolff = info.denjoy_wolff;

  if (info.kind == AutomorphismKind::elliptic) {
    const Complex a = *info.interior_fixed;
    report.kind = ObstructionCase::interior_fixed_point;
    report.point = a;
    report.test_function = "z - a";
    report.zero_set = {a};
    const AnalyticFn f = AnalyticFn::polynomial({-a, 1.0});
    for (std::size_t n = 1; n <= elliptic_count; ++n) report.values.push_back(wcomp_iterate(inverse, n, f)(a));
    finish(report);
    return report;
  }

  report.kind = ObstructionCase::boundary_denjoy_wolff;
  report.point = 0.0;
  report.test_function = "prod_{n=1..M} (z - rho_n(0))";
  // Same maps as wcomp_iterate, so f(rho_n(0)) has an exactly zero factor.
  for (std::size_t n = 1; n <= boundary_count; ++n) report.zero_set.push_back(inverse.symbol_iterate(n)(0.0));
  const AnalyticFn f = AnalyticFn::root_product(report.zero_set);
  for (std::size_t n = 1; n <= boundary_count; ++n) {
    report.values.push_back(wcomp_iterate(inverse, n, f)(0.0));
  }
  finish(report);
  return report;
}

}  // namespace lindyn
