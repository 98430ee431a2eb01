#include "lindyn/report.hpp"

#include <cmath>
#include <cstdio>

namespace lindyn {

std::string format_complex(Complex z) {
  // Normalize -0 so that equal values serialize identically.
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "%.17g%+.17gi", re, im);
  return buffer;
}

Json real_json(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

namespace {

Json complex_list(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const Complex z : values) out.push_back(format_complex(z));
  return out;
}

template <class T>
Json optional_complex(const std::optional<T>& value) {
  if (!value) return nullptr;
  return format_complex(*value);
}

}  // namespace

Json to_json(const SeqVector& v) {
  Json coords = Json::array();
  for (const auto& e : v.coords()) coords.push_back({{"index", e.index}, {"value", format_complex(e.value)}});
  return {{"space", v.space().name()}, {"coords", coords}};
}

Json to_json(const EpsilonReport& r) {
  Json out;
  out["closedForm"] = real_json(r.closed_form);
  out["infAttained"] = r.inf_attained;
  out["estimate"] = real_json(r.estimate);
  out["coordinateMinimum"] = real_json(r.coordinate_minimum);
  out["coordDirectionsScanned"] = r.coord_directions;
  out["randomDirections"] = r.random_directions;
  out["witnessDirection"] = r.witness_direction;
  out["witnessOutside"] = r.witness_outside ? to_json(*r.witness_outside) : Json(nullptr);
  out["witnessOutsideNorm"] = r.witness_outside ? real_json(norm(*r.witness_outside)) : Json(nullptr);
  out["seed"] = r.seed;
  out["tol"] = real_json(r.tol);
  return out;
}

Json to_json(const StrongClassification& c) {
  Json out;
  out["surjective"] = c.surjective;
  out["denseGeneralizedKernel"] = c.dense_generalized_kernel;
  out["stronglySupercyclic"] = c.strongly_supercyclic;
  out["epsilon"] = real_json(c.epsilon);
  out["scalarThreshold"] = real_json(c.scalar_threshold);
  return out;
}

Json to_json(const HCWitness& w) {
  Json out;
  out["status"] = to_string(w.status);
  out["n"] = w.n;
  out["u"] = to_json(w.u);
  out["perturbation"] = to_json(w.perturbation);
  out["perturbationNorm"] = real_json(w.perturbation_norm);
  out["residual"] = real_json(w.residual);
  out["aboveThreshold"] = w.above_threshold;
  out["startExponent"] = w.start_exponent;
  out["exponentCap"] = w.exponent_cap;
  return out;
}

Json to_json(const ExtractionTrace& t) {
  Json out;
  out["status"] = to_string(t.status);
  out["scale"] = real_json(t.scale);
  out["x"] = to_json(t.x);
  out["exponents"] = t.exponents;
  Json distances = Json::array();
  for (double d : t.step_distances) distances.push_back(real_json(d));
  out["stepDistances"] = distances;
  out["finalDistance"] = real_json(t.final_distance);
  out["requested"] = t.requested;
  out["searchCap"] = t.search_cap;
  out["eta"] = real_json(t.eta);
  out["margin"] = real_json(t.margin);
  out["message"] = t.message;
  return out;
}

Json to_json(const DiskAutomorphism& phi) {
  return {{"theta", real_json(phi.theta())}, {"alpha", format_complex(phi.alpha())}};
}

Json to_json(const FixedPointInfo& info) {
  Json out;
  out["kind"] = to_string(info.kind);
  out["interiorFixed"] = optional_complex(info.interior_fixed);
  out["boundaryFixed"] = complex_list(info.boundary_fixed);
  out["denjoyWolff"] = optional_complex(info.denjoy_wolff);
  out["discriminant"] = real_json(info.discriminant);
  out["nearParabolic"] = info.near_parabolic;
  return out;
}

Json to_json(const ObstructionReport& r) {
  Json out;
  out["case"] = to_string(r.kind);
  out["symbolKind"] = to_string(r.symbol_kind);
  out["point"] = format_complex(r.point);
  out["denjoyWolff"] = optional_complex(r.denjoy_wolff);
  out["testFunction"] = r.test_function;
  out["zeroSet"] = complex_list(r.zero_set);
  out["values"] = complex_list(r.values);
  out["maxAbsValue"] = real_json(r.max_abs_value);
  out["targetValue"] = real_json(r.target_value);
  out["certifiedUpTo"] = r.certified_up_to;
  out["tolerance"] = real_json(r.tolerance);
  out["certified"] = r.certified;
  return out;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace lindyn
