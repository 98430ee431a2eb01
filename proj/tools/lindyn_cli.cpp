#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "lindyn/diskdyn.hpp"
#include "lindyn/epsilon.hpp"
#include "lindyn/extract.hpp"
#include "lindyn/parse.hpp"
#include "lindyn/report.hpp"
#include "lindyn/strongdyn.hpp"

namespace {

using lindyn::Json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInconclusive = 3;

struct Common {
  std::string out;
  std::uint64_t seed = 0;
  double tol = lindyn::kDefaultTol;
  std::string format = "json";
};

struct ShiftArgs {
  std::string weights;
  std::string tail;
  std::string space = "l2";
};

struct Outcome {
  Json config;
  Json result;
  int code = kExitOk;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write the report to FILE instead of stdout");
  cmd->add_option("--seed", c.seed, "Seed for randomized directions and instances");
  cmd->add_option("--tol", c.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

void add_shift(CLI::App* cmd, ShiftArgs& s, bool required) {
  auto* w = cmd->add_option("--weights", s.weights, "const:v | table:v1,v2,... | formula:A+B/n | formula:A*Q^n");
  if (required) w->required();
  cmd->add_option("--tail", s.tail, "Tail rule past a table: const:v | none | formula:...");
  cmd->add_option("--space", s.space, "l<p> (p >= 1) or c0");
}

lindyn::BackwardShift build_shift(const ShiftArgs& s) {
  return {lindyn::parse_weights(s.weights, s.tail), lindyn::SpaceTag::parse(s.space)};
}

Json shift_config(const ShiftArgs& s, const lindyn::BackwardShift& b) {
  Json out;
  out["weights"] = s.weights;
  out["tail"] = s.tail.empty() ? Json(nullptr) : Json(s.tail);
  out["weightsResolved"] = b.weights.describe();
  out["space"] = b.space.name();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lindyn::InvalidArgument("cannot read file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Uniform doubles from the raw 53 high bits so values match on every platform.
double unit_uniform(std::mt19937_64& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53; }

lindyn::Complex seeded_entry(std::mt19937_64& g) { return {2.0 * unit_uniform(g) - 1.0, 2.0 * unit_uniform(g) - 1.0}; }

Outcome run_epsilon(const Common& c, const ShiftArgs& s, std::size_t n, std::size_t r, double delta) {
  const auto b = build_shift(s);
  if (n < 1) throw lindyn::InvalidArgument("--N must be at least 1");
  spdlog::info("epsilon: {} on {}, N = {}, R = {}", b.weights.describe(), b.space.name(), n, r);
  Outcome o;
  o.config = shift_config(s, b);
  o.config["N"] = n;
  o.config["R"] = r;
  o.config["delta"] = lindyn::real_json(delta);
  const auto report = lindyn::epsilon_estimate(b, n, r, c.seed, c.tol);
  o.result = lindyn::to_json(report);
  o.result["nearInfimumWitness"] = nullptr;
  if (report.closed_form > 0.0) {
    const auto w = lindyn::near_infimum_witness(b, delta);
    o.result["nearInfimumWitness"] = {{"index", w.index}, {"x", lindyn::to_json(w.x)}, {"y", lindyn::to_json(w.y)},
                                      {"normY", lindyn::real_json(w.norm_y)}};
  } else {
    Json list = Json::array();
    for (const auto& w : lindyn::vanishing_weight_witnesses(b, 10)) {
      list.push_back({{"index", w.index}, {"y", lindyn::to_json(w.y)}, {"normY", lindyn::real_json(w.norm_y)}});
    }
    o.result["vanishingWitnesses"] = list;
  }
  return o;
}

Outcome run_classify(const ShiftArgs& s) {
  const auto b = build_shift(s);
  Outcome o;
  o.config = shift_config(s, b);
  o.result = lindyn::to_json(lindyn::classify(b));
  return o;
}

struct WitnessArgs {
  std::string c;
  std::string target;
  std::string center = "0";
  double radius = 0.0;
  std::size_t ncap = 10000;
};

Outcome run_witness(const ShiftArgs& s, const WitnessArgs& a) {
  const auto b = build_shift(s);
  const lindyn::Complex c = lindyn::parse_complex(a.c);
  const auto v = lindyn::parse_vector(a.target, b.space);
  const auto u0 = lindyn::parse_vector(a.center, b.space);
  spdlog::info("witness: c = {}, r = {}, cap = {}", lindyn::format_complex(c), a.radius, a.ncap);
  Outcome o;
  o.config = shift_config(s, b);
  o.config["c"] = lindyn::format_complex(c);
  o.config["target"] = lindyn::to_json(v);
  o.config["center"] = lindyn::to_json(u0);
  o.config["radius"] = lindyn::real_json(a.radius);
  o.config["ncap"] = a.ncap;
  const auto w = lindyn::strong_hc_witness(b, c, u0, a.radius, v, a.ncap);
  o.result = lindyn::to_json(w);
  o.result["classification"] = lindyn::to_json(lindyn::classify(b));
  if (w.status != lindyn::WitnessStatus::found) o.code = kExitInconclusive;
  return o;
}

struct ExtractArgs {
  std::string op = "shift";
  std::string matrix;
  std::size_t dim = 0;
  std::string x;
  std::size_t k = 5;
  std::size_t search_cap = lindyn::kDefaultSearchCap;
  double eta = 0.5;
  double margin = lindyn::kDefaultMargin;
};

Outcome run_extract(const Common& c, const ShiftArgs& s, const ExtractArgs& a) {
  Outcome o;
  std::optional<lindyn::LinearOp> op;
  lindyn::SpaceTag space = lindyn::SpaceTag::parse(s.space);
  std::mt19937_64 g(c.seed);
  if (a.op == "shift") {
    if (s.weights.empty()) throw lindyn::InvalidArgument("--op shift needs --weights");
    if (!a.matrix.empty() || a.dim) throw lindyn::InvalidArgument("--matrix/--dim only apply to --op matrix");
    const auto b = build_shift(s);
    o.config = shift_config(s, b);
    op = lindyn::LinearOp::shift(b);
  } else {
    if (!s.weights.empty()) throw lindyn::InvalidArgument("--weights only applies to --op shift");
    if (a.matrix.empty() == (a.dim == 0)) throw lindyn::InvalidArgument("--op matrix needs exactly one of --matrix or --dim");
    Eigen::MatrixXcd m;
    if (!a.matrix.empty()) {
      m = lindyn::parse_matrix(read_file(a.matrix));
    } else {
      const auto d = static_cast<Eigen::Index>(a.dim);
      m.resize(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = seeded_entry(g);
      }
    }
    o.config["space"] = space.name();
    o.config["matrixSource"] = a.matrix.empty() ? "seeded" : a.matrix;
    o.config["dim"] = m.rows();
    op = lindyn::LinearOp::matrix(std::move(m), space);
  }
  lindyn::SeqVector x(space);
  if (!a.x.empty()) {
    x = lindyn::parse_vector(a.x, space);
  } else if (const auto* m = op->as_matrix()) {
    std::vector<lindyn::Complex> values(static_cast<std::size_t>(m->rows()));
    for (auto& v : values) v = seeded_entry(g);
    x = lindyn::SeqVector::dense(space, values);
  } else {
    throw lindyn::InvalidArgument("--op shift needs --x");
  }
  o.config["op"] = a.op;
  o.config["x"] = lindyn::to_json(x);
  o.config["K"] = a.k;
  o.config["searchCap"] = a.search_cap;
  o.config["eta"] = lindyn::real_json(a.eta);
  o.config["margin"] = lindyn::real_json(a.margin);
  spdlog::info("extract: K = {}, cap = {}", a.k, a.search_cap);
  const auto trace = lindyn::extract_subsequence(*op, x, a.k, a.search_cap, a.eta, a.margin);
  o.result = lindyn::to_json(trace);
  o.result["verified"] = lindyn::verify_trace(*op, trace);
  switch (trace.status) {
    case lindyn::ExtractionStatus::completed: break;
    case lindyn::ExtractionStatus::search_cap_exceeded: o.code = kExitInconclusive; break;
    case lindyn::ExtractionStatus::precond_failed: o.code = kExitInconclusive; break;
  }
  return o;
}

struct DiskArgs {
  std::string phi;
  std::string w = "const:1";
  std::size_t n = 50;
  std::size_t m = 20;
};

Outcome run_disk(const DiskArgs& a) {
  const auto phi = lindyn::parse_automorphism(a.phi);
  const auto w = lindyn::parse_analytic(a.w);
  Outcome o;
  o.config["phi"] = lindyn::to_json(phi);
  o.config["w"] = w.describe();
  o.config["N"] = a.n;
  o.config["M"] = a.m;
  o.config["grid"] = "origin + 67/66/66 points on radii 0.3/0.6/0.9";
  const auto report = lindyn::obstruction_report(w, phi, a.n, a.m);
  o.result["phi"] = lindyn::to_json(phi);
  o.result["fixedPoints"] = lindyn::to_json(lindyn::fixed_points(phi));
  o.result["inverse"] = lindyn::to_json(lindyn::invert_auto(phi));
  o.result["obstruction"] = lindyn::to_json(report);
  if (!report.certified) o.code = kExitInconclusive;
  return o;
}

std::string csv_cell(const Json& value) {
  std::string text = value.is_string() ? value.get<std::string>() : value.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void flatten(const Json& node, const std::string& prefix, std::string& out) {
  if (node.is_object() && !node.empty()) {
    for (const auto& [key, value] : node.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (node.is_array() && !node.empty()) {
    for (std::size_t k = 0; k < node.size(); ++k) flatten(node[k], prefix + "." + std::to_string(k), out);
  } else {
    out += csv_cell(prefix) + "," + csv_cell(node) + "\n";
  }
}

std::string render(const Json& doc, const std::string& format) {
  if (format == "json") return lindyn::dump(doc);
  std::string out = "key,value\n";
  flatten(doc, "", out);
  return out;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("lindyn");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("LINDYN_LOG");
  if (!env || !*env) return;
  const std::string level = env;
  const auto parsed = spdlog::level::from_str(level);
  if (parsed == spdlog::level::off && level != "off") {
    spdlog::warn("unknown LINDYN_LOG level '{}', keeping warn", level);
    return;
  }
  spdlog::set_level(parsed);
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Linear dynamics laboratory for weighted shifts and disk automorphisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lindyn::kVersion);

  Common common;
  ShiftArgs shift;
  std::size_t eps_n = 100;
  std::size_t eps_r = 64;
  double eps_delta = 1e-6;
  WitnessArgs witness;
  ExtractArgs extract;
  DiskArgs disk;

  auto* eps_cmd = app.add_subcommand("epsilon", "Closed-form and estimated eps of a weighted backward shift");
  add_shift(eps_cmd, shift, true);
  eps_cmd->add_option("--N", eps_n, "Coordinate directions scanned");
  eps_cmd->add_option("--R", eps_r, "Random directions");
  eps_cmd->add_option("--delta", eps_delta, "Gap above the infimum for the near-infimum witness")
      ->check(CLI::PositiveNumber);
  add_common(eps_cmd, common);

  auto* cls_cmd = app.add_subcommand("classify", "Strong supercyclicity classification");
  add_shift(cls_cmd, shift, true);
  add_common(cls_cmd, common);

  auto* wit_cmd = app.add_subcommand("witness", "Strong hypercyclicity witness for c B_W");
  add_shift(wit_cmd, shift, true);
  wit_cmd->add_option("--c", witness.c, "Complex scalar")->required();
  wit_cmd->add_option("--target", witness.target, "Target vector v")->required();
  wit_cmd->add_option("--center", witness.center, "Ball center u0");
  wit_cmd->add_option("--radius", witness.radius, "Ball radius r")->required()->check(CLI::PositiveNumber);
  wit_cmd->add_option("--ncap", witness.ncap, "Largest exponent searched");
  add_common(wit_cmd, common);

  auto* ext_cmd = app.add_subcommand("extract", "Greedy orbit exponents keeping x away from their span");
  ext_cmd->add_option("--op", extract.op, "Operator kind")->check(CLI::IsMember({"shift", "matrix"}));
  add_shift(ext_cmd, shift, false);
  ext_cmd->add_option("--matrix", extract.matrix, "Matrix file (rows of complex entries)");
  ext_cmd->add_option("--dim", extract.dim, "Dimension of a seeded random matrix");
  ext_cmd->add_option("--x", extract.x, "Start vector (seeded random when omitted for matrices)");
  ext_cmd->add_option("--K", extract.k, "Number of exponents")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--search-cap", extract.search_cap, "Largest exponent searched");
  ext_cmd->add_option("--eta", extract.eta, "Normalization slack")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--margin", extract.margin, "Distance margin above 1");
  add_common(ext_cmd, common);

  auto* disk_cmd = app.add_subcommand("disk", "Weighted composition obstruction report for a disk automorphism");
  disk_cmd->add_option("--phi", disk.phi, "theta=..,alpha=..")->required();
  disk_cmd->add_option("--w", disk.w, "Weight: poly:c0,c1,.. | const:c | roots:r1,..");
  disk_cmd->add_option("--N", disk.n, "Exponents for the elliptic and weight-zero cases");
  disk_cmd->add_option("--M", disk.m, "Orbit points in the boundary zero set");
  add_common(disk_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  Outcome outcome;
  std::string command;
  try {
    if (eps_cmd->parsed()) {
      command = "epsilon";
      outcome = run_epsilon(common, shift, eps_n, eps_r, eps_delta);
    } else if (cls_cmd->parsed()) {
      command = "classify";
      outcome = run_classify(shift);
    } else if (wit_cmd->parsed()) {
      command = "witness";
      outcome = run_witness(shift, witness);
    } else if (ext_cmd->parsed()) {
      command = "extract";
      outcome = run_extract(common, shift, extract);
    } else {
      command = "disk";
      outcome = run_disk(disk);
    }
  } catch (const lindyn::Error& e) {
    spdlog::error("{}", e.what());
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  Json doc;
  doc["tool"] = "lindyn";
  doc["version"] = lindyn::kVersion;
  doc["command"] = command;
  outcome.config["seed"] = common.seed;
  outcome.config["tol"] = lindyn::real_json(common.tol);
  outcome.config["format"] = common.format;
  doc["config"] = outcome.config;
  doc["result"] = outcome.result;
  doc["exitCode"] = outcome.code;

  const std::string text = render(doc, common.format);
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << common.out << "'\n";
      return kExitConfig;
    }
    file << text;
    spdlog::info("wrote {}", common.out);
  }
  return outcome.code;
}
