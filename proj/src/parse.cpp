#include "lindyn/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <vector>

namespace lindyn {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  parts.push_back(trim(current));
  return parts;
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(value)) {
    throw InvalidArgument("expected a real number, got '" + text + "'");
  }
  return value;
}

std::size_t parse_index(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw InvalidArgument("expected a non-negative integer index, got '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoull(t));
}

WeightSeq::Tail parse_tail_rule(const std::string& text) {
  const std::string t = trim(text);
  if (t == "none") return WeightSeq::TableOnly{};
  if (t.rfind("const:", 0) == 0) return WeightSeq::ConstantTail{parse_real(t.substr(6))};
  std::string body = t;
  if (body.rfind("formula:", 0) == 0) body = body.substr(8);
  static const std::regex kRational(R"(^\s*([^*/]+?)\s*([+-])\s*([0-9.]+(?:[eE][+-]?[0-9]+)?)\s*/\s*n\s*$)");
  static const std::regex kGeometric(R"(^\s*([^*]+?)\s*\*\s*([0-9.]+(?:[eE][+-]?[0-9]+)?)\s*\^\s*n\s*$)");
  std::smatch match;
  if (std::regex_match(body, match, kRational)) {
    const double slope = parse_real(match[3].str());
    return WeightSeq::RationalTail{parse_real(match[1].str()), match[2].str() == "-" ? -slope : slope};
  }
  if (std::regex_match(body, match, kGeometric)) {
    return WeightSeq::GeometricTail{parse_real(match[1].str()), parse_real(match[2].str())};
  }
  throw InvalidArgument("unsupported weight rule '" + text +
                        "' (allowed: const:v, none, formula:A+B/n, formula:A-B/n, formula:A*Q^n)");
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty complex number");
  if (t.back() != 'i') return {parse_real(t), 0.0};
  const std::string body = t.substr(0, t.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  auto imag_part = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split_at == std::string::npos) return {0.0, imag_part(body)};
  return {parse_real(body.substr(0, split_at)), imag_part(body.substr(split_at))};
}

WeightSeq parse_weights(const std::string& descriptor, const std::string& tail) {
  const std::string s = trim(descriptor);
  if (s.rfind("table:", 0) == 0) {
    if (trim(tail).empty()) throw InvalidArgument("table weights need an explicit --tail (const:v or none)");
    std::vector<double> prefix;
    for (const auto& part : split(s.substr(6), ',')) prefix.push_back(parse_real(part));
    return WeightSeq(std::move(prefix), parse_tail_rule(tail));
  }
  if (!trim(tail).empty()) throw InvalidArgument("--tail only applies to table weights");
  if (s.rfind("const:", 0) == 0 || s.rfind("formula:", 0) == 0) return WeightSeq({}, parse_tail_rule(s));
  throw InvalidArgument("unsupported weight descriptor '" + descriptor + "' (allowed: const:, table:, formula:)");
}

SeqVector parse_vector(const std::string& text, SpaceTag space) {
  const std::string t = trim(text);
  if (t.empty()) throw InvalidArgument("empty vector specification");
  if (t == "0") return SeqVector(space);
  if (t.size() > 1 && t[0] == 'e' && std::isdigit(static_cast<unsigned char>(t[1]))) {
    return SeqVector::basis(space, parse_index(t.substr(1)));
  }
  std::vector<Entry> coords;
  const auto parts = split(t, ',');
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto colon = parts[k].find(':');
    if (colon == std::string::npos) {
      coords.push_back({k, parse_complex(parts[k])});
    } else {
      coords.push_back({parse_index(parts[k].substr(0, colon)), parse_complex(parts[k].substr(colon + 1))});
    }
  }
  return SeqVector(space, std::move(coords));
}

DiskAutomorphism parse_automorphism(const std::string& text) {
  double theta = 0.0;
  Complex alpha = 0.0;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw InvalidArgument("expected key=value in '" + part + "'");
    const std::string key = trim(part.substr(0, eq));
    const std::string value = part.substr(eq + 1);
    if (key == "theta") {
      theta = parse_real(value);
    } else if (key == "alpha") {
      alpha = parse_complex(value);
    } else {
      throw InvalidArgument("unknown automorphism key '" + key + "'");
    }
  }
  return {theta, alpha};
}

AnalyticFn parse_analytic(const std::string& text) {
  const std::string t = trim(text);
  auto values = [](const std::string& list) {
    std::vector<Complex> out;
    for (const auto& part : split(list, ',')) out.push_back(parse_complex(part));
    return out;
  };
  if (t.rfind("poly:", 0) == 0) return AnalyticFn::polynomial(values(t.substr(5)));
  if (t.rfind("const:", 0) == 0) return AnalyticFn::constant(parse_complex(t.substr(6)));
  if (t.rfind("roots:", 0) == 0) return AnalyticFn::root_product(values(t.substr(6)));
  throw InvalidArgument("unsupported function descriptor '" + text + "' (allowed: poly:, const:, roots:)");
}

Eigen::MatrixXcd parse_matrix(const std::string& text) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  auto flush = [&] {
    std::string t = trim(line);
    line.clear();
    if (t.empty() || t[0] == '#') return;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::vector<Complex> row;
    std::string token;
    for (std::size_t k = 0; k <= t.size(); ++k) {
      if (k == t.size() || std::isspace(static_cast<unsigned char>(t[k]))) {
        if (!token.empty()) row.push_back(parse_complex(token));
        token.clear();
      } else {
        token.push_back(t[k]);
      }
    }
    rows.push_back(std::move(row));
  };
  for (char ch : text) {
    if (ch == '\n' || ch == ';') {
      flush();
    } else if (ch != '\r') {
      line.push_back(ch);
    }
  }
  flush();
  if (rows.empty()) throw InvalidArgument("matrix has no rows");
  const auto d = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != d) {
      throw InvalidArgument("matrix must be square: row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " entries, expected " + std::to_string(d));
    }
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace lindyn
