#pragma once

#include <string>

#include "json.hpp"
#include "lindyn/diskdyn.hpp"
#include "lindyn/epsilon.hpp"
#include "lindyn/extract.hpp"
#include "lindyn/strongdyn.hpp"

namespace lindyn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

/// "re+imi" with 17 significant digits.
std::string format_complex(Complex z);
/// Finite values as numbers; infinities as the strings "inf" / "-inf".
Json real_json(double value);

Json to_json(const SeqVector& v);
Json to_json(const EpsilonReport& report);
Json to_json(const StrongClassification& c);
Json to_json(const HCWitness& w);
Json to_json(const ExtractionTrace& trace);
Json to_json(const DiskAutomorphism& phi);
Json to_json(const FixedPointInfo& info);
Json to_json(const ObstructionReport& report);

/// Serialized document: two-space indent, LF line endings, trailing newline.
std::string dump(const Json& doc);

}  // namespace lindyn
