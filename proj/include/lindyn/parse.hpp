#pragma once

#include <string>

#include <Eigen/Dense>

#include "lindyn/diskdyn.hpp"
#include "lindyn/shiftops.hpp"

namespace lindyn {

/// "1.5", "-2i", "0.5-0.25i", "i".
Complex parse_complex(const std::string& text);

/// Weight sequence from a descriptor string:
///   const:v               w_n = v
///   table:v1,v2,...       explicit prefix; `tail` is then mandatory
///   formula:A+B/n         w_n = A + B/n (also A-B/n)
///   formula:A*Q^n         w_n = A Q^n, 0 < Q <= 1
/// `tail` is "const:v", "none", or one of the formula forms, applied past the table.
WeightSeq parse_weights(const std::string& descriptor, const std::string& tail = "");

/// "e3" (basis vector), "0" (zero), "1,2+i,0" (dense from index 0),
/// "3:1.5,7:-i" (sparse index:value pairs).
SeqVector parse_vector(const std::string& text, SpaceTag space);

/// "theta=0.3,alpha=0.5-0.1i"; either key may be omitted (defaults 0).
DiskAutomorphism parse_automorphism(const std::string& text);

/// Square complex matrix: rows separated by newlines or ';', entries by
/// whitespace or ','. Lines starting with '#' are ignored.
Eigen::MatrixXcd parse_matrix(const std::string& text);

/// "poly:c0,c1,..." (ascending coefficients), "const:c", "roots:r1,r2,...".
AnalyticFn parse_analytic(const std::string& text);

}  // namespace lindyn
