#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <string>

namespace citegraph {

// Exact rational arithmetic for metric aggregation. Per-paper scores and
// citation weights are ratios of small integers; accumulating them exactly
// and converting to double once keeps algebraic identities (uniform-weight
// collapse, scale invariance) exact instead of tolerance-based.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// 12 significant digits, the precision used in every CSV we emit. Stable
// enough for golden files, short enough to stay readable.
inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace citegraph
