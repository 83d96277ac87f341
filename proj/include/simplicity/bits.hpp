#pragma once

#include <cmath>
#include <limits>

namespace simplicity {

// Complexity in bits. +inf means "no known way to generate".
using ComplexityBits = double;

inline constexpr ComplexityBits kInfiniteBits = std::numeric_limits<double>::infinity();

inline bool is_infinite(ComplexityBits b) { return std::isinf(b); }

inline double log2_ratio(double num, double den) { return std::log2(num / den); }

} // namespace simplicity
