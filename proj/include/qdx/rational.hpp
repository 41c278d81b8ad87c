#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qdx {

using Int = boost::multiprecision::cpp_int;
// Always stored in lowest terms with positive denominator.
using Rat = boost::multiprecision::cpp_rational;

// "p/q" in lowest terms, "q" elided when 1.
inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

} // namespace qdx
