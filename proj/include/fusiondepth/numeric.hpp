#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fusiondepth {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

}  // namespace fusiondepth
