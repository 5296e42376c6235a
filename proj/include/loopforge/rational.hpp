#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

namespace loopforge {

// Exact scalar type for all linear algebra. No floating point anywhere:
// every identity checked in this library is polynomial with integer data,
// so equality means equality.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline BigInt rational_num(const Rational& r) {
  return boost::multiprecision::numerator(r);
}

inline BigInt rational_den(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// Serialization formats carry numerator/denominator as 64-bit integers.
inline std::optional<std::int64_t> to_int64(const BigInt& v) {
  if (v < (std::numeric_limits<std::int64_t>::min)() ||
      v > (std::numeric_limits<std::int64_t>::max)())
    return std::nullopt;
  return static_cast<std::int64_t>(v);
}

inline std::string rational_str(const Rational& r) {
  return r.str();
}

}  // namespace loopforge
