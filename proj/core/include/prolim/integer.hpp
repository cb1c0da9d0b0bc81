#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace prolim {

using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Integer>;

/// Representative of `a` modulo `m` in [0, |m|). `m` must be nonzero.
Integer mod_floor(const Integer& a, const Integer& m);

Integer abs_value(const Integer& a);

Integer gcd(const Integer& a, const Integer& b);

Integer lcm(const Integer& a, const Integer& b);

struct ExtendedGcd {
  Integer g;  // non-negative
  Integer x;
  Integer y;  // a*x + b*y == g
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

/// Quotient rounded toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);

std::optional<std::int64_t> to_int64(const Integer& a);

std::string to_string(const Integer& a);

}  // namespace prolim
