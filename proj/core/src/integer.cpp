#include "prolim/integer.hpp"

#include <limits>
#include <stdexcept>

namespace prolim {

Integer mod_floor(const Integer& a, const Integer& m) {
  if (m == 0) {
    throw std::invalid_argument("mod_floor: zero modulus");
  }
  const Integer modulus = abs_value(m);
  Integer r = a % modulus;
  if (r < 0) {
    r += modulus;
  }
  return r;
}

Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

Integer gcd(const Integer& a, const Integer& b) {
  Integer x = abs_value(a);
  Integer y = abs_value(b);
  while (y != 0) {
    Integer r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return abs_value(a / gcd(a, b) * b);
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) {
    q -= 1;
  }
  return q;
}

std::optional<std::int64_t> to_int64(const Integer& a) {
  if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return a.convert_to<std::int64_t>();
}

std::string to_string(const Integer& a) { return a.str(); }

}  // namespace prolim
