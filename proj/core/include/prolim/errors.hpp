#pragma once

#include <stdexcept>

namespace prolim {

/// A mathematical precondition of an operation does not hold for the given
/// input (non-surjective bonding map, missing preimage, non-stabilizing
/// system, exceeded enumeration cap, ...). Caller bugs such as mismatched
/// ambient groups are reported with std::invalid_argument instead.
class MathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace prolim
