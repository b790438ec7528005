#pragma once

#include <stdexcept>
#include <string>

namespace copord {

/// Parameter outside its admissible range (generator, transform, box constraint).
class RangeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation at a singular point (e.g. Gumbel ψ′ at 0, oMO derivative at F ∈ {0,1}).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request exceeds a hard size bound (subset enumeration over more than 25 items).
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Structurally incompatible inputs, malformed scenario files, bad CLI usage.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The frailty sampler has no construction for this family/parameter.
class UnsupportedSampler : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace copord
