#pragma once

#include <stdexcept>
#include <string>

namespace gorhom {

/// Operation is not available for this ring or input (e.g. injective envelopes over ℤ).
class Refused : public std::domain_error {
 public:
  explicit Refused(const std::string& what) : std::domain_error(what) {}
};

/// A claimed mathematical property failed an exact check.
class CheckFailed : public std::runtime_error {
 public:
  explicit CheckFailed(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gorhom
