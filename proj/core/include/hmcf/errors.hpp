#pragma once

#include <stdexcept>
#include <string>

namespace hmcf {

// The horizontal gradient vanished (within tolerance) where a horizontal
// normal, curvature or stationary angle was requested.
class CharacteristicError : public std::domain_error {
 public:
  explicit CharacteristicError(const std::string& what) : std::domain_error(what) {}
};

// A quantity contractually positive (the r datum, a terminal payoff) was not.
class PositivityError : public std::domain_error {
 public:
  explicit PositivityError(const std::string& what) : std::domain_error(what) {}
};

// A point handed to a surface sweep does not lie on the surface.
class OffSurfaceError : public std::domain_error {
 public:
  explicit OffSurfaceError(const std::string& what) : std::domain_error(what) {}
};

// A feedback policy could not evaluate its jet source at a visited state.
class PolicyFrameError : public std::runtime_error {
 public:
  explicit PolicyFrameError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hmcf
