#pragma once

#include <stdexcept>
#include <string>

namespace levy2d {

// Numerical integration gave up before reaching the requested tolerance.
// partial() is the best available sum at the point of failure; callers that
// can act on divergence evidence (perturbation distances, tail checks) read
// it instead of discarding the work.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double partial)
      : std::runtime_error(what), partial_(partial) {}

  double partial() const noexcept { return partial_; }

private:
  double partial_;
};

// A model object violates a structural requirement: negative density sample,
// non-integrable jump measure, singular transform matrix, and so on.
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent run configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace levy2d
