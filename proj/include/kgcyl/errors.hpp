#pragma once

#include <stdexcept>
#include <string>

namespace kgcyl {

struct InvalidMetricError : std::runtime_error {
  explicit InvalidMetricError(const std::string& what) : std::runtime_error(what) {}
};

struct StabilityError : std::runtime_error {
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfDomainError : std::runtime_error {
  explicit OutOfDomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ResolutionError : std::runtime_error {
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

struct MorphismError : std::runtime_error {
  explicit MorphismError(const std::string& what) : std::runtime_error(what) {}
};

struct CutoffError : std::runtime_error {
  explicit CutoffError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kgcyl
