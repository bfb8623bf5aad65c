#pragma once

#include <stdexcept>
#include <string>

namespace chq {

struct GridMismatch : std::invalid_argument {
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

struct NonPositivePotential : std::invalid_argument {
    explicit NonPositivePotential(const std::string& what) : std::invalid_argument(what) {}
};

struct PeriodMismatch : std::invalid_argument {
    explicit PeriodMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// An iterate collapsed (zero component or non-positive coupling); the Nehari
// projection is undefined there.
struct DegeneratePair : std::runtime_error {
    explicit DegeneratePair(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace chq
