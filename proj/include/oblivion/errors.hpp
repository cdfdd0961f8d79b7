#pragma once

#include <stdexcept>
#include <string>

namespace oblivion {

// Invalid spec or config field (bad alpha, nonpositive scale, unknown family).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad call arguments (empty batch, size mismatch between paired batches).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A contract between components was violated (dimension mismatch,
// single-output path asked to handle too much contamination).
class ContractError : public std::logic_error {
public:
    explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// A statistic could not be formed from the data at hand
// (e.g. no samples inside the conditioning radius).
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

// Divergence or non-finite values during iteration.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace oblivion
