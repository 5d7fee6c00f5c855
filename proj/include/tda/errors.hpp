#ifndef TDA_ERRORS_HPP
#define TDA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tda {

/// Invalid input, configuration, or file content. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation exceeded its resource budget (e.g. the simplex cap). CLI exit code 3.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tda

#endif
