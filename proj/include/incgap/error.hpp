#pragma once

#include <stdexcept>
#include <string>

namespace incgap {

enum class ErrorKind { Usage, Data, Numerical };

// Every library failure carries the module that raised it and a category
// that the CLI maps onto its exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), kind_(kind), module_(std::move(module)) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

class UsageError : public Error {
public:
    UsageError(std::string module, const std::string& what)
        : Error(ErrorKind::Usage, std::move(module), what) {}
};

class DataError : public Error {
public:
    DataError(std::string module, const std::string& what)
        : Error(ErrorKind::Data, std::move(module), what) {}
};

class NumericalError : public Error {
public:
    NumericalError(std::string module, const std::string& what)
        : Error(ErrorKind::Numerical, std::move(module), what) {}
};

}  // namespace incgap
