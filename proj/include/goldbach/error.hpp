// error.hpp
// Error categories shared by every goldbach module.
//
//   DomainError   - argument outside the mathematical domain of an operation
//   ResourceError - request exceeds the configured sieve limit or budget
//   FormatError   - malformed pi-cache file
//   IoError       - unreadable/unwritable destination

#pragma once
#include <stdexcept>
#include <string>

namespace goldbach {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace goldbach
