#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sqspiral {

// Requested size is over a configured budget.
class capacity_error : public std::length_error {
public:
    capacity_error(const std::string& what, std::size_t limit)
        : std::length_error(what), limit_(limit) {}
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

// File could not be read or written.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text input (polynomial, group spec, config) did not parse.
class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Second differences are not constant; index() is the first level-2 entry that
// differs from level2[0].
class not_quadratic_error : public std::domain_error {
public:
    not_quadratic_error(const std::string& what, std::size_t index)
        : std::domain_error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

} // namespace sqspiral
