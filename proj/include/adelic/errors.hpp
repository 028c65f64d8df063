#ifndef ADELIC_ERRORS_HPP
#define ADELIC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adelic {

// Malformed textual input (polynomial grammar, polynomial set files).
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A mathematical precondition of an operation does not hold
// (common factor present, all-zero multiset, non-prime modulus, ...).
class precondition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configured resource budget would be exceeded.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace adelic

#endif
