#ifndef MER_ERRORS_HPP
#define MER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mer {

// Rejected input or misuse of an operation's contract (CLI exit code 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal guarantee: queue overflow, workspace budget breach,
// meter underflow (CLI exit code 3).
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mer

#endif
