#ifndef NETDIFF_ERRORS_HPP
#define NETDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netdiff {

/// Bad input content: malformed files, violated invariants, domain mismatches.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem problems: unreadable input, unwritable output.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace netdiff

#endif
