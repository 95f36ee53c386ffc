#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmssc {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad values in otherwise well-formed input (empty cluster, nonpositive weight, ...).
struct domain_error : error {
    using error::error;
};

// Input has the wrong number of coordinates for the requested operation.
struct dimension_error : error {
    using error::error;
};

// Infeasible or inconsistent (K, M) / flag combinations.
struct parameter_error : error {
    using error::error;
};

// A solver was asked to handle input outside its model; the message names the right mode.
struct mode_error : parameter_error {
    using parameter_error::parameter_error;
};

// Malformed input file; carries the 1-based line number.
struct parse_error : error {
    std::size_t line;
    parse_error(const std::string& what, std::size_t line_no)
        : error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

// Instance exceeds a hard enumeration guard (oracle, extended model).
struct guard_error : error {
    using error::error;
};

struct internal_error : error {
    using error::error;
};

}  // namespace pmssc
