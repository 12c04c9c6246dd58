#pragma once

#include <stdexcept>
#include <string>

namespace symlab {

// Bad input: malformed text, rejected configuration, violated precondition.
// The CLI maps these to exit code 2.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct parse_error : config_error {
    using config_error::config_error;
};

// Wrong operator order / inhomogeneous symbol handed to the ellipticity
// classifier.
struct order_error : config_error {
    using config_error::config_error;
};

// deg(f^(k-1)) exceeds the observation degree in an independence query.
struct degree_overflow_error : config_error {
    using config_error::config_error;
};

// Runtime numerical failure. The CLI maps these to exit code 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trajectory norm exceeded the blow-up guard.
struct divergence_error : numeric_error {
    using numeric_error::numeric_error;
};

// |r_u x r_v| below threshold at a quadrature node.
struct degenerate_node_error : numeric_error {
    using numeric_error::numeric_error;
};

// No transversal section crossing within the time budget.
struct no_return_error : numeric_error {
    using numeric_error::numeric_error;
};

} // namespace symlab
