#pragma once

#include <stdexcept>
#include <string>

namespace gradiv {

/// Input that violates a type invariant or an operation precondition.
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A well-formed computation that could not produce a value
/// (quadrature non-convergence, root bracketing failure, ...).
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gradiv
