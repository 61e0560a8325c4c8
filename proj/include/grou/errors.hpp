// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace grou {

// Invalid arguments, incompatible method/target/transform combinations,
// malformed run specifications. CLI maps this to exit code 2.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A required boundedness or admissibility condition failed. Exit code 3.
struct admissibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A boundedness probe could not decide (sup still creeping below the
// divergence threshold). Exit code 4 is starvation, 5 is this.
struct inconclusive_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Acceptance rate collapsed below the starvation floor. Exit code 4.
struct starvation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rejection envelope was violated at a concrete point.
struct envelope_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iteration caps exceeded in root finding or quadrature.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace grou
