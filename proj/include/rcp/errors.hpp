#pragma once
#include <stdexcept>

namespace rcp {

// Explicit resource-limit failures (enumeration caps, key-space overflow).
// Argument validation uses std::invalid_argument throughout.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A construction phase ran out of primes / survivors; message names the phase.
struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An adversary callback returned a structurally invalid choice.
struct protocol_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace rcp
