#pragma once

#include <stdexcept>
#include <string>

namespace wallkit {

// Raised for malformed or out-of-contract input; the CLI maps it to exit code 2.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionTooLarge : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct ZeroNormal : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct DependentColumns : InvalidInput {
    using InvalidInput::InvalidInput;
};

// The given cocharacter vectors span a sublattice of index > 1 in its
// saturation, so no integer cokernel basis presents the quotient faithfully.
struct NonPrimitiveBasis : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Orientation was requested for a character lying on the circuit's wall.
struct OnWall : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct NotOnMomentFibre : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct NotACircuit : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct EndpointMismatch : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct MissingEdge : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct NotALoop : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct IndexOutOfRange : InvalidInput {
    using InvalidInput::InvalidInput;
};

struct BadWallConfiguration : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Defensive: chamber graphs of real arrangements are always connected.
struct Disconnected : std::logic_error {
    using std::logic_error::logic_error;
};

// Monodromy was requested for an edge assignment that never passed the
// two-cell check.
struct UncheckedRepresentation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace wallkit
