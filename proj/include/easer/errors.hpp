#pragma once

#include <stdexcept>
#include <string>

namespace easer {

// Raising an occupation past the truncation of the containing space.
// Silent truncation is never allowed; callers that need a projected
// generator must ask for it explicitly.
struct CutoffExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Power-series evolution failed to reach the requested residual within
// the iteration cap.
struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation that assumes pair-structured support was handed a state
// that is not supported on pair kets.
struct UnsupportedState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A polarization basis change whose matrix is not unitary.
struct NotUnitary : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameters outside the validity region of a perturbative formula.
struct OutOfValidity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conditioning on a measurement outcome that cannot occur.
struct ZeroProbabilityOutcome : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A coincidence pattern referencing detectors the setup does not have,
// or with contradictory requirements.
struct InvalidPattern : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad scenario configuration; the message names the offending field.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace easer
