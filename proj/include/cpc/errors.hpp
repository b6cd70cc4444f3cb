#pragma once

#include <stdexcept>
#include <string>

namespace cpc {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two signals with different fundamental frequencies were combined.
struct OmegaMismatch : Error {
    using Error::Error;
};

// A sample count too small for the harmonic content (M <= 2 * max order).
struct NyquistViolation : Error {
    using Error::Error;
};

// An operation divided by the norm of a signal that is identically zero
// (zero source voltage, zero apparent power, DC-only voltage for B_e, ...).
struct ZeroSignal : Error {
    using Error::Error;
};

// The one-port admittance diverges at the queried frequency, or no
// tabulated value exists for the queried harmonic order.
struct SingularAdmittance : Error {
    using Error::Error;
};

// A floating-point consistency guard tripped (e.g. the Budeanu distortion
// radicand S^2 - P^2 - Q_B^2 came out significantly negative).
struct NumericalInconsistency : Error {
    using Error::Error;
};

// Compensator synthesis was asked for a case outside the supported
// construction (scattered-reactive support != 2 harmonics).
struct UnsupportedCompensator : Error {
    using Error::Error;
};

// Compensator synthesis produced a non-realizable element value.
struct NonphysicalCompensator : Error {
    using Error::Error;
};

// A circuit description file failed schema or value validation.
struct ParseError : Error {
    using Error::Error;
};

} // namespace cpc
