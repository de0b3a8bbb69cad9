#pragma once

#include <stdexcept>
#include <string>

namespace cmod {

/// Base for all domain errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A divisibility test or division needed coefficients past the precision
/// watermark of the truncated ring (or past the truncation order itself).
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

/// t^a does not divide the given series.
struct NotDivisible : Error {
    explicit NotDivisible(const std::string& msg) : Error(msg) {}
};

/// Profile I == J (no rank-2 geometry to speak of).
struct DegenerateProfile : Error {
    explicit DegenerateProfile(const std::string& msg) : Error(msg) {}
};

/// Coefficient tuple violates the cycle constraint (z != 0).
struct ConstraintViolated : Error {
    explicit ConstraintViolated(const std::string& msg) : Error(msg) {}
};

/// Coefficients assigned on edges where the profile forces zero.
struct ProfileMismatch : Error {
    explicit ProfileMismatch(const std::string& msg) : Error(msg) {}
};

/// Inputs outside the implemented classification cases.
struct NotApplicable : Error {
    explicit NotApplicable(const std::string& msg) : Error(msg) {}
};

/// An eigenline of an idempotent could not be pinned down at working precision.
struct EigenlineAmbiguous : Error {
    explicit EigenlineAmbiguous(const std::string& msg) : Error(msg) {}
};

/// Malformed user input (bad rim, bad series literal, bad config).
struct InputError : Error {
    explicit InputError(const std::string& msg) : Error(msg) {}
};

} // namespace cmod
