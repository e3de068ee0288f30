// morphglide -- error types shared across the toolkit.

#pragma once

#include <stdexcept>
#include <string>

namespace morphglide {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Geometry / discretization contract violations.
struct InvalidDiscretizationError : Error { using Error::Error; };
struct ImplausibleMorphError : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct IncomparableProfilesError : Error { using Error::Error; };
struct DegenerateGeometryError : Error { using Error::Error; };

// Structural solver failures.
struct InvertedElementError : Error { using Error::Error; };
struct NonConvergenceError : Error { using Error::Error; };
struct UnderdeterminedFitError : Error { using Error::Error; };
struct ExtrapolationRangeError : Error { using Error::Error; };

// Hydro / vehicle model validity.
struct ModelValidityError : Error { using Error::Error; };
struct ContractError : Error { using Error::Error; };

// Configuration and file handling.
struct ConfigError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ScheduleError : Error { using Error::Error; };

}  // namespace morphglide
