#pragma once

#include <stdexcept>
#include <string>

namespace pulsekit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// specfun
struct PoleError : Error { using Error::Error; };
struct AccuracyError : Error { using Error::Error; };

// shapes
struct InvalidDuration : Error { using Error::Error; };
struct UnsupportedKind : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct CuspError : Error { using Error::Error; };

// dynamics / split model
struct InvalidLambda : Error { using Error::Error; };
struct StepFailure : Error { using Error::Error; };

// analysis
struct FeatureNotFound : Error { using Error::Error; };

// fitting / io
struct InsufficientData : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct MissingColumn : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };

} // namespace pulsekit
