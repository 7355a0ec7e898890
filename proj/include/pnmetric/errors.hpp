#pragma once

#include <stdexcept>
#include <string>

namespace pnmetric {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArityError : Error { using Error::Error; };
struct UnknownPoint : Error { using Error::Error; };
struct MissingEntry : Error { using Error::Error; };
struct DuplicateEntry : Error { using Error::Error; };
struct PartialMetricAxiomViolation : Error { using Error::Error; };
struct InvalidSpace : Error { using Error::Error; };
struct WindowTooLarge : Error { using Error::Error; };
struct NotCauchyOnPrefix : Error { using Error::Error; };
struct UniquenessViolation : Error { using Error::Error; };
struct InvalidLambda : Error { using Error::Error; };
struct NotAnNMetric : Error { using Error::Error; };
struct EvaluatorFailure : Error { using Error::Error; };
struct PreconditionNotMet : Error { using Error::Error; };

// Raised only when a theorem's hypotheses verify but its conclusion fails.
// On a validated space this signals an implementation bug.
struct TheoremContradicted : Error { using Error::Error; };

struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };

}  // namespace pnmetric
