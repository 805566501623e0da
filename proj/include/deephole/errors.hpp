#pragma once

#include <stdexcept>
#include <string>

namespace dh {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedLattice : Error { using Error::Error; };
struct SearchBudgetExceeded : Error { using Error::Error; };
struct NoOverlattice : Error { using Error::Error; };
struct NotContained : Error { using Error::Error; };
struct RecognitionError : Error { using Error::Error; };
struct UnsupportedFolding : Error { using Error::Error; };
struct MixedCoxeter : Error { using Error::Error; };
struct NotAnIsometry : Error { using Error::Error; };
struct UnknownName : Error { using Error::Error; };
struct ConstructionError : Error { using Error::Error; };
struct DataError : Error { using Error::Error; };
struct GlueNotPreserved : Error { using Error::Error; };
struct ClassMismatch : Error { using Error::Error; };
struct NoFixedRoot : Error { using Error::Error; };
struct InconsistentPair : Error { using Error::Error; };
struct TableRegression : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace dh
