#pragma once

#include <stdexcept>
#include <string>

namespace mubgeo {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- finite fields ----
struct NonPrimeCharacteristic : Error { using Error::Error; };
struct OrderTooLarge : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };

// ---- latin squares ----
struct MalformedArray : Error { using Error::Error; };
struct OrderMismatch : Error { using Error::Error; };

// ---- affine planes ----
struct MalformedIncidence : Error { using Error::Error; };
struct WrongCount : Error { using Error::Error; };
struct NotOrthogonal : Error { using Error::Error; };
struct SamePencil : Error { using Error::Error; };
struct InvalidPlane : Error { using Error::Error; };

// ---- hermitian space ----
struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotUnitTrace : Error { using Error::Error; };

// ---- mubs ----
struct OrderNotPrimePower : Error { using Error::Error; };
struct CommutationFailure : Error { using Error::Error; };
struct DegenerateCombination : Error { using Error::Error; };
struct TooManyBases : Error { using Error::Error; };
struct NonUnitVector : Error { using Error::Error; };
struct InvalidMubSet : Error { using Error::Error; };

// ---- polytope ----
struct IncompleteChoice : Error { using Error::Error; };
struct PlaneOrderMismatch : Error { using Error::Error; };
struct UnknownLine : Error { using Error::Error; };
struct AbstractRealization : Error { using Error::Error; };

// ---- wigner ----
struct MissingPlane : Error { using Error::Error; };

// ---- i/o ----
struct ParseFailure : Error { using Error::Error; };

}  // namespace mubgeo
