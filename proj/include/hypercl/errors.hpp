#pragma once

#include <stdexcept>
#include <string>

namespace hypercl {

// Base for all toolkit errors so callers can catch one type at the CLI
// boundary and map it to a clean exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- state / system construction -------------------------------------------
struct NonAdmissibleState : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct NonConvexEnergy : Error { using Error::Error; };
struct NonConvexFlux : Error { using Error::Error; };
struct LambdaTooLarge : Error { using Error::Error; };

// --- derivative / algebra layer --------------------------------------------
struct SingularDA : Error { using Error::Error; };
struct AsymmetricInput : Error { using Error::Error; };
struct DerivativeMismatch : Error { using Error::Error; };
struct MissingEntropyFlux : Error { using Error::Error; };
struct PathLeavesAdmissibleSet : Error { using Error::Error; };

// --- fields / grids ---------------------------------------------------------
struct GridMismatch : Error { using Error::Error; };
struct FieldLeavesSampleBox : Error { using Error::Error; };

// --- besov / mollification ---------------------------------------------------
struct EpsilonBelowGrid : Error { using Error::Error; };
struct EpsilonExceedsDomain : Error { using Error::Error; };
struct LadderTooShort : Error { using Error::Error; };

// --- exact solutions ---------------------------------------------------------
struct BracketFailure : Error { using Error::Error; };
struct ThetaNonMonotone : Error { using Error::Error; };
struct NonMonotoneCharacteristicMap : Error { using Error::Error; };
struct CharacteristicLeavesDomain : Error { using Error::Error; };
struct NonStrictlyConvex : Error { using Error::Error; };
struct PlanarConditionViolated : Error { using Error::Error; };

// --- finite volume -----------------------------------------------------------
struct StateLeftAdmissibleSet : Error { using Error::Error; };
struct NonInvertibleA : Error { using Error::Error; };

}  // namespace hypercl
