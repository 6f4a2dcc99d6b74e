// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace frontindex {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// jets
struct DivisionByZeroJet : Error { using Error::Error; };
struct NegativeSqrtJet : Error { using Error::Error; };
struct OrderExhausted : Error { using Error::Error; };

// surfaces
struct PoleProximity : Error { using Error::Error; };
struct SingularBasePoint : Error { using Error::Error; };
struct NotConvex : Error { using Error::Error; };
struct TangentialAffineNormal : Error { using Error::Error; };

// homomorphisms
struct NotSingular : Error { using Error::Error; };
struct ZeroAdjugate : Error { using Error::Error; };

// strata
struct NotMorin : Error { using Error::Error; };
struct ResolutionTooCoarse : Error { using Error::Error; };
struct DegenerateA3 : Error { using Error::Error; };

// index checks
struct NonIntegerDegree : Error { using Error::Error; };
struct NonGenericZero : Error { using Error::Error; };

// config
struct ParseError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };

} // namespace frontindex
