#pragma once

#include <stdexcept>
#include <string>

namespace pseudoroll {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not match each other or the ambient signature.
struct DimensionError : Error { using Error::Error; };

/// Matrix fails the pseudo-orthogonal group constraint X^T J X = J.
struct GroupConstraintError : Error { using Error::Error; };

/// Matrix fails the algebra constraint A^T J = -J A.
struct AlgebraConstraintError : Error { using Error::Error; };

/// A diagonal block determinant is too close to zero to carry a sign.
struct DegenerateBlockError : Error { using Error::Error; };

/// Basis-element indices violate the required ordering 1 <= i < j <= n.
struct IndexOrderError : Error { using Error::Error; };

/// Orthonormalization hit a subspace on which the scalar product degenerates.
struct DegenerateSubspaceError : Error { using Error::Error; };

/// Point is not on the submanifold it was claimed to lie on.
struct MembershipError : Error { using Error::Error; };

/// Sample grid is unusable (too short, non-increasing, collapsing spacing).
struct GridError : Error { using Error::Error; };

/// A vector that must be J-orthogonal to another is not.
struct OrthogonalityError : Error { using Error::Error; };

/// A vector that must be unit or null has an inadmissible causal norm.
struct NormalizationError : Error { using Error::Error; };

/// A field tagged tangent/normal does not live in the tagged subbundle.
struct FlavorError : Error { using Error::Error; };

/// Reachability target coincides with the base point.
struct DegenerateTargetError : Error { using Error::Error; };

/// A frame is not orthonormal, not parallel, or not adapted as required.
struct FrameError : Error { using Error::Error; };

/// A matrix does not belong to the isometry group of the stated signature.
struct SignatureError : Error { using Error::Error; };

/// Chart metric is singular (or numerically unresolvable) at the point.
struct MetricDegeneracyError : Error { using Error::Error; };

/// Scenario, expression, or CSV input does not parse; the message carries
/// the position when one is known.
struct ParseError : Error { using Error::Error; };

/// A file could not be read or written.
struct IoError : Error { using Error::Error; };

}  // namespace pseudoroll
