#pragma once

#include <stdexcept>
#include <string>

namespace dualcurv {

/// Base class for every failure this library reports by throwing.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-difference stencil requested at a node that does not own one
/// (non-interior node, or index off the grid).
struct StencilError : Error {
    using Error::Error;
};

/// A node that should satisfy a surface's domain predicate does not,
/// or a requested evaluation point is outside the surface's domain.
struct DomainError : Error {
    using Error::Error;
};

/// Gradient norm at or above 1 (or above the admissibility margin):
/// the jet does not describe a spacelike graph.
struct NotSpacelike : Error {
    using Error::Error;
};

/// Direction handed to a tangent-only operation is not tangent to the graph.
struct TangencyError : Error {
    using Error::Error;
};

/// Zero (or numerically null) direction where a direction is required.
struct DegenerateDirection : Error {
    using Error::Error;
};

/// Level-curve quantities requested where the planar gradient vanishes.
struct NoLevelCurve : Error {
    using Error::Error;
};

/// Domain mask violates a structural invariant (disconnected interior,
/// no interior nodes, grid too small).
struct MaskError : Error {
    using Error::Error;
};

/// Dirichlet data fails the solver precondition (inadmissible affine fit)
/// or is structurally unusable.
struct BoundaryDataError : Error {
    using Error::Error;
};

/// Damped Newton step rejected at every damping level.
struct LineSearchStalled : Error {
    using Error::Error;
};

/// A solution-conditional check was invoked on a field whose equation
/// residual exceeds the caller's threshold. The check refuses to run.
struct NotASolution : Error {
    using Error::Error;
};

/// A geometric statement that must hold on solutions failed outright
/// (e.g. elliptic-point search found no elliptic point).
struct TheoremViolation : Error {
    using Error::Error;
};

/// File / serialization failure.
struct IoError : Error {
    using Error::Error;
};

} // namespace dualcurv
