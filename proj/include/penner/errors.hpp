#pragma once

#include <stdexcept>
#include <string>

namespace penner {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A surface description violates the triangulation invariants, or (g, s)
/// is outside the allowed range (s >= 1, 2g - 2 + s >= 1).
struct InvalidSurface : Error {
    using Error::Error;
};

/// Flip requested on an edge whose two half-edges lie in the same face;
/// there is no quadrilateral and the flip is undefined.
struct FlipUndefined : Error {
    using Error::Error;
};

/// The flip exchange relation has a vanishing right-hand side: the point
/// does not lie in the chart of the flipped triangulation.
struct DegenerateFlip : Error {
    DegenerateFlip(const std::string& what, int edge_id, int step_index = -1)
        : Error(what), edge(edge_id), step(step_index) {}

    int edge;      // edge whose flip degenerated
    int step = -1; // index within a flip sequence, -1 for a single flip
};

/// Coordinates fail the chart-validity test (some per-puncture phi vanishes).
struct InvalidChart : Error {
    using Error::Error;
};

/// A loop holonomy expected to be parabolic is the identity.
struct NotParabolic : Error {
    using Error::Error;
};

/// Rejection sampling exhausted its retry budget; the sign pattern admits no
/// valid chart point at any of the sampled positive coordinates.
struct IdenticallyInvalid : Error {
    using Error::Error;
};

/// A walk in the ribbon graph does not chain: consecutive step endpoints
/// disagree, or a step references a nonexistent edge.
struct MalformedWalk : Error {
    using Error::Error;
};

/// File or serialization failure in the CLI layer.
struct IoError : Error {
    using Error::Error;
};

} // namespace penner
