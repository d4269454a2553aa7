#pragma once

#include <span>
#include <variant>
#include <vector>

#include "nonint/core.hpp"

namespace nonint {

struct LineSegment {
    Complex from;
    Complex to;
};

/// Circular arc center + radius * exp(i * (start_angle + sweep * s)), s in [0, 1].
/// The sign of sweep is the orientation (positive = counterclockwise).
struct ArcSegment {
    Complex center;
    double radius = 0.0;
    double start_angle = 0.0;
    double sweep = 0.0;
};

using PathSegment = std::variant<LineSegment, ArcSegment>;

/// gamma(s) for s in [0, 1].
Complex point_at(const PathSegment& seg, double s);
/// gamma'(s), the chain-rule factor dt/ds.
Complex tangent_at(const PathSegment& seg, double s);
Complex start_point(const PathSegment& seg);
Complex end_point(const PathSegment& seg);
double segment_length(const PathSegment& seg);

/// Throws std::invalid_argument when the segment is degenerate.
void validate(const PathSegment& seg);

inline constexpr double kPathContinuityTol = 1e-12;

/// Ordered list of segments, endpoint-continuous.
struct PathSpec {
    std::vector<PathSegment> segments;

    bool empty() const { return segments.empty(); }
    Complex start() const;
    Complex end() const;
    double length() const;
    /// Throws std::invalid_argument on degenerate segments or gaps.
    void validate() const;
    /// Appends a path; the joint must be continuous.
    PathSpec& append(const PathSpec& other);
};

/// Winding number of a path about z (the path need not be closed; the
/// result is the total argument change over 2 pi).
double winding_number(const PathSpec& path, Complex z);

/// Minimum distance from z to any point on the path.
double distance_to_path(const PathSpec& path, Complex z);

enum class Orientation { Ccw, Cw };

/// Base point + circle around a singularity, traversed `windings` times.
struct LoopSpec {
    Complex base{0.0, 0.0};
    Complex center;
    double radius = 0.3;
    int windings = 1;
    Orientation orientation = Orientation::Ccw;

    bool operator==(const LoopSpec&) const = default;
};

/// Straight approach from the base toward the center stopping at distance
/// radius, the full circles, then the same line back. The first and last
/// points equal the base bitwise. Throws std::invalid_argument when the
/// base lies inside the circle or the loop is otherwise malformed.
PathSpec expand_loop(const LoopSpec& loop);

/// As above; additionally checks that the winding number about every point
/// in `others` (other known singularities) is zero.
PathSpec expand_loop(const LoopSpec& loop, std::span<const Complex> others);

/// Same loop with the orientation flipped.
LoopSpec reversed(const LoopSpec& loop);

const char* to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

} // namespace nonint
