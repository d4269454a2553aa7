#include "nonint/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace nonint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

} // namespace

Complex point_at(const PathSegment& seg, double s)
{
    return std::visit(overloaded{
                          [s](const LineSegment& l) -> Complex {
                              if (s == 0.0)
                                  return l.from;
                              if (s == 1.0)
                                  return l.to;
                              return l.from + (l.to - l.from) * s;
                          },
                          [s](const ArcSegment& a) -> Complex {
                              return a.center + std::polar(a.radius, a.start_angle + a.sweep * s);
                          },
                      },
                      seg);
}

Complex tangent_at(const PathSegment& seg, double s)
{
    return std::visit(overloaded{
                          [](const LineSegment& l) -> Complex { return l.to - l.from; },
                          [s](const ArcSegment& a) -> Complex {
                              return Complex(0.0, a.sweep) *
                                     std::polar(a.radius, a.start_angle + a.sweep * s);
                          },
                      },
                      seg);
}

Complex start_point(const PathSegment& seg)
{
    return point_at(seg, 0.0);
}

Complex end_point(const PathSegment& seg)
{
    return point_at(seg, 1.0);
}

double segment_length(const PathSegment& seg)
{
    return std::visit(overloaded{
                          [](const LineSegment& l) { return std::abs(l.to - l.from); },
                          [](const ArcSegment& a) { return a.radius * std::abs(a.sweep); },
                      },
                      seg);
}

void validate(const PathSegment& seg)
{
    std::visit(overloaded{
                   [](const LineSegment& l) {
                       if (!(std::isfinite(l.from.real()) && std::isfinite(l.from.imag()) &&
                             std::isfinite(l.to.real()) && std::isfinite(l.to.imag())))
                           throw std::invalid_argument("line segment has non-finite endpoints");
                       if (l.from == l.to)
                           throw std::invalid_argument("line segment has equal endpoints");
                   },
                   [](const ArcSegment& a) {
                       if (!(a.radius > 0.0) || !std::isfinite(a.radius))
                           throw std::invalid_argument("arc radius must be positive");
                       if (a.sweep == 0.0 || !std::isfinite(a.sweep))
                           throw std::invalid_argument("arc sweep must be nonzero");
                   },
               },
               seg);
}

Complex PathSpec::start() const
{
    if (segments.empty())
        throw std::invalid_argument("empty path has no start point");
    return start_point(segments.front());
}

Complex PathSpec::end() const
{
    if (segments.empty())
        throw std::invalid_argument("empty path has no end point");
    return end_point(segments.back());
}

double PathSpec::length() const
{
    double total = 0.0;
    for (const auto& s : segments)
        total += segment_length(s);
    return total;
}

void PathSpec::validate() const
{
    for (std::size_t i = 0; i < segments.size(); ++i) {
        nonint::validate(segments[i]);
        if (i > 0) {
            Complex gap = start_point(segments[i]) - end_point(segments[i - 1]);
            if (std::abs(gap) > kPathContinuityTol)
                throw std::invalid_argument("path is discontinuous between segments " +
                                            std::to_string(i - 1) + " and " + std::to_string(i));
        }
    }
}

PathSpec& PathSpec::append(const PathSpec& other)
{
    if (!segments.empty() && !other.segments.empty() &&
        std::abs(other.start() - end()) > kPathContinuityTol)
        throw std::invalid_argument("append: paths do not join");
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    return *this;
}

double winding_number(const PathSpec& path, Complex z)
{
    double total = 0.0;
    for (const auto& seg : path.segments) {
        // Pieces short enough that the argument change per piece stays in (-pi, pi).
        int pieces = 1;
        if (const auto* a = std::get_if<ArcSegment>(&seg))
            pieces = std::max(1, static_cast<int>(std::ceil(std::abs(a->sweep) / (std::numbers::pi / 8))));
        Complex prev = start_point(seg) - z;
        for (int k = 1; k <= pieces; ++k) {
            Complex next = point_at(seg, static_cast<double>(k) / pieces) - z;
            total += std::arg(next / prev);
            prev = next;
        }
    }
    return total / kTwoPi;
}

double distance_to_path(const PathSpec& path, Complex z)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& seg : path.segments) {
        double d = std::visit(overloaded{
                                  [z](const LineSegment& l) {
                                      Complex dir = l.to - l.from;
                                      double u = std::real((z - l.from) * std::conj(dir)) / std::norm(dir);
                                      u = std::clamp(u, 0.0, 1.0);
                                      return std::abs(l.from + dir * u - z);
                                  },
                                  [z](const ArcSegment& a) {
                                      if (std::abs(a.sweep) >= kTwoPi)
                                          return std::abs(std::abs(z - a.center) - a.radius);
                                      // Sampled; arcs used here are short or full circles.
                                      double m = std::numeric_limits<double>::infinity();
                                      for (int k = 0; k <= 256; ++k)
                                          m = std::min(m, std::abs(point_at(a, k / 256.0) - z));
                                      return m;
                                  },
                              },
                              seg);
        best = std::min(best, d);
    }
    return best;
}

PathSpec expand_loop(const LoopSpec& loop)
{
    if (!(loop.radius > 0.0))
        throw std::invalid_argument("loop radius must be positive");
    if (loop.windings < 1)
        throw std::invalid_argument("loop windings must be a positive integer");
    Complex offset = loop.center - loop.base;
    double d = std::abs(offset);
    if (!(loop.radius < d))
        throw std::invalid_argument("loop base point lies inside (or on) the circle: |center - base| = " +
                                    std::to_string(d) + ", radius = " + std::to_string(loop.radius));
    Complex unit = offset / d;
    Complex entry = loop.base + unit * (d - loop.radius);
    double sign = loop.orientation == Orientation::Ccw ? 1.0 : -1.0;

    PathSpec path;
    path.segments.push_back(LineSegment{loop.base, entry});
    path.segments.push_back(ArcSegment{loop.center, loop.radius, std::arg(-unit),
                                       sign * kTwoPi * loop.windings});
    path.segments.push_back(LineSegment{entry, loop.base});
    return path;
}

PathSpec expand_loop(const LoopSpec& loop, std::span<const Complex> others)
{
    PathSpec path = expand_loop(loop);
    for (Complex z : others) {
        if (std::abs(z - loop.center) < 1e-12)
            continue;
        double w = winding_number(path, z);
        if (std::abs(w) > 0.5)
            throw std::invalid_argument("loop around " + std::to_string(loop.center.real()) + "," +
                                        std::to_string(loop.center.imag()) +
                                        " also encircles the singularity at " + std::to_string(z.real()) +
                                        "," + std::to_string(z.imag()) + "; reduce the radius");
        if (distance_to_path(path, z) < 1e-9)
            throw std::invalid_argument("loop passes through a known singularity");
    }
    return path;
}

LoopSpec reversed(const LoopSpec& loop)
{
    LoopSpec r = loop;
    r.orientation = loop.orientation == Orientation::Ccw ? Orientation::Cw : Orientation::Ccw;
    return r;
}

const char* to_string(Orientation o)
{
    return o == Orientation::Ccw ? "ccw" : "cw";
}

Orientation orientation_from_string(const std::string& s)
{
    if (s == "ccw")
        return Orientation::Ccw;
    if (s == "cw")
        return Orientation::Cw;
    throw std::invalid_argument("orientation must be \"ccw\" or \"cw\", got \"" + s + "\"");
}

} // namespace nonint
