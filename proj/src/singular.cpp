#include "nonint/singular.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "nonint/parallel.hpp"

namespace nonint {

void Rect::validate() const
{
    if (!(re_min < re_max) || !(im_min < im_max))
        throw std::invalid_argument("scan rectangle is degenerate");
}

bool Rect::contains(Complex z, double margin) const
{
    return z.real() >= re_min - margin && z.real() <= re_max + margin && z.imag() >= im_min - margin &&
           z.imag() <= im_max + margin;
}

const char* to_string(DetectionMethod m)
{
    return m == DetectionMethod::RayBisection ? "RayBisection" : "Tracking";
}

namespace {

struct LocalProbe {
    Complex delta; // p / p'
    bool ok = false;
};

/// p / p' at (x, t), p' the derivative along the flow.
LocalProbe probe(const SystemDef& sys, const ComplexState& x, Complex t, int& component)
{
    LocalProbe out;
    try {
        ComplexState v = sys.field(x, t);
        auto eval = [&](const ComplexState& y, Complex tt) -> Complex {
            if (sys.indicator)
                return (*sys.indicator)(y, tt);
            return sys.field(y, tt)[component];
        };
        if (!sys.indicator && component < 0) {
            Eigen::Index j = 0;
            v.cwiseAbs().maxCoeff(&j);
            component = static_cast<int>(j);
        }
        const double eps = 1e-6 * (1.0 + x.norm()) / (1.0 + v.norm());
        Complex p = eval(x, t);
        Complex dp = (eval(x + eps * v, t + eps) - eval(x - eps * v, t - eps)) / (2.0 * eps);
        if (dp == Complex(0.0) || !std::isfinite(std::abs(p / dp)))
            return out;
        out.delta = p / dp;
        out.ok = true;
    } catch (const SingularPointError&) {
    }
    return out;
}

PathSpec line(Complex a, Complex b)
{
    return PathSpec{{LineSegment{a, b}}};
}

} // namespace

std::optional<SingularityCandidate> track_singularity(const SystemDef& system, const ComplexState& x0,
                                                      Complex base, Complex seed, const IntegratorConfig& cfg,
                                                      const TrackOptions& opts)
{
    Complex t = seed;
    std::optional<Complex> prev_estimate;
    int component = -1;
    int pullbacks = 0;

    for (int it = 0; it < opts.max_iterations; ++it) {
        if (std::abs(t - seed) > opts.max_travel || t == base)
            return std::nullopt;
        TransportResult r = transport(system, x0, line(base, t), cfg, false);
        if (!r.completed()) {
            // Ran into a singularity on the way: back off toward the base.
            if (++pullbacks > 8)
                return std::nullopt;
            t = base + 0.9 * (t - base);
            continue;
        }
        LocalProbe here = probe(system, r.x_end, t, component);
        if (!here.ok)
            return std::nullopt;
        const Complex h = 1e-3 * here.delta;
        TransportResult r2 = transport(system, r.x_end, line(t, t + h), cfg, false);
        if (!r2.completed())
            return std::nullopt;
        LocalProbe there = probe(system, r2.x_end, t + h, component);
        if (!there.ok)
            return std::nullopt;
        const Complex ddelta = (there.delta - here.delta) / h;
        if (ddelta == Complex(0.0))
            return std::nullopt;
        const Complex estimate = t - here.delta / ddelta;
        if (!std::isfinite(estimate.real()) || !std::isfinite(estimate.imag()))
            return std::nullopt;

        const double gap = std::abs(estimate - t);
        if (gap < opts.converge_distance * (1.0 + std::abs(t))) {
            SingularityCandidate c;
            c.location = estimate;
            c.uncertainty = std::max({prev_estimate ? std::abs(estimate - *prev_estimate) : gap, gap * gap, 1e-12});
            c.exponent = (1.0 / ddelta).real();
            c.method = DetectionMethod::Tracking;
            return c;
        }
        prev_estimate = estimate;
        Complex step = estimate - t;
        if (std::abs(step) > opts.max_step)
            step *= opts.max_step / std::abs(step);
        t += 0.8 * step;
    }
    return std::nullopt;
}

namespace {

std::vector<SingularityCandidate> cluster(std::vector<SingularityCandidate> found, double tol)
{
    // Deterministic order before merging.
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.location.real() != b.location.real())
            return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    std::vector<SingularityCandidate> merged;
    for (const auto& c : found) {
        auto hit = std::find_if(merged.begin(), merged.end(),
                                [&](const auto& m) { return std::abs(m.location - c.location) < tol; });
        if (hit == merged.end()) {
            merged.push_back(c);
        } else if (c.method == DetectionMethod::Tracking && hit->method == DetectionMethod::RayBisection) {
            *hit = c; // tracked locations are sharper
        } else if (c.method == hit->method && c.uncertainty < hit->uncertainty) {
            *hit = c;
        }
    }
    return merged;
}

} // namespace

std::vector<SingularityCandidate> scan_region(const SystemDef& system, const ComplexState& x0, const Rect& rect,
                                              int ray_count, const IntegratorConfig& cfg, const ScanOptions& opts)
{
    rect.validate();
    if (ray_count < 4)
        throw std::invalid_argument("scan_region: need at least 4 rays");

    const Complex base = opts.base;
    const std::array<Complex, 4> corners{Complex(rect.re_min, rect.im_min), Complex(rect.re_max, rect.im_min),
                                         Complex(rect.re_max, rect.im_max), Complex(rect.re_min, rect.im_max)};
    double reach = 0.0;
    for (Complex c : corners)
        reach = std::max(reach, std::abs(c - base));
    reach *= 1.05;

    // Angular fan covering the rectangle as seen from the base.
    double theta_lo = -std::numbers::pi, theta_hi = std::numbers::pi;
    if (!rect.contains(base)) {
        const double ref = std::arg(Complex(0.5 * (rect.re_min + rect.re_max), 0.5 * (rect.im_min + rect.im_max)) - base);
        double lo = 0.0, hi = 0.0;
        for (Complex c : corners) {
            double d = std::remainder(std::arg(c - base) - ref, 2.0 * std::numbers::pi);
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        theta_lo = ref + lo;
        theta_hi = ref + hi;
    }

    std::vector<std::vector<SingularityCandidate>> per_ray(static_cast<std::size_t>(ray_count));
    parallel_for(per_ray.size(), [&](std::size_t ri) {
        const double frac = ray_count == 1 ? 0.5 : static_cast<double>(ri) / (ray_count - 1);
        const Complex dir = std::polar(1.0, theta_lo + frac * (theta_hi - theta_lo));
        const Complex far = base + reach * dir;
        auto& out = per_ray[ri];

        SingularTime hit = locate_singular_time(system, x0, LineSegment{base, far}, cfg);
        Complex end = far;
        if (hit.found) {
            SingularityCandidate c;
            c.location = hit.location;
            c.uncertainty = std::max(hit.uncertainty, 1e-12);
            c.exponent = std::numeric_limits<double>::quiet_NaN();
            c.method = DetectionMethod::RayBisection;
            out.push_back(c);
            end = hit.location - (hit.location - base) * 1e-3;
        }

        // Local estimates along the ray seed the tracker.
        std::vector<Complex> seeds;
        ComplexState x = x0;
        Complex t_prev = base;
        Complex delta_prev;
        bool have_prev = false;
        int component = -1;
        for (int k = 1; k <= opts.samples_per_ray; ++k) {
            Complex t = base + (end - base) * (static_cast<double>(k) / opts.samples_per_ray);
            TransportResult r = transport(system, x, line(t_prev, t), cfg, false);
            if (!r.completed())
                break;
            x = r.x_end;
            LocalProbe p = probe(system, x, t, component);
            if (p.ok && have_prev) {
                Complex ddelta = (p.delta - delta_prev) / (t - t_prev);
                if (ddelta != Complex(0.0)) {
                    Complex est = t - p.delta / ddelta;
                    if (std::isfinite(est.real()) && std::isfinite(est.imag()) && rect.contains(est, 0.25))
                        seeds.push_back(est);
                }
            }
            if (p.ok) {
                delta_prev = p.delta;
                have_prev = true;
            } else {
                have_prev = false;
            }
            t_prev = t;
        }
        // Thin the seeds before the expensive refinement.
        std::vector<Complex> distinct;
        for (Complex s : seeds)
            if (std::none_of(distinct.begin(), distinct.end(), [&](Complex d) { return std::abs(d - s) < 0.02; }))
                distinct.push_back(s);
        for (Complex s : distinct) {
            if (s == base)
                continue;
            auto c = track_singularity(system, x0, base, s, cfg, opts.track);
            if (c && rect.contains(c->location))
                out.push_back(*c);
        }
    });

    std::vector<SingularityCandidate> all;
    for (auto& v : per_ray)
        for (auto& c : v)
            if (rect.contains(c.location))
                all.push_back(c);
    auto merged = cluster(std::move(all), opts.cluster_tolerance);
    std::stable_sort(merged.begin(), merged.end(), [&](const auto& a, const auto& b) {
        return std::abs(a.location - base) < std::abs(b.location - base);
    });
    return merged;
}

double default_loop_radius(Complex center, std::span<const Complex> others, double cap)
{
    double r = cap;
    for (Complex o : others) {
        double d = std::abs(o - center);
        if (d > 1e-12)
            r = std::min(r, 0.5 * d);
    }
    return r;
}

BranchOrderResult branch_order(const SystemDef& system, const ComplexState& x0, const LoopSpec& loop_template,
                               const IntegratorConfig& cfg, int k_max, double residual_tol)
{
    if (k_max < 1)
        throw std::invalid_argument("branch_order: k_max must be positive");
    LoopSpec one = loop_template;
    one.windings = 1;
    const PathSpec path = expand_loop(one);
    const PathSpec approach{{path.segments[0]}};
    const PathSpec circle{{path.segments[1]}};
    const PathSpec back{{path.segments[2]}};

    auto fail = [&](const TransportResult& r, const char* where) {
        return NumericalError(std::string("branch_order: transport ") + where + " failed (" + to_string(r.status) +
                              " near t = " + std::to_string(r.time_estimate.real()) + "," +
                              std::to_string(r.time_estimate.imag()) +
                              "); the loop may hit another singularity, try a different radius");
    };

    TransportResult r = transport(system, x0, approach, cfg, false);
    if (!r.completed())
        throw fail(r, "along the approach line");
    ComplexState at_entry = r.x_end;
    const double scale = 1.0 + x0.norm();

    BranchOrderResult out;
    for (int k = 1; k <= k_max; ++k) {
        TransportResult c = transport(system, at_entry, circle, cfg, false);
        if (!c.completed())
            throw fail(c, "around the circle");
        at_entry = c.x_end;
        TransportResult b = transport(system, at_entry, back, cfg, false);
        if (!b.completed())
            throw fail(b, "along the return line");
        double res = (b.x_end - x0).norm() / scale;
        out.residuals.push_back(res);
        if (res < residual_tol) {
            out.order = k;
            break;
        }
    }
    return out;
}

} // namespace nonint
