#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nonint/integrate.hpp"

namespace nonint {

struct Rect {
    double re_min = 0.0, re_max = 1.0, im_min = 0.0, im_max = 1.0;

    void validate() const;
    bool contains(Complex z, double margin = 0.0) const;
    bool operator==(const Rect&) const = default;
};

enum class DetectionMethod { RayBisection, Tracking };

const char* to_string(DetectionMethod m);

struct SingularityCandidate {
    Complex location;
    double uncertainty = 0.0;
    /// Local exponent beta of indicator ~ (t - t*)^beta; NaN for bisection hits.
    double exponent = 0.0;
    std::optional<int> branch_order;
    double return_residual = 0.0;
    DetectionMethod method = DetectionMethod::Tracking;
};

struct TrackOptions {
    int max_iterations = 80;
    /// Largest move per iteration.
    double max_step = 0.15;
    /// Stop once the current point is this close to the estimate.
    double converge_distance = 1e-6;
    /// Give up when the estimate leaves this distance from the seed.
    double max_travel = 3.0;
};

/// Newton-like tracking of the singularity nearest a seed point on the sheet
/// reached by straight lines from `base`. Uses the indicator's logarithmic
/// derivative: for p ~ c (t - t*)^beta, delta = p / p' = (t - t*) / beta and
/// t* = t - delta / delta'. Returns nullopt if the iteration does not settle.
std::optional<SingularityCandidate> track_singularity(const SystemDef& system, const ComplexState& x0,
                                                      Complex base, Complex seed, const IntegratorConfig& cfg,
                                                      const TrackOptions& opts = {});

struct ScanOptions {
    Complex base{0.0, 0.0};
    /// Samples per ray at which local estimates are taken.
    int samples_per_ray = 48;
    double cluster_tolerance = 1e-3;
    TrackOptions track;
};

/// Casts `ray_count` rays from the base through the rectangle. Rays that
/// fail are bisected (RayBisection); along every ray, local singularity
/// estimates seed the tracker (Tracking). Results inside the rectangle are
/// clustered and sorted by distance from the base.
std::vector<SingularityCandidate> scan_region(const SystemDef& system, const ComplexState& x0, const Rect& rect,
                                              int ray_count, const IntegratorConfig& cfg,
                                              const ScanOptions& opts = {});

/// min(0.3, half the distance to the nearest other singularity).
double default_loop_radius(Complex center, std::span<const Complex> others, double cap = 0.3);

struct BranchOrderResult {
    std::optional<int> order;
    /// residuals[k - 1] = |x(after k windings) - x0| / (1 + |x0|).
    std::vector<double> residuals;
};

/// Smallest winding count k <= k_max after which the state returns to x0.
/// Throws NumericalError when the loop transport fails.
BranchOrderResult branch_order(const SystemDef& system, const ComplexState& x0, const LoopSpec& loop_template,
                               const IntegratorConfig& cfg, int k_max = 12, double residual_tol = 1e-6);

} // namespace nonint
