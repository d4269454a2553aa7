#pragma once

#include <functional>
#include <optional>

#include "nonint/path.hpp"
#include "nonint/systems.hpp"

namespace nonint {

/// Step sizes are in units of the per-segment parameter s in [0, 1].
struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-13;
    long max_steps = 10'000'000;
    double blowup_norm = 1e8;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    /// Same config with rtol and atol divided by `factor`.
    IntegratorConfig tightened(double factor) const;

    bool operator==(const IntegratorConfig&) const = default;
};

enum class TransportStatus { Completed, Blowup, StepUnderflow, MaxSteps };

const char* to_string(TransportStatus s);

struct TransportResult {
    TransportStatus status = TransportStatus::Completed;
    /// Where integration stopped when status != Completed.
    std::size_t segment_index = 0;
    double param_estimate = 0.0;
    Complex time_estimate;

    ComplexState x_end;
    /// Fundamental matrix; empty when transported without variations.
    CMatrix xi;
    /// Integral of tr A dt along the path.
    Complex log_det;
    long steps = 0;
    long rejected = 0;
    double max_local_error = 0.0;

    bool completed() const { return status == TransportStatus::Completed; }
};

struct StepRecord {
    std::size_t segment_index;
    double s;
    Complex t;
    double state_norm;
    double h;
};

using StepObserver = std::function<void(const StepRecord&)>;

/// Integrates x' = v(x), Xi' = A(x) Xi, w' = tr A(x) along the path, each
/// segment parametrized by s in [0, 1] with the chain-rule factor gamma'(s).
/// Dormand-Prince 5(4) with PI step-size control.
TransportResult transport(const SystemDef& system, const ComplexState& x0, const PathSpec& path,
                          const IntegratorConfig& cfg, bool with_variational,
                          const StepObserver& observer = {});

/// |det Xi - exp(w)| / |exp(w)|; requires a variational transport.
double abel_liouville_residual(const TransportResult& r);

struct SingularTime {
    bool found = false;
    Complex location;
    double uncertainty = 0.0;
    TransportStatus cause = TransportStatus::Completed;
};

/// Transports along the ray; if it fails,
/// bisects the failure point on the segment parameter until the bracket is
/// shorter than `tolerance` in |t|. Returns found = false if the ray completes.
SingularTime locate_singular_time(const SystemDef& system, const ComplexState& x0, const PathSegment& ray,
                                  const IntegratorConfig& cfg, double tolerance = 1e-4);

} // namespace nonint
