#include "nonint/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nonint {

void IntegratorConfig::validate() const
{
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw std::invalid_argument("integrator: rtol and atol must be positive");
    if (!(h_min > 0.0) || !(h_init > 0.0) || !(h_min < h_init))
        throw std::invalid_argument("integrator: need 0 < h_min < h_init");
    if (max_steps <= 0)
        throw std::invalid_argument("integrator: max_steps must be positive");
    if (!(blowup_norm > 0.0))
        throw std::invalid_argument("integrator: blowup_norm must be positive");
}

IntegratorConfig IntegratorConfig::tightened(double factor) const
{
    IntegratorConfig c = *this;
    c.rtol /= factor;
    c.atol /= factor;
    return c;
}

const char* to_string(TransportStatus s)
{
    switch (s) {
    case TransportStatus::Completed:
        return "Completed";
    case TransportStatus::Blowup:
        return "Blowup";
    case TransportStatus::StepUnderflow:
        return "StepUnderflow";
    case TransportStatus::MaxSteps:
        return "MaxSteps";
    }
    return "?";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller constants (Hairer & Wanner's DOPRI5 defaults).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

/// Augmented state y = (x, vec(Xi) column-major, w).
class AugmentedRhs {
public:
    AugmentedRhs(const SystemDef& sys, bool variational) : sys_(sys), n_(sys.dim), var_(variational) {}

    Eigen::Index size() const { return var_ ? n_ + n_ * n_ + 1 : n_; }

    // Throws SingularPointError via the system callbacks.
    void operator()(const PathSegment& seg, double s, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) const
    {
        const Complex t = point_at(seg, s);
        const Complex dt = tangent_at(seg, s);
        const ComplexState x = y.head(n_);
        dy.head(n_) = dt * sys_.field(x, t);
        if (!var_)
            return;
        const CMatrix a = sys_.jacobian(x, t);
        Eigen::Map<const CMatrix> xi(y.data() + n_, n_, n_);
        Eigen::Map<CMatrix> dxi(dy.data() + n_, n_, n_);
        dxi.noalias() = dt * (a * xi);
        dy[n_ + n_ * n_] = dt * a.trace();
    }

private:
    const SystemDef& sys_;
    Eigen::Index n_;
    bool var_;
};

bool finite(const Eigen::VectorXcd& v)
{
    return v.allFinite();
}

} // namespace

TransportResult transport(const SystemDef& system, const ComplexState& x0, const PathSpec& path,
                          const IntegratorConfig& cfg, bool with_variational, const StepObserver& observer)
{
    cfg.validate();
    if (x0.size() != system.dim)
        throw std::invalid_argument("transport: initial state has " + std::to_string(x0.size()) +
                                    " entries, system '" + system.name + "' has dim " +
                                    std::to_string(system.dim));
    if (!all_finite(x0))
        throw std::invalid_argument("transport: initial state is not finite");
    path.validate();

    const Eigen::Index n = system.dim;
    AugmentedRhs rhs(system, with_variational);
    const Eigen::Index m = rhs.size();

    Eigen::VectorXcd y(m);
    y.head(n) = x0;
    if (with_variational) {
        Eigen::Map<CMatrix>(y.data() + n, n, n).setIdentity();
        y[m - 1] = 0.0;
    }

    TransportResult result;
    auto finish = [&](TransportStatus status, std::size_t seg, double s) {
        result.status = status;
        result.segment_index = seg;
        result.param_estimate = s;
        if (seg < path.segments.size())
            result.time_estimate = point_at(path.segments[seg], std::clamp(s, 0.0, 1.0));
        result.x_end = y.head(n);
        if (with_variational) {
            result.xi = Eigen::Map<const CMatrix>(y.data() + n, n, n);
            result.log_det = y[m - 1];
        }
        return result;
    };

    Eigen::VectorXcd k1(m), k2(m), k3(m), k4(m), k5(m), k6(m), k7(m), tmp(m), ynew(m), err(m);
    double dt_scale = 0.0; // |dt| carried across segments to seed the step size

    for (std::size_t si = 0; si < path.segments.size(); ++si) {
        const PathSegment& seg = path.segments[si];
        const double speed = std::abs(tangent_at(seg, 0.0));
        double h = dt_scale > 0.0 ? std::min(1.0, dt_scale / speed) : cfg.h_init;
        h = std::max(h, 2.0 * cfg.h_min);
        double s = 0.0;
        double facold = 1e-4;
        bool last_failure_singular = false;

        try {
            rhs(seg, s, y, k1);
        } catch (const SingularPointError&) {
            return finish(TransportStatus::Blowup, si, s);
        }

        while (s < 1.0) {
            if (result.steps + result.rejected >= cfg.max_steps)
                return finish(TransportStatus::MaxSteps, si, s);
            if (h < cfg.h_min)
                return finish(last_failure_singular ? TransportStatus::Blowup : TransportStatus::StepUnderflow, si, s);
            bool last = false;
            if (s + h >= 1.0 || 1.0 - (s + h) < cfg.h_min) {
                h = 1.0 - s;
                last = true;
            }

            bool stage_ok = true;
            try {
                tmp = y + h * (a21 * k1);
                rhs(seg, s + c2 * h, tmp, k2);
                tmp = y + h * (a31 * k1 + a32 * k2);
                rhs(seg, s + c3 * h, tmp, k3);
                tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
                rhs(seg, s + c4 * h, tmp, k4);
                tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
                rhs(seg, s + c5 * h, tmp, k5);
                tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
                rhs(seg, s + h, tmp, k6);
                ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
                rhs(seg, last ? 1.0 : s + h, ynew, k7);
            } catch (const SingularPointError&) {
                stage_ok = false;
            }
            if (stage_ok && !(finite(ynew) && finite(k7)))
                stage_ok = false;
            if (!stage_ok) {
                last_failure_singular = true;
                ++result.rejected;
                h *= 0.25;
                continue;
            }

            err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double sum = 0.0;
            for (Eigen::Index i = 0; i < m; ++i) {
                double sk = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                double q = std::abs(err[i]) / sk;
                sum += q * q;
            }
            double enorm = std::sqrt(sum / static_cast<double>(m));
            if (!std::isfinite(enorm)) {
                last_failure_singular = true;
                ++result.rejected;
                h *= 0.25;
                continue;
            }

            double fac11 = std::pow(std::max(enorm, 1e-300), kExpo);
            if (enorm <= 1.0) {
                double fac = fac11 / std::pow(facold, kBeta);
                fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
                facold = std::max(enorm, 1e-4);
                ++result.steps;
                result.max_local_error = std::max(result.max_local_error, err.cwiseAbs().maxCoeff());
                y.swap(ynew);
                k1.swap(k7);
                s = last ? 1.0 : s + h;
                last_failure_singular = false;
                dt_scale = h * speed;
                if (observer)
                    observer({si, s, point_at(seg, std::min(s, 1.0)), y.head(n).norm(), h});
                if (max_abs(y.head(n)) > cfg.blowup_norm)
                    return finish(TransportStatus::Blowup, si, s);
                h = h / fac;
            } else {
                ++result.rejected;
                last_failure_singular = false;
                h = h / std::min(1.0 / kFacMin, fac11 / kSafety);
            }
        }
    }
    return finish(TransportStatus::Completed, path.segments.size(), 1.0);
}

double abel_liouville_residual(const TransportResult& r)
{
    if (r.xi.size() == 0)
        throw std::invalid_argument("abel_liouville_residual: transport carried no variational matrix");
    Complex expected = std::exp(r.log_det);
    return std::abs(r.xi.determinant() - expected) / std::abs(expected);
}

SingularTime locate_singular_time(const SystemDef& system, const ComplexState& x0, const PathSegment& ray,
                                  const IntegratorConfig& cfg, double tolerance)
{
    const auto* line = std::get_if<LineSegment>(&ray);
    if (!line)
        throw std::invalid_argument("locate_singular_time: ray must be a line segment");
    PathSpec full{{*line}};
    TransportResult first = transport(system, x0, full, cfg, false);
    SingularTime out;
    if (first.completed())
        return out;

    out.found = true;
    out.cause = first.status;
    const double len = std::abs(line->to - line->from);
    // Invariant: state known at lo (reachable), transport to hi fails.
    double lo = 0.0, hi = 1.0;
    ComplexState x_lo = x0;
    while ((hi - lo) * len > tolerance) {
        double mid = 0.5 * (lo + hi);
        PathSpec piece{{LineSegment{point_at(*line, lo), point_at(*line, mid)}}};
        TransportResult r = transport(system, x_lo, piece, cfg, false);
        if (r.completed()) {
            lo = mid;
            x_lo = r.x_end;
        } else {
            hi = mid;
        }
    }
    out.location = point_at(*line, 0.5 * (lo + hi));
    out.uncertainty = 0.5 * (hi - lo) * len;
    return out;
}

} // namespace nonint
