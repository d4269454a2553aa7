#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nonint/integrate.hpp"

namespace nonint {

/// Thrown when the base state does not come back after the loop: the loop
/// winding count does not match the branch order (or the loop encircles
/// more than intended), so the matrix would belong to another sheet.
class OrderMismatchError : public NumericalError {
public:
    OrderMismatchError(const std::string& what, double residual) : NumericalError(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct MonodromyResult {
    CMatrix matrix;
    /// Set when computed from a LoopSpec.
    std::optional<LoopSpec> loop;
    /// |x_end - x0| / (1 + |x0|).
    double return_residual = 0.0;
    /// Frobenius distance to the same matrix at tightened tolerance; 0 if not swept.
    double error_estimate = 0.0;
    /// Abel-Liouville residual |det M - exp(w)| / |exp(w)|.
    double log_det_residual = 0.0;
    Complex log_det;
    long steps = 0;
};

struct MonodromyOptions {
    double return_tol = 1e-6;
    /// Also compute at tolerance / sweep_factor and report the difference.
    bool sweep = false;
    double sweep_factor = 100.0;
    /// Other known singularities; the loop must not wind around them.
    std::vector<Complex> avoid;
};

MonodromyResult monodromy(const SystemDef& system, const ComplexState& x0, const LoopSpec& loop,
                          const IntegratorConfig& cfg, const MonodromyOptions& opts = {});

/// Monodromy along an arbitrary closed path, for loops the canonical
/// geometry cannot express.
MonodromyResult monodromy_along(const SystemDef& system, const ComplexState& x0, const PathSpec& closed_path,
                                const IntegratorConfig& cfg, const MonodromyOptions& opts = {});

struct PowerCheck {
    CMatrix base_matrix;
    CMatrix long_matrix;
    /// |M_long - M^multiplier| / |M^multiplier|.
    double residual = 0.0;
};

/// Transports the loop with windings * multiplier windings and compares
/// against the matrix power.
PowerCheck monodromy_power_check(const SystemDef& system, const ComplexState& x0, const LoopSpec& loop,
                                 const IntegratorConfig& cfg, int multiplier = 2,
                                 const MonodromyOptions& opts = {});

struct ConjugatePair {
    Eigen::MatrixXd a;
    Eigen::MatrixXd b;
    /// |m1 - (I + A + iB)| + |m2 - (I - A + iB)|.
    double residual = 0.0;
};

/// Fits m1 = I + A + iB, m2 = I - A + iB with A, B real.
ConjugatePair conjugate_pair_decomposition(const CMatrix& m1, const CMatrix& m2);

} // namespace nonint
