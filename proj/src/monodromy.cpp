#include "nonint/monodromy.hpp"

#include <cmath>
#include <sstream>

namespace nonint {

namespace {

struct LoopRun {
    TransportResult transport;
    double residual;
};

LoopRun run_loop(const SystemDef& system, const ComplexState& x0, const PathSpec& path, const IntegratorConfig& cfg)
{
    TransportResult r = transport(system, x0, path, cfg, true);
    if (!r.completed()) {
        std::ostringstream msg;
        msg << "monodromy: transport failed (" << to_string(r.status) << ") on segment " << r.segment_index
            << " near t = " << r.time_estimate.real() << (r.time_estimate.imag() < 0 ? "" : "+")
            << r.time_estimate.imag() << "i; the loop probably hits another singularity, change the radius";
        throw NumericalError(msg.str());
    }
    return {r, (r.x_end - x0).norm() / (1.0 + x0.norm())};
}

MonodromyResult finish(const SystemDef& system, const ComplexState& x0, const PathSpec& path,
                       const IntegratorConfig& cfg, const MonodromyOptions& opts)
{
    LoopRun run = run_loop(system, x0, path, cfg);
    if (!(run.residual < opts.return_tol)) {
        std::ostringstream msg;
        msg << "monodromy: state does not return to its starting value (relative residual " << run.residual
            << " >= " << opts.return_tol
            << "); the winding count does not match the branch order or the loop encloses other singularities";
        throw OrderMismatchError(msg.str(), run.residual);
    }
    MonodromyResult out;
    out.matrix = run.transport.xi;
    out.return_residual = run.residual;
    out.log_det = run.transport.log_det;
    out.log_det_residual = abel_liouville_residual(run.transport);
    out.steps = run.transport.steps;
    if (opts.sweep) {
        LoopRun fine = run_loop(system, x0, path, cfg.tightened(opts.sweep_factor));
        out.error_estimate = frobenius_norm(fine.transport.xi - out.matrix);
    }
    return out;
}

} // namespace

MonodromyResult monodromy(const SystemDef& system, const ComplexState& x0, const LoopSpec& loop,
                          const IntegratorConfig& cfg, const MonodromyOptions& opts)
{
    PathSpec path = expand_loop(loop, opts.avoid);
    MonodromyResult out = finish(system, x0, path, cfg, opts);
    out.loop = loop;
    return out;
}

MonodromyResult monodromy_along(const SystemDef& system, const ComplexState& x0, const PathSpec& closed_path,
                                const IntegratorConfig& cfg, const MonodromyOptions& opts)
{
    closed_path.validate();
    if (closed_path.empty() || std::abs(closed_path.end() - closed_path.start()) > kPathContinuityTol)
        throw std::invalid_argument("monodromy_along: path is not closed");
    return finish(system, x0, closed_path, cfg, opts);
}

PowerCheck monodromy_power_check(const SystemDef& system, const ComplexState& x0, const LoopSpec& loop,
                                 const IntegratorConfig& cfg, int multiplier, const MonodromyOptions& opts)
{
    if (multiplier < 1)
        throw std::invalid_argument("monodromy_power_check: multiplier must be positive");
    PowerCheck out;
    out.base_matrix = monodromy(system, x0, loop, cfg, opts).matrix;
    LoopSpec longer = loop;
    longer.windings = loop.windings * multiplier;
    out.long_matrix = monodromy(system, x0, longer, cfg, opts).matrix;
    CMatrix power = identity(static_cast<int>(out.base_matrix.rows()));
    for (int i = 0; i < multiplier; ++i)
        power = power * out.base_matrix;
    out.residual = frobenius_norm(out.long_matrix - power) / frobenius_norm(power);
    return out;
}

ConjugatePair conjugate_pair_decomposition(const CMatrix& m1, const CMatrix& m2)
{
    if (m1.rows() != m1.cols() || m1.rows() != m2.rows() || m1.cols() != m2.cols())
        throw std::invalid_argument("conjugate_pair_decomposition: matrices must be square and the same shape");
    const auto n = m1.rows();
    ConjugatePair out;
    out.a = 0.5 * (m1 - m2).real();
    out.b = 0.5 * (m1 + m2).imag();
    const CMatrix id = CMatrix::Identity(n, n);
    const CMatrix a = out.a.cast<Complex>();
    const CMatrix ib = Complex(0.0, 1.0) * out.b.cast<Complex>();
    out.residual = frobenius_norm(m1 - (id + a + ib)) + frobenius_norm(m2 - (id - a + ib));
    return out;
}

} // namespace nonint
