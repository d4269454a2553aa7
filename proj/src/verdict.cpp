#include "nonint/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonint/parallel.hpp"

namespace nonint {

CMatrix commutator(const CMatrix& m1, const CMatrix& m2)
{
    if (m1.rows() != m1.cols() || m1.rows() != m2.rows() || m1.cols() != m2.cols())
        throw std::invalid_argument("commutator: matrices must be square and the same shape");
    return m1 * m2 - m2 * m1;
}

CMatrix symplectic_form(int dim)
{
    if (dim <= 0 || dim % 2 != 0)
        throw std::invalid_argument("symplectic_form: dimension must be even and positive");
    const int k = dim / 2;
    CMatrix j = CMatrix::Zero(dim, dim);
    j.topRightCorner(k, k) = CMatrix::Identity(k, k);
    j.bottomLeftCorner(k, k) = -CMatrix::Identity(k, k);
    return j;
}

SymplecticCheck symplectic_check(const CMatrix& m, const CMatrix& frame)
{
    if (m.rows() != m.cols() || m.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_check: matrix must be square with even dimension");
    if (frame.rows() != m.rows() || frame.cols() != m.cols())
        throw std::invalid_argument("symplectic_check: frame shape does not match");
    Eigen::FullPivLU<CMatrix> lu(frame);
    if (!lu.isInvertible())
        throw std::invalid_argument("symplectic_check: frame is singular");

    const CMatrix canonical = frame * m * lu.inverse();
    const CMatrix j = symplectic_form(static_cast<int>(m.rows()));
    SymplecticCheck out;
    out.form_residual = frobenius_norm(canonical.transpose() * j * canonical - j) / frobenius_norm(j);

    std::vector<Complex> ev = eigenvalues(m);
    std::vector<Complex> inv;
    inv.reserve(ev.size());
    for (Complex l : ev)
        inv.push_back(l == Complex(0.0) ? Complex(std::numeric_limits<double>::infinity()) : 1.0 / l);
    out.eigen_pairing_residual = multiset_distance(ev, inv);
    return out;
}

const char* to_string(Verdict v)
{
    return v == Verdict::NonCommutingGenerators ? "NonCommutingGenerators" : "Inconclusive";
}

CertificateReport assemble_certificate(std::vector<MonodromyResult> inputs, const CMatrix& frame,
                                       double required_margin)
{
    if (inputs.size() < 2)
        throw std::invalid_argument("certify: need at least two monodromy matrices");
    CertificateReport rep;
    rep.required_margin = required_margin;

    double err = 0.0, scale = 0.0;
    for (const auto& m : inputs) {
        err = std::max(err, m.error_estimate);
        scale = std::max(scale, frobenius_norm(m.matrix));
    }
    // The sweep can agree to the last bit; never divide by an exact zero.
    rep.error_estimate = std::max(err, std::numeric_limits<double>::epsilon() * scale);

    for (std::size_t i = 0; i < inputs.size(); ++i)
        for (std::size_t j = i + 1; j < inputs.size(); ++j) {
            double c = frobenius_norm(commutator(inputs[i].matrix, inputs[j].matrix));
            if (c > rep.commutator_norm || (i == 0 && j == 1)) {
                rep.commutator_norm = std::max(rep.commutator_norm, c);
                rep.worst_pair = {i, j};
            }
        }
    rep.margin_factor = rep.commutator_norm / rep.error_estimate;
    rep.verdict = rep.margin_factor > required_margin ? Verdict::NonCommutingGenerators : Verdict::Inconclusive;

    if (frame.size() != 0) {
        for (const auto& m : inputs) {
            SymplecticCheck s = symplectic_check(m.matrix, frame);
            rep.symplectic_residuals.push_back(s.form_residual);
            rep.eigen_pairing_residuals.push_back(s.eigen_pairing_residual);
        }
    }
    rep.inputs = std::move(inputs);
    return rep;
}

CertificateReport certify(const SystemDef& system, const ComplexState& x0, const std::vector<LoopSpec>& loops,
                          const IntegratorConfig& cfg, const CertifyOptions& opts)
{
    if (loops.size() < 2)
        throw std::invalid_argument("certify: need at least two loops");
    MonodromyOptions mopts = opts.monodromy;
    mopts.sweep = true;
    mopts.sweep_factor = opts.sweep_factor;

    std::vector<MonodromyResult> results(loops.size());
    parallel_for(loops.size(), [&](std::size_t i) {
        MonodromyOptions own = mopts;
        own.avoid.clear();
        for (Complex z : mopts.avoid)
            if (std::abs(z - loops[i].center) > 1e-9)
                own.avoid.push_back(z);
        results[i] = monodromy(system, x0, loops[i], cfg, own);
    });

    CMatrix frame;
    if (system.legendre_frame && system.dim % 2 == 0)
        frame = (*system.legendre_frame)(x0);
    return assemble_certificate(std::move(results), frame, opts.required_margin);
}

} // namespace nonint
