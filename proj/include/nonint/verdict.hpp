#pragma once

#include <vector>

#include "nonint/monodromy.hpp"

namespace nonint {

/// m1 m2 - m2 m1.
CMatrix commutator(const CMatrix& m1, const CMatrix& m2);

/// The standard symplectic form [[0, I], [-I, 0]] of size 2k.
CMatrix symplectic_form(int dim);

struct SymplecticCheck {
    /// |Mc^T J Mc - J| / |J| with Mc = frame m frame^-1.
    double form_residual = 0.0;
    /// Matching distance between spec(m) and its image under lambda -> 1/lambda.
    double eigen_pairing_residual = 0.0;
};

SymplecticCheck symplectic_check(const CMatrix& m, const CMatrix& frame);

enum class Verdict { NonCommutingGenerators, Inconclusive };

const char* to_string(Verdict v);

struct CertifyOptions {
    double required_margin = 1e3;
    double sweep_factor = 100.0;
    MonodromyOptions monodromy;
};

struct CertificateReport {
    Verdict verdict = Verdict::Inconclusive;
    double commutator_norm = 0.0;
    double error_estimate = 0.0;
    double margin_factor = 0.0;
    double required_margin = 1e3;
    std::vector<MonodromyResult> inputs;
    /// Index pair attaining commutator_norm.
    std::pair<std::size_t, std::size_t> worst_pair{0, 0};
    std::vector<double> symplectic_residuals;
    std::vector<double> eigen_pairing_residuals;
};

/// Monodromies at cfg and at cfg tightened by sweep_factor; the error
/// estimate is the largest difference across the sweep, the commutator norm
/// the largest over loop pairs. Points in opts.monodromy.avoid other than a
/// loop's own center must not be wound around.
CertificateReport certify(const SystemDef& system, const ComplexState& x0, const std::vector<LoopSpec>& loops,
                          const IntegratorConfig& cfg, const CertifyOptions& opts = {});

/// Same assembly for matrices already computed (error estimates taken from
/// the inputs). Symplectic residuals need `frame`; pass an empty matrix to skip.
CertificateReport assemble_certificate(std::vector<MonodromyResult> inputs, const CMatrix& frame,
                                       double required_margin = 1e3);

} // namespace nonint
