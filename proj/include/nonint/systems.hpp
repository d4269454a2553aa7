#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonint/core.hpp"

namespace nonint {

/// Right-hand side v(x, t) of x' = v. Autonomous systems ignore t.
using VectorField = std::function<ComplexState(const ComplexState&, Complex)>;
using JacobianField = std::function<CMatrix(const ComplexState&, Complex)>;
using ScalarField = std::function<Complex(const ComplexState&, Complex)>;

struct FirstIntegral {
    std::string name;
    ScalarField eval;
};

/// A complexified dynamical system together with everything the pipeline
/// needs to know about it.
///
/// `indicator` is an analytic scalar with power-law behaviour
/// c * (t - t*)^beta, beta != 0, at the singularities the system is expected
/// to have (for the pendulum: the mass-matrix determinant). The singularity
/// tracker uses it; systems without one fall back to the largest component
/// of the vector field.
///
/// `legendre_frame`, when present, maps variational vectors to canonical
/// coordinates in which monodromy is symplectic.
struct SystemDef {
    std::string name;
    int dim = 0;
    VectorField field;
    JacobianField jacobian;
    std::vector<FirstIntegral> first_integrals;
    std::optional<ScalarField> indicator;
    std::optional<std::function<CMatrix(const ComplexState&)>> legendre_frame;
    std::map<std::string, double> params;
};

namespace pendulum {

/// Mass-matrix determinant 2 - cos^2(alpha1 - alpha2) below which the
/// equations of motion are treated as singular.
inline constexpr double kSingularDeterminant = 1e-14;

/// (alpha1', alpha2', alpha1'', alpha2'') from the Euler-Lagrange equations of
/// L = a1'^2 + a1' a2' cos(a1 - a2) + a2'^2 / 2 + 2 g cos a1 + g cos a2.
/// Throws SingularPointError when the mass matrix is singular.
ComplexState field(const ComplexState& x, double g);

/// Analytic partial derivatives of `field`.
CMatrix jacobian(const ComplexState& x, double g);

Complex energy(const ComplexState& x, double g);

/// 2 - cos^2(alpha1 - alpha2).
Complex mass_determinant(const ComplexState& x);

/// d(q, p)/d(q, q') with p the canonical momenta.
CMatrix legendre_frame(const ComplexState& x);

/// Canonical momenta (p1, p2).
std::pair<Complex, Complex> momenta(const ComplexState& x);

SystemDef make(double g = 1.0);

} // namespace pendulum

namespace oracle {

/// x' = lambda x / t, solution c t^lambda.
SystemDef linear_branch(double lambda);
/// x' = x^2, solution 1 / (c - t).
SystemDef pole();
/// x' = 1 / (2x), solution sqrt(t + c).
SystemDef root();

} // namespace oracle

/// The validation systems with closed-form complex-time behaviour.
std::vector<SystemDef> oracle_registry();

/// Resolves "double-pendulum", "oracle:linear-branch:<lambda>", "oracle:pole"
/// or "oracle:root". `g` is used only by the pendulum.
SystemDef make_system(const std::string& name, double g = 1.0);

} // namespace nonint
