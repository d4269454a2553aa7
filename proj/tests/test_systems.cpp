#include "doctest.h"

#include <cmath>

#include "nonint/systems.hpp"
#include "support.hpp"

using namespace nonint;
using namespace nonint::test;

namespace {

/// Accelerations from M(q) q'' = b(q, q') solved numerically, with M and b
/// read off the Euler-Lagrange equations of the pendulum Lagrangian.
Eigen::Vector2cd accelerations(const ComplexState& x, double g)
{
    const Complex d = x[0] - x[1], c = std::cos(d), s = std::sin(d);
    Eigen::Matrix2cd m;
    m << 2.0, c, c, 1.0;
    Eigen::Vector2cd b(-x[3] * x[3] * s - 2.0 * g * std::sin(x[0]), x[2] * x[2] * s - g * std::sin(x[1]));
    return m.fullPivLu().solve(b);
}

CMatrix fd_jacobian(const SystemDef& sys, const ComplexState& x, Complex t = 0.0)
{
    const double h = 1e-6;
    CMatrix j(sys.dim, sys.dim);
    for (int k = 0; k < sys.dim; ++k) {
        ComplexState xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        j.col(k) = (sys.field(xp, t) - sys.field(xm, t)) / (2 * h);
    }
    return j;
}

Eigen::RowVectorXcd fd_gradient(const ScalarField& f, const ComplexState& x)
{
    const double h = 1e-6;
    Eigen::RowVectorXcd grad(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        ComplexState xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        grad[k] = (f(xp, 0.0) - f(xm, 0.0)) / (2 * h);
    }
    return grad;
}

} // namespace

TEST_CASE("pendulum field solves the Euler-Lagrange equations")
{
    for (int trial = 0; trial < 50; ++trial) {
        ComplexState x = random_state();
        for (double g : {0.0, 1.0, 9.81}) {
            ComplexState v = pendulum::field(x, g);
            Eigen::Vector2cd a = accelerations(x, g);
            CHECK(std::abs(v[0] - x[2]) == 0.0);
            CHECK(std::abs(v[1] - x[3]) == 0.0);
            CHECK(std::abs(v[2] - a[0]) < 1e-12 * (1 + std::abs(a[0])));
            CHECK(std::abs(v[3] - a[1]) < 1e-12 * (1 + std::abs(a[1])));
        }
    }
}

TEST_CASE("pendulum jacobian agrees with central differences at 100 random states")
{
    SystemDef sys = pendulum::make(1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        ComplexState x = random_state();
        worst = std::max(worst, relative(sys.jacobian(x, 0.0), fd_jacobian(sys, x)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("pendulum field is odd and real on real states")
{
    for (int trial = 0; trial < 30; ++trial) {
        ComplexState x = random_state();
        CHECK((pendulum::field(-x, 1.0) + pendulum::field(x, 1.0)).norm() < 1e-13);
        ComplexState r = x.real().cast<Complex>();
        CHECK(pendulum::field(r, 1.0).imag().norm() == 0.0);
        // Schwarz reflection: conj(v(x)) = v(conj x).
        CHECK((pendulum::field(x.conjugate(), 1.0) - pendulum::field(x, 1.0).conjugate()).norm() < 1e-13);
    }
}

TEST_CASE("energy is constant along the flow")
{
    SystemDef sys = pendulum::make(1.0);
    REQUIRE(sys.first_integrals.size() == 1);
    for (int trial = 0; trial < 30; ++trial) {
        ComplexState x = random_state();
        Complex rate = fd_gradient(sys.first_integrals[0].eval, x) * sys.field(x, 0.0);
        CHECK(std::abs(rate) < 1e-7);
    }
    ComplexState x0 = paper_x0();
    const double d = 0.4, c = std::cos(d);
    const double e = 0.04 + 0.08 * c + 0.08 - 2.0 * std::cos(0.1) - std::cos(-0.3);
    CHECK(std::abs(pendulum::energy(x0, 1.0) - e) < 1e-15);
}

TEST_CASE("legendre frame is the derivative of the canonical momenta")
{
    for (int trial = 0; trial < 30; ++trial) {
        ComplexState x = random_state();
        auto p1 = [](const ComplexState& y, Complex) { return pendulum::momenta(y).first; };
        auto p2 = [](const ComplexState& y, Complex) { return pendulum::momenta(y).second; };
        CMatrix expected = CMatrix::Identity(4, 4);
        expected.row(2) = fd_gradient(p1, x);
        expected.row(3) = fd_gradient(p2, x);
        CHECK(relative(pendulum::legendre_frame(x), expected) < 1e-8);
    }
}

TEST_CASE("singular mass matrix raises")
{
    // cos^2(d) = 2 at d = i acosh(sqrt 2).
    ComplexState x(4);
    x << Complex(0.0, std::acosh(std::sqrt(2.0))), 0.0, 0.1, 0.2;
    CHECK(std::abs(pendulum::mass_determinant(x)) < 1e-14);
    CHECK_THROWS_AS(pendulum::field(x, 1.0), SingularPointError);
    CHECK_THROWS_AS(pendulum::jacobian(x, 1.0), SingularPointError);
}

TEST_CASE("oracle systems have their closed-form right-hand sides")
{
    ComplexState x(1);
    x << Complex(2.0, -1.0);
    SystemDef lin = oracle::linear_branch(1.0 / 3.0);
    CHECK(std::abs(lin.field(x, Complex(0.0, 2.0))[0] - x[0] / (3.0 * Complex(0.0, 2.0))) < 1e-15);
    CHECK_THROWS_AS(lin.field(x, 0.0), SingularPointError);
    CHECK(std::abs(oracle::pole().field(x, 0.0)[0] - x[0] * x[0]) == 0.0);
    CHECK(std::abs(oracle::root().field(x, 0.0)[0] - 0.5 / x[0]) < 1e-16);

    for (const SystemDef& sys : oracle_registry()) {
        CAPTURE(sys.name);
        CHECK(std::abs(sys.jacobian(x, 1.0)(0, 0) - fd_jacobian(sys, x, 1.0)(0, 0)) < 1e-6);
    }
}

TEST_CASE("systems resolve by name")
{
    CHECK(make_system("double-pendulum", 9.81).params.at("g") == 9.81);
    CHECK(make_system("oracle:linear-branch:0.25").params.at("lambda") == 0.25);
    CHECK(make_system("oracle:pole").dim == 1);
    CHECK(make_system("oracle:root").dim == 1);
    CHECK_THROWS_AS(make_system("oracle:linear-branch:x"), std::invalid_argument);
    CHECK_THROWS_AS(make_system("pendulum"), std::invalid_argument);
}
