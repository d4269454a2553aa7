#include "doctest.h"

#include <cmath>

#include "nonint/verdict.hpp"
#include "support.hpp"

using namespace nonint;
using namespace nonint::test;

namespace {

ComplexState scalar(Complex v)
{
    ComplexState x(1);
    x << v;
    return x;
}

MonodromyResult wrap(const CMatrix& m, double err)
{
    MonodromyResult r;
    r.matrix = m;
    r.error_estimate = err;
    return r;
}

double cond2(const CMatrix& s)
{
    Eigen::JacobiSVD<CMatrix> svd(s);
    return svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
}

} // namespace

TEST_CASE("commutator")
{
    CMatrix m = random_matrix(4);
    CHECK(commutator(m, m).norm() == 0.0);

    CMatrix d(2, 2), n(2, 2), expected(2, 2);
    d << 1.0, 0.0, 0.0, 2.0;
    n << 0.0, 1.0, 0.0, 0.0;
    expected << 0.0, -1.0, 0.0, 0.0;
    CHECK((commutator(d, n) - expected).norm() == 0.0);
    CHECK_THROWS_AS(commutator(identity(2), identity(3)), std::invalid_argument);
}

TEST_CASE("commutator norm under a shared similarity stays within the condition number")
{
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = random_matrix(4, 5.0), b = random_matrix(4, 5.0);
        CMatrix s = identity(4) + random_matrix(4, 0.25);
        const double kappa = cond2(s);
        REQUIRE(kappa <= 10.0);
        const CMatrix si = s.inverse();
        const double base = commutator(a, b).norm();
        const double moved = commutator(s * a * si, s * b * si).norm();
        CHECK(moved <= kappa * base * (1 + 1e-12));
        CHECK(moved >= base / kappa * (1 - 1e-12));
    }
}

TEST_CASE("symplectic form and checks")
{
    CMatrix j = symplectic_form(4);
    CHECK((j * j + identity(4)).norm() == 0.0);
    CHECK_THROWS_AS(symplectic_form(3), std::invalid_argument);

    SymplecticCheck id = symplectic_check(identity(4), identity(4));
    CHECK(id.form_residual == 0.0);
    CHECK(id.eigen_pairing_residual == 0.0);
    CHECK(symplectic_check(j, identity(4)).form_residual == 0.0);

    // exp(J S) with S symmetric is symplectic.
    Eigen::MatrixXd s = Eigen::MatrixXd::Random(4, 4);
    s = 0.5 * (s + s.transpose()).eval();
    CMatrix h = j * s.cast<Complex>();
    CMatrix sym = identity(4), term = identity(4);
    for (int k = 1; k < 40; ++k) {
        term = term * h / static_cast<double>(k);
        sym += term;
    }
    SymplecticCheck ok = symplectic_check(sym, identity(4));
    CHECK(ok.form_residual < 1e-12);
    CHECK(ok.eigen_pairing_residual < 1e-8);

    CMatrix stretch = identity(4);
    stretch(0, 0) = 2.0;
    SymplecticCheck bad = symplectic_check(stretch, identity(4));
    CHECK(bad.form_residual > 0.1);
    CHECK(bad.eigen_pairing_residual > 0.1);

    CHECK_THROWS_AS(symplectic_check(identity(4), CMatrix::Zero(4, 4)), std::invalid_argument);
    CHECK_THROWS_AS(symplectic_check(identity(3), identity(3)), std::invalid_argument);
}

TEST_CASE("pendulum variational flow is symplectic in canonical coordinates")
{
    // F(x(t)) Xi F(x0)^-1 maps canonical variations at 0 to those at t.
    SystemDef sys = pendulum::make(kGravity);
    const ComplexState x0 = paper_x0();
    for (Complex z : {Complex(0.5, 0.4), Complex(-0.3, 0.6), Complex(1.0, -0.2)}) {
        TransportResult r = transport(sys, x0, PathSpec{{LineSegment{0.0, z}}}, {}, true);
        REQUIRE(r.completed());
        CMatrix c = pendulum::legendre_frame(r.x_end) * r.xi * pendulum::legendre_frame(x0).inverse();
        CMatrix j = symplectic_form(4);
        CHECK((c.transpose() * j * c - j).norm() < 1e-8 * (1 + c.norm() * c.norm()));
    }
}

TEST_CASE("certificate assembly")
{
    CMatrix a = identity(4), b = identity(4);
    a(0, 1) = 3.0;
    b(1, 0) = 2.0;
    CertificateReport yes = assemble_certificate({wrap(a, 1e-9), wrap(b, 2e-9)}, CMatrix());
    CHECK(yes.verdict == Verdict::NonCommutingGenerators);
    CHECK(yes.commutator_norm == doctest::Approx(commutator(a, b).norm()));
    CHECK(yes.error_estimate == doctest::Approx(2e-9));
    CHECK(yes.margin_factor == doctest::Approx(yes.commutator_norm / 2e-9));
    CHECK(yes.symplectic_residuals.empty());

    CertificateReport no = assemble_certificate({wrap(a, 1e-9), wrap(a, 1e-9)}, identity(4));
    CHECK(no.verdict == Verdict::Inconclusive);
    CHECK(no.symplectic_residuals.size() == 2);

    // Verdict is exactly the margin comparison.
    CertificateReport edge = assemble_certificate({wrap(a, 1e-9), wrap(b, 1e-9)}, CMatrix(), 1e20);
    CHECK(edge.verdict == Verdict::Inconclusive);
    CHECK((edge.margin_factor > edge.required_margin) == (edge.verdict == Verdict::NonCommutingGenerators));

    // Exact agreement across the sweep still yields a finite margin.
    CertificateReport exact = assemble_certificate({wrap(a, 0.0), wrap(b, 0.0)}, CMatrix());
    CHECK(std::isfinite(exact.margin_factor));

    CHECK_THROWS_AS(assemble_certificate({wrap(a, 0.0)}, CMatrix()), std::invalid_argument);
    CHECK(std::string(to_string(Verdict::Inconclusive)) == "Inconclusive");
}

TEST_CASE("scalar monodromies commute")
{
    SystemDef sys = oracle::linear_branch(1.0 / 3.0);
    std::vector<LoopSpec> loops{LoopSpec{1.0, 0.0, 0.3, 3}, LoopSpec{1.0, 0.0, 0.6, 3}};
    CertificateReport r = certify(sys, scalar(1.0), loops, {});
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.commutator_norm == 0.0);
    CHECK_THROWS_AS(certify(sys, scalar(1.0), {loops[0]}, {}), std::invalid_argument);
}

TEST_CASE("certify is deterministic and the same loop twice is inconclusive")
{
    SystemDef sys = pendulum::make(kGravity);
    const Complex s1(0.7108308584, 0.6464767832);
    std::vector<LoopSpec> loops{LoopSpec{0.0, s1, 0.3, 3}, LoopSpec{0.0, s1, 0.3, 3}};
    CertificateReport a = certify(sys, paper_x0(), loops, {});
    CertificateReport b = certify(sys, paper_x0(), loops, {});
    CHECK(a.verdict == Verdict::Inconclusive);
    CHECK(a.commutator_norm == b.commutator_norm);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.inputs[0].matrix == b.inputs[0].matrix);
    CHECK(a.symplectic_residuals.size() == 2);
}

TEST_CASE("printed matrices do not commute")
{
    const double c = commutator(paper_m1(), paper_m2()).norm();
    // Two-decimal rounding perturbs each entry by at most 0.005*sqrt(2);
    // the induced commutator error is bounded by 2 |dM| (|M1| + |M2|).
    const double rounding = 2.0 * (0.005 * std::sqrt(2.0) * 4.0) * (paper_m1().norm() + paper_m2().norm());
    CHECK(c > 10.0 * rounding);
}
