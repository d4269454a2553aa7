#include "doctest.h"

#include <cmath>

#include "nonint/singular.hpp"
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

const Rect kPendulumRect{0.0, 1.0, -1.5, 1.5};

const std::vector<SingularityCandidate>& pendulum_scan()
{
    static const std::vector<SingularityCandidate> found =
        scan_region(pendulum::make(kGravity), paper_x0(), kPendulumRect, 32, {});
    return found;
}

bool has_near(const std::vector<SingularityCandidate>& cs, Complex z, double tol)
{
    for (const auto& c : cs)
        if (std::abs(c.location - z) <= tol)
            return true;
    return false;
}

} // namespace

TEST_CASE("rectangle checks")
{
    Rect r{0.0, 1.0, -1.0, 2.0};
    CHECK_NOTHROW(r.validate());
    CHECK(r.contains(Complex(0.5, 1.9)));
    CHECK_FALSE(r.contains(Complex(1.1, 0.0)));
    CHECK(r.contains(Complex(1.1, 0.0), 0.2));
    CHECK_THROWS_AS((Rect{1.0, 1.0, 0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(scan_region(oracle::pole(), scalar(1.0), r, 3, {}), std::invalid_argument);
}

TEST_CASE("pole oracle scan finds the single pole at 1")
{
    auto cs = scan_region(oracle::pole(), scalar(1.0), Rect{0.5, 1.5, -0.5, 0.5}, 8, {});
    REQUIRE(cs.size() == 1);
    CHECK(std::abs(cs[0].location - 1.0) < 1e-4);
    // 1 / x ~ (1 - t): exponent -1 of the indicator x.
    CHECK(cs[0].exponent == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("scan of a region without singularities is empty")
{
    CHECK(scan_region(oracle::pole(), scalar(1.0), Rect{-1.5, -0.5, -0.5, 0.5}, 8, {}).empty());
}

TEST_CASE("branch orders of the oracles")
{
    BranchOrderResult root = branch_order(oracle::root(), scalar(1.0), LoopSpec{0.0, -1.0, 0.3}, {});
    REQUIRE(root.order);
    CHECK(*root.order == 2);
    CHECK(root.residuals.size() == 2);
    CHECK(root.residuals[0] > 0.5);

    BranchOrderResult pole = branch_order(oracle::pole(), scalar(1.0), LoopSpec{0.0, 1.0, 0.3}, {});
    REQUIRE(pole.order);
    CHECK(*pole.order == 1);

    BranchOrderResult third =
        branch_order(oracle::linear_branch(1.0 / 3.0), scalar(1.0), LoopSpec{1.0, 0.0, 0.5}, {});
    REQUIRE(third.order);
    CHECK(*third.order == 3);

    BranchOrderResult irrational =
        branch_order(oracle::linear_branch(1.0 / std::sqrt(2.0)), scalar(1.0), LoopSpec{1.0, 0.0, 0.5}, {}, 6);
    CHECK_FALSE(irrational.order);
    CHECK(irrational.residuals.size() == 6);
}

TEST_CASE("branch order transport failure is diagnosed")
{
    // The approach line from 0 toward the circle around 2 runs into the pole at 1.
    CHECK_THROWS_AS(branch_order(oracle::pole(), scalar(1.0), LoopSpec{0.0, 2.0, 0.3}, {}), NumericalError);
}

TEST_CASE("default loop radius")
{
    std::vector<Complex> others{Complex(0.5, -0.9), Complex(3.0, 0.0)};
    CHECK(default_loop_radius(Complex(0.5, 0.9), others) == doctest::Approx(0.3));
    std::vector<Complex> close{Complex(0.5, 1.2)};
    CHECK(default_loop_radius(Complex(0.5, 0.9), close) == doctest::Approx(0.15));
}

TEST_CASE("pendulum scan returns conjugate pairs")
{
    const auto& cs = pendulum_scan();
    REQUIRE(cs.size() >= 2);
    for (const auto& c : cs) {
        CAPTURE(c.location);
        CHECK(kPendulumRect.contains(c.location));
        CHECK(has_near(cs, std::conj(c.location), std::max(2.0 * c.uncertainty, 1e-8)));
    }
    for (std::size_t i = 1; i < cs.size(); ++i)
        CHECK(std::abs(cs[i].location) >= std::abs(cs[i - 1].location) - 1e-12);
}

TEST_CASE("pendulum singularities are order-three branch points of the mass determinant")
{
    const auto& cs = pendulum_scan();
    REQUIRE(!cs.empty());
    const SingularityCandidate& first = cs.front();
    // det ~ (t - t*)^(2/3) at a cube-root branch point.
    CHECK(first.exponent == doctest::Approx(2.0 / 3.0).epsilon(1e-2));

    LoopSpec loop{0.0, first.location, 0.3};
    BranchOrderResult full = branch_order(pendulum::make(kGravity), paper_x0(), loop, {});
    LoopSpec half = loop;
    half.radius = 0.15;
    BranchOrderResult small = branch_order(pendulum::make(kGravity), paper_x0(), half, {});
    REQUIRE(full.order);
    REQUIRE(small.order);
    CHECK(*full.order == 3);
    CHECK(*small.order == *full.order);
    CHECK(full.residuals[0] > 1e-2);
    CHECK(full.residuals[1] > 1e-2);
    CHECK(full.residuals[2] < 1e-6);
}

TEST_CASE("tracking from a nearby seed converges to the scanned singularity")
{
    const auto& cs = pendulum_scan();
    REQUIRE(!cs.empty());
    auto tracked =
        track_singularity(pendulum::make(kGravity), paper_x0(), 0.0, cs.front().location + Complex(-0.1, 0.08), {});
    REQUIRE(tracked);
    CHECK(std::abs(tracked->location - cs.front().location) < 1e-6);
}

TEST_CASE("doubling the ray count keeps every cluster")
{
    const auto& coarse = pendulum_scan();
    auto fine = scan_region(pendulum::make(kGravity), paper_x0(), kPendulumRect, 64, {});
    for (const auto& c : coarse) {
        CAPTURE(c.location);
        CHECK(has_near(fine, c.location, 1e-3));
    }
}
