#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "nonint/core.hpp"
#include "support.hpp"

using namespace nonint;
using nonint::test::random_matrix;

TEST_CASE("frobenius norm is the root of summed squared moduli")
{
    CMatrix m(2, 2);
    m << Complex(3, 4), 0.0, Complex(0, -1), 2.0;
    CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(25.0 + 1.0 + 4.0)));
}

TEST_CASE("eigenvalues of small closed-form matrices")
{
    CMatrix rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;
    std::vector<Complex> ev = eigenvalues(rot);
    CHECK(multiset_distance(ev, {Complex(0, 1), Complex(0, -1)}) < 1e-14);

    CMatrix tri(3, 3);
    tri << 2.0, 5.0, 1.0, 0.0, Complex(0, 3), 4.0, 0.0, 0.0, -1.0;
    CHECK(multiset_distance(eigenvalues(tri), {2.0, Complex(0, 3), -1.0}) < 1e-13);

    CHECK_THROWS_AS(eigenvalues(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("eigenvalue sum and product match trace and determinant")
{
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix m = random_matrix(4, 3.0);
        std::vector<Complex> ev = eigenvalues(m);
        Complex sum = std::accumulate(ev.begin(), ev.end(), Complex(0.0));
        Complex prod = std::accumulate(ev.begin(), ev.end(), Complex(1.0), std::multiplies<>());
        CHECK(std::abs(sum - m.trace()) < 1e-10 * (1 + m.norm()));
        CHECK(std::abs(prod - m.determinant()) < 1e-9 * (1 + std::abs(m.determinant())));
    }
}

TEST_CASE("eigenvalues are invariant under permutation similarity")
{
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix m = random_matrix(5, 2.0);
        std::vector<int> idx(5);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), nonint::test::rng());
        CMatrix p = CMatrix::Zero(5, 5);
        for (int i = 0; i < 5; ++i)
            p(i, idx[i]) = 1.0;
        CMatrix permuted = p * m * p.transpose();
        CHECK(multiset_distance(eigenvalues(m), eigenvalues(permuted)) < 1e-10);
    }
}

TEST_CASE("multiset distance")
{
    std::vector<Complex> a{1.0, Complex(0, 2), -3.0};
    std::vector<Complex> b{-3.0, 1.0, Complex(0, 2)};
    CHECK(multiset_distance(a, b) == 0.0);

    // Relative metric: |a - b| / max(1, |a|).
    std::vector<Complex> c{-3.3, 1.0, Complex(0, 2)};
    CHECK(multiset_distance(a, c) == doctest::Approx(0.1));
    CHECK(multiset_distance({}, {}) == 0.0);
    CHECK_THROWS_AS(multiset_distance(a, {1.0}), std::invalid_argument);

    std::vector<Complex> many, shuffled;
    for (int i = 0; i < 12; ++i)
        many.push_back(Complex(i, -i));
    shuffled = many;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(multiset_distance(many, shuffled) == 0.0);
}

TEST_CASE("parse_complex")
{
    CHECK(parse_complex("0.5,0.9") == Complex(0.5, 0.9));
    CHECK(parse_complex(" -1.5 , -2e-1 ") == Complex(-1.5, -0.2));
    CHECK(parse_complex("3") == Complex(3.0, 0.0));
    CHECK_THROWS_AS(parse_complex("a,b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
}

TEST_CASE("finiteness and max-modulus helpers")
{
    ComplexState x(3);
    x << 1.0, Complex(0, -4), 2.0;
    CHECK(all_finite(x));
    CHECK(max_abs(x) == 4.0);
    x[1] = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    CHECK_FALSE(all_finite(x));
    CHECK(identity(3).isIdentity());
}
