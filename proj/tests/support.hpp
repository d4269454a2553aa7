#pragma once

#include <random>

#include "nonint/core.hpp"

namespace nonint::test {

inline constexpr double kGravity = 1.0;

inline ComplexState paper_x0()
{
    ComplexState x(4);
    x << 0.1, -0.3, 0.2, 0.4;
    return x;
}

/// Printed monodromy matrices, entries as given (two decimals except a few
/// unrounded entries in the second).
inline CMatrix paper_m1()
{
    using C = Complex;
    CMatrix m(4, 4);
    m << C(20.72, -17.12), C(15.79, -1.34), C(4.94, 29.46), C(-14.55, 10.90),
        C(-17.67, 12.78), C(-12.24, -0.06), C(-1.93, -24.87), C(12.91, -7.99),
        C(12.28, 6.91), C(3.55, 7.78), C(-13.07, 7.86), C(-8.18, -5.42),
        C(-11.84, -12.56), C(-1.31, -10.39), C(19.32, -4.06), C(8.59, 9.31);
    return m;
}

inline CMatrix paper_m2()
{
    using C = Complex;
    CMatrix m(4, 4);
    m << C(-18.72, -17.12), C(-15.79, -1.34), C(-4.94413, 29.46), C(14.55, 10.90),
        C(17.67, 12.78), C(14.24, -0.06), C(1.92944, -24.87), C(-12.91, -7.99),
        C(-12.28, 6.91), C(-3.55, 7.78), C(15.0698, 7.86), C(8.18, -5.42),
        C(11.84, -12.56), C(1.31, -10.39), C(-19.319, -4.06), C(-6.59, 9.31);
    return m;
}

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Complex random_complex(double scale)
{
    return {uniform(-scale, scale), uniform(-scale, scale)};
}

/// Complex pendulum state with moderate imaginary parts, kept away from
/// the singular set of the mass matrix.
inline ComplexState random_state()
{
    ComplexState x(4);
    for (int i = 0; i < 4; ++i)
        x[i] = Complex(uniform(-1.5, 1.5), uniform(-0.4, 0.4));
    return x;
}

inline CMatrix random_matrix(int n, double scale = 1.0)
{
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            m(i, k) = random_complex(scale);
    return m;
}

inline double relative(const CMatrix& a, const CMatrix& b)
{
    return (a - b).norm() / std::max(1e-300, b.norm());
}

} // namespace nonint::test
