#include "nonint/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace nonint {

double frobenius_norm(const CMatrix& m)
{
    return m.norm();
}

std::vector<Complex> eigenvalues(const CMatrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("eigenvalues: matrix is " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + ", expected square");
    if (m.rows() == 0)
        return {};
    Eigen::ComplexEigenSolver<CMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigenvalues: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

namespace {

double pair_distance(Complex a, Complex b)
{
    return std::abs(a - b) / std::max(1.0, std::abs(a));
}

} // namespace

double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("multiset_distance: sizes differ");
    const std::size_t n = a.size();
    if (n == 0)
        return 0.0;
    if (n <= 8) {
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            double worst = 0.0;
            for (std::size_t i = 0; i < n && worst < best; ++i)
                worst = std::max(worst, pair_distance(a[i], b[perm[i]]));
            best = std::min(best, worst);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    std::vector<bool> used(n, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pick = n;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j])
                continue;
            double dj = pair_distance(a[i], b[j]);
            if (dj < d) {
                d = dj;
                pick = j;
            }
        }
        used[pick] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

bool all_finite(const ComplexState& x)
{
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!std::isfinite(x[i].real()) || !std::isfinite(x[i].imag()))
            return false;
    return true;
}

bool all_finite(const CMatrix& m)
{
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

double max_abs(const ComplexState& x)
{
    double r = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        r = std::max(r, std::abs(x[i]));
    return r;
}

CMatrix identity(int n)
{
    return CMatrix::Identity(n, n);
}

Complex parse_complex(const std::string& text)
{
    auto number = [&](const std::string& part) {
        std::size_t used = 0;
        double v = std::stod(part, &used);
        if (part.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("trailing characters");
        return v;
    };
    try {
        auto comma = text.find(',');
        if (comma == std::string::npos)
            return {number(text), 0.0};
        return {number(text.substr(0, comma)), number(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse complex number from '" + text +
                                    "' (expected \"re,im\")");
    }
}

} // namespace nonint
