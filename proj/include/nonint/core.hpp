#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nonint {

using Complex = std::complex<double>;

/// Phase-space point at a complex time. For the double pendulum the
/// ordering is (alpha1, alpha2, alpha1', alpha2').
using ComplexState = Eigen::VectorXcd;

/// Dense complex matrix, used for Jacobians, fundamental matrices and
/// monodromy matrices.
using CMatrix = Eigen::MatrixXcd;

/// Raised when a computation reaches a point where the equations of motion
/// are not defined (pole of the vector field, singular mass matrix, ...).
class SingularPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for numerical failures that carry a diagnosis for the caller
/// (non-returning loops, transport failures, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double frobenius_norm(const CMatrix& m);

/// All eigenvalues with multiplicity. Throws std::invalid_argument for
/// non-square input.
std::vector<Complex> eigenvalues(const CMatrix& m);

/// Optimal-assignment distance between two multisets of equal size:
/// min over bijections of max |a_i - b_pi(i)| / max(1, |a_i|).
/// Exhaustive for n <= 8, greedy above.
double multiset_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

bool all_finite(const ComplexState& x);
bool all_finite(const CMatrix& m);

/// Max-modulus norm, used for blow-up detection.
double max_abs(const ComplexState& x);

CMatrix identity(int n);

/// Parses "re,im" or "re" into a complex value.
Complex parse_complex(const std::string& text);

} // namespace nonint
