#include "nonint/systems.hpp"

#include <cmath>
#include <sstream>

namespace nonint {

namespace pendulum {

namespace {

void check_dim(const ComplexState& x)
{
    if (x.size() != 4)
        throw std::invalid_argument("double pendulum state must have 4 entries, got " +
                                    std::to_string(x.size()));
}

Complex checked_determinant(Complex c)
{
    Complex det = 2.0 - c * c;
    if (std::abs(det) < kSingularDeterminant)
        throw SingularPointError("double pendulum: singular mass matrix (|2 - cos^2(a1 - a2)| < 1e-14)");
    return det;
}

} // namespace

Complex mass_determinant(const ComplexState& x)
{
    check_dim(x);
    Complex c = std::cos(x[0] - x[1]);
    return 2.0 - c * c;
}

ComplexState field(const ComplexState& x, double g)
{
    check_dim(x);
    const Complex a1 = x[0], a2 = x[1], w1 = x[2], w2 = x[3];
    const Complex c = std::cos(a1 - a2), s = std::sin(a1 - a2);
    const Complex det = checked_determinant(c);
    const Complex b1 = -w2 * w2 * s - 2.0 * g * std::sin(a1);
    const Complex b2 = w1 * w1 * s - g * std::sin(a2);

    ComplexState v(4);
    v << w1, w2, (b1 - c * b2) / det, (2.0 * b2 - c * b1) / det;
    return v;
}

CMatrix jacobian(const ComplexState& x, double g)
{
    check_dim(x);
    const Complex a1 = x[0], a2 = x[1], w1 = x[2], w2 = x[3];
    const Complex c = std::cos(a1 - a2), s = std::sin(a1 - a2);
    const Complex det = checked_determinant(c);
    const Complex b1 = -w2 * w2 * s - 2.0 * g * std::sin(a1);
    const Complex b2 = w1 * w1 * s - g * std::sin(a2);

    using Row = Eigen::RowVector4cd;
    const Row db1(-w2 * w2 * c - 2.0 * g * std::cos(a1), w2 * w2 * c, 0.0, -2.0 * w2 * s);
    const Row db2(w1 * w1 * c, -w1 * w1 * c - g * std::cos(a2), 2.0 * w1 * s, 0.0);
    const Row dc(-s, s, 0.0, 0.0);
    const Row ddet = -2.0 * c * dc;

    const Complex n1 = b1 - c * b2;
    const Complex n2 = 2.0 * b2 - c * b1;
    const Row dn1 = db1 - dc * b2 - c * db2;
    const Row dn2 = 2.0 * db2 - dc * b1 - c * db1;

    CMatrix jac = CMatrix::Zero(4, 4);
    jac(0, 2) = 1.0;
    jac(1, 3) = 1.0;
    jac.row(2) = (dn1 * det - n1 * ddet) / (det * det);
    jac.row(3) = (dn2 * det - n2 * ddet) / (det * det);
    return jac;
}

Complex energy(const ComplexState& x, double g)
{
    check_dim(x);
    const Complex a1 = x[0], a2 = x[1], w1 = x[2], w2 = x[3];
    return w1 * w1 + w1 * w2 * std::cos(a1 - a2) + 0.5 * w2 * w2 - 2.0 * g * std::cos(a1) -
           g * std::cos(a2);
}

std::pair<Complex, Complex> momenta(const ComplexState& x)
{
    check_dim(x);
    const Complex c = std::cos(x[0] - x[1]);
    return {2.0 * x[2] + x[3] * c, x[2] * c + x[3]};
}

CMatrix legendre_frame(const ComplexState& x)
{
    check_dim(x);
    const Complex w1 = x[2], w2 = x[3];
    const Complex c = std::cos(x[0] - x[1]), s = std::sin(x[0] - x[1]);
    CMatrix frame = CMatrix::Zero(4, 4);
    frame(0, 0) = 1.0;
    frame(1, 1) = 1.0;
    frame(2, 0) = -w2 * s;
    frame(2, 1) = w2 * s;
    frame(3, 0) = -w1 * s;
    frame(3, 1) = w1 * s;
    frame(2, 2) = 2.0;
    frame(2, 3) = c;
    frame(3, 2) = c;
    frame(3, 3) = 1.0;
    return frame;
}

SystemDef make(double g)
{
    SystemDef sys;
    sys.name = "double-pendulum";
    sys.dim = 4;
    sys.params["g"] = g;
    sys.field = [g](const ComplexState& x, Complex) { return field(x, g); };
    sys.jacobian = [g](const ComplexState& x, Complex) { return jacobian(x, g); };
    sys.first_integrals.push_back({"energy", [g](const ComplexState& x, Complex) { return energy(x, g); }});
    sys.indicator = [](const ComplexState& x, Complex) { return mass_determinant(x); };
    sys.legendre_frame = [](const ComplexState& x) { return legendre_frame(x); };
    return sys;
}

} // namespace pendulum

namespace oracle {

namespace {

void check_scalar(const ComplexState& x)
{
    if (x.size() != 1)
        throw std::invalid_argument("scalar oracle system expects a 1-entry state");
}

} // namespace

SystemDef linear_branch(double lambda)
{
    SystemDef sys;
    std::ostringstream name;
    name << "oracle:linear-branch:" << lambda;
    sys.name = name.str();
    sys.dim = 1;
    sys.params["lambda"] = lambda;
    sys.field = [lambda](const ComplexState& x, Complex t) {
        check_scalar(x);
        if (t == Complex(0.0))
            throw SingularPointError("linear-branch: t = 0 is singular");
        ComplexState v(1);
        v[0] = lambda * x[0] / t;
        return v;
    };
    sys.jacobian = [lambda](const ComplexState& x, Complex t) {
        check_scalar(x);
        if (t == Complex(0.0))
            throw SingularPointError("linear-branch: t = 0 is singular");
        CMatrix j(1, 1);
        j(0, 0) = lambda / t;
        return j;
    };
    sys.indicator = [](const ComplexState& x, Complex) { return x[0]; };
    return sys;
}

SystemDef pole()
{
    SystemDef sys;
    sys.name = "oracle:pole";
    sys.dim = 1;
    sys.field = [](const ComplexState& x, Complex) {
        check_scalar(x);
        ComplexState v(1);
        v[0] = x[0] * x[0];
        return v;
    };
    sys.jacobian = [](const ComplexState& x, Complex) {
        check_scalar(x);
        CMatrix j(1, 1);
        j(0, 0) = 2.0 * x[0];
        return j;
    };
    // 1/x + t is constant.
    sys.first_integrals.push_back({"inverse-plus-time", [](const ComplexState& x, Complex t) {
                                       return 1.0 / x[0] + t;
                                   }});
    sys.indicator = [](const ComplexState& x, Complex) { return x[0]; };
    return sys;
}

SystemDef root()
{
    SystemDef sys;
    sys.name = "oracle:root";
    sys.dim = 1;
    sys.field = [](const ComplexState& x, Complex) {
        check_scalar(x);
        if (x[0] == Complex(0.0))
            throw SingularPointError("root: x = 0 is singular");
        ComplexState v(1);
        v[0] = 0.5 / x[0];
        return v;
    };
    sys.jacobian = [](const ComplexState& x, Complex) {
        check_scalar(x);
        if (x[0] == Complex(0.0))
            throw SingularPointError("root: x = 0 is singular");
        CMatrix j(1, 1);
        j(0, 0) = -0.5 / (x[0] * x[0]);
        return j;
    };
    // x^2 - t is constant.
    sys.first_integrals.push_back({"square-minus-time", [](const ComplexState& x, Complex t) {
                                       return x[0] * x[0] - t;
                                   }});
    sys.indicator = [](const ComplexState& x, Complex) { return x[0]; };
    return sys;
}

} // namespace oracle

std::vector<SystemDef> oracle_registry()
{
    return {oracle::linear_branch(1.0 / 3.0), oracle::pole(), oracle::root()};
}

SystemDef make_system(const std::string& name, double g)
{
    if (name == "double-pendulum")
        return pendulum::make(g);
    if (name == "oracle:pole")
        return oracle::pole();
    if (name == "oracle:root")
        return oracle::root();
    const std::string prefix = "oracle:linear-branch:";
    if (name.rfind(prefix, 0) == 0) {
        std::string arg = name.substr(prefix.size());
        std::size_t used = 0;
        double lambda = 0.0;
        try {
            lambda = std::stod(arg, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != arg.size())
            throw std::invalid_argument("bad lambda in system name '" + name + "'");
        return oracle::linear_branch(lambda);
    }
    throw std::invalid_argument("unknown system '" + name +
                                "' (expected double-pendulum, oracle:pole, oracle:root or "
                                "oracle:linear-branch:<lambda>)");
}

} // namespace nonint
