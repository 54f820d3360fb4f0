#include "hm/tube.hpp"

#include <cmath>
#include <numbers>

#include "hm/errors.hpp"

namespace hm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

cplx h_r(cplx z, double r) { return {z.real() * std::tanh(r), z.imag()}; }

cplx phi_r(cplx lambda, double r) { return {lambda.real() * std::cosh(r), lambda.imag() * std::sinh(r)}; }

TubeParams tube_from_boundary(const BoundaryData& bd) {
    if (!(bd.t > 0.0) || !(bd.omega.imag() > 0.0)) throw DomainError("boundary data needs t > 0 and Im omega > 0");
    const double r = std::asinh(bd.t * std::abs(bd.omega) / kTwoPi);
    const cplx z = cplx(0.0, kTwoPi) / bd.omega;
    return {h_r(z, r), r};
}

BoundaryData boundary_from_tube(const TubeParams& tp) {
    if (!(tp.r > 0.0) || !(tp.lambda.real() > 0.0)) throw DomainError("tube needs r > 0 and Re lambda > 0");
    const double sr = std::sinh(tp.r);
    const cplx lp = phi_r(tp.lambda, tp.r);
    const cplx omega = cplx(0.0, kTwoPi * sr) / lp;
    return {omega, kTwoPi * sr / std::abs(omega)};
}

std::pair<double, double> radius_lower_bounds(cplx lambda, RadiusConstants c) {
    const double a = std::log(1.0 / std::abs(lambda)) - c.c1;
    const double b = 0.5 * std::log(1.0 / lambda.real()) - c.c2;
    return {std::max(0.0, a), std::max(0.0, b)};
}

double tube_nesting_gap(double eps, double eps_prime, double c3) {
    if (!(eps > 0.0) || !(eps_prime > 0.0)) throw DomainError("Margulis constants must be positive");
    return 0.5 * std::log(eps / eps_prime) - c3;
}

std::pair<double, double> short_curve_bounds(const Omega& omega_M, double c) {
    if (omega_M.infinite) return {0.0, 0.0};
    const double m = std::abs(omega_M.value);
    return {c / m, c / (m * m)};
}

double hyperbolic_distance(cplx a, cplx b) {
    const double num = std::norm(a - b);
    return std::acosh(1.0 + num / (2.0 * a.imag() * b.imag()));
}

}
