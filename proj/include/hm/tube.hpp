#pragma once
#include <complex>
#include <utility>

namespace hm {

using cplx = std::complex<double>;

// Meridian coefficient: a point of the upper half-plane, or the parabolic value i*infinity.
struct Omega {
    bool infinite = false;
    cplx value{0.0, 1.0};
    static Omega i_infinity() { return {true, {0.0, 0.0}}; }
    static Omega finite(cplx z) { return {false, z}; }
};

struct TubeParams {
    cplx lambda;
    double r = 0.0;
};

struct BoundaryData {
    cplx omega;
    double t = 0.0;
};

cplx h_r(cplx z, double r);
cplx phi_r(cplx lambda, double r);

TubeParams tube_from_boundary(const BoundaryData& bd);
BoundaryData boundary_from_tube(const TubeParams& tp);

struct RadiusConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};

// (log(1/|lambda|) - c1, 0.5*log(1/Re lambda) - c2), each clamped at 0.
std::pair<double, double> radius_lower_bounds(cplx lambda, RadiusConstants c = {});
double tube_nesting_gap(double eps, double eps_prime, double c3 = 0.0);
// (c/|omega|, c/|omega|^2); the parabolic value gives (0,0).
std::pair<double, double> short_curve_bounds(const Omega& omega_M, double c);

double hyperbolic_distance(cplx a, cplx b);

}
