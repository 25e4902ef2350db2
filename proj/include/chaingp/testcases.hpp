// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_TESTCASES_HPP
#define CHAINGP_TESTCASES_HPP

#include "chaingp/gp.hpp"
#include "chaingp/sampling.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

namespace chaingp {

/// A pair of deterministic codes chained through the scalar phi1 channel,
/// with the domains and prior trend bases used to emulate them.
struct CodePair {
    std::string name;
    std::function<double(const Vec&)> code1;             // X1 -> R
    std::function<double(double, const Vec&)> code2;     // R x X2 -> R
    Box domain1;
    Box domain2;
    TrendBasis basis1;
    TrendBasis basis2;
    KernelFamily kernel_family = KernelFamily::Gaussian;

    int d1() const { return domain1.dim(); }
    int d2() const { return domain2.dim(); }
    Box nest_domain() const { return Box::concat(domain1, domain2); }
    double nested(const Vec& x1, const Vec& x2) const { return code2(code1(x1), x2); }
};

/// 1-D polynomial-plus-cosine chain; the second code takes only phi1.
CodePair analytical_codes();

/// Stand-in physics for the cone/ballistics chain. Code 1 is the Newtonian
/// cone drag coefficient divided by the cone height; code 2 is the range of
/// a point mass under gravity and quadratic drag proportional to phi1,
/// integrated by fixed-step RK4 with bisection at ground impact.
/// Units: meters, radians, m/s.
struct HydroParams {
    double gravity = 9.81;
    double air_density = 1.225;
    double mass = 1.0;           // kg
    double base_radius = 0.05;   // reference area = pi r^2
    double reference_length = 1.0;
    double time_step = 0.005;    // s
    double max_time = 300.0;     // s
    // box domains: (height, half-angle) and (speed, elevation)
    double height_min = 0.1, height_max = 1.0;
    double half_angle_min = 5.0 * M_PI / 180.0, half_angle_max = 30.0 * M_PI / 180.0;
    double speed_min = 100.0, speed_max = 300.0;
    double elevation_min = 10.0 * M_PI / 180.0, elevation_max = 50.0 * M_PI / 180.0;
    // floor of the reciprocal trend 1/max(phi1, phi1_min); NaN = derive from
    // the smallest code-1 output the domain can produce
    double phi1_min = std::numeric_limits<double>::quiet_NaN();

    double resolved_phi1_min() const;
};

CodePair hydro_codes(const HydroParams& params = {});

/// Ballistic range; dt_override > 0 refines the integrator step (used by
/// the convergence oracle).
double hydro_range(double phi1, double speed, double elevation, const HydroParams& params,
                   double dt_override = 0.0);

/// Reciprocal-in-phi1 trend with the given floor (the hydro code-2 basis).
TrendBasis hydro_basis2(double phi1_min);

/// Single universal-kriging model over X_nest with a constant trend; the
/// chain is treated as one code and phi1 is ignored.
KrigingModel blind_box_fit(const Dataset& nested_data, const KernelConfig& kernel);

/// Validation-normalized squared error of a predictor mean (1 - Q^2).
double error_on_mean(const Vec& y_true, const Vec& y_pred);

struct ValidationSet {
    Mat inputs;   // N x (d1+d2)
    Vec outputs;  // true nested outputs
};

ValidationSet make_validation_set(const CodePair& codes, int n, std::uint64_t seed);

/// Smallest distance between any validation input and any training input;
/// used to assert the disjointness invariant.
double min_cross_distance(const Mat& a, const Mat& b);

}  // namespace chaingp

#endif
