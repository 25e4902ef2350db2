// SPDX-License-Identifier: Apache-2.0
#include "chaingp/testcases.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace chaingp {

namespace {

double analytical_code1(double x) {
    return -2.0 + 0.25 * x + 0.0625 * x * x - 0.25 * std::cos(2.0 * M_PI * x);
}

double analytical_code2(double phi) {
    return 6.0 - 5.0 * phi - 2.0 * phi * phi + phi * phi * phi -
           0.25 * std::cos(2.0 * M_PI * phi);
}

}  // namespace

CodePair analytical_codes() {
    CodePair pair;
    pair.name = "analytical";
    pair.code1 = [](const Vec& x1) {
        if (x1.size() != 1) throw DimensionError("analytical code 1 takes one input");
        require_finite(x1, "analytical code 1");
        return analytical_code1(x1[0]);
    };
    pair.code2 = [](double phi1, const Vec& x2) {
        if (x2.size() != 0) throw DimensionError("analytical code 2 takes only phi1");
        if (!std::isfinite(phi1)) throw DimensionError("analytical code 2: non-finite phi1");
        return analytical_code2(phi1);
    };
    pair.domain1 = Box(Vec::Constant(1, -7.0), Vec::Constant(1, 7.0));
    pair.domain2 = Box();
    pair.basis1 = TrendBasis::coordinate_polynomial(0, 2);
    pair.basis2 = TrendBasis::phi_polynomial(3);
    pair.kernel_family = KernelFamily::Gaussian;
    return pair;
}

double HydroParams::resolved_phi1_min() const {
    if (std::isfinite(phi1_min)) return phi1_min;
    const double s = std::sin(half_angle_min);
    return 1e-3 * (2.0 * s * s / height_max);
}

TrendBasis hydro_basis2(double phi1_min) {
    if (!(phi1_min > 0.0)) throw DimensionError("hydro_basis2: phi1_min must be positive");
    TrendBasis b;
    b.fns.push_back(TrendFunction::general("1", [](const Vec&) { return 1.0; },
                                           [](const Vec&) { return 0.0; }));
    b.fns.push_back(TrendFunction::general(
        "1/max(phi,phi_min)",
        [phi1_min](const Vec& z) { return 1.0 / std::max(z[0], phi1_min); },
        // right-sided derivative at the floor; constant below it
        [phi1_min](const Vec& z) {
            if (z[0] < phi1_min) return 0.0;
            return -1.0 / (z[0] * z[0]);
        }));
    return b;
}

double hydro_range(double phi1, double speed, double elevation, const HydroParams& p,
                   double dt_override) {
    if (!std::isfinite(phi1) || !std::isfinite(speed) || !std::isfinite(elevation))
        throw DimensionError("hydro code 2: non-finite input");
    const double kd = 0.5 * p.air_density * M_PI * p.base_radius * p.base_radius *
                      p.reference_length / p.mass * phi1;
    const double g = p.gravity;
    const double dt = dt_override > 0.0 ? dt_override : p.time_step;

    struct State {
        double x, z, vx, vz;
    };
    auto deriv = [kd, g](const State& s) {
        const double v = std::hypot(s.vx, s.vz);
        return State{s.vx, s.vz, -kd * v * s.vx, -g - kd * v * s.vz};
    };
    auto rk4 = [&deriv](const State& s, double h) {
        const State k1 = deriv(s);
        const State s2{s.x + 0.5 * h * k1.x, s.z + 0.5 * h * k1.z, s.vx + 0.5 * h * k1.vx,
                       s.vz + 0.5 * h * k1.vz};
        const State k2 = deriv(s2);
        const State s3{s.x + 0.5 * h * k2.x, s.z + 0.5 * h * k2.z, s.vx + 0.5 * h * k2.vx,
                       s.vz + 0.5 * h * k2.vz};
        const State k3 = deriv(s3);
        const State s4{s.x + h * k3.x, s.z + h * k3.z, s.vx + h * k3.vx, s.vz + h * k3.vz};
        const State k4 = deriv(s4);
        return State{s.x + h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
                     s.z + h / 6.0 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z),
                     s.vx + h / 6.0 * (k1.vx + 2 * k2.vx + 2 * k3.vx + k4.vx),
                     s.vz + h / 6.0 * (k1.vz + 2 * k2.vz + 2 * k3.vz + k4.vz)};
    };

    State s{0.0, 0.0, speed * std::cos(elevation), speed * std::sin(elevation)};
    double t = 0.0;
    while (t < p.max_time) {
        const State next = rk4(s, dt);
        if (next.z < 0.0 && t > 0.0) {
            // bisect the step size until the crossing is pinned down
            double lo = 0.0, hi = dt;
            State landing = next;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const State trial = rk4(s, mid);
                if (trial.z < 0.0) {
                    hi = mid;
                    landing = trial;
                } else {
                    lo = mid;
                }
                if (hi - lo < 1e-15 * dt) break;
            }
            return landing.x;
        }
        s = next;
        t += dt;
    }
    throw NumericError("hydro code 2: trajectory did not land within " +
                       std::to_string(p.max_time) + " s");
}

CodePair hydro_codes(const HydroParams& params) {
    CodePair pair;
    pair.name = "hydro";
    pair.code1 = [](const Vec& x1) {
        if (x1.size() != 2) throw DimensionError("hydro code 1 takes (height, half-angle)");
        require_finite(x1, "hydro code 1");
        const double height = x1[0];
        const double half_angle = x1[1];
        if (!(height > 0.0)) throw DimensionError("hydro code 1: height must be positive");
        const double s = std::sin(half_angle);
        return 2.0 * s * s / height;  // Newtonian cone drag coefficient / height
    };
    HydroParams p = params;
    pair.code2 = [p](double phi1, const Vec& x2) {
        if (x2.size() != 2) throw DimensionError("hydro code 2 takes (speed, elevation)");
        require_finite(x2, "hydro code 2");
        return hydro_range(phi1, x2[0], x2[1], p);
    };
    pair.domain1 = Box((Vec(2) << params.height_min, params.half_angle_min).finished(),
                       (Vec(2) << params.height_max, params.half_angle_max).finished());
    pair.domain2 = Box((Vec(2) << params.speed_min, params.elevation_min).finished(),
                       (Vec(2) << params.speed_max, params.elevation_max).finished());
    pair.basis1.fns.push_back(TrendFunction::general("1", [](const Vec&) { return 1.0; },
                                                     [](const Vec&) { return 0.0; }));
    pair.basis1.fns.push_back(
        TrendFunction::general("height", [](const Vec& x) { return x[0]; }));
    pair.basis1.fns.push_back(
        TrendFunction::general("1/half_angle", [](const Vec& x) { return 1.0 / x[1]; }));
    pair.basis2 = hydro_basis2(params.resolved_phi1_min());
    pair.kernel_family = KernelFamily::Matern52;
    return pair;
}

KrigingModel blind_box_fit(const Dataset& nested_data, const KernelConfig& kernel) {
    return uk_fit(nested_data, TrendBasis::constant(), kernel);
}

double error_on_mean(const Vec& y_true, const Vec& y_pred) {
    if (y_true.size() != y_pred.size())
        throw DimensionError("error_on_mean: length mismatch");
    if (y_true.size() == 0) throw DimensionError("error_on_mean: empty validation set");
    const double mean = y_true.mean();
    const double denom = (y_true.array() - mean).square().sum();
    if (!(denom > 0.0))
        throw NumericError("error_on_mean: validation outputs are all identical");
    const double num = (y_true - y_pred).squaredNorm();
    return num / denom;
}

ValidationSet make_validation_set(const CodePair& codes, int n, std::uint64_t seed) {
    ValidationSet vs;
    vs.inputs = lhs(codes.nest_domain(), n, seed);
    vs.outputs.resize(n);
    const int d1 = codes.d1();
    for (int i = 0; i < n; ++i) {
        const Vec x1 = vs.inputs.row(i).head(d1);
        const Vec x2 = vs.inputs.row(i).tail(codes.d2());
        vs.outputs[i] = codes.nested(x1, x2);
    }
    return vs;
}

double min_cross_distance(const Mat& a, const Mat& b) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < b.rows(); ++j)
            best = std::min(best, (a.row(i) - b.row(j)).norm());
    return best;
}

}  // namespace chaingp
