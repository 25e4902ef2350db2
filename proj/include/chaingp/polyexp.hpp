// SPDX-License-Identifier: Apache-2.0
//
// Closed algebra of sums of terms coeff * (x-shift)^power * exp(lin*(x-shift)
// + quad*(x-shift)^2). The family is closed under products and derivatives,
// and its expectation under any Gaussian law is available in closed form,
// which is what makes the exact nested-moment engine possible.
#ifndef CHAINGP_POLYEXP_HPP
#define CHAINGP_POLYEXP_HPP

#include "chaingp/common.hpp"

#include <cmath>
#include <vector>

namespace chaingp {

struct PolyExpTerm {
    double coeff = 1.0;
    double shift = 0.0;
    int power = 0;   // non-negative
    double lin = 0.0;
    double quad = 0.0;

    double eval(double x) const {
        const double d = x - shift;
        double p = 1.0;
        for (int k = 0; k < power; ++k) p *= d;
        return coeff * p * std::exp(lin * d + quad * d * d);
    }
};

struct PolyExpSum {
    std::vector<PolyExpTerm> terms;

    PolyExpSum() = default;
    explicit PolyExpSum(std::vector<PolyExpTerm> t) : terms(std::move(t)) {}

    static PolyExpSum constant(double c) {
        PolyExpSum s;
        s.terms.push_back({c, 0.0, 0, 0.0, 0.0});
        return s;
    }

    double eval(double x) const {
        double v = 0.0;
        for (const auto& t : terms) v += t.eval(x);
        return v;
    }

    /// Exact d/dx; stays inside the family.
    PolyExpSum derivative() const;

    /// Rewrite every term with shift 0 (binomial expansion of the power,
    /// completion of the exponent). Exact algebra, identical values.
    PolyExpSum normalized() const;

    PolyExpSum scaled(double c) const {
        PolyExpSum out = *this;
        for (auto& t : out.terms) t.coeff *= c;
        return out;
    }

    /// Translate the argument: result(x) = this(x - delta).
    PolyExpSum shifted(double delta) const {
        PolyExpSum out = *this;
        for (auto& t : out.terms) t.shift += delta;
        return out;
    }
};

/// Pointwise product; the result carries shift-0 terms only.
PolyExpSum poly_exp_product(const PolyExpSum& p, const PolyExpSum& q);

/// E[term(x)] for x ~ N(mu, sigma2). Exact; requires 1 - 2*quad*sigma2 > 0
/// for every term (throws IntegrabilityError naming the offender).
double gaussian_poly_exp_mean(double mu, double sigma2, const PolyExpTerm& term);
double gaussian_poly_exp_mean(double mu, double sigma2, const PolyExpSum& sum);

}  // namespace chaingp

#endif
