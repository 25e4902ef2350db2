// SPDX-License-Identifier: Apache-2.0
#include "chaingp/polyexp.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace chaingp {

namespace {

double binomial(int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return v;
}

void append_combined(std::vector<PolyExpTerm>& out, const PolyExpTerm& t) {
    // merge terms with identical (power, lin, quad); keeps products compact
    for (auto& u : out) {
        if (u.power == t.power && bitwise_equal(u.lin, t.lin) && bitwise_equal(u.quad, t.quad) &&
            u.shift == 0.0) {
            u.coeff += t.coeff;
            return;
        }
    }
    out.push_back(t);
}

}  // namespace

PolyExpSum PolyExpSum::derivative() const {
    PolyExpSum out;
    for (const auto& t : terms) {
        // d/dx [c d^p e^{a d + b d^2}] = c (p d^{p-1} + a d^p + 2b d^{p+1}) e^{...}
        if (t.power > 0)
            out.terms.push_back({t.coeff * t.power, t.shift, t.power - 1, t.lin, t.quad});
        if (t.lin != 0.0)
            out.terms.push_back({t.coeff * t.lin, t.shift, t.power, t.lin, t.quad});
        if (t.quad != 0.0)
            out.terms.push_back({t.coeff * 2.0 * t.quad, t.shift, t.power + 1, t.lin, t.quad});
    }
    return out;
}

PolyExpSum PolyExpSum::normalized() const {
    PolyExpSum out;
    for (const auto& t : terms) {
        if (t.shift == 0.0) {
            append_combined(out.terms, t);
            continue;
        }
        const double s = t.shift;
        // exponent: lin*(x-s) + quad*(x-s)^2 = (lin - 2 quad s) x + quad x^2
        //           + (quad s^2 - lin s)
        const double lin0 = t.lin - 2.0 * t.quad * s;
        const double c0 = t.coeff * std::exp(t.quad * s * s - t.lin * s);
        // (x-s)^p expanded binomially
        for (int k = 0; k <= t.power; ++k) {
            double mono = binomial(t.power, k);
            for (int j = 0; j < t.power - k; ++j) mono *= -s;
            append_combined(out.terms, {c0 * mono, 0.0, k, lin0, t.quad});
        }
    }
    return out;
}

PolyExpSum poly_exp_product(const PolyExpSum& p, const PolyExpSum& q) {
    const PolyExpSum pn = p.normalized();
    const PolyExpSum qn = q.normalized();
    PolyExpSum out;
    for (const auto& a : pn.terms)
        for (const auto& b : qn.terms)
            append_combined(out.terms,
                            {a.coeff * b.coeff, 0.0, a.power + b.power, a.lin + b.lin,
                             a.quad + b.quad});
    return out;
}

double gaussian_poly_exp_mean(double mu, double sigma2, const PolyExpTerm& term) {
    if (sigma2 < 0.0) throw DimensionError("gaussian_poly_exp_mean: negative variance");
    const double m = mu - term.shift;
    const double a = term.lin;
    const double b = term.quad;
    if (sigma2 == 0.0) {
        double p = 1.0;
        for (int k = 0; k < term.power; ++k) p *= m;
        return term.coeff * p * std::exp(a * m + b * m * m);
    }
    const double denom = 1.0 - 2.0 * b * sigma2;
    if (!(denom > 0.0))
        throw IntegrabilityError(
            "gaussian_poly_exp_mean: 1 - 2*quad*sigma2 <= 0 for term with quad=" +
            std::to_string(b) + ", sigma2=" + std::to_string(sigma2));
    // E[x^p e^{ax+bx^2}] under N(m, s2):
    //   (1/sqrt(denom)) * exp((s2 a^2 + 2am + 2bm^2) / (2 denom)) * E[z^p],
    //   z ~ N((s2 a + m)/denom, s2/denom).
    // The exponent is written in its cancellation-free form, which tends to
    // (am + bm^2) as s2 -> 0.
    const double expo = (sigma2 * a * a + 2.0 * a * m + 2.0 * b * m * m) / (2.0 * denom);
    const double mu_f = (sigma2 * a + m) / denom;
    const double s2_f = sigma2 / denom;
    // Gaussian raw moments: m_k = mu_f*m_{k-1} + (k-1)*s2_f*m_{k-2}
    double mk = 1.0, mk1 = 0.0;
    for (int k = 1; k <= term.power; ++k) {
        const double next = mu_f * mk + (k - 1) * s2_f * mk1;
        mk1 = mk;
        mk = next;
    }
    return term.coeff * std::exp(expo) / std::sqrt(denom) * mk;
}

double gaussian_poly_exp_mean(double mu, double sigma2, const PolyExpSum& sum) {
    double v = 0.0;
    for (const auto& t : sum.terms) v += gaussian_poly_exp_mean(mu, sigma2, t);
    return v;
}

}  // namespace chaingp
