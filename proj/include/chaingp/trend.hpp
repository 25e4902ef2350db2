// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_TREND_HPP
#define CHAINGP_TREND_HPP

#include "chaingp/common.hpp"
#include "chaingp/polyexp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chaingp {

/// Separable form of a second-code basis function: value(phi, x2) =
/// g(phi) * m(x2) with g a single poly-exp term. This is the shape the
/// exact moment engine needs.
struct SeparablePolyExp {
    PolyExpTerm g;                                  // factor in the phi coordinate
    std::function<double(const Vec&)> m;            // factor in the remaining coordinates
};

/// One scalar basis function over a code's full input vector. For models of
/// the second code, coordinate 0 is the phi channel; dphi1, when present, is
/// the derivative with respect to that coordinate.
struct TrendFunction {
    std::string name;
    std::function<double(const Vec&)> value;
    std::function<double(const Vec&)> dphi1;
    std::optional<SeparablePolyExp> separable;

    static TrendFunction general(std::string name, std::function<double(const Vec&)> value,
                                 std::function<double(const Vec&)> dphi1 = nullptr) {
        TrendFunction f;
        f.name = std::move(name);
        f.value = std::move(value);
        f.dphi1 = std::move(dphi1);
        return f;
    }

    /// Builds value and dphi1 from the declared factors; m defaults to 1.
    static TrendFunction separable_poly_exp(std::string name, PolyExpTerm g,
                                            std::function<double(const Vec&)> m = nullptr) {
        if (g.power < 0) throw DimensionError("TrendFunction: negative power");
        TrendFunction f;
        f.name = std::move(name);
        f.separable = SeparablePolyExp{g, m};
        PolyExpSum gs;
        gs.terms.push_back(g);
        const PolyExpSum dg = gs.derivative();
        auto m_of = [m](const Vec& x) {
            if (!m) return 1.0;
            return m(x.tail(x.size() - 1).eval());
        };
        f.value = [g, m_of](const Vec& x) { return g.eval(x[0]) * m_of(x); };
        f.dphi1 = [dg, m_of](const Vec& x) { return dg.eval(x[0]) * m_of(x); };
        return f;
    }
};

struct TrendBasis {
    std::vector<TrendFunction> fns;

    int size() const { return static_cast<int>(fns.size()); }

    Vec eval(const Vec& x) const {
        Vec h(size());
        for (int k = 0; k < size(); ++k) h[k] = fns[k].value(x);
        return h;
    }

    bool all_separable() const {
        for (const auto& f : fns)
            if (!f.separable) return false;
        return true;
    }

    static TrendBasis constant() {
        TrendBasis b;
        b.fns.push_back(TrendFunction::general("1", [](const Vec&) { return 1.0; },
                                               [](const Vec&) { return 0.0; }));
        return b;
    }

    /// 1, phi, phi^2, ..., phi^degree as separable poly-exp entries.
    static TrendBasis phi_polynomial(int degree) {
        TrendBasis b;
        for (int p = 0; p <= degree; ++p) {
            std::string name = p == 0 ? "1" : (p == 1 ? "phi" : "phi^" + std::to_string(p));
            b.fns.push_back(
                TrendFunction::separable_poly_exp(name, PolyExpTerm{1.0, 0.0, p, 0.0, 0.0}));
        }
        return b;
    }

    /// 1, x_c, x_c^2, ... in a chosen input coordinate (general entries).
    static TrendBasis coordinate_polynomial(int coord, int degree) {
        TrendBasis b;
        for (int p = 0; p <= degree; ++p) {
            std::string name = p == 0 ? "1"
                                      : "x" + std::to_string(coord) +
                                            (p == 1 ? "" : "^" + std::to_string(p));
            b.fns.push_back(TrendFunction::general(
                name,
                [coord, p](const Vec& x) {
                    double v = 1.0;
                    for (int k = 0; k < p; ++k) v *= x[coord];
                    return v;
                },
                [coord, p](const Vec& x) {
                    if (coord != 0 || p == 0) return 0.0;
                    double v = p;
                    for (int k = 0; k < p - 1; ++k) v *= x[0];
                    return v;
                }));
        }
        return b;
    }
};

}  // namespace chaingp

#endif
