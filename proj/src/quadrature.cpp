// SPDX-License-Identifier: Apache-2.0
#include "chaingp/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace chaingp {

namespace {

GaussHermiteRule compute_rule(int n) {
    if (n < 1) throw DimensionError("gauss_hermite: node count must be >= 1");
    GaussHermiteRule rule;
    if (n == 1) {
        rule.nodes = Vec::Zero(1);
        rule.weights = Vec::Ones(1);
        return rule;
    }
    // monic He_k recurrence: beta_k = sqrt(k)
    Vec diag = Vec::Zero(n);
    Vec sub(n - 1);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.computeFromTridiagonal(diag, sub);
    if (es.info() != Eigen::Success)
        throw NumericError("gauss_hermite: tridiagonal eigensolver failed");
    rule.nodes = es.eigenvalues();
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;  // zeroth moment of N(0,1) is 1
    }
    rule.weights /= rule.weights.sum();
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<GaussHermiteRule>(compute_rule(n))).first;
    return *it->second;
}

}  // namespace chaingp
