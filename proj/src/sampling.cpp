// SPDX-License-Identifier: Apache-2.0
#include "chaingp/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace chaingp {

namespace {

// unit-cube LHS sample
Mat unit_lhs(int n, int d, std::mt19937_64& rng) {
    Mat u(n, d);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<int> perm(n);
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < n; ++i) u(i, j) = (perm[i] + unif(rng)) / n;
    }
    return u;
}

double min_pairwise_sq_dist(const Mat& u) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < u.rows(); ++i)
        for (int j = i + 1; j < u.rows(); ++j)
            best = std::min(best, (u.row(i) - u.row(j)).squaredNorm());
    return best;
}

Mat to_domain(const Box& domain, const Mat& u) {
    Mat out = u;
    for (int j = 0; j < domain.dim(); ++j)
        out.col(j) = domain.lo[j] + (domain.hi[j] - domain.lo[j]) * u.col(j).array();
    return out;
}

void check_args(const Box& domain, int n, int min_n) {
    if (domain.dim() < 1) throw DimensionError("lhs: degenerate (zero-dimensional) box");
    if (n < min_n)
        throw DimensionError("lhs: need at least " + std::to_string(min_n) + " points");
}

}  // namespace

Mat lhs(const Box& domain, int n, std::uint64_t seed) {
    check_args(domain, n, 1);
    std::mt19937_64 rng(seed);
    return to_domain(domain, unit_lhs(n, domain.dim(), rng));
}

MaximinLhsResult maximin_lhs_detail(const Box& domain, int n, std::uint64_t seed,
                                    int restarts) {
    check_args(domain, n, 2);
    if (restarts < 1) throw DimensionError("maximin_lhs: restarts must be >= 1");
    const int d = domain.dim();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_dim(0, d - 1);
    std::uniform_int_distribution<int> pick_row(0, n - 1);

    Mat best_u;
    double best = -1.0;
    double best_raw = -1.0;
    const int sweeps = 40 * n;
    for (int r = 0; r < restarts; ++r) {
        Mat u = unit_lhs(n, d, rng);
        double cur = min_pairwise_sq_dist(u);
        best_raw = std::max(best_raw, cur);
        for (int s = 0; s < sweeps; ++s) {
            const int j = pick_dim(rng);
            const int i1 = pick_row(rng);
            int i2 = pick_row(rng);
            if (i1 == i2) continue;
            std::swap(u(i1, j), u(i2, j));
            const double cand = min_pairwise_sq_dist(u);
            if (cand > cur) cur = cand;
            else std::swap(u(i1, j), u(i2, j));  // revert
        }
        if (cur > best) {
            best = cur;
            best_u = u;
        }
    }
    return {to_domain(domain, best_u), std::sqrt(best), std::sqrt(best_raw)};
}

Mat maximin_lhs(const Box& domain, int n, std::uint64_t seed, int restarts) {
    return maximin_lhs_detail(domain, n, seed, restarts).design;
}

}  // namespace chaingp
