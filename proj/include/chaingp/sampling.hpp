// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_SAMPLING_HPP
#define CHAINGP_SAMPLING_HPP

#include "chaingp/common.hpp"

#include <cstdint>

namespace chaingp {

/// Plain Latin hypercube: each 1-D projection hits each of n equal strata
/// exactly once, uniformly jittered within the cell. Deterministic given
/// the seed.
Mat lhs(const Box& domain, int n, std::uint64_t seed);

struct MaximinLhsResult {
    Mat design;
    double mindist;                  // in unit-cube coordinates
    double best_unoptimized_mindist;
};

/// Best of `restarts` LHS draws, each improved by accept-if-better
/// coordinate swaps (swaps preserve the LHS property). Maximizes the
/// minimum pairwise distance in the unit cube.
MaximinLhsResult maximin_lhs_detail(const Box& domain, int n, std::uint64_t seed,
                                    int restarts = 8);
Mat maximin_lhs(const Box& domain, int n, std::uint64_t seed, int restarts = 8);

}  // namespace chaingp

#endif
