// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_QUADRATURE_HPP
#define CHAINGP_QUADRATURE_HPP

#include "chaingp/common.hpp"

namespace chaingp {

/// Gauss-Hermite rule re-weighted for the standard normal law:
/// E[f(Z)] ~= sum_i weights[i] * f(nodes[i]), weights summing to 1.
struct GaussHermiteRule {
    Vec nodes;
    Vec weights;
};

/// Nodes and weights via Golub-Welsch on the Jacobi matrix of the
/// probabilists' Hermite recurrence. Cached per node count; thread-safe.
const GaussHermiteRule& gauss_hermite(int n);

}  // namespace chaingp

#endif
