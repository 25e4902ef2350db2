// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_HYPERFIT_HPP
#define CHAINGP_HYPERFIT_HPP

#include "chaingp/gp.hpp"

#include <cstdint>
#include <optional>

namespace chaingp {

struct SearchConfig {
    int n_starts = 10;
    int max_iters = 120;         // Nelder-Mead iterations per start
    std::uint64_t seed = 0;
    double lengthscale_lo = 1e-2;  // bound factors relative to the input range
    double lengthscale_hi = 1e2;
    std::optional<Vec> warm_start;  // lengthscales of a previous fit
};

/// Maximizes the leave-one-out log predictive probability over the
/// log-lengthscales with a multi-start, bound-clipped Nelder-Mead simplex.
/// The variance maximizer is exact in closed form at fixed lengthscales and
/// is profiled out of the search; the nugget keeps the template's
/// nugget-to-variance ratio. Deterministic given the seed.
KernelConfig fit_hyperparameters(const Dataset& data, const TrendBasis& basis,
                                 const KernelConfig& kernel_template,
                                 const SearchConfig& search = {});

}  // namespace chaingp

#endif
