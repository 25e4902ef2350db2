// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_COMMON_HPP
#define CHAINGP_COMMON_HPP

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chaingp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Bad dimensions, non-finite coordinates, malformed arguments.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Factorization failures, non-positive LOO variances, integrator blowups.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Gaussian expectation that does not exist for the requested term.
struct IntegrabilityError : NumericError {
    using NumericError::NumericError;
};

/// Operation requested for a kernel family that cannot support it.
struct UnsupportedFamilyError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Invalid experiment configuration (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Axis-aligned box domain. A zero-dimensional box is legal and denotes an
/// empty input space (the analytical test case's second code has one).
struct Box {
    Vec lo;
    Vec hi;

    Box() : lo(0), hi(0) {}
    Box(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo.size() != hi.size())
            throw DimensionError("Box: lo/hi dimension mismatch");
        for (Eigen::Index i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i]))
                throw DimensionError("Box: empty extent in dimension " + std::to_string(i));
    }

    int dim() const { return static_cast<int>(lo.size()); }

    bool contains(const Vec& x) const {
        if (x.size() != lo.size()) return false;
        for (Eigen::Index i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }

    Vec range() const { return hi - lo; }

    static Box concat(const Box& a, const Box& b) {
        Box out;
        out.lo.resize(a.dim() + b.dim());
        out.hi.resize(a.dim() + b.dim());
        out.lo << a.lo, b.lo;
        out.hi << a.hi, b.hi;
        return out;
    }
};

inline bool bitwise_equal(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

inline bool bitwise_equal(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (!bitwise_equal(a[i], b[i])) return false;
    return true;
}

inline void require_finite(const Vec& x, const char* what) {
    if (!x.allFinite()) throw DimensionError(std::string(what) + ": non-finite coordinates");
}

/// SplitMix64 step; used to derive independent seed streams from a master
/// seed so that adding repetitions never perturbs earlier ones.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream));
}

}  // namespace chaingp

#endif
