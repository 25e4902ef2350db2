// SPDX-License-Identifier: Apache-2.0
//
// Universal kriging for a single code: generalized-least-squares trend with
// an improper uniform coefficient prior integrated out, stationary kernel,
// cached factorizations, closed-form leave-one-out quantities, and rank-one
// variance updates for hypothetical observations.
//
// Posterior equations (h = trend vector, r = covariances to the data,
// R = Gram matrix with nugget, H = trend design matrix, G = H^T R^-1 H):
//   beta  = G^-1 H^T R^-1 y
//   m(x)  = h(x)^T beta + r(x)^T R^-1 (y - H beta)
//   C(x,x') = k(x,x') - r(x)^T R^-1 r(x') + u(x)^T G^-1 u(x'),
//   u(x)  = h(x) - H^T R^-1 r(x)
#ifndef CHAINGP_GP_HPP
#define CHAINGP_GP_HPP

#include "chaingp/common.hpp"
#include "chaingp/dataset.hpp"
#include "chaingp/kernels.hpp"
#include "chaingp/trend.hpp"

#include <atomic>
#include <memory>
#include <string>

namespace chaingp {

class KrigingModel;

KrigingModel uk_fit(Dataset data, TrendBasis basis, KernelConfig kernel);

/// Per-point solves reused across posterior formulas and by the design
/// module's batch caches.
struct PointFactors {
    Vec r;      // covariances to the training inputs
    Vec alpha;  // R^-1 r
    Vec h;      // trend vector
    Vec u;      // h - H^T R^-1 r
    Vec w;      // G^-1 u
    double kxx; // kernel at zero distance (variance + nugget)
};

class KrigingModel {
public:
    const Dataset& data() const { return data_; }
    const TrendBasis& basis() const { return basis_; }
    const KernelConfig& kernel() const { return kernel_; }
    int n_obs() const { return data_.size(); }
    int input_dim() const { return data_.dim(); }

    double mean(const Vec& x) const;
    double variance(const Vec& x) const;
    std::pair<double, double> predict(const Vec& x) const;
    double cov(const Vec& x, const Vec& y) const;

    /// d(mean)/d(coordinate 0) at (phi1, x2); every trend entry must
    /// declare its phi1 derivative.
    double mean_grad_phi1(double phi1, const Vec& x2) const;

    PointFactors factors(const Vec& x) const;
    void corr_vector(const Vec& x, Vec& out) const;
    Vec solve_gram(const Vec& r) const { return llt_R_.solve(r); }

    // Cached vectors/matrices for the exact nested-moment engine:
    //   mean = h^T v_h + r^T v_c
    //   mean^2 + var = (variance + nugget) + h^T A_h h + r^T A_c r + r^T A_ch h
    const Vec& v_h() const { return beta_; }
    const Vec& v_c() const { return v_c_; }
    const Mat& A_h() const { return A_h_; }
    const Mat& A_c() const { return A_c_; }
    const Mat& A_ch() const { return A_ch_; }

    double gram_rcond() const { return rcond_; }
    long negative_variance_clamps() const { return clamp_count_->load(); }

    /// diag of the projected precision; 1/q_kk is the k-th LOO variance
    double loo_precision_diag(int k) const { return v_c_[k] * v_c_[k] - A_c_(k, k); }

private:
    friend KrigingModel uk_fit(Dataset, TrendBasis, KernelConfig);

    double clamp_variance(double v) const;

    Dataset data_;
    TrendBasis basis_;
    KernelConfig kernel_;

    Mat scaled_cols_;  // N x d, inputs scaled by inverse lengthscales
    Vec inv_lengthscales_;
    std::vector<PolyExpSum> deriv_factors_;  // per-dim sums, GaussianDerivative only

    Eigen::LLT<Mat> llt_R_;
    Eigen::LLT<Mat> llt_G_;
    Mat H_;
    Mat RinvH_;
    Vec beta_;
    Vec v_c_;
    Mat A_h_, A_c_, A_ch_;
    double rcond_ = 0.0;
    std::shared_ptr<std::atomic<long>> clamp_count_ = std::make_shared<std::atomic<long>>(0);
};

/// Sum over k of log N(y_k; loo mean, loo variance), from the closed-form
/// identities on the projected precision (no refits).
double loo_log_pred_prob(const KrigingModel& model);

/// Posterior as it would be after additionally observing x_new, without
/// knowing the output there (variances and covariances are output-free).
/// Exactly consistent with refitting on the augmented dataset.
class VarianceUpdater {
public:
    VarianceUpdater(const KrigingModel& model, Vec x_new);

    double variance(const Vec& x) const;
    double cov(const Vec& x, const Vec& y) const;

    /// Covariance between x and the hypothetical point.
    double cov_with_new(const Vec& x) const;

    /// Posterior variance at the hypothetical point before updating.
    double var_at_new() const { return var_new_; }

    /// True when x_new carries no information (already-observed point).
    bool is_identity() const { return identity_; }

private:
    const KrigingModel* model_;
    Vec x_new_;
    PointFactors fx_;
    double var_new_;
    bool identity_;
};

VarianceUpdater variance_after_obs(const KrigingModel& model, const Vec& x_new);

/// Hyperparameters, LOO score, conditioning diagnostics as a JSON string.
std::string model_summary_json(const KrigingModel& model);

}  // namespace chaingp

#endif
