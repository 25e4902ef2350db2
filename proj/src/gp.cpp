// SPDX-License-Identifier: Apache-2.0
#include "chaingp/gp.hpp"

#include "chaingp/simd.hpp"

#include <json.hpp>

#include <cmath>
#include <string>

namespace chaingp {

namespace {

bool row_bitwise_equal(const Mat& rows, int i, const Vec& x) {
    for (Eigen::Index j = 0; j < x.size(); ++j)
        if (!bitwise_equal(rows(i, j), x[j])) return false;
    return true;
}

}  // namespace

void KrigingModel::corr_vector(const Vec& x, Vec& out) const {
    const int n = n_obs();
    const int d = input_dim();
    out.resize(n);
    switch (kernel_.family) {
        case KernelFamily::Gaussian: {
            out.setZero();
            for (int j = 0; j < d; ++j)
                simd::sq_diff_accum(out.data(), scaled_cols_.col(j).data(),
                                    x[j] * inv_lengthscales_[j], n);
            simd::gaussian_corr_from_sq(out.data(), out.data(), n, kernel_.variance);
            break;
        }
        case KernelFamily::Matern52: {
            out.setConstant(kernel_.variance);
            for (int j = 0; j < d; ++j)
                simd::matern52_factor_mul(out.data(), scaled_cols_.col(j).data(),
                                          x[j] * inv_lengthscales_[j], n);
            break;
        }
        case KernelFamily::GaussianDerivative: {
            for (int i = 0; i < n; ++i) {
                double v = kernel_.variance;
                for (int j = 0; j < d; ++j)
                    v *= deriv_factors_[j].eval(x[j] - data_.inputs(i, j));
                out[i] = v;
            }
            break;
        }
    }
    if (kernel_.nugget > 0.0) {
        for (int i = 0; i < n; ++i)
            if (row_bitwise_equal(data_.inputs, i, x)) out[i] += kernel_.nugget;
    }
}

KrigingModel uk_fit(Dataset data, TrendBasis basis, KernelConfig kernel) {
    kernel.validate();
    if (basis.size() == 0) throw DimensionError("uk_fit: empty trend basis");
    data.validate(basis.size());
    if (kernel.dim() != data.dim())
        throw DimensionError("uk_fit: kernel dimension " + std::to_string(kernel.dim()) +
                             " does not match data dimension " + std::to_string(data.dim()));

    const int n = data.size();
    const int m = basis.size();

    KrigingModel model;
    model.data_ = std::move(data);
    model.basis_ = std::move(basis);
    model.kernel_ = std::move(kernel);

    model.inv_lengthscales_ = model.kernel_.lengthscales.cwiseInverse();
    model.scaled_cols_ = model.data_.inputs * model.inv_lengthscales_.asDiagonal();
    if (model.kernel_.family == KernelFamily::GaussianDerivative) {
        model.deriv_factors_.reserve(model.input_dim());
        for (int j = 0; j < model.input_dim(); ++j)
            model.deriv_factors_.push_back(kernel_as_poly_exp(model.kernel_, j));
    }

    Mat H(n, m);
    for (int i = 0; i < n; ++i) {
        const Vec xi = model.data_.inputs.row(i);
        for (int k = 0; k < m; ++k) H(i, k) = model.basis_.fns[k].value(xi);
    }
    if (!H.allFinite()) throw NumericError("uk_fit: trend basis produced non-finite values");
    {
        Eigen::ColPivHouseholderQR<Mat> qr(H);
        qr.setThreshold(1e-10);
        if (qr.rank() < m) {
            const auto perm = qr.colsPermutation().indices();
            throw NumericError("uk_fit: trend design matrix is rank-deficient; basis '" +
                               model.basis_.fns[perm[qr.rank()]].name +
                               "' is linearly dependent on the others");
        }
    }

    Mat R(n, n);
    Vec row;
    for (int i = 0; i < n; ++i) {
        model.corr_vector(model.data_.inputs.row(i), row);
        R.col(i) = row;
    }

    model.llt_R_.compute(R);
    if (model.llt_R_.info() != Eigen::Success)
        throw NumericError(
            "uk_fit: Gram matrix factorization failed; increase the nugget");
    model.rcond_ = model.llt_R_.rcond();

    const Mat RinvH = model.llt_R_.solve(H);
    const Vec Rinvy = model.llt_R_.solve(model.data_.outputs);
    const Mat G = H.transpose() * RinvH;
    model.llt_G_.compute(G);
    if (model.llt_G_.info() != Eigen::Success)
        throw NumericError("uk_fit: normal-equations matrix not positive definite; "
                           "check the trend basis conditioning");

    model.H_ = H;
    model.RinvH_ = RinvH;
    model.beta_ = model.llt_G_.solve(H.transpose() * Rinvy);
    model.v_c_ = Rinvy - RinvH * model.beta_;

    const Mat Ginv = model.llt_G_.solve(Mat::Identity(m, m));
    const Mat Rinv = model.llt_R_.solve(Mat::Identity(n, n));
    const Mat RinvH_Ginv = RinvH * Ginv;
    model.A_h_ = model.beta_ * model.beta_.transpose() + Ginv;
    model.A_c_ = model.v_c_ * model.v_c_.transpose() - Rinv + RinvH_Ginv * RinvH.transpose();
    model.A_ch_ = 2.0 * (model.v_c_ * model.beta_.transpose() - RinvH_Ginv);
    return model;
}

PointFactors KrigingModel::factors(const Vec& x) const {
    if (x.size() != input_dim()) throw DimensionError("KrigingModel: point dimension mismatch");
    require_finite(x, "KrigingModel");
    PointFactors f;
    corr_vector(x, f.r);
    f.alpha = llt_R_.solve(f.r);
    f.h = basis_.eval(x);
    f.u = f.h - RinvH_.transpose() * f.r;
    f.w = llt_G_.solve(f.u);
    f.kxx = kernel_.variance + kernel_.nugget;
    return f;
}

double KrigingModel::clamp_variance(double v) const {
    if (v >= 0.0) return v;
    if (v < -1e-8 * kernel_.variance) clamp_count_->fetch_add(1);
    return 0.0;
}

double KrigingModel::mean(const Vec& x) const {
    if (x.size() != input_dim()) throw DimensionError("KrigingModel: point dimension mismatch");
    require_finite(x, "KrigingModel");
    Vec r;
    corr_vector(x, r);
    const Vec h = basis_.eval(x);
    return simd::dot(h.data(), beta_.data(), h.size()) +
           simd::dot(r.data(), v_c_.data(), r.size());
}

std::pair<double, double> KrigingModel::predict(const Vec& x) const {
    const PointFactors f = factors(x);
    const double mean = simd::dot(f.h.data(), beta_.data(), f.h.size()) +
                        simd::dot(f.r.data(), v_c_.data(), f.r.size());
    const double var = f.kxx - simd::dot(f.r.data(), f.alpha.data(), f.r.size()) +
                       simd::dot(f.u.data(), f.w.data(), f.u.size());
    return {mean, clamp_variance(var)};
}

double KrigingModel::variance(const Vec& x) const { return predict(x).second; }

double KrigingModel::cov(const Vec& x, const Vec& y) const {
    if (bitwise_equal(x, y)) return variance(x);
    const PointFactors fx = factors(x);
    Vec ry;
    corr_vector(y, ry);
    const Vec hy = basis_.eval(y);
    const Vec uy = hy - RinvH_.transpose() * ry;
    return kernel_eval(kernel_, x, y) - simd::dot(fx.alpha.data(), ry.data(), ry.size()) +
           simd::dot(fx.w.data(), uy.data(), uy.size());
}

double KrigingModel::mean_grad_phi1(double phi1, const Vec& x2) const {
    Vec z(1 + x2.size());
    z[0] = phi1;
    z.tail(x2.size()) = x2;
    if (z.size() != input_dim())
        throw DimensionError("mean_grad_phi1: point dimension mismatch");
    require_finite(z, "mean_grad_phi1");

    double g = 0.0;
    for (int k = 0; k < basis_.size(); ++k) {
        const auto& f = basis_.fns[k];
        if (!f.dphi1)
            throw NumericError("mean_grad_phi1: basis '" + f.name +
                               "' has no phi1 derivative");
        g += beta_[k] * f.dphi1(z);
    }
    // kernel part: product rule over tensor factors, derivative in coord 0
    const int n = n_obs();
    const int d = input_dim();
    for (int i = 0; i < n; ++i) {
        double v = kernel_.variance * kernel_factor_deriv(kernel_, 0, z[0] - data_.inputs(i, 0));
        for (int j = 1; j < d; ++j)
            v *= kernel_factor(kernel_, j, z[j] - data_.inputs(i, j));
        g += v_c_[i] * v;
    }
    return g;
}

double loo_log_pred_prob(const KrigingModel& model) {
    const int n = model.n_obs();
    if (n < 2) throw DimensionError("loo_log_pred_prob: at least 2 observations required");
    constexpr double log2pi = 1.83787706640934548356;
    double score = 0.0;
    for (int k = 0; k < n; ++k) {
        const double qkk = model.loo_precision_diag(k);
        if (!(qkk > 0.0))
            throw NumericError("loo_log_pred_prob: non-positive LOO variance at row " +
                               std::to_string(k) + "; increase the nugget");
        const double resid = model.v_c()[k] / qkk;  // y_k - loo mean
        score += -0.5 * (log2pi - std::log(qkk) + resid * resid * qkk);
    }
    return score;
}

VarianceUpdater::VarianceUpdater(const KrigingModel& model, Vec x_new)
    : model_(&model), x_new_(std::move(x_new)) {
    fx_ = model.factors(x_new_);
    var_new_ = model.variance(x_new_);
    identity_ = var_new_ <= 1e-12 * model.kernel().variance;
    if (!identity_) {
        // conditioning on itself must leave nugget-level variance at most
        const double at_new = variance(x_new_);
        const double tol =
            std::max(model.kernel().nugget, 1e-9 * model.kernel().variance) + 1e-9 * var_new_;
        if (std::abs(at_new) > tol)
            throw NumericError("variance_after_obs: update inconsistent at the new point");
    }
}

double VarianceUpdater::cov_with_new(const Vec& x) const {
    if (bitwise_equal(x, x_new_)) return var_new_;
    const PointFactors f = model_->factors(x);
    return kernel_eval(model_->kernel(), x, x_new_) -
           simd::dot(f.r.data(), fx_.alpha.data(), f.r.size()) +
           simd::dot(f.u.data(), fx_.w.data(), f.u.size());
}

double VarianceUpdater::variance(const Vec& x) const {
    const double base = model_->variance(x);
    if (identity_) return base;
    const double c = cov_with_new(x);
    const double v = base - c * c / var_new_;
    return v < 0.0 ? 0.0 : v;
}

double VarianceUpdater::cov(const Vec& x, const Vec& y) const {
    const double base = model_->cov(x, y);
    if (identity_) return base;
    return base - cov_with_new(x) * cov_with_new(y) / var_new_;
}

VarianceUpdater variance_after_obs(const KrigingModel& model, const Vec& x_new) {
    return VarianceUpdater(model, x_new);
}

std::string model_summary_json(const KrigingModel& model) {
    nlohmann::ordered_json j;
    j["kernel"]["family"] = kernel_family_name(model.kernel().family);
    j["kernel"]["lengthscales"] =
        std::vector<double>(model.kernel().lengthscales.begin(),
                            model.kernel().lengthscales.end());
    j["kernel"]["variance"] = model.kernel().variance;
    j["kernel"]["nugget"] = model.kernel().nugget;
    if (!model.kernel().derivative_orders.empty())
        j["kernel"]["derivative_orders"] = model.kernel().derivative_orders;
    std::vector<std::string> names;
    for (const auto& f : model.basis().fns) names.push_back(f.name);
    j["trend_basis"] = names;
    j["n_obs"] = model.n_obs();
    j["loo_log_pred_prob"] = loo_log_pred_prob(model);
    j["gram_rcond"] = model.gram_rcond();
    j["negative_variance_clamps"] = model.negative_variance_clamps();
    return j.dump(2);
}

}  // namespace chaingp
