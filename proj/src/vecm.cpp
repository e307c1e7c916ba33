#include "cointkit/vecm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <limits>

#include "cointkit/var_fevd.hpp"

namespace cointkit {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int require_index(const VecmModel& model, const std::string& name) {
    int idx = model.index_of(name);
    if (idx < 0)
        throw Error(errc::bad_spec, "variable " + name + " is not in the model");
    return idx;
}

}  // namespace

int VecmModel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

VecmModel estimate_vecm(const Panel& panel, int lags_diff, int r, DetCase det_case) {
    const int k = panel.k();
    if (r < 1 || r > k)
        throw Error(errc::rank_out_of_range,
                    "rank " + std::to_string(r) + " outside 1.." + std::to_string(k));

    detail::VecmDesign design = detail::build_vecm_design(panel, lags_diff, det_case);
    MomentMatrices moments = concentrate(panel, lags_diff, det_case);
    auto [values, vectors] = solve_eigen(moments);

    VecmModel model;
    model.k = k;
    model.r = r;
    model.lags_diff = lags_diff;
    model.det_case = det_case;
    model.names = panel.names();
    model.t_effective = design.t_effective;
    model.beta = vectors.leftCols(r);

    // Joint regression of dX on [beta'Z1, lagged differences, constant].
    const int t = design.t_effective;
    const int mw = static_cast<int>(design.unrestricted.cols());
    const int m = r + mw;
    model.n_regressors = m;
    if (t <= m)
        throw Error(errc::too_few_observations, "too few observations for the VECM regression");

    Eigen::MatrixXd x(t, m);
    x.leftCols(r) = design.levels * model.beta;
    x.rightCols(mw) = design.unrestricted;
    model.regressors = x;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < m)
        throw Error(errc::rank_deficient, "VECM regressors are rank deficient");
    Eigen::MatrixXd coef = qr.solve(design.diffs);  // m x k
    model.residuals = design.diffs - x * coef;
    model.sigma = model.residuals.transpose() * model.residuals / static_cast<double>(t);

    Eigen::MatrixXd rmat = qr.matrixR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
    Eigen::MatrixXd rinv = rmat.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(m, m));
    Eigen::MatrixXd xtx_inv =
        qr.colsPermutation() * (rinv * rinv.transpose()) * qr.colsPermutation().transpose();

    model.rss_per_equation.resize(k);
    model.tss_per_equation.resize(k);
    Eigen::MatrixXd t_stats(m, k);
    for (int e = 0; e < k; ++e) {
        double rss = model.residuals.col(e).squaredNorm();
        model.rss_per_equation[e] = rss;
        if (design.has_unrestricted_const) {
            model.tss_per_equation[e] =
                (design.diffs.col(e).array() - design.diffs.col(e).mean()).matrix().squaredNorm();
        } else {
            model.tss_per_equation[e] = design.diffs.col(e).squaredNorm();
        }
        double sigma2 = rss / static_cast<double>(t - m);
        for (int j = 0; j < m; ++j) {
            double se = std::sqrt(sigma2 * xtx_inv(j, j));
            t_stats(j, e) = se > 0.0 ? coef(j, e) / se : kNan;
        }
    }

    model.alpha = coef.topRows(r).transpose();
    model.alpha_t = t_stats.topRows(r).transpose();
    model.gamma.reserve(static_cast<std::size_t>(lags_diff));
    model.gamma_t.reserve(static_cast<std::size_t>(lags_diff));
    for (int lag = 1; lag <= lags_diff; ++lag) {
        model.gamma.push_back(coef.middleRows(r + (lag - 1) * k, k).transpose());
        model.gamma_t.push_back(t_stats.middleRows(r + (lag - 1) * k, k).transpose());
    }
    if (design.has_unrestricted_const) {
        model.det_unrestricted = coef.row(m - 1).transpose();
        model.det_t = t_stats.row(m - 1).transpose();
    } else {
        model.det_unrestricted = Eigen::VectorXd::Zero(k);
        model.det_t = Eigen::VectorXd::Constant(k, kNan);
    }

    model.levels_moment =
        moments.s11 * static_cast<double>(moments.t_effective);
    model.beta_se = Eigen::MatrixXd::Constant(model.beta.rows(), r, kNan);
    model.beta_t = Eigen::MatrixXd::Constant(model.beta.rows(), r, kNan);
    return model;
}

Eigen::MatrixXd normalize_beta(const Eigen::MatrixXd& beta, int on) {
    if (on < 0 || on >= beta.rows())
        throw Error(errc::bad_spec, "normalization index outside beta");
    Eigen::MatrixXd out = beta;
    for (int j = 0; j < beta.cols(); ++j) {
        double pivot = beta(on, j);
        if (std::fabs(pivot) < 1e-12 * beta.col(j).norm())
            throw Error(errc::zero_pivot,
                        "beta column " + std::to_string(j) + " has a vanishing pivot");
        out.col(j) /= pivot;
    }
    return out;
}

VecmModel normalize(const VecmModel& model, int on) {
    if (on < 0 || on >= model.k)
        throw Error(errc::bad_spec, "normalization index outside the endogenous block");

    VecmModel out = model;
    out.beta = normalize_beta(model.beta, on);
    for (int j = 0; j < model.r; ++j) out.alpha.col(j) = model.alpha.col(j) * model.beta(on, j);
    // t-ratios on alpha are invariant under the rescaling.
    out.normalized = true;
    out.normalized_on = on;

    // Conditional standard errors for beta, r = 1 only: beta treated as
    // superconsistent, var(vec beta_free) = (alpha' Sigma^-1 alpha)^-1 (x)
    // (R1_free' R1_free)^-1 evaluated at the normalized scale.
    out.beta_se.setConstant(kNan);
    out.beta_t.setConstant(kNan);
    if (model.r == 1) {
        Eigen::LLT<Eigen::MatrixXd> llt(out.sigma);
        if (llt.info() != Eigen::Success)
            throw Error(errc::not_positive_definite, "residual covariance is not positive definite");
        double a = (out.alpha.transpose() * llt.solve(out.alpha))(0, 0);
        if (a > 0.0) {
            const int kd = static_cast<int>(model.beta.rows());
            std::vector<int> free;
            for (int i = 0; i < kd; ++i)
                if (i != on) free.push_back(i);
            const int f = static_cast<int>(free.size());
            Eigen::MatrixXd mom(f, f);
            for (int i = 0; i < f; ++i)
                for (int j = 0; j < f; ++j)
                    mom(i, j) = model.levels_moment(free[static_cast<std::size_t>(i)],
                                                    free[static_cast<std::size_t>(j)]);
            Eigen::MatrixXd cov = mom.llt().solve(Eigen::MatrixXd::Identity(f, f)) / a;
            for (int i = 0; i < f; ++i) {
                int row = free[static_cast<std::size_t>(i)];
                double se = std::sqrt(std::max(cov(i, i), 0.0));
                out.beta_se(row, 0) = se;
                out.beta_t(row, 0) = se > 0.0 ? out.beta(row, 0) / se : kNan;
            }
            out.beta_se(on, 0) = 0.0;
        }
    }
    return out;
}

AdjustmentSpeed adjustment_speed(const VecmModel& model, const std::string& target) {
    if (model.r != 1)
        throw Error(errc::rank_out_of_range, "adjustment speed is defined for rank-1 models");
    int idx = require_index(model, target);
    VecmModel norm = model.normalized && model.normalized_on == idx ? model : normalize(model, idx);

    AdjustmentSpeed speed;
    speed.loading = norm.alpha(idx, 0);
    if (std::fabs(speed.loading) < 1e-12)
        throw Error(errc::zero_loading, "loading on " + target + " is zero");
    speed.absorption_horizon = 1.0 / std::fabs(speed.loading);
    return speed;
}

std::vector<std::string> validate_ecm(const VecmModel& model, const std::string& target) {
    int idx = require_index(model, target);
    VecmModel norm = model.normalized && model.normalized_on == idx ? model : normalize(model, idx);

    std::vector<std::string> findings;
    const double loading = norm.alpha(idx, 0);
    if (loading >= 0.0) {
        findings.push_back("loading sign invalid: expected a negative loading on " + target +
                           ", got " + std::to_string(loading));
    } else if (loading <= -1.0) {
        findings.push_back("loading outside (-1, 0): " + std::to_string(loading));
    }
    const double t = norm.alpha_t(idx, 0);
    if (std::isfinite(t) && std::fabs(t) < 1.96)
        findings.push_back("loading insignificant: |t| = " + std::to_string(std::fabs(t)) +
                           " < 1.96");

    for (const auto& root : companion_eigenvalues(vecm_to_var(model))) {
        double modulus = std::abs(root);
        if (modulus > 1.0 + 1e-6) {
            findings.push_back("explosive companion eigenvalue: modulus " + std::to_string(modulus));
            break;
        }
    }
    return findings;
}

EcmEquationView equation_view(const VecmModel& model, const std::string& target) {
    if (model.r != 1)
        throw Error(errc::rank_out_of_range, "equation view is defined for rank-1 models");
    int idx = require_index(model, target);
    VecmModel norm = model.normalized && model.normalized_on == idx ? model : normalize(model, idx);

    EcmEquationView view;
    view.target = target;
    view.loading = norm.alpha(idx, 0);
    view.loading_t = norm.alpha_t(idx, 0);

    // Long-run block: right-hand-side convention, signs flipped from beta.
    for (int v = 0; v < norm.k; ++v) {
        if (v == idx) continue;
        view.long_run.push_back({norm.names[static_cast<std::size_t>(v)], -norm.beta(v, 0),
                                 std::isfinite(norm.beta_t(v, 0)) ? -norm.beta_t(v, 0) : kNan});
    }
    if (norm.det_case == DetCase::restricted_trend)
        view.long_run.push_back({"TREND", -norm.beta(norm.k, 0),
                                 std::isfinite(norm.beta_t(norm.k, 0)) ? -norm.beta_t(norm.k, 0) : kNan});
    if (norm.det_case == DetCase::restricted_constant)
        view.long_run.push_back({"CONST", -norm.beta(norm.k, 0),
                                 std::isfinite(norm.beta_t(norm.k, 0)) ? -norm.beta_t(norm.k, 0) : kNan});

    for (int lag = 1; lag <= norm.lags_diff; ++lag) {
        const auto& g = norm.gamma[static_cast<std::size_t>(lag - 1)];
        const auto& gt = norm.gamma_t[static_cast<std::size_t>(lag - 1)];
        for (int v = 0; v < norm.k; ++v) {
            std::string name = "d(" + norm.names[static_cast<std::size_t>(v)] + ")(-" +
                               std::to_string(lag) + ")";
            view.short_run.push_back({name, g(idx, v), gt(idx, v)});
        }
    }
    if (norm.det_case != DetCase::restricted_constant)
        view.short_run.push_back({"C", norm.det_unrestricted[idx], norm.det_t[idx]});

    const double rss = norm.rss_per_equation[idx];
    const double tss = norm.tss_per_equation[idx];
    const int t = norm.t_effective;
    const int m = norm.n_regressors;
    const bool with_const = norm.det_case != DetCase::restricted_constant;
    view.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
    const int centered = with_const ? 1 : 0;
    view.adj_r_squared = 1.0 - (1.0 - view.r_squared) * static_cast<double>(t - centered) /
                                   static_cast<double>(t - m);
    const int f_df1 = m - centered;
    view.f_stat = (f_df1 > 0 && rss > 0.0)
                      ? ((tss - rss) / static_cast<double>(f_df1)) / (rss / static_cast<double>(t - m))
                      : kNan;
    return view;
}

}  // namespace cointkit
