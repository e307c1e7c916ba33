#pragma once

#include <string>
#include <vector>

#include "cointkit/johansen.hpp"

namespace cointkit {

/// Rank-restricted VECM
///   dX_t = c + alpha * beta' * Z1_t + sum Gamma_i dX_{t-i} + e_t
/// where Z1_t stacks the lagged levels and any restricted deterministic term.
struct VecmModel {
    int k = 0;
    int r = 0;
    int lags_diff = 0;
    DetCase det_case = DetCase::restricted_trend;
    std::vector<std::string> names;

    Eigen::MatrixXd alpha;                // k x r loadings
    Eigen::MatrixXd beta;                 // (k+d) x r cointegrating vectors
    std::vector<Eigen::MatrixXd> gamma;   // lags_diff matrices, k x k
    Eigen::VectorXd det_unrestricted;     // k, zero when the constant is restricted

    Eigen::MatrixXd residuals;            // t_effective x k
    Eigen::MatrixXd sigma;                // k x k, ML residual covariance

    Eigen::MatrixXd alpha_t;              // t-ratios, conditional on beta
    std::vector<Eigen::MatrixXd> gamma_t;
    Eigen::VectorXd det_t;
    Eigen::MatrixXd beta_se;              // set once normalized (r = 1), else NaN
    Eigen::MatrixXd beta_t;

    int t_effective = 0;
    int n_regressors = 0;                 // columns of the joint regression
    bool normalized = false;
    int normalized_on = -1;

    Eigen::MatrixXd regressors;           // t_effective x n_regressors, [EC, short-run]
    Eigen::MatrixXd levels_moment;        // R1'R1, for beta standard errors
    Eigen::VectorXd rss_per_equation;
    Eigen::VectorXd tss_per_equation;     // centered when an unrestricted constant is present

    int index_of(const std::string& name) const;
    /// Endogenous block of Pi = alpha * beta' (k x k).
    Eigen::MatrixXd pi() const { return alpha * beta.topRows(k).transpose(); }
};

/// Single-equation presentation of a rank-1 model, long-run coefficients
/// moved to the right-hand side (signs flipped from the cointegrating vector).
struct EcmEquationView {
    struct Term {
        std::string name;
        double coefficient = 0.0;
        double t_stat = 0.0;
    };

    std::string target;
    double loading = 0.0;
    double loading_t = 0.0;
    std::vector<Term> long_run;
    std::vector<Term> short_run;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_stat = 0.0;
};

struct AdjustmentSpeed {
    double loading = 0.0;
    double absorption_horizon = 0.0;  // 1 / |loading|
};

/// Estimate the VECM at cointegration rank r: beta from the first r Johansen
/// eigenvectors, then loadings, short-run matrices and the unrestricted
/// constant by equation-wise least squares given the error-correction term.
/// r = k estimates the unrestricted system.
VecmModel estimate_vecm(const Panel& panel, int lags_diff, int r, DetCase det_case);

/// Rescale each beta column so its `on` entry is one. Throws ZeroPivot when
/// an `on` entry vanishes.
Eigen::MatrixXd normalize_beta(const Eigen::MatrixXd& beta, int on);

/// Normalized copy of the model: beta columns scaled to one on the target
/// row and alpha rescaled inversely, leaving Pi unchanged. Computes beta
/// standard errors for r = 1 (beta treated as superconsistent).
VecmModel normalize(const VecmModel& model, int on);

/// Loading of the target variable under target normalization and the
/// absorption horizon 1/|loading|.
AdjustmentSpeed adjustment_speed(const VecmModel& model, const std::string& target);

/// Specification findings: loading outside (-1, 0), insignificant loading,
/// explosive companion roots.
std::vector<std::string> validate_ecm(const VecmModel& model, const std::string& target);

/// Table layout of the target equation (rank 1 only).
EcmEquationView equation_view(const VecmModel& model, const std::string& target);

}  // namespace cointkit
