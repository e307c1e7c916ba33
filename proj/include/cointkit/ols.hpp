#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cointkit/errors.hpp"

namespace cointkit {

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd residuals;
    double r_squared = 0.0;
    double adj_r_squared = 0.0;
    double f_stat = 0.0;      // NaN when not defined (e.g. intercept-only model)
    double sigma2 = 0.0;      // RSS / (n - k)
    double rss = 0.0;
    int n_obs = 0;
    int n_params = 0;
    bool has_intercept = false;
};

struct ChiSqTest {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::string test_name;
    std::vector<std::string> warnings;
};

/// Least squares via column-pivoted Householder QR. Throws TooFewObservations
/// when n <= k and RankDeficient when X loses column rank. R^2 is centered
/// when X contains a constant column, uncentered otherwise.
OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

/// Jarque-Bera normality test. Univariate (one column, df 2) or system mode:
/// per-equation statistics on Cholesky-orthogonalized residuals summed over
/// equations, df 2k.
ChiSqTest jarque_bera(const Eigen::MatrixXd& residuals, bool system);
ChiSqTest jarque_bera(const Eigen::VectorXd& residuals);

/// System serial-correlation LM test at lag order h: auxiliary regression of
/// the residuals on the original regressors plus h lagged residual blocks
/// (missing pre-sample lags set to zero); asymptotically chi-square with
/// df = h * k^2.
ChiSqTest breusch_godfrey(const Eigen::MatrixXd& residuals, const Eigen::MatrixXd& regressors, int lag_order);

/// White heteroskedasticity test: squared residuals regressed on levels,
/// squares and cross products of the non-constant regressors. Statistic is
/// n * R^2 of the auxiliary regression, df = auxiliary regressors excluding
/// the intercept. Collinear auxiliary columns are dropped with a warning.
ChiSqTest white_test(const Eigen::VectorXd& residuals, const Eigen::MatrixXd& regressors);

}  // namespace cointkit
