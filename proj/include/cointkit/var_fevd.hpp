#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cointkit/vecm.hpp"

namespace cointkit {

/// Level-VAR representation X_t = c + d*t + sum A_i X_{t-i} + e_t.
struct LevelVar {
    int k = 0;
    int order = 0;                      // P = lags_diff + 1
    std::vector<Eigen::MatrixXd> a;     // P matrices, k x k
    Eigen::VectorXd intercept;
    Eigen::VectorXd trend;              // zero unless a restricted trend was folded in
    Eigen::MatrixXd sigma;
    std::vector<std::string> names;
};

struct FevdTable {
    std::string target;
    std::vector<std::string> ordering;
    std::vector<double> se;             // forecast standard error, horizons 1..H
    Eigen::MatrixXd shares;             // H x k percentages, columns follow `ordering`
    std::vector<std::string> warnings;
};

struct IrfResult {
    std::vector<std::string> ordering;
    // responses[h](i, m): response of the i-th ordered variable to the m-th
    // orthogonalized shock, h periods after impact.
    std::vector<Eigen::MatrixXd> responses;
};

/// Rearrange the VECM into its level-VAR form. For one lagged difference:
/// A1 = I + Pi + Gamma1, A2 = -Gamma1; restricted deterministics fold into
/// the intercept and trend vectors.
LevelVar vecm_to_var(const VecmModel& model);

/// Moving-average coefficients Psi_0..Psi_{H-1}: Psi_0 = I,
/// Psi_j = sum_{i=1..min(j,P)} A_i Psi_{j-i}.
std::vector<Eigen::MatrixXd> ma_coefficients(const LevelVar& var, int horizon);

/// Cholesky-ordered forecast-error variance decomposition over horizons
/// 1..H. Returns one table per variable, listed in `ordering` order; share of
/// source m in target i at horizon h is the squared orthogonalized MA weight
/// accumulated over j < h, as a percentage of the h-step forecast-error
/// variance.
std::vector<FevdTable> fevd(const LevelVar& var, int horizon, const std::vector<std::string>& ordering);

/// Orthogonalized impulse responses; horizon-0 responses equal the Cholesky
/// factor of the (ordered) innovation covariance.
IrfResult irf(const LevelVar& var, int horizon, const std::vector<std::string>& ordering);

/// Companion form of the autoregressive part (kP x kP).
Eigen::MatrixXd companion_matrix(const LevelVar& var);

std::vector<std::complex<double>> companion_eigenvalues(const LevelVar& var);

/// X_t recursion given shock rows and P initial rows; time index for the
/// trend term starts at `t0` for the first simulated row. Used for
/// cross-checking representations.
Eigen::MatrixXd simulate_var(const LevelVar& var, const Eigen::MatrixXd& shocks,
                             const Eigen::MatrixXd& initial, int t0 = 0);

}  // namespace cointkit
