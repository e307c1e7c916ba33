#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "cointkit/series.hpp"

namespace cointkit {

/// Placement of deterministic terms, cases 2-4 of the Johansen taxonomy.
/// restricted_constant: constant inside the cointegration space only.
/// unrestricted_constant: constant in the difference equation.
/// restricted_trend: unrestricted constant plus a trend restricted to the
/// cointegration space.
enum class DetCase { restricted_constant, unrestricted_constant, restricted_trend };

const char* to_string(DetCase c);

/// Number of deterministic columns appended to the lagged level vector.
inline int restricted_terms(DetCase c) { return c == DetCase::unrestricted_constant ? 0 : 1; }

struct MomentMatrices {
    Eigen::MatrixXd s00;  // k x k
    Eigen::MatrixXd s01;  // k x (k+d)
    Eigen::MatrixXd s10;  // (k+d) x k
    Eigen::MatrixXd s11;  // (k+d) x (k+d)
    int t_effective = 0;
};

struct CointegrationResult {
    std::vector<double> eigenvalues;          // k values, strictly decreasing
    Eigen::MatrixXd eigenvectors;             // (k+d) x k candidate beta columns, v'S11v = 1
    std::vector<double> max_stats;            // indexed by hypothesized rank r
    std::vector<double> trace_stats;
    std::vector<double> critical_values_max_5pct;
    std::vector<double> critical_values_trace_5pct;
    int selected_rank_max = 0;
    int selected_rank_trace = 0;
    int t_effective = 0;
    DetCase det_case = DetCase::restricted_trend;
    std::vector<std::string> series_names;
    int sample_first_year = 0;  // adjusted sample
    int sample_last_year = 0;
    int lags_diff = 0;
};

namespace detail {

/// Data matrices of the error-correction regression: dependent first
/// differences, unrestricted regressors (lagged differences plus an
/// unrestricted constant when the case calls for one) and the case-augmented
/// lagged level block.
struct VecmDesign {
    Eigen::MatrixXd diffs;        // T_eff x k, dX_t
    Eigen::MatrixXd unrestricted; // T_eff x (k*p + has_const)
    Eigen::MatrixXd levels;       // T_eff x (k+d), [X_{t-1}; restricted det]
    int t_effective = 0;
    int k = 0;
    int lags_diff = 0;
    bool has_unrestricted_const = false;
};

VecmDesign build_vecm_design(const Panel& panel, int lags_diff, DetCase det_case);

}  // namespace detail

/// Concentration regressions of the Johansen procedure: residuals of the
/// first differences and of the (case-augmented) lagged levels on the
/// short-run regressors, summarized as product-moment matrices
/// S_ij = T^-1 R_i' R_j.
MomentMatrices concentrate(const Panel& panel, int lags_diff, DetCase det_case);

/// Eigenvalues of S11^-1 S10 S00^-1 S01 via symmetric reduction: with
/// S11 = L L', solve the ordinary symmetric problem on L^-1 S10 S00^-1 S01 L^-T
/// and map the eigenvectors back through L^-T, which leaves them normalized
/// as v' S11 v = 1. Sorted by descending eigenvalue.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> solve_eigen(const MomentMatrices& m);

/// Max-eigenvalue and trace statistics:
///   max[r]   = -T ln(1 - lambda_r)
///   trace[r] = -T sum_{i >= r} ln(1 - lambda_i)
std::pair<std::vector<double>, std::vector<double>> statistics(const std::vector<double>& eigenvalues, int t_effective);

/// Sequential bottom-up rank selection: the smallest r with
/// stats[r] <= cv[r]; rejections beyond the first non-rejection are ignored.
int select_rank(const std::vector<double>& stats, const std::vector<double>& critical_values);

/// Embedded MacKinnon-Haug-Michelis (1999) 5% critical value for the given
/// case and number of remaining relations k - r (1..6).
double johansen_critical_value_5pct(DetCase det_case, int k_minus_r, bool trace);

/// Full cointegration rank test: concentrate -> solve_eigen -> statistics ->
/// select_rank against the embedded 5% critical values.
CointegrationResult johansen_test(const Panel& panel, int lags_diff, DetCase det_case);

}  // namespace cointkit
