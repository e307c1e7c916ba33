#include "cointkit/ols.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "cointkit/distributions.hpp"

namespace cointkit {

namespace {

bool has_constant_column(const Eigen::MatrixXd& X, int* index = nullptr) {
    for (int j = 0; j < X.cols(); ++j) {
        double first = X(0, j);
        if (first == 0.0) continue;
        if ((X.col(j).array() == first).all()) {
            if (index) *index = j;
            return true;
        }
    }
    return false;
}

// Multivariate residuals of Y on X. Empty X returns Y unchanged.
Eigen::MatrixXd project_out(const Eigen::MatrixXd& Y, const Eigen::MatrixXd& X) {
    if (X.cols() == 0) return Y;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols())
        throw Error(errc::rank_deficient, "projection regressors are rank deficient");
    return Y - X * qr.solve(Y);
}

struct Moments {
    double skewness = 0.0;
    double excess_kurtosis = 0.0;
};

Moments sample_moments(const Eigen::VectorXd& x) {
    const double n = static_cast<double>(x.size());
    const double mean = x.mean();
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        double d = x[i] - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    Moments m;
    if (m2 > 0.0) {
        m.skewness = m3 / std::pow(m2, 1.5);
        m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
    }
    return m;
}

double jb_statistic(const Eigen::VectorXd& x) {
    Moments m = sample_moments(x);
    const double n = static_cast<double>(x.size());
    return n / 6.0 * (m.skewness * m.skewness + 0.25 * m.excess_kurtosis * m.excess_kurtosis);
}

}  // namespace

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const int n = static_cast<int>(X.rows());
    const int k = static_cast<int>(X.cols());
    if (y.size() != n)
        throw Error(errc::bad_spec, "design matrix and response length differ");
    if (k < 1) throw Error(errc::bad_spec, "design matrix has no columns");
    if (n <= k)
        throw Error(errc::too_few_observations,
                    "need more observations than parameters (n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k)
        throw Error(errc::rank_deficient, "design matrix is rank deficient");

    OlsFit fit;
    fit.n_obs = n;
    fit.n_params = k;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - X * fit.coefficients;
    fit.rss = fit.residuals.squaredNorm();
    fit.sigma2 = fit.rss / static_cast<double>(n - k);

    // (X'X)^-1 from the R factor: X P = Q R  =>  (X'X)^-1 = P R^-1 R^-T P'.
    Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    Eigen::MatrixXd rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd xtx_inv = qr.colsPermutation() * (rinv * rinv.transpose()) *
                              qr.colsPermutation().transpose();

    fit.std_errors.resize(k);
    fit.t_stats.resize(k);
    for (int j = 0; j < k; ++j) {
        double v = fit.sigma2 * xtx_inv(j, j);
        fit.std_errors[j] = v > 0.0 ? std::sqrt(v) : 0.0;
        fit.t_stats[j] = fit.std_errors[j] > 0.0 ? fit.coefficients[j] / fit.std_errors[j]
                                                 : std::numeric_limits<double>::quiet_NaN();
    }

    fit.has_intercept = has_constant_column(X);
    double tss;
    if (fit.has_intercept) {
        tss = (y.array() - y.mean()).matrix().squaredNorm();
    } else {
        tss = y.squaredNorm();
    }
    fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;

    const double dn = n;
    if (fit.has_intercept) {
        fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * (dn - 1.0) / static_cast<double>(n - k);
        fit.f_stat = (k > 1 && fit.rss > 0.0)
                         ? ((tss - fit.rss) / static_cast<double>(k - 1)) /
                               (fit.rss / static_cast<double>(n - k))
                         : std::numeric_limits<double>::quiet_NaN();
    } else {
        fit.adj_r_squared = 1.0 - (1.0 - fit.r_squared) * dn / static_cast<double>(n - k);
        fit.f_stat = fit.rss > 0.0 ? ((tss - fit.rss) / static_cast<double>(k)) /
                                         (fit.rss / static_cast<double>(n - k))
                                   : std::numeric_limits<double>::quiet_NaN();
    }
    return fit;
}

ChiSqTest jarque_bera(const Eigen::VectorXd& residuals) {
    Eigen::MatrixXd m(residuals.size(), 1);
    m.col(0) = residuals;
    return jarque_bera(m, false);
}

ChiSqTest jarque_bera(const Eigen::MatrixXd& residuals, bool system) {
    const int n = static_cast<int>(residuals.rows());
    const int k = static_cast<int>(residuals.cols());
    if (!system && k != 1)
        throw Error(errc::bad_spec, "univariate Jarque-Bera expects a single residual column");
    if (n < 8)
        throw Error(errc::too_few_observations, "Jarque-Bera needs at least 8 observations");

    ChiSqTest test;
    if (!system) {
        test.statistic = jb_statistic(residuals.col(0));
        test.df = 2;
        test.test_name = "Jarque-Bera";
    } else {
        // Cholesky orthogonalization of the centered residuals (Lutkepohl).
        Eigen::MatrixXd centered = residuals.rowwise() - residuals.colwise().mean();
        Eigen::MatrixXd sigma = centered.transpose() * centered / static_cast<double>(n);
        Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success)
            throw Error(errc::not_positive_definite, "residual covariance is not positive definite");
        Eigen::MatrixXd ortho =
            llt.matrixL().solve(centered.transpose()).transpose();
        test.statistic = 0.0;
        for (int j = 0; j < k; ++j) test.statistic += jb_statistic(ortho.col(j));
        test.df = 2 * k;
        test.test_name = "Jarque-Bera (system)";
    }
    test.p_value = chi_sq_survival(test.statistic, test.df);
    return test;
}

ChiSqTest breusch_godfrey(const Eigen::MatrixXd& residuals, const Eigen::MatrixXd& regressors, int lag_order) {
    const int n = static_cast<int>(residuals.rows());
    const int k = static_cast<int>(residuals.cols());
    const int m = static_cast<int>(regressors.cols());
    if (lag_order < 1) throw Error(errc::bad_spec, "lag order must be >= 1");
    if (regressors.rows() != n)
        throw Error(errc::bad_spec, "residuals and regressors have different lengths");
    if (n <= m + lag_order * k)
        throw Error(errc::too_few_observations, "too few observations for the LM auxiliary regression");

    // Augmented regressors: originals plus h lagged residual blocks, missing
    // pre-sample lags filled with zeros.
    Eigen::MatrixXd aug(n, m + lag_order * k);
    aug.leftCols(m) = regressors;
    aug.rightCols(lag_order * k).setZero();
    for (int lag = 1; lag <= lag_order; ++lag) {
        int col0 = m + (lag - 1) * k;
        for (int t = lag; t < n; ++t) aug.block(t, col0, 1, k) = residuals.row(t - lag);
    }

    Eigen::MatrixXd aux_residuals = project_out(residuals, aug);
    Eigen::MatrixXd sigma_u = residuals.transpose() * residuals / static_cast<double>(n);
    Eigen::MatrixXd sigma_e = aux_residuals.transpose() * aux_residuals / static_cast<double>(n);

    Eigen::LLT<Eigen::MatrixXd> llt(sigma_u);
    if (llt.info() != Eigen::Success)
        throw Error(errc::not_positive_definite, "residual covariance is not positive definite");

    ChiSqTest test;
    test.statistic = static_cast<double>(n) * (static_cast<double>(k) - llt.solve(sigma_e).trace());
    if (test.statistic < 0.0) test.statistic = 0.0;
    test.df = lag_order * k * k;
    test.p_value = chi_sq_survival(test.statistic, test.df);
    test.test_name = "Breusch-Godfrey LM (system)";
    return test;
}

ChiSqTest white_test(const Eigen::VectorXd& residuals, const Eigen::MatrixXd& regressors) {
    const int n = static_cast<int>(residuals.size());
    if (regressors.rows() != n)
        throw Error(errc::bad_spec, "residuals and regressors have different lengths");

    // Auxiliary terms: levels, squares and cross products of every
    // non-constant regressor.
    std::vector<int> vars;
    for (int j = 0; j < regressors.cols(); ++j) {
        double first = regressors(0, j);
        if (first != 0.0 && (regressors.col(j).array() == first).all()) continue;
        vars.push_back(j);
    }
    const int v = static_cast<int>(vars.size());
    if (v == 0) throw Error(errc::bad_spec, "White test needs at least one non-constant regressor");

    const int n_terms = 2 * v + v * (v - 1) / 2;
    Eigen::MatrixXd terms(n, n_terms);
    int col = 0;
    for (int a = 0; a < v; ++a) terms.col(col++) = regressors.col(vars[static_cast<std::size_t>(a)]);
    for (int a = 0; a < v; ++a)
        terms.col(col++) = regressors.col(vars[static_cast<std::size_t>(a)]).array().square();
    for (int a = 0; a < v; ++a)
        for (int b = a + 1; b < v; ++b)
            terms.col(col++) = regressors.col(vars[static_cast<std::size_t>(a)]).array() *
                               regressors.col(vars[static_cast<std::size_t>(b)]).array();

    ChiSqTest test;
    test.test_name = "White heteroskedasticity";

    // Find an independent subset among the demeaned terms; anything collinear
    // (with the intercept or with other terms) is dropped with a warning.
    Eigen::MatrixXd demeaned = terms.rowwise() - terms.colwise().mean();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(demeaned);
    int rank = static_cast<int>(qr.rank());
    if (rank < 1) throw Error(errc::rank_deficient, "White auxiliary regression is degenerate");
    if (rank < n_terms)
        test.warnings.push_back("dropped " + std::to_string(n_terms - rank) +
                                " collinear auxiliary column(s)");

    std::vector<int> picked;
    auto perm = qr.colsPermutation().indices();
    for (int i = 0; i < rank; ++i) picked.push_back(perm[i]);
    std::sort(picked.begin(), picked.end());

    Eigen::MatrixXd aux(n, rank + 1);
    aux.col(0).setOnes();
    for (int i = 0; i < rank; ++i) aux.col(i + 1) = terms.col(picked[static_cast<std::size_t>(i)]);

    if (n <= aux.cols())
        throw Error(errc::too_few_observations, "too few observations for the White auxiliary regression");

    OlsFit fit = ols_fit(aux, residuals.array().square().matrix());
    test.statistic = static_cast<double>(n) * fit.r_squared;
    test.df = rank;
    test.p_value = chi_sq_survival(test.statistic, test.df);
    return test;
}

}  // namespace cointkit
