#include "cointkit/johansen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

namespace cointkit {

namespace {

// MacKinnon-Haug-Michelis (1999) 5% critical values, k - r = 1..6.
constexpr double kMaxCv[3][6] = {
    // restricted constant (case 2)
    {9.164546, 15.89210, 22.29962, 28.58808, 34.80587, 40.95680},
    // unrestricted constant (case 3)
    {3.841466, 14.26460, 21.13162, 27.58434, 33.87687, 40.07757},
    // restricted trend (case 4)
    {12.51798, 19.38704, 25.82321, 32.11832, 38.33101, 44.49720},
};

constexpr double kTraceCv[3][6] = {
    {9.164546, 20.26184, 35.19275, 54.07904, 76.97277, 103.8473},
    {3.841466, 15.49471, 29.79707, 47.85613, 69.81889, 95.75366},
    {12.51798, 25.87211, 42.91525, 63.87610, 88.80380, 117.7082},
};

int case_index(DetCase c) {
    switch (c) {
        case DetCase::restricted_constant: return 0;
        case DetCase::unrestricted_constant: return 1;
        case DetCase::restricted_trend: return 2;
    }
    return 2;
}

Eigen::MatrixXd residuals_on(const Eigen::MatrixXd& y, const Eigen::MatrixXd& x) {
    if (x.cols() == 0) return y;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < x.cols())
        throw Error(errc::rank_deficient, "short-run regressors are rank deficient");
    return y - x * qr.solve(y);
}

}  // namespace

const char* to_string(DetCase c) {
    switch (c) {
        case DetCase::restricted_constant: return "case2";
        case DetCase::unrestricted_constant: return "case3";
        case DetCase::restricted_trend: return "case4";
    }
    return "case4";
}

namespace detail {

VecmDesign build_vecm_design(const Panel& panel, int lags_diff, DetCase det_case) {
    const int k = panel.k();
    const int n = panel.length();
    const int p = lags_diff;
    if (p < 0) throw Error(errc::bad_spec, "lags_diff must be >= 0");
    if (k < 2) throw Error(errc::bad_spec, "the system needs at least two variables");

    const int d = restricted_terms(det_case);
    const int det_unres = det_case == DetCase::restricted_constant ? 0 : 1;
    if (n <= k * p + d + det_unres + 10)
        throw Error(errc::too_short, "panel too short for the error-correction design");

    VecmDesign design;
    design.k = k;
    design.lags_diff = p;
    design.t_effective = n - p - 1;
    design.has_unrestricted_const = det_unres == 1;

    const Eigen::MatrixXd x = panel.to_matrix();
    const int t0 = p + 1;
    const int rows = design.t_effective;

    design.diffs.resize(rows, k);
    design.unrestricted.resize(rows, k * p + det_unres);
    design.levels.resize(rows, k + d);

    for (int i = 0; i < rows; ++i) {
        const int t = t0 + i;
        design.diffs.row(i) = x.row(t) - x.row(t - 1);
        for (int lag = 1; lag <= p; ++lag)
            design.unrestricted.block(i, (lag - 1) * k, 1, k) = x.row(t - lag) - x.row(t - lag - 1);
        if (det_unres == 1) design.unrestricted(i, k * p) = 1.0;
        design.levels.block(i, 0, 1, k) = x.row(t - 1);
        if (det_case == DetCase::restricted_constant) design.levels(i, k) = 1.0;
        if (det_case == DetCase::restricted_trend) design.levels(i, k) = static_cast<double>(t);
    }
    return design;
}

}  // namespace detail

MomentMatrices concentrate(const Panel& panel, int lags_diff, DetCase det_case) {
    detail::VecmDesign design = detail::build_vecm_design(panel, lags_diff, det_case);

    Eigen::MatrixXd r0 = residuals_on(design.diffs, design.unrestricted);
    Eigen::MatrixXd r1 = residuals_on(design.levels, design.unrestricted);

    const double t = static_cast<double>(design.t_effective);
    MomentMatrices m;
    m.s00 = r0.transpose() * r0 / t;
    m.s01 = r0.transpose() * r1 / t;
    m.s10 = m.s01.transpose();
    m.s11 = r1.transpose() * r1 / t;
    m.t_effective = design.t_effective;
    return m;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> solve_eigen(const MomentMatrices& m) {
    const int k = static_cast<int>(m.s00.rows());
    const int kd = static_cast<int>(m.s11.rows());

    Eigen::LLT<Eigen::MatrixXd> llt11(m.s11);
    if (llt11.info() != Eigen::Success)
        throw Error(errc::not_positive_definite, "S11 is not positive definite");
    Eigen::LLT<Eigen::MatrixXd> llt00(m.s00);
    if (llt00.info() != Eigen::Success)
        throw Error(errc::not_positive_definite, "S00 is not positive definite");

    // G = S10 S00^-1 S01, then whiten with S11 = L L'.
    Eigen::MatrixXd g = m.s10 * llt00.solve(m.s01);
    Eigen::MatrixXd l = llt11.matrixL();
    Eigen::MatrixXd y = l.triangularView<Eigen::Lower>().solve(g);
    Eigen::MatrixXd whitened =
        l.triangularView<Eigen::Lower>().solve(y.transpose()).transpose();
    whitened = 0.5 * (whitened + whitened.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(whitened);
    if (solver.info() != Eigen::Success)
        throw Error(errc::not_positive_definite, "symmetric eigenvalue solver failed");

    // Ascending from Eigen; report the k largest in descending order.
    const int keep = std::min(k, kd);
    Eigen::VectorXd values(keep);
    Eigen::MatrixXd vectors(kd, keep);
    for (int i = 0; i < keep; ++i) {
        const int src = kd - 1 - i;
        double lambda = solver.eigenvalues()[src];
        if (lambda < 0.0 && lambda > -1e-12) lambda = 0.0;
        values[i] = lambda;
        Eigen::VectorXd v =
            l.transpose().triangularView<Eigen::Upper>().solve(solver.eigenvectors().col(src));
        // Deterministic sign: largest-magnitude entry positive.
        int arg_max = 0;
        v.cwiseAbs().maxCoeff(&arg_max);
        if (v[arg_max] < 0.0) v = -v;
        vectors.col(i) = v;
    }
    return {values, vectors};
}

std::pair<std::vector<double>, std::vector<double>> statistics(const std::vector<double>& eigenvalues, int t_effective) {
    if (t_effective <= 0) throw Error(errc::bad_spec, "T must be positive");
    const double t = static_cast<double>(t_effective);
    const std::size_t k = eigenvalues.size();
    std::vector<double> max_stats(k), trace_stats(k);
    for (std::size_t r = 0; r < k; ++r) {
        double lambda = eigenvalues[r];
        if (lambda < 0.0 || lambda >= 1.0)
            throw Error(errc::invalid_value, "eigenvalues must lie in [0, 1)");
        max_stats[r] = -t * std::log1p(-lambda);
    }
    double suffix = 0.0;
    for (std::size_t i = k; i-- > 0;) {
        suffix += max_stats[i];
        trace_stats[i] = suffix;
    }
    return {max_stats, trace_stats};
}

int select_rank(const std::vector<double>& stats, const std::vector<double>& critical_values) {
    if (stats.size() != critical_values.size())
        throw Error(errc::bad_spec, "statistics and critical values must have equal length");
    for (std::size_t r = 0; r < stats.size(); ++r)
        if (stats[r] <= critical_values[r]) return static_cast<int>(r);
    return static_cast<int>(stats.size());
}

double johansen_critical_value_5pct(DetCase det_case, int k_minus_r, bool trace) {
    if (k_minus_r < 1 || k_minus_r > 6)
        throw Error(errc::bad_spec, "critical values are embedded for k - r in 1..6");
    const int ci = case_index(det_case);
    return trace ? kTraceCv[ci][k_minus_r - 1] : kMaxCv[ci][k_minus_r - 1];
}

CointegrationResult johansen_test(const Panel& panel, int lags_diff, DetCase det_case) {
    MomentMatrices m = concentrate(panel, lags_diff, det_case);
    auto [values, vectors] = solve_eigen(m);

    CointegrationResult result;
    result.eigenvalues.assign(values.data(), values.data() + values.size());
    result.eigenvectors = vectors;
    result.t_effective = m.t_effective;
    result.det_case = det_case;
    result.series_names = panel.names();
    result.lags_diff = lags_diff;
    result.sample_first_year = panel.start_year() + lags_diff + 1;
    result.sample_last_year = panel.end_year();

    auto [max_stats, trace_stats] = statistics(result.eigenvalues, m.t_effective);
    result.max_stats = std::move(max_stats);
    result.trace_stats = std::move(trace_stats);

    const int k = panel.k();
    result.critical_values_max_5pct.resize(static_cast<std::size_t>(k));
    result.critical_values_trace_5pct.resize(static_cast<std::size_t>(k));
    for (int r = 0; r < k; ++r) {
        result.critical_values_max_5pct[static_cast<std::size_t>(r)] =
            johansen_critical_value_5pct(det_case, k - r, false);
        result.critical_values_trace_5pct[static_cast<std::size_t>(r)] =
            johansen_critical_value_5pct(det_case, k - r, true);
    }
    result.selected_rank_max = select_rank(result.max_stats, result.critical_values_max_5pct);
    result.selected_rank_trace = select_rank(result.trace_stats, result.critical_values_trace_5pct);
    return result;
}

}  // namespace cointkit
