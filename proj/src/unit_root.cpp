#include "cointkit/unit_root.hpp"

#include <cmath>
#include <limits>

#include "cointkit/ols.hpp"

namespace cointkit {

namespace {

// MacKinnon (1991) response-surface coefficients for the ADF t-statistic,
// single series: cv(T) = b_inf + b1/T + b2/T^2.
struct ResponseSurface {
    double b_inf, b1, b2;
};

ResponseSurface surface(Deterministic det, double level) {
    static const ResponseSurface none_[3] = {
        {-2.5658, -1.960, -10.04},  // 1%
        {-1.9393, -0.398, 0.0},     // 5%
        {-1.6156, -0.181, 0.0},     // 10%
    };
    static const ResponseSurface const_[3] = {
        {-3.4336, -5.999, -29.25},
        {-2.8621, -2.738, -8.36},
        {-2.5671, -1.438, -4.48},
    };
    static const ResponseSurface trend_[3] = {
        {-3.9638, -8.353, -47.44},
        {-3.4126, -4.039, -17.83},
        {-3.1279, -2.418, -7.58},
    };

    int idx;
    if (level == 0.01) idx = 0;
    else if (level == 0.05) idx = 1;
    else if (level == 0.10) idx = 2;
    else throw Error(errc::bad_spec, "ADF critical values are tabulated at 1%, 5% and 10% only");

    switch (det) {
        case Deterministic::none: return none_[idx];
        case Deterministic::constant: return const_[idx];
        case Deterministic::constant_trend: return trend_[idx];
    }
    throw Error(errc::bad_spec, "unknown deterministic case");
}

int deterministic_terms(Deterministic det) {
    switch (det) {
        case Deterministic::none: return 0;
        case Deterministic::constant: return 1;
        case Deterministic::constant_trend: return 2;
    }
    return 0;
}

struct AdfRegression {
    double t_rho = 0.0;
    double rss = 0.0;
    int n_obs = 0;
    int n_params = 0;
};

// Fit the ADF regression with q augmentation lags on observations
// t = first_t .. n-1 of the original series (first_t >= q + 1).
AdfRegression fit_adf(const std::vector<double>& y, int q, int first_t, Deterministic det) {
    const int n = static_cast<int>(y.size());
    const int rows = n - first_t;
    const int cols = 1 + q + deterministic_terms(det);
    if (rows <= cols)
        throw Error(errc::too_few_observations, "ADF regression has more parameters than observations");

    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd dy(rows);
    for (int i = 0; i < rows; ++i) {
        int t = first_t + i;
        dy[i] = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
        int c = 0;
        x(i, c++) = y[static_cast<std::size_t>(t - 1)];
        for (int lag = 1; lag <= q; ++lag)
            x(i, c++) = y[static_cast<std::size_t>(t - lag)] - y[static_cast<std::size_t>(t - lag - 1)];
        if (det != Deterministic::none) x(i, c++) = 1.0;
        if (det == Deterministic::constant_trend) x(i, c++) = static_cast<double>(t);
    }

    OlsFit fit = ols_fit(x, dy);
    AdfRegression reg;
    reg.t_rho = fit.t_stats[0];
    reg.rss = fit.rss;
    reg.n_obs = rows;
    reg.n_params = cols;
    return reg;
}

double information_criterion(const AdfRegression& reg, LagCriterion crit) {
    const double t = static_cast<double>(reg.n_obs);
    const double m = static_cast<double>(reg.n_params);
    double sigma2 = reg.rss / t;
    if (sigma2 <= 0.0) sigma2 = std::numeric_limits<double>::min();
    double penalty = crit == LagCriterion::aic ? 2.0 * m / t : m * std::log(t) / t;
    return std::log(sigma2) + penalty;
}

}  // namespace

double AdfResult::critical_value(double level) const {
    auto it = critical_values.find(level);
    if (it == critical_values.end())
        throw Error(errc::bad_spec, "no critical value stored for the requested level");
    return it->second;
}

const char* to_string(Order order) {
    switch (order) {
        case Order::i0: return "I(0)";
        case Order::i1: return "I(1)";
        case Order::i2: return "I(2)";
        case Order::undetermined: return "undetermined";
    }
    return "undetermined";
}

const char* to_string(Deterministic d) {
    switch (d) {
        case Deterministic::none: return "none";
        case Deterministic::constant: return "constant";
        case Deterministic::constant_trend: return "constant+trend";
    }
    return "constant";
}

double adf_critical_value(Deterministic deterministic, double level, int t_obs) {
    if (t_obs < 1) throw Error(errc::bad_spec, "sample size must be positive");
    ResponseSurface rs = surface(deterministic, level);
    double t = static_cast<double>(t_obs);
    return rs.b_inf + rs.b1 / t + rs.b2 / (t * t);
}

AdfResult adf_test(const TimeSeries& s, const AdfSpec& spec) {
    const int n = s.length();
    int max_lags = spec.max_lags;
    if (spec.criterion == LagCriterion::fixed) {
        if (spec.fixed_lags < 0) throw Error(errc::bad_spec, "fixed lag order must be >= 0");
        max_lags = spec.fixed_lags;
    } else if (max_lags < 0) {
        max_lags = static_cast<int>(std::floor(std::cbrt(static_cast<double>(n - 1))));
    }
    if (3 * max_lags >= n)
        throw Error(errc::bad_spec, "max_lags must be below n/3");

    const int det_terms = deterministic_terms(spec.deterministic);
    const int regressors = 1 + max_lags + det_terms;
    if (n - 1 - max_lags < 10 + regressors)
        throw Error(errc::too_short,
                    s.name + ": too short for an ADF test with " + std::to_string(max_lags) + " lags");

    int chosen = max_lags;
    if (spec.criterion == LagCriterion::fixed) {
        chosen = spec.fixed_lags;
    } else if (max_lags > 0) {
        // Candidates share the sample dictated by the largest lag order.
        const int first_t = max_lags + 1;
        double best = std::numeric_limits<double>::infinity();
        for (int q = 0; q <= max_lags; ++q) {
            AdfRegression reg = fit_adf(s.values, q, first_t, spec.deterministic);
            double ic = information_criterion(reg, spec.criterion);
            if (ic < best - 1e-12) {
                best = ic;
                chosen = q;
            }
        }
    } else {
        chosen = 0;
    }

    AdfRegression reg = fit_adf(s.values, chosen, chosen + 1, spec.deterministic);

    AdfResult result;
    result.series_name = s.name;
    result.t_statistic = reg.t_rho;
    result.chosen_lags = chosen;
    result.deterministic = spec.deterministic;
    result.n_regression = reg.n_obs;
    for (double level : {0.01, 0.05, 0.10})
        result.critical_values[level] = adf_critical_value(spec.deterministic, level, reg.n_obs);
    return result;
}

IntegrationOrder integration_order(const TimeSeries& s, const AdfSpec& spec, double level) {
    IntegrationOrder io;
    io.level_result = adf_test(s, spec);
    TimeSeries d1 = transform(s, TransformSpec::first_difference());
    d1.name = "d(" + s.name + ")";
    io.diff_result = adf_test(d1, spec);

    if (io.level_result.reject_unit_root(level)) {
        io.order = Order::i0;
        return io;
    }
    if (io.diff_result.reject_unit_root(level)) {
        io.order = Order::i1;
        return io;
    }

    TimeSeries d2 = transform(d1, TransformSpec::first_difference());
    d2.name = "d2(" + s.name + ")";
    io.diff2_result = adf_test(d2, spec);
    io.order = io.diff2_result->reject_unit_root(level) ? Order::i2 : Order::undetermined;
    return io;
}

}  // namespace cointkit
