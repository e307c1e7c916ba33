#pragma once

#include <map>
#include <optional>
#include <string>

#include "cointkit/series.hpp"

namespace cointkit {

enum class Deterministic { none, constant, constant_trend };

enum class LagCriterion { aic, sc, fixed };

struct AdfSpec {
    Deterministic deterministic = Deterministic::constant;
    int max_lags = -1;  // -1: floor((n - 1)^(1/3)) at test time
    LagCriterion criterion = LagCriterion::sc;
    int fixed_lags = 0;  // used when criterion == fixed
};

struct AdfResult {
    std::string series_name;
    double t_statistic = 0.0;
    int chosen_lags = 0;
    Deterministic deterministic = Deterministic::constant;
    int n_regression = 0;  // observations entering the test regression
    std::map<double, double> critical_values;  // level (0.01/0.05/0.10) -> cv

    double critical_value(double level) const;
    bool reject_unit_root(double level) const { return t_statistic < critical_value(level); }
};

enum class Order { i0, i1, i2, undetermined };

struct IntegrationOrder {
    Order order = Order::undetermined;
    AdfResult level_result;
    AdfResult diff_result;
    std::optional<AdfResult> diff2_result;  // present only when it was needed
};

const char* to_string(Order order);
const char* to_string(Deterministic d);

/// MacKinnon response-surface critical value for the ADF t-statistic,
/// cv = b_inf + b1/T + b2/T^2, at level in {0.01, 0.05, 0.10}.
double adf_critical_value(Deterministic deterministic, double level, int t_obs);

/// Augmented Dickey-Fuller regression
///   dy_t = d_t + rho * y_{t-1} + sum phi_i dy_{t-i} + e_t
/// with the lag order chosen by the spec criterion over 0..max_lags
/// (candidates compared on the common sample, then refit on the longest
/// sample for the winner). The statistic is the t-ratio on rho.
AdfResult adf_test(const TimeSeries& s, const AdfSpec& spec);

/// Classify the integration order at the given significance level:
/// level test rejects -> I(0); level fails and difference rejects -> I(1);
/// both fail and the second difference rejects -> I(2); otherwise
/// undetermined.
IntegrationOrder integration_order(const TimeSeries& s, const AdfSpec& spec, double level = 0.05);

}  // namespace cointkit
