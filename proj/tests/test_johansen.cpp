#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "cointkit/johansen.hpp"
#include "cointkit/simulate.hpp"

using namespace cointkit;

namespace {

// Reference fixture cross-checked against EViews 7 rank-test output:
// eigenvalues, their max-eigenvalue statistics at T = 34, and the matching
// case-4 critical values.
const std::vector<double> kEigenvalues{0.804568, 0.563135, 0.537256, 0.262113, 0.142316};
const std::vector<double> kMaxStats{55.50648, 28.15646, 26.19979, 10.33478, 5.219651};
const std::vector<double> kCase4MaxCv{38.33101, 32.11832, 25.82321, 19.38704, 12.51798};

Panel simulated_panel(const DgpSpec& spec, int n, std::uint64_t seed, int start_year = 1900) {
    DgpSpec adjusted = spec;
    adjusted.start_year = start_year;
    return simulate(adjusted, n, seed);
}

// Two-stage projection oracle built from explicit inverses.
Eigen::MatrixXd project_oracle(const Eigen::MatrixXd& y, const Eigen::MatrixXd& x) {
    if (x.cols() == 0) return y;
    return y - x * ((x.transpose() * x).inverse() * (x.transpose() * y));
}

}  // namespace

TEST_SUITE("johansen") {

TEST_CASE("statistics reproduce the EViews reference column at T = 34") {
    auto [max_stats, trace_stats] = statistics(kEigenvalues, 34);
    REQUIRE(max_stats.size() == 5);
    for (std::size_t r = 0; r < 5; ++r)
        CHECK(std::fabs(max_stats[r] - kMaxStats[r]) < 0.001);
    // Trace equals the suffix sum of the max-style terms.
    for (std::size_t r = 0; r < 5; ++r) {
        double suffix = 0.0;
        for (std::size_t i = r; i < 5; ++i) suffix += max_stats[i];
        CHECK(trace_stats[r] == doctest::Approx(suffix).epsilon(1e-12));
    }
}

TEST_CASE("statistic identity: max[r] + trace[r+1] = trace[r]") {
    auto [max_stats, trace_stats] = statistics(kEigenvalues, 34);
    for (std::size_t r = 0; r < 5; ++r) {
        double next = r + 1 < 5 ? trace_stats[r + 1] : 0.0;
        CHECK(std::fabs(max_stats[r] + next - trace_stats[r]) < 1e-9);
    }
}

TEST_CASE("zero eigenvalue gives zero statistics") {
    auto [max_stats, trace_stats] = statistics({0.0}, 50);
    CHECK(max_stats[0] == 0.0);
    CHECK(trace_stats[0] == 0.0);
}

TEST_CASE("sequential rank selection stops at the first non-rejection") {
    CHECK(select_rank(kMaxStats, kCase4MaxCv) == 1);  // rejects r=0 only, despite r=2 exceeding
    CHECK(select_rank({1.0, 0.5}, {10.0, 9.0}) == 0);
    CHECK(select_rank({50.0, 40.0, 30.0}, {10.0, 9.0, 8.0}) == 3);
}

TEST_CASE("embedded case-4 critical values match the reference 0.05 column") {
    for (int k_minus_r = 1; k_minus_r <= 5; ++k_minus_r)
        CHECK(johansen_critical_value_5pct(DetCase::restricted_trend, k_minus_r, false) ==
              doctest::Approx(kCase4MaxCv[static_cast<std::size_t>(5 - k_minus_r)]));
    CHECK_THROWS_AS(johansen_critical_value_5pct(DetCase::restricted_trend, 7, false), Error);
}

TEST_CASE("concentration sample bookkeeping matches a 1976-2011 panel") {
    DgpSpec spec = DgpSpec::random_walks(5);
    spec.names = {"INFL", "DF", "M2", "TCE", "GDP"};
    Panel panel = simulated_panel(spec, 36, 7, 1976);
    CointegrationResult result = johansen_test(panel, 1, DetCase::restricted_trend);
    CHECK(result.t_effective == 34);
    CHECK(result.sample_first_year == 1978);
    CHECK(result.sample_last_year == 2011);
    CHECK(result.eigenvalues.size() == 5);
    CHECK(result.eigenvectors.rows() == 6);  // trend appended
}

TEST_CASE("no lagged differences: S00 is the ML covariance of demeaned differences") {
    Panel panel = simulated_panel(DgpSpec::random_walks(3), 80, 21);
    MomentMatrices m = concentrate(panel, 0, DetCase::unrestricted_constant);
    CHECK(m.t_effective == 79);

    Eigen::MatrixXd x = panel.to_matrix();
    Eigen::MatrixXd dx = x.bottomRows(79) - x.topRows(79);
    Eigen::MatrixXd centered = dx.rowwise() - dx.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered / 79.0;
    CHECK((m.s00 - cov).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("moment matrices equal a two-stage projection oracle") {
    Eigen::MatrixXd alpha(2, 1), beta(2, 1);
    alpha << -0.4, 0.1;
    beta << 1.0, -1.0;
    Panel panel = simulated_panel(DgpSpec::cointegrated(alpha, beta), 60, 9);
    MomentMatrices m = concentrate(panel, 1, DetCase::unrestricted_constant);

    Eigen::MatrixXd x = panel.to_matrix();
    const int t_eff = 58;
    Eigen::MatrixXd diffs(t_eff, 2), lagged(t_eff, 3), levels(t_eff, 2);
    for (int i = 0; i < t_eff; ++i) {
        int t = i + 2;
        diffs.row(i) = x.row(t) - x.row(t - 1);
        lagged.block(i, 0, 1, 2) = x.row(t - 1) - x.row(t - 2);
        lagged(i, 2) = 1.0;
        levels.row(i) = x.row(t - 1);
    }
    Eigen::MatrixXd r0 = project_oracle(diffs, lagged);
    Eigen::MatrixXd r1 = project_oracle(levels, lagged);
    CHECK((m.s00 - r0.transpose() * r0 / t_eff).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m.s01 - r0.transpose() * r1 / t_eff).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m.s11 - r1.transpose() * r1 / t_eff).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m.s10 - m.s01.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("solve_eigen on identity moment matrices") {
    MomentMatrices m;
    m.s00 = Eigen::MatrixXd::Identity(2, 2);
    m.s11 = Eigen::MatrixXd::Identity(2, 2);
    m.s01 = Eigen::Vector2d(0.9, 0.1).asDiagonal();
    m.s10 = m.s01.transpose();
    m.t_effective = 100;
    auto [values, vectors] = solve_eigen(m);
    CHECK(values[0] == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(values[1] == doctest::Approx(0.01).epsilon(1e-12));
    // v'S11v = 1 normalization.
    for (int j = 0; j < 2; ++j)
        CHECK((vectors.col(j).transpose() * m.s11 * vectors.col(j))(0, 0) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero cross moments give zero eigenvalues") {
    MomentMatrices m;
    m.s00 = Eigen::MatrixXd::Identity(3, 3);
    m.s11 = Eigen::MatrixXd::Identity(3, 3);
    m.s01 = Eigen::MatrixXd::Zero(3, 3);
    m.s10 = m.s01;
    m.t_effective = 50;
    auto [values, vectors] = solve_eigen(m);
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(values[i]) < 1e-14);
}

TEST_CASE("eigenvalues live in [0, 1) on data-driven moment matrices") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Panel panel = simulated_panel(DgpSpec::random_walks(4), 150, seed);
        MomentMatrices m = concentrate(panel, 1, DetCase::restricted_trend);
        auto [values, vectors] = solve_eigen(m);
        for (int i = 0; i < values.size(); ++i) {
            CHECK(values[i] >= 0.0);
            CHECK(values[i] < 1.0);
        }
        // Descending order.
        for (int i = 1; i < values.size(); ++i) CHECK(values[i] <= values[i - 1]);
    }
}

TEST_CASE("eigenvalues are invariant under column rescaling") {
    Eigen::MatrixXd alpha(3, 1), beta(3, 1);
    alpha << -0.5, 0.1, 0.0;
    beta << 1.0, -1.0, 0.5;
    Panel panel = simulated_panel(DgpSpec::cointegrated(alpha, beta), 200, 33);
    CointegrationResult base = johansen_test(panel, 1, DetCase::restricted_trend);

    Panel scaled = panel;
    const double scales[3] = {13.7, 0.004, 250.0};
    for (int j = 0; j < 3; ++j)
        for (auto& v : scaled.columns[static_cast<std::size_t>(j)].values) v *= scales[j];
    CointegrationResult rescaled = johansen_test(scaled, 1, DetCase::restricted_trend);

    for (std::size_t i = 0; i < base.eigenvalues.size(); ++i)
        CHECK(rescaled.eigenvalues[i] == doctest::Approx(base.eigenvalues[i]).epsilon(1e-8));
}

TEST_CASE("Monte Carlo: rank-1 bivariate system recovered") {
    Eigen::MatrixXd alpha(2, 1), beta(2, 1);
    alpha << -0.5, 0.0;
    beta << 1.0, -1.0;
    DgpSpec spec = DgpSpec::cointegrated(alpha, beta);
    const int reps = 200;
    int rank1 = 0;
    for (int rep = 0; rep < reps; ++rep) {
        Panel panel = simulated_panel(spec, 500, derive_seed(5000, rep));
        if (johansen_test(panel, 1, DetCase::restricted_trend).selected_rank_max == 1) ++rank1;
    }
    CHECK(rank1 >= reps * 9 / 10);
}

TEST_CASE("Monte Carlo: independent random walks select rank 0") {
    const int reps = 200;
    int rank0 = 0;
    for (int rep = 0; rep < reps; ++rep) {
        Panel panel = simulated_panel(DgpSpec::random_walks(5), 500, derive_seed(6000, rep));
        if (johansen_test(panel, 1, DetCase::restricted_trend).selected_rank_max == 0) ++rank0;
    }
    CHECK(rank0 >= reps * 85 / 100);
}

TEST_CASE("too-short panels are rejected") {
    Panel panel = simulated_panel(DgpSpec::random_walks(5), 14, 3);
    CHECK_THROWS_WITH_AS(johansen_test(panel, 1, DetCase::restricted_trend),
                         doctest::Contains("TooShort"), Error);
}

}  // TEST_SUITE
