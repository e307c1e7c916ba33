#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "cointkit/distributions.hpp"
#include "cointkit/ols.hpp"
#include "cointkit/simulate.hpp"

using namespace cointkit;

namespace {

// Normal-equations oracle, independent of the QR path used by ols_fit.
Eigen::VectorXd normal_equations(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::MatrixXd xtx = x.transpose() * x;
    return xtx.fullPivLu().inverse() * (x.transpose() * y);
}

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
    NormalSampler normal(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
}

}  // namespace

TEST_SUITE("ols") {

TEST_CASE("exact proportional fit") {
    Eigen::MatrixXd x(3, 1);
    x << 1, 2, 3;
    Eigen::VectorXd y(3);
    y << 2, 4, 6;
    OlsFit fit = ols_fit(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("intercept-only regression recovers the mean") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(3, 1);
    Eigen::VectorXd y(3);
    y << 1, 2, 3;
    OlsFit fit = ols_fit(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0));
    CHECK(fit.has_intercept);
    CHECK(fit.r_squared == doctest::Approx(0.0));
}

TEST_CASE("random 20x3 problem matches the normal-equations oracle") {
    Eigen::MatrixXd x = random_matrix(20, 3, 11);
    Eigen::VectorXd y = random_matrix(20, 1, 12).col(0);
    OlsFit fit = ols_fit(x, y);
    Eigen::VectorXd oracle = normal_equations(x, y);
    CHECK((fit.coefficients - oracle).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("residuals are orthogonal to the regressors") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        Eigen::MatrixXd x = random_matrix(40, 4, seed);
        x.col(0).setOnes();
        Eigen::VectorXd y = random_matrix(40, 1, seed + 100).col(0) * 3.0;
        OlsFit fit = ols_fit(x, y);
        double scale = y.norm() * x.norm();
        CHECK((x.transpose() * fit.residuals).cwiseAbs().maxCoeff() < 1e-8 * scale);
        for (int j = 0; j < fit.coefficients.size(); ++j)
            if (fit.std_errors[j] > 0.0)
                CHECK(fit.t_stats[j] ==
                      doctest::Approx(fit.coefficients[j] / fit.std_errors[j]).epsilon(1e-12));
        CHECK(fit.adj_r_squared <= fit.r_squared);
    }
}

TEST_CASE("R-squared never falls when a regressor is added") {
    Eigen::MatrixXd x = random_matrix(60, 4, 21);
    x.col(0).setOnes();
    Eigen::VectorXd y = random_matrix(60, 1, 22).col(0);
    double previous = 0.0;
    for (int cols = 1; cols <= 4; ++cols) {
        OlsFit fit = ols_fit(x.leftCols(cols), y);
        CHECK(fit.r_squared >= previous - 1e-12);
        previous = fit.r_squared;
    }
}

TEST_CASE("error contracts") {
    Eigen::MatrixXd x = random_matrix(3, 4, 31);
    Eigen::VectorXd y = random_matrix(3, 1, 32).col(0);
    CHECK_THROWS_WITH_AS(ols_fit(x, y), doctest::Contains("TooFewObservations"), Error);

    Eigen::MatrixXd collinear = random_matrix(20, 3, 33);
    collinear.col(2) = 2.0 * collinear.col(0);
    CHECK_THROWS_WITH_AS(ols_fit(collinear, random_matrix(20, 1, 34).col(0)),
                         doctest::Contains("RankDeficient"), Error);
}

TEST_CASE("Jarque-Bera vanishes at Gaussian sample moments") {
    // With four zeros padding the symmetric pattern {-a, -b, b, a}, kurtosis
    // is 4(a^4+b^4)/(a^2+b^2)^2, which equals 3 exactly at b = (sqrt(2)-1) a.
    const double b = std::sqrt(2.0) - 1.0;
    Eigen::VectorXd v(8);
    v << -1.0, -b, 0.0, 0.0, 0.0, 0.0, b, 1.0;
    ChiSqTest test = jarque_bera(v);
    CHECK(test.statistic < 1e-24);
    CHECK(test.df == 2);
    CHECK(test.p_value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Jarque-Bera agrees with a direct moment oracle") {
    Eigen::VectorXd v(8);
    v << -1, 0, 1, 0, -1, 1, 2, -2;
    const double n = 8.0;
    double mean = v.mean();
    double m2 = 0, m3 = 0, m4 = 0;
    for (int i = 0; i < 8; ++i) {
        double d = v[i] - mean;
        m2 += d * d / n;
        m3 += d * d * d / n;
        m4 += d * d * d * d / n;
    }
    double skew = m3 / std::pow(m2, 1.5);
    double kurt = m4 / (m2 * m2);
    double expected = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
    CHECK(jarque_bera(v).statistic == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("system Jarque-Bera uses df 2k") {
    Eigen::MatrixXd residuals = random_matrix(200, 5, 41);
    ChiSqTest test = jarque_bera(residuals, true);
    CHECK(test.df == 10);
    CHECK(test.p_value == doctest::Approx(chi_sq_survival(test.statistic, 10)).epsilon(1e-12));
    CHECK(test.p_value > 0.01);  // Gaussian input should not reject wildly
}

TEST_CASE("Jarque-Bera rejects tiny samples") {
    Eigen::VectorXd v(5);
    v << 1, 2, 3, 4, 5;
    CHECK_THROWS_WITH_AS(jarque_bera(v), doctest::Contains("TooFewObservations"), Error);
}

TEST_CASE("LM test: independent residuals keep moderate p-values") {
    const int reps = 200;
    std::vector<double> p_values;
    for (int rep = 0; rep < reps; ++rep) {
        std::uint64_t seed = derive_seed(500, static_cast<std::uint64_t>(rep));
        Eigen::MatrixXd x = random_matrix(200, 3, seed);
        x.col(0).setOnes();
        Eigen::MatrixXd y = random_matrix(200, 2, seed + 1);
        // Genuine OLS residuals of a 2-equation system.
        Eigen::MatrixXd coef = (x.transpose() * x).ldlt().solve(x.transpose() * y);
        Eigen::MatrixXd residuals = y - x * coef;
        p_values.push_back(breusch_godfrey(residuals, x, 1).p_value);
    }
    std::nth_element(p_values.begin(), p_values.begin() + reps / 2, p_values.end());
    CHECK(p_values[reps / 2] > 0.05);
}

TEST_CASE("LM test: strong AR(1) residuals reject") {
    const int reps = 200;
    std::vector<double> p_values;
    for (int rep = 0; rep < reps; ++rep) {
        NormalSampler normal(derive_seed(600, static_cast<std::uint64_t>(rep)));
        Eigen::MatrixXd residuals(200, 2);
        double u1 = 0.0, u2 = 0.0;
        for (int t = 0; t < 200; ++t) {
            u1 = 0.9 * u1 + normal();
            u2 = 0.9 * u2 + normal();
            residuals(t, 0) = u1;
            residuals(t, 1) = u2;
        }
        Eigen::MatrixXd x = Eigen::MatrixXd::Ones(200, 1);
        p_values.push_back(breusch_godfrey(residuals, x, 1).p_value);
    }
    std::nth_element(p_values.begin(), p_values.begin() + reps / 2, p_values.end());
    CHECK(p_values[reps / 2] < 0.01);
}

TEST_CASE("LM statistic is asymptotically chi-square with df h k^2") {
    Eigen::MatrixXd residuals = random_matrix(300, 3, 71);
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(300, 1);
    ChiSqTest test = breusch_godfrey(residuals, x, 2);
    CHECK(test.df == 2 * 9);
    CHECK(test.statistic >= 0.0);
}

TEST_CASE("White test: homoskedastic residuals keep moderate p-values") {
    const int reps = 200;
    std::vector<double> p_values;
    for (int rep = 0; rep < reps; ++rep) {
        std::uint64_t seed = derive_seed(700, static_cast<std::uint64_t>(rep));
        Eigen::MatrixXd x(200, 3);
        x.col(0).setOnes();
        x.rightCols(2) = random_matrix(200, 2, seed);
        Eigen::VectorXd e = random_matrix(200, 1, seed + 1).col(0);
        p_values.push_back(white_test(e, x).p_value);
    }
    std::nth_element(p_values.begin(), p_values.begin() + reps / 2, p_values.end());
    CHECK(p_values[reps / 2] > 0.3);
}

TEST_CASE("White test: variance proportional to a squared regressor rejects") {
    const int reps = 200;
    std::vector<double> p_values;
    for (int rep = 0; rep < reps; ++rep) {
        std::uint64_t seed = derive_seed(800, static_cast<std::uint64_t>(rep));
        Eigen::MatrixXd x(200, 3);
        x.col(0).setOnes();
        x.rightCols(2) = random_matrix(200, 2, seed);
        Eigen::VectorXd noise = random_matrix(200, 1, seed + 1).col(0);
        Eigen::VectorXd e = x.col(1).array().square() * noise.array() * 2.0;
        p_values.push_back(white_test(e, x).p_value);
    }
    std::nth_element(p_values.begin(), p_values.begin() + reps / 2, p_values.end());
    CHECK(p_values[reps / 2] < 0.01);
}

TEST_CASE("White test drops collinear auxiliary columns with a warning") {
    // A {-1, +1} regressor squares to the constant column.
    std::mt19937 rng(99);
    Eigen::MatrixXd x(100, 2);
    x.col(0).setOnes();
    for (int i = 0; i < 100; ++i) x(i, 1) = (rng() & 1u) ? 1.0 : -1.0;
    Eigen::VectorXd e = random_matrix(100, 1, 91).col(0);
    ChiSqTest test = white_test(e, x);
    REQUIRE(!test.warnings.empty());
    CHECK(test.warnings[0] == "dropped 1 collinear auxiliary column(s)");
    CHECK(test.df == 1);
}

}  // TEST_SUITE
