// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Usage: acceptance_tests <cli-binary> <data-dir>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cointkit/distributions.hpp"
#include "cointkit/johansen.hpp"
#include "cointkit/ols.hpp"
#include "cointkit/simulate.hpp"
#include "cointkit/var_fevd.hpp"
#include "cointkit/vecm.hpp"

using namespace cointkit;

namespace {

std::string g_cli_path;
std::string g_data_dir;

struct Criterion {
    std::string name;
    std::function<void()> run;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed, double scale = 1.0) {
    NormalSampler normal(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = scale * normal();
    return m;
}

// ----- criterion 1 & 2: eigenvalue -> statistic identity and rank decision

const std::vector<double> kEigenvalues{0.804568, 0.563135, 0.537256, 0.262113, 0.142316};
const std::vector<double> kReferenceMax{55.50648, 28.15646, 26.19979, 10.33478, 5.219651};
const std::vector<double> kCase4MaxCv{38.33101, 32.11832, 25.82321, 19.38704, 12.51798};

void criterion_statistics() {
    auto [max_stats, trace_stats] = statistics(kEigenvalues, 34);
    require(max_stats.size() == 5, "expected five statistics");
    for (std::size_t r = 0; r < 5; ++r)
        require(std::fabs(max_stats[r] - kReferenceMax[r]) <= 0.001,
                "max statistic r=" + std::to_string(r) + " off by more than 0.001");
}

void criterion_rank_decision() {
    for (int k_minus_r = 1; k_minus_r <= 5; ++k_minus_r) {
        double embedded =
            johansen_critical_value_5pct(DetCase::restricted_trend, k_minus_r, false);
        require(embedded == kCase4MaxCv[static_cast<std::size_t>(5 - k_minus_r)],
                "embedded case-4 critical value mismatch");
    }
    require(select_rank(kReferenceMax, kCase4MaxCv) == 1, "expected rank 1");
}

// ----- criterion 3: chi-square survival anchors

void criterion_chi_sq() {
    require(std::fabs(chi_sq_survival(26.93, 25) - 0.3594) <= 0.0005,
            "S(26.93, 25) outside 0.3594 +/- 0.0005");
    require(std::fabs(chi_sq_survival(9.71, 10) - 0.4663) <= 0.0005,
            "S(9.71, 10) outside 0.4663 +/- 0.0005");
}

// ----- criterion 4: adjustment-speed arithmetic

void criterion_adjustment() {
    VecmModel model;
    model.k = 2;
    model.r = 1;
    model.lags_diff = 0;
    model.det_case = DetCase::unrestricted_constant;
    model.names = {"INFL", "M2"};
    model.alpha = Eigen::MatrixXd(2, 1);
    model.alpha << -0.509, 0.0;
    model.beta = Eigen::MatrixXd(2, 1);
    model.beta << 1.0, -1.0;
    model.det_unrestricted = Eigen::VectorXd::Zero(2);
    model.sigma = Eigen::MatrixXd::Identity(2, 2);
    model.alpha_t = Eigen::MatrixXd::Constant(2, 1, -5.21);
    model.det_t = Eigen::VectorXd::Zero(2);
    model.beta_se = Eigen::MatrixXd::Zero(2, 1);
    model.beta_t = Eigen::MatrixXd::Zero(2, 1);
    model.t_effective = 40;
    model.n_regressors = 2;
    model.levels_moment = Eigen::MatrixXd::Identity(2, 2);
    model.rss_per_equation = Eigen::VectorXd::Ones(2);
    model.tss_per_equation = Eigen::VectorXd::Ones(2);

    AdjustmentSpeed speed = adjustment_speed(model, "INFL");
    require(std::fabs(speed.loading - (-0.509)) < 1e-12, "loading not preserved");
    require(std::fabs(speed.absorption_horizon - 1.965) < 0.0005,
            "absorption horizon not 1.965 within rounding");
}

// ----- criterion 5: FEVD structural invariants on random stable VAR(2)

LevelVar random_stable_var2(std::uint64_t seed, int k) {
    LevelVar var;
    var.k = k;
    var.order = 2;
    Eigen::MatrixXd a1 = random_matrix(k, k, seed, 0.25);
    a1.diagonal().array() += 0.3;
    Eigen::MatrixXd a2 = random_matrix(k, k, seed + 1, 0.15);
    var.a = {a1, a2};
    var.intercept = Eigen::VectorXd::Zero(k);
    var.trend = Eigen::VectorXd::Zero(k);
    Eigen::MatrixXd root = random_matrix(k, k, seed + 2, 0.5);
    var.sigma = root * root.transpose() + Eigen::MatrixXd::Identity(k, k) * 0.5;
    var.names.clear();
    for (int j = 0; j < k; ++j) var.names.push_back("V" + std::to_string(j + 1));
    return var;
}

void criterion_fevd() {
    const int horizon = 6;
    int systems = 0;
    for (std::uint64_t seed = 0; systems < 100; ++seed) {
        LevelVar var = random_stable_var2(derive_seed(100, seed), 3);
        bool stable = true;
        for (const auto& root : companion_eigenvalues(var))
            if (std::abs(root) >= 0.999) stable = false;
        if (!stable) continue;
        ++systems;

        auto tables = fevd(var, horizon, var.names);
        Eigen::MatrixXd sigma_chol = Eigen::LLT<Eigen::MatrixXd>(var.sigma).matrixL();
        auto psi = ma_coefficients(var, horizon);

        require(tables[0].shares(0, 0) == 100.0, "first-ordered horizon-1 own share not 100");
        for (int target = 0; target < 3; ++target) {
            const auto& table = tables[static_cast<std::size_t>(target)];
            for (int h = 1; h <= horizon; ++h) {
                require(std::fabs(table.shares.row(h - 1).sum() - 100.0) <= 1e-8,
                        "row sum differs from 100");
                // Brute-force orthogonalized MA accumulation.
                double mse = 0.0;
                std::vector<double> own(3, 0.0);
                for (int j = 0; j < h; ++j) {
                    Eigen::MatrixXd theta = psi[static_cast<std::size_t>(j)] * sigma_chol;
                    for (int source = 0; source < 3; ++source) {
                        double value = theta(target, source);
                        own[static_cast<std::size_t>(source)] += value * value;
                        mse += value * value;
                    }
                }
                for (int source = 0; source < 3; ++source) {
                    double expected = 100.0 * own[static_cast<std::size_t>(source)] / mse;
                    require(std::fabs(table.shares(h - 1, source) - expected) <= 1e-10,
                            "share differs from brute-force oracle");
                }
            }
        }
    }
}

// ----- criterion 6: OLS equals the normal-equations oracle

void criterion_ols() {
    for (int rep = 0; rep < 100; ++rep) {
        std::uint64_t seed = derive_seed(200, static_cast<std::uint64_t>(rep));
        int n = 25 + rep % 40;
        int k = 2 + rep % 4;
        Eigen::MatrixXd x = random_matrix(n, k, seed);
        x.col(0).setOnes();
        Eigen::VectorXd y = random_matrix(n, 1, seed + 1).col(0);

        OlsFit fit = ols_fit(x, y);
        Eigen::MatrixXd xtx = x.transpose() * x;
        Eigen::VectorXd oracle_coef = xtx.fullPivLu().inverse() * (x.transpose() * y);
        double oracle_rss = (y - x * oracle_coef).squaredNorm();
        double tss = (y.array() - y.mean()).matrix().squaredNorm();
        double oracle_r2 = 1.0 - oracle_rss / tss;

        require((fit.coefficients - oracle_coef).cwiseAbs().maxCoeff() <= 1e-10,
                "coefficients differ from normal equations");
        require(std::fabs(fit.r_squared - oracle_r2) <= 1e-10, "R^2 differs from oracle");
    }
}

// ----- criterion 7: Johansen Monte Carlo

void criterion_johansen_mc() {
    Eigen::MatrixXd alpha(2, 1), beta(2, 1);
    alpha << -0.5, 0.0;
    beta << 1.0, -1.0;
    DgpSpec rank1 = DgpSpec::cointegrated(alpha, beta);

    const int reps = 200;
    int hit_rank1 = 0, hit_rank0 = 0;
    for (int rep = 0; rep < reps; ++rep) {
        Panel panel = simulate(rank1, 500, derive_seed(300, static_cast<std::uint64_t>(rep)));
        if (johansen_test(panel, 1, DetCase::restricted_trend).selected_rank_max == 1)
            ++hit_rank1;
    }
    DgpSpec walks = DgpSpec::random_walks(5);
    for (int rep = 0; rep < reps; ++rep) {
        Panel panel = simulate(walks, 500, derive_seed(400, static_cast<std::uint64_t>(rep)));
        if (johansen_test(panel, 1, DetCase::restricted_trend).selected_rank_max == 0)
            ++hit_rank0;
    }
    require(hit_rank1 >= 180, "rank-1 DGP recovered in " + std::to_string(hit_rank1) +
                                  "/200 < 90% of runs");
    require(hit_rank0 >= 170, "independent walks kept rank 0 in " + std::to_string(hit_rank0) +
                                  "/200 < 85% of runs");
}

// ----- criterion 8: VECM recovery

void criterion_vecm_recovery() {
    Eigen::MatrixXd alpha(2, 1), beta(2, 1);
    alpha << -0.5, 0.0;
    beta << 1.0, -1.0;
    DgpSpec spec = DgpSpec::cointegrated(alpha, beta);

    std::vector<double> beta_hats;
    for (int rep = 0; rep < 100; ++rep) {
        Panel panel = simulate(spec, 1000, derive_seed(500, static_cast<std::uint64_t>(rep)));
        VecmModel model = estimate_vecm(panel, 1, 1, DetCase::unrestricted_constant);
        Eigen::MatrixXd pi_before = model.pi();
        VecmModel norm = normalize(model, 0);
        require((norm.pi() - pi_before).cwiseAbs().maxCoeff() <= 1e-12,
                "Pi changed under normalization");
        beta_hats.push_back(norm.beta(1, 0));
    }
    std::nth_element(beta_hats.begin(), beta_hats.begin() + 50, beta_hats.end());
    require(std::fabs(beta_hats[50] - (-1.0)) <= 0.05, "median normalized beta outside +/- 0.05");
}

// ----- criterion 9: VECM <-> VAR duality

void criterion_duality() {
    Eigen::MatrixXd alpha(3, 1), beta(4, 1), gamma(3, 3);
    alpha << -0.45, 0.15, 0.0;
    beta << 1.0, -0.9, 0.4, 0.02;  // restricted trend row
    gamma << 0.2, -0.05, 0.1, 0.0, 0.15, -0.1, 0.05, 0.0, 0.25;

    VecmModel model;
    model.k = 3;
    model.r = 1;
    model.lags_diff = 1;
    model.det_case = DetCase::restricted_trend;
    model.names = {"A", "B", "C"};
    model.alpha = alpha;
    model.beta = beta;
    model.gamma = {gamma};
    model.det_unrestricted = Eigen::VectorXd::Constant(3, 0.3);
    model.sigma = Eigen::MatrixXd::Identity(3, 3);

    LevelVar var = vecm_to_var(model);

    const int n = 300;
    Eigen::MatrixXd shocks = random_matrix(n, 3, 77);
    Eigen::MatrixXd initial = random_matrix(2, 3, 78);
    const int t0 = 2;

    Eigen::MatrixXd path(n + 2, 3);
    path.topRows(2) = initial;
    for (int t = 0; t < n; ++t) {
        Eigen::VectorXd x_prev = path.row(t + 1).transpose();
        Eigen::VectorXd dx_prev = (path.row(t + 1) - path.row(t)).transpose();
        double ec = beta(0) * x_prev(0) + beta(1) * x_prev(1) + beta(2) * x_prev(2) +
                    beta(3) * static_cast<double>(t0 + t);
        Eigen::VectorXd dx = model.det_unrestricted + alpha.col(0) * ec + gamma * dx_prev +
                             shocks.row(t).transpose();
        path.row(t + 2) = (x_prev + dx).transpose();
    }
    Eigen::MatrixXd via_var = simulate_var(var, shocks, initial, t0);
    require((via_var - path.bottomRows(n)).cwiseAbs().maxCoeff() <= 1e-10,
            "paths diverge between VECM and converted VAR");

    int unit_roots = 0;
    for (const auto& root : companion_eigenvalues(var))
        if (std::abs(root - std::complex<double>(1.0, 0.0)) < 1e-6) ++unit_roots;
    require(unit_roots == 2, "expected k - r = 2 unit companion roots, got " +
                                 std::to_string(unit_roots));
}

// ----- criterion 10: end-to-end determinism through the CLI

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& args) {
    std::string command = g_cli_path + " " + args;
    int status = std::system(command.c_str());
    if (status < 0) return -1;
    return WEXITSTATUS(status);
}

void criterion_end_to_end() {
    std::string dataset = (std::filesystem::path(g_data_dir) / "synthetic_rank1.csv").string();
    require(std::filesystem::exists(dataset), "bundled dataset missing: " + dataset);

    auto tmp = std::filesystem::temp_directory_path();
    std::string json1 = (tmp / "cointkit_accept_1.json").string();
    std::string json2 = (tmp / "cointkit_accept_2.json").string();
    std::string text_path = (tmp / "cointkit_accept.txt").string();

    require(run_cli("report --data " + dataset + " --format json --out " + json1) == 0,
            "first json report run failed");
    require(run_cli("report --data " + dataset + " --format json --out " + json2) == 0,
            "second json report run failed");
    require(slurp(json1) == slurp(json2), "json reports are not byte-identical");

    require(run_cli("report --data " + dataset + " --format text --out " + text_path) == 0,
            "text report run failed");
    std::string text = slurp(text_path);
    require(text.find("Unrestricted Cointegration Rank Test (Maximum Eigenvalue)") !=
                std::string::npos,
            "text report lacks the rank-test header");
    require(text.find("Cholesky Ordering: INFL DF M2 TCE GDP") != std::string::npos,
            "text report lacks the Cholesky ordering footer");

    // Exit-code contract: 2 for data/config errors, 3 for numerical failures.
    require(run_cli("report --data /nonexistent.csv >/dev/null 2>&1") == 2,
            "missing data should exit 2");
    std::string tiny = (tmp / "cointkit_accept_tiny.csv").string();
    {
        std::ofstream out(tiny, std::ios::binary);
        out << "year,A,B\n";
        for (int y = 0; y < 60; ++y)
            out << 2000 + y << "," << (y % 3) << "," << (y % 3) << "\n";
    }
    // Perfectly collinear columns break the eigenproblem's positive
    // definiteness.
    require(run_cli("johansen --data " + tiny + " >/dev/null 2>&1") == 3,
            "degenerate panel should exit 3");

    std::filesystem::remove(json1);
    std::filesystem::remove(json2);
    std::filesystem::remove(text_path);
    std::filesystem::remove(tiny);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance_tests <cli-binary> <data-dir>\n";
        return 2;
    }
    g_cli_path = argv[1];
    g_data_dir = argv[2];

    std::vector<Criterion> criteria = {
        {"1 eigenvalue->statistic identity (T=34, +/-0.001)", criterion_statistics},
        {"2 sequential rank decision = 1 against embedded case-4 CVs", criterion_rank_decision},
        {"3 chi-square survival anchors (0.3594, 0.4663, +/-0.0005)", criterion_chi_sq},
        {"4 adjustment speed: loading -0.509 -> horizon 1.965", criterion_adjustment},
        {"5 FEVD invariants on 100 random stable VAR(2) systems", criterion_fevd},
        {"6 OLS equals normal-equations oracle on 100 problems (1e-10)", criterion_ols},
        {"7 Johansen Monte Carlo: rank-1 >= 90%, rank-0 >= 85% (200 reps)", criterion_johansen_mc},
        {"8 VECM recovery: median beta within 0.05, Pi-invariance 1e-12", criterion_vecm_recovery},
        {"9 VECM<->VAR duality 1e-10 and k-r unit companion roots", criterion_duality},
        {"10 end-to-end determinism and verbatim table strings", criterion_end_to_end},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string status = "PASS";
        std::string detail;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            status = "FAIL";
            detail = e.what();
            ++failures;
        }
        auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        std::printf("[%s] criterion %s (%lld ms)%s%s\n", status.c_str(), criterion.name.c_str(),
                    static_cast<long long>(elapsed), detail.empty() ? "" : " -- ",
                    detail.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
