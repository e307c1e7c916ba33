#include "cointkit/var_fevd.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cointkit {

namespace {

std::vector<int> ordering_permutation(const std::vector<std::string>& names,
                                      const std::vector<std::string>& ordering) {
    if (ordering.size() != names.size())
        throw Error(errc::bad_ordering, "ordering must list every variable exactly once");
    std::vector<int> perm;
    perm.reserve(ordering.size());
    std::vector<bool> used(names.size(), false);
    for (const auto& name : ordering) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end())
            throw Error(errc::bad_ordering, "ordering names unknown variable " + name);
        int idx = static_cast<int>(it - names.begin());
        if (used[static_cast<std::size_t>(idx)])
            throw Error(errc::bad_ordering, "ordering repeats variable " + name);
        used[static_cast<std::size_t>(idx)] = true;
        perm.push_back(idx);
    }
    return perm;
}

// Orthogonalized MA weights Theta_j = Psi_j^perm * chol(Sigma^perm).
std::vector<Eigen::MatrixXd> orthogonalized_ma(const LevelVar& var, int horizon,
                                               const std::vector<int>& perm) {
    const int k = var.k;
    Eigen::MatrixXd sigma_p(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            sigma_p(i, j) = var.sigma(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);

    Eigen::LLT<Eigen::MatrixXd> llt(sigma_p);
    if (llt.info() != Eigen::Success)
        throw Error(errc::not_positive_definite, "innovation covariance is not positive definite");
    Eigen::MatrixXd chol = llt.matrixL();

    std::vector<Eigen::MatrixXd> psi = ma_coefficients(var, horizon);
    std::vector<Eigen::MatrixXd> theta;
    theta.reserve(psi.size());
    for (const auto& p : psi) {
        Eigen::MatrixXd pp(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                pp(i, j) = p(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        theta.push_back(pp * chol);
    }
    return theta;
}

}  // namespace

LevelVar vecm_to_var(const VecmModel& model) {
    const int k = model.k;
    const int p = model.lags_diff;

    LevelVar var;
    var.k = k;
    var.order = p + 1;
    var.names = model.names;
    var.sigma = model.sigma;

    Eigen::MatrixXd pi = model.pi();
    var.a.resize(static_cast<std::size_t>(p + 1));
    var.a[0] = Eigen::MatrixXd::Identity(k, k) + pi;
    if (p >= 1) var.a[0] += model.gamma[0];
    for (int i = 2; i <= p; ++i)
        var.a[static_cast<std::size_t>(i - 1)] =
            model.gamma[static_cast<std::size_t>(i - 1)] - model.gamma[static_cast<std::size_t>(i - 2)];
    if (p >= 1) var.a[static_cast<std::size_t>(p)] = -model.gamma[static_cast<std::size_t>(p - 1)];

    var.intercept = model.det_unrestricted;
    var.trend = Eigen::VectorXd::Zero(k);
    if (model.det_case == DetCase::restricted_constant)
        var.intercept += model.alpha * model.beta.row(k).transpose();
    if (model.det_case == DetCase::restricted_trend)
        var.trend = model.alpha * model.beta.row(k).transpose();
    return var;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const LevelVar& var, int horizon) {
    if (horizon < 1) throw Error(errc::bad_spec, "horizon must be >= 1");
    const int k = var.k;
    std::vector<Eigen::MatrixXd> psi;
    psi.reserve(static_cast<std::size_t>(horizon));
    psi.push_back(Eigen::MatrixXd::Identity(k, k));
    for (int j = 1; j < horizon; ++j) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
        for (int i = 1; i <= std::min(j, var.order); ++i)
            m += var.a[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(j - i)];
        psi.push_back(std::move(m));
    }
    return psi;
}

std::vector<FevdTable> fevd(const LevelVar& var, int horizon, const std::vector<std::string>& ordering) {
    const int k = var.k;
    std::vector<int> perm = ordering_permutation(var.names, ordering);
    std::vector<Eigen::MatrixXd> theta = orthogonalized_ma(var, horizon, perm);

    std::vector<std::string> warnings;
    for (const auto& root : companion_eigenvalues(var)) {
        if (std::abs(root) > 1.0 + 1e-6) {
            warnings.push_back("explosive companion eigenvalue: modulus " +
                               std::to_string(std::abs(root)));
            break;
        }
    }

    std::vector<FevdTable> tables(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        auto& table = tables[static_cast<std::size_t>(i)];
        table.target = ordering[static_cast<std::size_t>(i)];
        table.ordering = ordering;
        table.se.resize(static_cast<std::size_t>(horizon));
        table.shares.resize(horizon, k);
        table.warnings = warnings;
    }

    Eigen::MatrixXd cumulative = Eigen::MatrixXd::Zero(k, k);  // (target, source)
    for (int h = 1; h <= horizon; ++h) {
        cumulative += theta[static_cast<std::size_t>(h - 1)].array().square().matrix();
        for (int i = 0; i < k; ++i) {
            double mse = cumulative.row(i).sum();
            auto& table = tables[static_cast<std::size_t>(i)];
            table.se[static_cast<std::size_t>(h - 1)] = std::sqrt(mse);
            for (int mcol = 0; mcol < k; ++mcol)
                table.shares(h - 1, mcol) = mse > 0.0 ? 100.0 * (cumulative(i, mcol) / mse) : 0.0;
        }
    }
    return tables;
}

IrfResult irf(const LevelVar& var, int horizon, const std::vector<std::string>& ordering) {
    std::vector<int> perm = ordering_permutation(var.names, ordering);
    IrfResult result;
    result.ordering = ordering;
    result.responses = orthogonalized_ma(var, horizon, perm);
    return result;
}

Eigen::MatrixXd companion_matrix(const LevelVar& var) {
    const int k = var.k;
    const int p = var.order;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k * p, k * p);
    for (int i = 0; i < p; ++i) c.block(0, i * k, k, k) = var.a[static_cast<std::size_t>(i)];
    if (p > 1)
        c.block(k, 0, k * (p - 1), k * (p - 1)) =
            Eigen::MatrixXd::Identity(k * (p - 1), k * (p - 1));
    return c;
}

std::vector<std::complex<double>> companion_eigenvalues(const LevelVar& var) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion_matrix(var), false);
    if (solver.info() != Eigen::Success)
        throw Error(errc::not_positive_definite, "companion eigenvalue computation failed");
    std::vector<std::complex<double>> roots;
    roots.reserve(static_cast<std::size_t>(solver.eigenvalues().size()));
    for (int i = 0; i < solver.eigenvalues().size(); ++i)
        roots.push_back(solver.eigenvalues()[i]);
    return roots;
}

Eigen::MatrixXd simulate_var(const LevelVar& var, const Eigen::MatrixXd& shocks,
                             const Eigen::MatrixXd& initial, int t0) {
    const int k = var.k;
    const int p = var.order;
    if (initial.rows() != p || initial.cols() != k)
        throw Error(errc::bad_spec, "initial state must be P x k");
    if (shocks.cols() != k)
        throw Error(errc::bad_spec, "shock matrix must have k columns");

    const int n = static_cast<int>(shocks.rows());
    Eigen::MatrixXd path(p + n, k);
    path.topRows(p) = initial;
    for (int t = 0; t < n; ++t) {
        Eigen::VectorXd x = var.intercept + var.trend * static_cast<double>(t0 + t);
        for (int i = 1; i <= p; ++i)
            x += var.a[static_cast<std::size_t>(i - 1)] * path.row(p + t - i).transpose();
        x += shocks.row(t).transpose();
        path.row(p + t) = x.transpose();
    }
    return path.bottomRows(n);
}

}  // namespace cointkit
