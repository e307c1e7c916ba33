#include "cointkit/simulate.hpp"

#include <cmath>
#include <numbers>

namespace cointkit {

double NormalSampler::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // 53-bit uniforms in (0, 1].
    double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

DgpSpec DgpSpec::random_walks(int k) {
    DgpSpec spec;
    spec.kind = DgpKind::random_walks;
    spec.k = k;
    return spec;
}

DgpSpec DgpSpec::cointegrated(const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& beta) {
    DgpSpec spec;
    spec.kind = DgpKind::cointegrated;
    spec.k = static_cast<int>(alpha.rows());
    spec.alpha = alpha;
    spec.beta = beta;
    return spec;
}

DgpSpec DgpSpec::stationary(int k, double ar_coefficient) {
    DgpSpec spec;
    spec.kind = DgpKind::stationary_var;
    spec.k = k;
    spec.ar_coefficient = ar_coefficient;
    return spec;
}

Panel simulate(const DgpSpec& spec, int n, std::uint64_t seed) {
    const int k = spec.k;
    if (k < 1) throw Error(errc::bad_spec, "DGP needs at least one variable");
    if (n < 2) throw Error(errc::bad_spec, "DGP needs at least two observations");
    if (!spec.names.empty() && static_cast<int>(spec.names.size()) != k)
        throw Error(errc::bad_spec, "DGP names must match the number of variables");
    if (!(spec.noise_sd > 0.0)) throw Error(errc::bad_spec, "noise_sd must be positive");

    if (spec.kind == DgpKind::cointegrated) {
        if (spec.alpha.rows() != k || spec.beta.rows() != k ||
            spec.alpha.cols() != spec.beta.cols() || spec.alpha.cols() < 1 ||
            spec.alpha.cols() >= k)
            throw Error(errc::bad_spec, "cointegrated DGP needs k x r alpha and beta with 1 <= r < k");
    }
    if (spec.kind == DgpKind::stationary_var && std::fabs(spec.ar_coefficient) >= 1.0)
        throw Error(errc::bad_spec, "stationary VAR needs |ar_coefficient| < 1");

    NormalSampler normal(seed);
    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd state = Eigen::VectorXd::Zero(k);

    for (int t = 0; t < n; ++t) {
        Eigen::VectorXd shock(k);
        for (int j = 0; j < k; ++j) shock[j] = spec.noise_sd * normal();

        switch (spec.kind) {
            case DgpKind::random_walks:
                state += shock;
                break;
            case DgpKind::cointegrated:
                if (t > 0) state += spec.alpha * (spec.beta.transpose() * state) + shock;
                else state = shock;
                break;
            case DgpKind::stationary_var:
                state = spec.ar_coefficient * state + shock;
                break;
        }
        x.row(t) = state.transpose();
    }

    Panel panel;
    panel.columns.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& col = panel.columns[static_cast<std::size_t>(j)];
        col.name = spec.names.empty() ? "V" + std::to_string(j + 1)
                                      : spec.names[static_cast<std::size_t>(j)];
        col.start_year = spec.start_year;
        col.values.assign(x.col(j).data(), x.col(j).data() + n);
    }
    return panel;
}

}  // namespace cointkit
