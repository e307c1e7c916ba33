#pragma once

#include <cstdint>
#include <random>

#include "cointkit/series.hpp"

namespace cointkit {

/// Standard normal draws from mt19937_64 plus Box-Muller on explicit 53-bit
/// uniforms. Unlike std::normal_distribution the byte stream is identical
/// across standard library implementations.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

    double operator()();

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Deterministic per-replication seed stream (splitmix64 of master + index),
/// so Monte Carlo results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

enum class DgpKind { random_walks, cointegrated, stationary_var };

struct DgpSpec {
    DgpKind kind = DgpKind::random_walks;
    int k = 2;
    Eigen::MatrixXd alpha;        // k x r, cointegrated systems
    Eigen::MatrixXd beta;         // k x r
    double ar_coefficient = 0.5;  // stationary VAR: X_t = c * X_{t-1} + e_t
    double noise_sd = 1.0;
    std::vector<std::string> names;  // defaults V1..Vk
    int start_year = 1900;

    static DgpSpec random_walks(int k);
    static DgpSpec cointegrated(const Eigen::MatrixXd& alpha, const Eigen::MatrixXd& beta);
    static DgpSpec stationary(int k, double ar_coefficient);
};

/// Simulate n observations of the DGP. Identical (spec, n, seed) triples
/// produce identical panels.
Panel simulate(const DgpSpec& spec, int n, std::uint64_t seed);

}  // namespace cointkit
