// random.hpp: Seeded sampling of complex vectors, matrices, states and unitaries

#pragma once

#include <cstdint>
#include <random>

#include "rateaudit/matcore.hpp"

namespace rateaudit {

// Counter-based seed splitting (splitmix64 finalizer over master ^ golden·index). Stream i of a
// master seed does not depend on how many other streams were drawn or in which order.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0);
    double normal();
    cplx complex_normal();  // E|z|^2 = 1

    CVector gaussian_vector(Eigen::Index n);
    CVector unit_vector(Eigen::Index n);
    CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
    CMatrix gaussian_hermitian(Eigen::Index d);
    CMatrix haar_unitary(Eigen::Index d);
    // Full-rank density: G G† / Tr with G complex Gaussian.
    CMatrix random_density(Eigen::Index d);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace rateaudit
