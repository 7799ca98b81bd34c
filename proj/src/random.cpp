// random.cpp: Seeded sampling helpers

#include "rateaudit/random.hpp"

#include <cmath>

namespace rateaudit {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(engine_);
}

double Rng::normal() {
    std::normal_distribution<double> dist(0.0, 1.0);
    return dist(engine_);
}

cplx Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return cplx(re, im) / std::sqrt(2.0);
}

CVector Rng::gaussian_vector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
}

CVector Rng::unit_vector(Eigen::Index n) {
    CVector v = gaussian_vector(n);
    return v / v.norm();
}

CMatrix Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    }
    return m;
}

CMatrix Rng::gaussian_hermitian(Eigen::Index d) {
    const CMatrix g = gaussian_matrix(d, d);
    return 0.5 * (g + g.adjoint());
}

CMatrix Rng::haar_unitary(Eigen::Index d) {
    const CMatrix g = gaussian_matrix(d, d);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (Eigen::Index k = 0; k < d; ++k) {
        const cplx diag = r(k, k);
        const double a = std::abs(diag);
        if (a > 0.0) q.col(k) *= diag / a;
    }
    return q;
}

CMatrix Rng::random_density(Eigen::Index d) {
    const CMatrix g = gaussian_matrix(d, d);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return hermitian_part(rho);
}

}  // namespace rateaudit
