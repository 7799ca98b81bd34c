// matcore.hpp: Dense complex matrix kernels for Kronecker products, vec, eigensolvers, PSD tests, powers

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rateaudit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Malformed or out-of-contract input (dimension mismatch, bad spec, bad flag).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A mathematical invariant the caller promised does not hold (e.g. generator not trace-preserving).
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative numerical routine failed to converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ToleranceConfig {
    double psd_tol = 1e-9;
    double rank_tol = 1e-10;
    double hermiticity_tol = 1e-10;

    // Throws InputError unless every tolerance lies in (0, 1).
    void validate() const;
};

// Rejects NaN/Inf entries.
void require_finite(const CMatrix& m, const std::string& what);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Column-stacking: vec([[a,b],[c,d]]) = (a,c,b,d).
CVector vectorize(const CMatrix& m);
CMatrix devectorize(const CVector& v, Eigen::Index rows, Eigen::Index cols);
// Square case: rows = cols = sqrt(size).
CMatrix devectorize(const CVector& v);

struct EigenPair {
    cplx value;
    CVector vector;
};

// Eigenvalues with algebraic multiplicity and unit-norm right eigenvectors, sorted by
// (real part descending, imaginary part ascending). Throws NumericalError on non-convergence.
std::vector<EigenPair> eig_general(const CMatrix& m);
std::vector<cplx> eigenvalues(const CMatrix& m);

struct PsdResult {
    double min_eigenvalue = 0.0;
    bool is_psd = false;
    CVector witness;
};

// Minimum eigenvalue of a Hermitian matrix. Inputs within hermiticity_tol (relative) are
// symmetrized; larger deviations throw InputError. PSD threshold is psd_tol scaled by
// max(1, spectral norm).
PsdResult psd_min_eig(const CMatrix& m, const ToleranceConfig& tol = {});

// m^p through the spectral decomposition of a Hermitian PSD matrix.
CMatrix frac_power_psd(const CMatrix& m, double p, const ToleranceConfig& tol = {});

struct KernelBasis {
    std::vector<CVector> basis;
    std::size_t dim = 0;
};

// Right null space from singular values σ ≤ rank_tol·max(rows, cols)·σ_max.
KernelBasis numerical_kernel(const CMatrix& m, const ToleranceConfig& tol = {});

// Helpers shared across modules.
CMatrix hermitian_part(const CMatrix& m);
double spectral_norm(const CMatrix& m);
double trace_norm_hermitian(const CMatrix& m);
double hermiticity_defect(const CMatrix& m);
CMatrix expm(const CMatrix& m);
CMatrix identity(Eigen::Index d);
CMatrix basis_matrix(Eigen::Index d, Eigen::Index i, Eigen::Index j);

// Hermitian eigendecomposition with ascending eigenvalues; m must be Hermitian.
struct HermitianEigen {
    RVector values;
    CMatrix vectors;
};
HermitianEigen eigh(const CMatrix& m);

// Orthonormal basis (as columns) of the orthogonal complement of the unit vector v.
CMatrix orthogonal_complement(const CVector& v);

namespace pauli {
CMatrix x();
CMatrix y();
CMatrix z();
CMatrix plus();   // |0><1|
CMatrix minus();  // |1><0|
}  // namespace pauli

}  // namespace rateaudit
