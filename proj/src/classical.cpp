// classical.cpp: Classical projection of quantum generators

#include "rateaudit/classical.hpp"

#include <algorithm>
#include <cmath>

namespace rateaudit {

OrthonormalBasis::OrthonormalBasis(std::vector<CVector> vectors, double tol) : vectors_(std::move(vectors)) {
    const auto d = static_cast<Eigen::Index>(vectors_.size());
    if (d == 0) throw InputError("basis: empty");
    for (Eigen::Index i = 0; i < d; ++i) {
        if ((*this)[i].size() != d) throw InputError("basis: need d vectors of length d");
        for (Eigen::Index j = 0; j < d; ++j) {
            const cplx g = (*this)[i].dot((*this)[j]);
            const cplx want = i == j ? cplx(1.0) : cplx(0.0);
            if (std::abs(g - want) > tol) throw InputError("basis: vectors are not orthonormal");
        }
    }
}

OrthonormalBasis OrthonormalBasis::from_unitary(const CMatrix& u, double tol) {
    std::vector<CVector> cols;
    for (Eigen::Index j = 0; j < u.cols(); ++j) cols.push_back(u.col(j));
    return OrthonormalBasis(std::move(cols), tol);
}

OrthonormalBasis OrthonormalBasis::computational(Eigen::Index d) {
    return from_unitary(CMatrix::Identity(d, d));
}

CMatrix OrthonormalBasis::projector(Eigen::Index i) const { return outer(i, i); }

CMatrix OrthonormalBasis::outer(Eigen::Index i, Eigen::Index j) const {
    return (*this)[i] * (*this)[j].adjoint();
}

namespace {

void require_dim(const Superoperator& s, const OrthonormalBasis& b) {
    if (s.dim() != b.dim()) throw InputError("basis dimension does not match the generator");
}

// ⟨e_i|𝔏(|e_a⟩⟨e_b|)|e_j⟩
cplx element(const Superoperator& s, const OrthonormalBasis& b, Eigen::Index i, Eigen::Index a, Eigen::Index bb,
             Eigen::Index j) {
    return b[i].dot(s.apply(b.outer(a, bb)) * b[j]);
}

}  // namespace

ClassicalGenerator classical_generator(const Superoperator& s, const OrthonormalBasis& basis) {
    require_dim(s, basis);
    const Eigen::Index d = s.dim();
    RMatrix k(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const CMatrix img = s.apply(basis.projector(j));
        for (Eigen::Index i = 0; i < d; ++i) {
            const cplx v = basis[i].dot(img * basis[i]);
            if (std::abs(v.imag()) > 1e-10 * std::max(1.0, s.norm())) {
                throw InvariantError("classical_generator: map is not Hermiticity-preserving");
            }
            k(i, j) = v.real();
        }
    }
    return ClassicalGenerator{d, std::move(k), basis, s.picture()};
}

StochasticCheck check_stochastic_generator(const ClassicalGenerator& k, bool require_offdiag_nonneg, double tol) {
    StochasticCheck out;
    const RVector sums = k.picture == Picture::schroedinger ? RVector(k.matrix.colwise().sum().transpose())
                                                            : RVector(k.matrix.rowwise().sum());
    out.max_sum_residual = sums.cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, k.matrix.cwiseAbs().maxCoeff());
    out.sums_ok = out.max_sum_residual <= tol * scale;
    out.min_offdiag = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < k.d; ++i)
        for (Eigen::Index j = 0; j < k.d; ++j)
            if (i != j) out.min_offdiag = std::min(out.min_offdiag, k.matrix(i, j));
    if (k.d < 2) out.min_offdiag = 0.0;
    if (require_offdiag_nonneg) out.offdiag_ok = out.min_offdiag >= -tol * scale;
    return out;
}

TraceInequality trace_inequality(const Superoperator& s, const OrthonormalBasis& basis, TraceClass cls, double tol) {
    const auto k = classical_generator(s, basis);
    const double d = static_cast<double>(s.dim());
    TraceInequality out;
    out.factor = cls == TraceClass::ccp_or_2positive ? d : (d + 1.0) / 2.0;
    out.lhs = s.trace().real();
    out.rhs = out.factor * k.matrix.trace();
    out.gap = out.rhs - out.lhs;
    out.satisfied = out.gap >= -tol * std::max(1.0, std::abs(out.lhs));
    return out;
}

double two_positive_witness_sum(const Superoperator& s, const OrthonormalBasis& basis) {
    require_dim(s, basis);
    const Eigen::Index d = s.dim();
    double total = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i == j) continue;
            CVector plus = CVector::Zero(2 * d);
            CVector minus = CVector::Zero(2 * d);
            plus.head(d) = basis[i];
            plus.tail(d) = basis[j];
            minus.head(d) = basis[i];
            minus.tail(d) = -basis[j];
            const CMatrix rho = plus * plus.adjoint();
            CMatrix img(2 * d, 2 * d);
            for (Eigen::Index a = 0; a < 2; ++a)
                for (Eigen::Index b = 0; b < 2; ++b)
                    img.block(a * d, b * d, d, d) = s.apply(rho.block(a * d, b * d, d, d));
            total += minus.dot(img * minus).real();
        }
    }
    return total;
}

PairwiseMargins schwarz_pairwise_inequalities(const Superoperator& s_heis, const OrthonormalBasis& basis, double tol) {
    require_dim(s_heis, basis);
    if (s_heis.unitality_defect() > 1e-8 * std::max(1.0, s_heis.norm())) {
        throw InputError("schwarz_pairwise_inequalities: generator is not unital");
    }
    const Eigen::Index d = s_heis.dim();
    const auto k = classical_generator(s_heis, basis);
    PairwiseMargins out;
    out.margins = RMatrix::Zero(d, d);
    double min_margin = 0.0;
    double sum_kjj = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i == j) continue;
            const double m = k.matrix(j, j) - element(s_heis, basis, j, j, i, i).real() -
                             element(s_heis, basis, i, i, j, j).real();
            out.margins(i, j) = m;
            min_margin = std::min(min_margin, m);
            sum_kjj += k.matrix(j, j);
        }
    }
    const double scale = std::max(1.0, s_heis.norm());
    out.all_satisfied = min_margin >= -tol * scale;
    out.bookkeeping_residual = std::abs(sum_kjj - static_cast<double>(d - 1) * k.matrix.trace());
    return out;
}

CMatrix hermitian_eigenvector(const CMatrix& y) {
    const CMatrix sum = y + y.adjoint();
    const CMatrix diff = cplx(0.0, 1.0) * (y - y.adjoint());
    return sum.norm() >= diff.norm() ? hermitian_part(sum) : hermitian_part(diff);
}

Embedding eigen_embedding(const Superoperator& s, double lambda, const CMatrix& x_op, double tol) {
    const Eigen::Index d = s.dim();
    if (x_op.rows() != d || x_op.cols() != d) throw InputError("eigen_embedding: operator must be d x d");
    const double scale = std::max(1.0, x_op.norm());
    if (hermiticity_defect(x_op) > 1e-10 * scale) throw InputError("eigen_embedding: operator must be Hermitian");
    if ((s.apply(x_op) - lambda * x_op).norm() > tol * scale * std::max(1.0, s.norm())) {
        throw InputError("eigen_embedding: operator is not an eigenvector for lambda");
    }
    auto eig = eigh(hermitian_part(x_op));
    std::vector<CVector> vecs;
    for (Eigen::Index c = 0; c < d; ++c) {
        CVector v = eig.vectors.col(c);
        for (Eigen::Index r = 0; r < d; ++r) {
            if (std::abs(v(r)) > 1e-12) {
                v *= std::conj(v(r)) / std::abs(v(r));
                break;
            }
        }
        vecs.push_back(v / v.norm());
    }
    Embedding out{classical_generator(s, OrthonormalBasis(std::move(vecs), 1e-8)), eig.values, 0.0, false};
    out.residual = (out.k.matrix * out.x - lambda * out.x).norm();
    out.holds = out.residual <= tol * scale * std::max(1.0, std::abs(lambda));
    return out;
}

}  // namespace rateaudit
