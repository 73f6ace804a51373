#pragma once

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "types.hpp"

namespace mrz {

template <typename Derived>
Eigen::VectorXd singular_values(const Eigen::MatrixBase<Derived>& M) {
    using Plain = typename Derived::PlainObject;
    if (M.rows() == 0 || M.cols() == 0) return Eigen::VectorXd();
    Eigen::JacobiSVD<Plain> svd(M.eval());
    return svd.singularValues();
}

/// Count of singular values above rel_rank_tol * sigma_max * max(rows, cols).
template <typename Derived>
int numerical_rank(const Eigen::MatrixBase<Derived>& M, const TolerancePolicy& policy) {
    const Eigen::VectorXd s = singular_values(M);
    if (s.size() == 0 || !(s(0) > 0.0)) return 0;
    const double cut = policy.rel_rank_tol * s(0) * static_cast<double>(std::max(M.rows(), M.cols()));
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return r;
}

/// 2-norm condition number; infinity for singular or empty input.
template <typename Derived>
double condition_number(const Eigen::MatrixBase<Derived>& M) {
    const Eigen::VectorXd s = singular_values(M);
    if (s.size() == 0) return std::numeric_limits<double>::infinity();
    const double smin = s(s.size() - 1);
    if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

/// Eigenvalues of a square matrix with algebraic multiplicity, in solver order.
inline std::vector<Complex> eigenvalues(const CMatrix& M) {
    if (M.rows() != M.cols()) throw Error(ErrorKind::InvalidInput, "eigenvalues of a non-square matrix");
    if (!M.allFinite()) throw Error(ErrorKind::InvalidInput, "eigenvalues of a non-finite matrix");
    if (M.rows() == 0) return {};
    Eigen::ComplexEigenSolver<CMatrix> solver(M, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorKind::ConvergenceFailure, "complex Schur iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

inline std::vector<Complex> eigenvalues(const Matrix& M) { return eigenvalues(CMatrix(M.cast<Complex>())); }

/// A^k by repeated multiplication; powers[k] = A^k for k = 0..kmax.
inline std::vector<Matrix> matrix_powers(const Matrix& A, int kmax) {
    std::vector<Matrix> powers;
    powers.reserve(static_cast<std::size_t>(kmax) + 1);
    powers.push_back(Matrix::Identity(A.rows(), A.cols()));
    for (int k = 1; k <= kmax; ++k) powers.push_back(powers.back() * A);
    return powers;
}

}  // namespace mrz
