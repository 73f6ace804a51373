#pragma once

#include <string>

#include "linalg.hpp"
#include "model.hpp"
#include "types.hpp"

namespace mrz {

/// Time-invariant lift of a two-rate system for blocking delay tau.
///
/// Input vector U = [u(k+tau); ...; u(k+tau+N-1)], output vector
/// Y = [yf(k+tau); ...; yf(k+tau+N-1); ys(k+N)], state x(k+tau).
/// The fast-only variant (see fast_subsystem) omits the trailing slow rows.
struct BlockedSystem {
    Dimensions dims;
    int tau = 1;
    Matrix A;  ///< n x n
    Matrix B;  ///< n x N*m
    Matrix C;  ///< (N*p1 [+ p2]) x n
    Matrix D;  ///< (N*p1 [+ p2]) x N*m
    bool has_slow_rows = true;
    bool reverse_time  = false;

    int output_rows() const { return static_cast<int>(C.rows()); }
    int input_cols() const { return static_cast<int>(B.cols()); }
};

/// P(Z) = Z*E - F.
struct MatrixPencil {
    CMatrix E;
    CMatrix F;

    MatrixPencil() = default;
    MatrixPencil(CMatrix e, CMatrix f) : E(std::move(e)), F(std::move(f)) {
        if (E.rows() != F.rows() || E.cols() != F.cols())
            throw Error(ErrorKind::InvalidInput, "pencil E and F must share shape");
    }
    template <typename DE, typename DF>
        requires(!Eigen::NumTraits<typename DE::Scalar>::IsComplex && !Eigen::NumTraits<typename DF::Scalar>::IsComplex)
    MatrixPencil(const Eigen::MatrixBase<DE>& e, const Eigen::MatrixBase<DF>& f)
        : MatrixPencil(CMatrix(e.template cast<Complex>()), CMatrix(f.template cast<Complex>())) {}

    Eigen::Index rows() const { return E.rows(); }
    Eigen::Index cols() const { return E.cols(); }

    CMatrix at(Complex z) const { return z * E - F; }
};

namespace detail {

inline void check_tau(const Dimensions& d, int tau) {
    if (tau < 1 || tau > d.N)
        throw Error(ErrorKind::TauOutOfRange, "tau=" + std::to_string(tau) + " outside 1.." + std::to_string(d.N));
}

}  // namespace detail

inline BlockedSystem block(const MultirateSystem& sys, int tau) {
    require_valid(sys);
    const auto& d = sys.dims;
    detail::check_tau(d, tau);
    const int N = d.N, n = d.n, m = d.m, p1 = d.p1, p2 = d.p2;
    const auto Ap = matrix_powers(sys.A, N);

    BlockedSystem blk;
    blk.dims = d;
    blk.tau  = tau;
    blk.A    = Ap[N];

    blk.B.resize(n, N * m);
    for (int j = 0; j < N; ++j) blk.B.middleCols(j * m, m) = Ap[N - 1 - j] * sys.B;

    blk.C.resize(N * p1 + p2, n);
    for (int i = 0; i < N; ++i) blk.C.middleRows(i * p1, p1) = sys.Cf * Ap[i];
    blk.C.bottomRows(p2) = sys.Cs * Ap[N - tau];

    blk.D = Matrix::Zero(N * p1 + p2, N * m);
    for (int i = 0; i < N; ++i) {
        blk.D.block(i * p1, i * m, p1, m) = sys.Df;
        for (int j = 0; j < i; ++j) blk.D.block(i * p1, j * m, p1, m) = sys.Cf * Ap[i - j - 1] * sys.B;
    }
    // Slow row: [Cs A^{N-tau-1} B ... Cs B  Ds  0 ... 0] with tau-1 trailing zero blocks.
    const int slow_col = N - tau;
    blk.D.block(N * p1, slow_col * m, p2, m) = sys.Ds;
    for (int j = 0; j < slow_col; ++j)
        blk.D.block(N * p1, j * m, p2, m) = sys.Cs * Ap[slow_col - 1 - j] * sys.B;
    return blk;
}

/// Blocked reverse-time system for delay tau, in its natural (reversed) layout:
/// input blocks ordered B~, A~B~, ..., fast rows ordered C~f A~^{N-1}, ..., C~f,
/// and an upper block triangular feedthrough.
inline BlockedSystem block_reverse(const MultirateSystem& sys, int tau, const TolerancePolicy& policy = {}) {
    require_valid(sys);
    const auto& d = sys.dims;
    detail::check_tau(d, tau);
    const MultirateSystem rev = reverse_time(sys, policy);
    const int N = d.N, n = d.n, m = d.m, p1 = d.p1, p2 = d.p2;
    const auto Ap = matrix_powers(rev.A, N);

    BlockedSystem blk;
    blk.dims         = d;
    blk.tau          = tau;
    blk.reverse_time = true;
    blk.A            = Ap[N];

    blk.B.resize(n, N * m);
    for (int j = 0; j < N; ++j) blk.B.middleCols(j * m, m) = Ap[j] * rev.B;

    blk.C.resize(N * p1 + p2, n);
    for (int i = 0; i < N; ++i) blk.C.middleRows(i * p1, p1) = rev.Cf * Ap[N - 1 - i];
    blk.C.bottomRows(p2) = rev.Cs * Ap[tau - 1];

    blk.D = Matrix::Zero(N * p1 + p2, N * m);
    for (int i = 0; i < N; ++i) {
        blk.D.block(i * p1, i * m, p1, m) = rev.Df;
        for (int j = i + 1; j < N; ++j) blk.D.block(i * p1, j * m, p1, m) = rev.Cf * Ap[j - i - 1] * rev.B;
    }
    // Slow row: N - tau leading zero blocks, then D~s, C~s B~, ..., C~s A~^{tau-2} B~.
    const int slow_col = N - tau;
    blk.D.block(N * p1, slow_col * m, p2, m) = rev.Ds;
    for (int j = slow_col + 1; j < N; ++j)
        blk.D.block(N * p1, j * m, p2, m) = rev.Cs * Ap[j - slow_col - 1] * rev.B;
    return blk;
}

/// System matrix [[Z I - A, -B], [C, D]] written as Z*E - F.
inline MatrixPencil system_pencil(const BlockedSystem& blk) {
    const Eigen::Index n = blk.A.rows();
    const Eigen::Index r = n + blk.C.rows();
    const Eigen::Index c = n + blk.B.cols();
    Matrix E = Matrix::Zero(r, c);
    E.topLeftCorner(n, n).setIdentity();
    Matrix F(r, c);
    F << blk.A, blk.B, -blk.C, -blk.D;
    return {E, F};
}

/// V(Z) = C (Z I - A)^{-1} B + D.
inline CMatrix transfer_eval(const BlockedSystem& blk, Complex z, const TolerancePolicy& policy = {}) {
    const Eigen::Index n = blk.A.rows();
    const CMatrix resolvent = z * CMatrix::Identity(n, n) - blk.A.cast<Complex>();
    const double cond       = condition_number(resolvent);
    if (!(cond < policy.condition_cap))
        throw Error(ErrorKind::ResolventSingular, "condition of ZI - A is " + std::to_string(cond));
    const CMatrix X = resolvent.partialPivLu().solve(blk.B.cast<Complex>());
    return blk.C.cast<Complex>() * X + blk.D.cast<Complex>();
}

/// Relative Frobenius residual of V_{tau+1}(Z) = L(Z) V_tau(Z) R(Z), where L moves the
/// first fast output block to the end of the fast rows (scaled by Z) and R moves the
/// first input block to the end (scaled by 1/Z).
inline double lift_relation_residual(const MultirateSystem& sys, int tau, Complex z,
                                     const TolerancePolicy& policy = {}) {
    const auto& d = sys.dims;
    if (tau < 1 || tau > d.N - 1)
        throw Error(ErrorKind::TauOutOfRange, "lift relation needs 1 <= tau <= N-1, got " + std::to_string(tau));
    if (z == Complex(0.0, 0.0)) throw Error(ErrorKind::ZeroZ, "lift relation is undefined at Z = 0");

    const CMatrix V0 = transfer_eval(block(sys, tau), z, policy);
    const CMatrix V1 = transfer_eval(block(sys, tau + 1), z, policy);

    const int N = d.N, m = d.m, p1 = d.p1, p2 = d.p2;
    const int rows = N * p1 + p2, cols = N * m;
    CMatrix L = CMatrix::Zero(rows, rows);
    L.block(0, p1, p1 * (N - 1), p1 * (N - 1)).setIdentity();
    L.block(p1 * (N - 1), 0, p1, p1) = z * CMatrix::Identity(p1, p1);
    L.block(N * p1, N * p1, p2, p2).setIdentity();

    CMatrix R = CMatrix::Zero(cols, cols);
    R.block(0, m * (N - 1), m, m) = (1.0 / z) * CMatrix::Identity(m, m);
    R.block(m, 0, m * (N - 1), m * (N - 1)).setIdentity();

    const double denom = V1.norm();
    const double diff  = (V1 - L * V0 * R).norm();
    return denom > 0.0 ? diff / denom : diff;
}

/// Drops the slow output rows, leaving the blocked fast-only system.
inline BlockedSystem fast_subsystem(const BlockedSystem& blk) {
    BlockedSystem out = blk;
    if (blk.has_slow_rows) {
        const Eigen::Index keep = blk.C.rows() - blk.dims.p2;
        out.C = blk.C.topRows(keep);
        out.D = blk.D.topRows(keep);
        out.has_slow_rows = false;
    }
    return out;
}

}  // namespace mrz
