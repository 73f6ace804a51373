#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "blocking.hpp"
#include "linalg.hpp"
#include "numerics.hpp"
#include "random.hpp"

namespace mrz {

struct FiniteZero {
    Complex location;
    int multiplicity = 1;

    friend bool operator==(const FiniteZero&, const FiniteZero&) = default;
};

/// A candidate that was neither accepted nor rejected by a rank test.
struct CandidateNote {
    Complex location;
    std::string reason;  ///< "near_origin" or "unconfirmed"

    friend bool operator==(const CandidateNote&, const CandidateNote&) = default;
};

struct ZeroReport {
    int tau              = 1;
    int normal_rank      = 0;
    int mult_at_zero     = 0;
    int mult_at_infinity = 0;
    std::vector<FiniteZero> finite_nonzero_zeros;
    int candidates_examined = 0;
    std::uint64_t seed      = 0;
    std::vector<CandidateNote> diagnostics;

    friend bool operator==(const ZeroReport&, const ZeroReport&) = default;
};

namespace detail {

inline bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

inline bool close_rel(Complex a, Complex b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}

/// Sorted, with points within tol (relative above magnitude 1) merged into the first.
inline std::vector<Complex> cluster(std::vector<Complex> pts, double tol) {
    std::sort(pts.begin(), pts.end(), complex_less);
    std::vector<Complex> reps;
    for (const auto& p : pts) {
        const bool merged = std::any_of(reps.begin(), reps.end(), [&](Complex r) { return close_rel(r, p, tol); });
        if (!merged) reps.push_back(p);
    }
    return reps;
}

inline constexpr double kCompressionConditionCap = 1e12;
inline constexpr double kInfiniteEigenvalueFloor = 1e-12;

}  // namespace detail

/// Candidate finite zeros from a random square compression of the pencil.
///
/// U (rho x rows) and V (cols x rho) are standard normal, s is a random point with
/// 0.5 <= |s| < 2. With G = U (F - sE) V and H = U E V the compressed pencil is
/// (Z - s) H - G, so every eigenvalue lambda of G^{-1} H gives a candidate
/// Z = s + 1/lambda. Eigenvalues with |lambda| <= 1e-12 belong to infinity and are
/// dropped. An ill-conditioned G (condition >= 1e12) triggers a fresh draw.
///
/// Every finite point where the pencil rank drops below rho is returned with
/// probability one; spurious points are expected and left to verify_zero.
inline std::vector<Complex> finite_zero_candidates(const MatrixPencil& pencil, const TolerancePolicy& policy,
                                                   std::uint64_t seed, int rho,
                                                   Stream stream = Stream::Compression) {
    if (rho <= 0) return {};
    const Eigen::Index rows = pencil.rows(), cols = pencil.cols();
    for (int attempt = 0; attempt < policy.resample_limit; ++attempt) {
        CounterRng rng(seed, stream, static_cast<std::uint64_t>(attempt));
        const CMatrix U     = rng.normal_matrix(rho, rows).cast<Complex>();
        const CMatrix V     = rng.normal_matrix(cols, rho).cast<Complex>();
        const double radius = 0.5 + 1.5 * rng.next_uniform();
        const Complex shift = std::polar(radius, 2.0 * std::numbers::pi * rng.next_uniform());

        const CMatrix G = U * (pencil.F - shift * pencil.E) * V;
        if (!(condition_number(G) < detail::kCompressionConditionCap)) continue;
        const CMatrix H = U * pencil.E * V;

        std::vector<Complex> out;
        for (const Complex lambda : eigenvalues(CMatrix(G.partialPivLu().solve(H))))
            if (std::abs(lambda) > detail::kInfiniteEigenvalueFloor) out.push_back(shift + 1.0 / lambda);
        return detail::cluster(std::move(out), policy.cluster_tol);
    }
    throw Error(ErrorKind::CompressionFailure,
                "no well-conditioned compression in " + std::to_string(policy.resample_limit) + " draws");
}

/// Geometric multiplicity of Z0 as a zero; 0 means not a zero.
inline int verify_zero(const MatrixPencil& pencil, Complex z0, const TolerancePolicy& policy, int normal_rank) {
    return std::max(0, normal_rank - rank_at(pencil, z0, policy));
}

/// Zeros of a blocked system: multiplicities at 0 and infinity plus all verified
/// finite nonzero zeros.
///
/// Candidates come from two independent compressions. A candidate is rank-tested
/// only if the second compression reproduces it (within sqrt(cluster_tol),
/// relative); the rest are compression artifacts, typically perturbed infinite
/// eigenvalues, and are listed as "unconfirmed" diagnostics. Candidates with
/// zero_radius < |Z| < cluster_tol are listed as "near_origin".
inline ZeroReport zero_report(const BlockedSystem& blk, const TolerancePolicy& policy = {}, std::uint64_t seed = 0) {
    const MatrixPencil P = system_pencil(blk);

    ZeroReport rep;
    rep.tau              = blk.tau;
    rep.seed             = seed;
    rep.normal_rank      = normal_rank(P, policy, seed);
    rep.mult_at_zero     = verify_zero(P, Complex(0.0, 0.0), policy, rep.normal_rank);
    rep.mult_at_infinity = std::max(0, rep.normal_rank - rank_at_infinity(blk, policy));

    const auto primary = finite_zero_candidates(P, policy, seed, rep.normal_rank, Stream::Compression);
    const auto confirm = finite_zero_candidates(P, policy, seed, rep.normal_rank, Stream::Confirmation);
    rep.candidates_examined = static_cast<int>(primary.size());

    const double match_tol = std::sqrt(policy.cluster_tol);
    for (const Complex z : primary) {
        const double r = std::abs(z);
        if (r <= policy.zero_radius) continue;
        if (r < policy.cluster_tol) {
            rep.diagnostics.push_back({z, "near_origin"});
            continue;
        }
        const bool reproduced =
            std::any_of(confirm.begin(), confirm.end(), [&](Complex w) { return detail::close_rel(z, w, match_tol); });
        if (!reproduced) {
            rep.diagnostics.push_back({z, "unconfirmed"});
            continue;
        }
        if (const int mult = verify_zero(P, z, policy, rep.normal_rank); mult > 0)
            rep.finite_nonzero_zeros.push_back({z, mult});
    }
    return rep;
}

/// Zeros of a square blocked system with invertible feedthrough: eig(A - B D^{-1} C).
inline std::vector<Complex> square_blocked_zeros(const BlockedSystem& blk, const TolerancePolicy& policy = {}) {
    if (blk.D.rows() != blk.D.cols())
        throw Error(ErrorKind::InvalidInput, "square_blocked_zeros needs a square feedthrough, got " +
                                                 std::to_string(blk.D.rows()) + "x" + std::to_string(blk.D.cols()));
    const double cond = condition_number(blk.D);
    if (!(cond < policy.condition_cap))
        throw Error(ErrorKind::SingularD, "condition number of D is " + std::to_string(cond));
    const Matrix DinvC = blk.D.fullPivLu().solve(blk.C);
    return eigenvalues(Matrix(blk.A - blk.B * DinvC));
}

}  // namespace mrz
