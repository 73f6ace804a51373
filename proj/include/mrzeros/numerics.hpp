#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>

#include "blocking.hpp"
#include "linalg.hpp"
#include "random.hpp"

namespace mrz {

/// Radius of the sampling circle used for normal rank. Bounded away from 0 and 1
/// and from nothing else in particular.
inline constexpr double kNormalRankRadius = 1.372000091;

struct RankProfile {
    int normal_rank      = 0;
    int rank_at_zero     = 0;
    int rank_at_infinity = 0;  ///< n + rank(D)
    int rank_D           = 0;

    friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

inline int rank_at(const MatrixPencil& pencil, Complex z, const TolerancePolicy& policy = {}) {
    return numerical_rank(pencil.at(z), policy);
}

/// Maximum rank over normal_rank_samples points on the circle |Z| = kNormalRankRadius
/// at seeded angles.
inline int normal_rank(const MatrixPencil& pencil, const TolerancePolicy& policy = {}, std::uint64_t seed = 0) {
    CounterRng rng(seed, Stream::NormalRankAngles);
    const int cap = static_cast<int>(std::min(pencil.rows(), pencil.cols()));
    int best      = 0;
    for (int k = 0; k < policy.normal_rank_samples && best < cap; ++k) {
        const double theta = 2.0 * std::numbers::pi * rng.next_uniform();
        best = std::max(best, rank_at(pencil, std::polar(kNormalRankRadius, theta), policy));
    }
    return best;
}

inline int rank_at_infinity(const BlockedSystem& blk, const TolerancePolicy& policy = {}) {
    return static_cast<int>(blk.A.rows()) + numerical_rank(blk.D, policy);
}

inline RankProfile rank_profile(const BlockedSystem& blk, const TolerancePolicy& policy = {},
                                std::uint64_t seed = 0) {
    const MatrixPencil P = system_pencil(blk);
    RankProfile rp;
    rp.normal_rank      = normal_rank(P, policy, seed);
    rp.rank_at_zero     = rank_at(P, Complex(0.0, 0.0), policy);
    rp.rank_D           = numerical_rank(blk.D, policy);
    rp.rank_at_infinity = static_cast<int>(blk.A.rows()) + rp.rank_D;
    return rp;
}

}  // namespace mrz
