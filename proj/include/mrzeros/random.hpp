#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "types.hpp"

namespace mrz {

/// Sub-stream identifiers. Every consumer of randomness draws from its own
/// stream so that adding a draw in one place never shifts another.
enum class Stream : std::uint64_t {
    SystemMatrices   = 1,
    ExampleFixture   = 2,
    NormalRankAngles = 3,
    Compression      = 4,
    Confirmation     = 5,
    LiftPoints       = 6,
    Scratch          = 7,
};

/// Counter-based generator.
///
/// Draw k of the stream (seed, stream) is
///     splitmix64_finalize(splitmix64_finalize(seed ^ (stream * G)) + (k + 1) * G)
/// with G = 0x9E3779B97F4A7C15. Uniforms take the top 53 bits; normals use the
/// cosine branch of Box-Muller on draws (2j, 2j+1). Nothing depends on
/// implementation-defined library distributions, so the sequence is the same on
/// every IEEE-754 platform with a correctly rounded libm.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, Stream stream, std::uint64_t substream = 0)
        : key_(finalize(finalize(seed ^ (static_cast<std::uint64_t>(stream) * kGolden)) ^
                        (substream * 0xD1B54A32D192ED03ULL))) {}

    std::uint64_t bits(std::uint64_t k) const { return finalize(key_ + (k + 1) * kGolden); }

    /// Uniform in [0, 1).
    double uniform_at(std::uint64_t k) const {
        return static_cast<double>(bits(k) >> 11) * 0x1.0p-53;
    }

    double normal_at(std::uint64_t j) const {
        const double u1 = 1.0 - uniform_at(2 * j);  // (0, 1]
        const double u2 = uniform_at(2 * j + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double next_uniform() { return uniform_at(counter_++); }

    double next_normal() {
        const double v = normal_at(normal_counter_ + (1ULL << 40));
        ++normal_counter_;
        return v;
    }

    Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols) {
        Matrix M(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = next_normal();
        return M;
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    static constexpr std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_        = 0;
    std::uint64_t normal_counter_ = 0;
};

}  // namespace mrz
