#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linalg.hpp"
#include "random.hpp"
#include "types.hpp"

namespace mrz {

/// Unblocked two-rate model
///     x(k+1)  = A x(k) + B u(k)
///     yf(k)   = Cf x(k) + Df u(k)     every k
///     ys(k)   = Cs x(k) + Ds u(k)     k = 0, N, 2N, ...
struct MultirateSystem {
    Dimensions dims;
    Matrix A, B, Cf, Cs, Df, Ds;

    Matrix C() const {
        Matrix out(Cf.rows() + Cs.rows(), Cf.cols());
        out << Cf, Cs;
        return out;
    }
    Matrix D() const {
        Matrix out(Df.rows() + Ds.rows(), Df.cols());
        out << Df, Ds;
        return out;
    }
};

struct ValidationResult {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
};

inline ValidationResult validate(const MultirateSystem& sys) {
    ValidationResult res;
    const auto& d = sys.dims;
    if (!d.valid()) {
        res.violations.push_back("dims: need n,m,p1,p2 >= 1 and N >= 2, got " + to_string(d));
        return res;
    }
    auto check = [&](std::string_view name, const Matrix& M, int rows, int cols) {
        if (M.rows() != rows || M.cols() != cols) {
            res.violations.push_back(std::string(name) + ": shape " + std::to_string(M.rows()) + "x" +
                                     std::to_string(M.cols()) + ", expected " + std::to_string(rows) + "x" +
                                     std::to_string(cols));
        } else if (!M.allFinite()) {
            res.violations.push_back(std::string(name) + ": contains a non-finite entry");
        }
    };
    check("A", sys.A, d.n, d.n);
    check("B", sys.B, d.n, d.m);
    check("Cf", sys.Cf, d.p1, d.n);
    check("Cs", sys.Cs, d.p2, d.n);
    check("Df", sys.Df, d.p1, d.m);
    check("Ds", sys.Ds, d.p2, d.m);
    return res;
}

inline void require_valid(const MultirateSystem& sys) {
    const auto res = validate(sys);
    if (!res.ok()) throw Error(ErrorKind::InvalidInput, res.violations.front());
}

/// Tallness regime of the blocked system.
inline SystemClass classify(const Dimensions& d) {
    if (d.p1 > d.m) return SystemClass::FastTall;
    if (d.N * d.p1 + d.p2 > d.N * d.m) return SystemClass::MixedTall;
    return SystemClass::NotTall;
}

inline bool is_tall(const Dimensions& d) { return classify(d) != SystemClass::NotTall; }

/// Every entry i.i.d. N(0,1), drawn row-major in the order A, B, Cf, Cs, Df, Ds.
inline MultirateSystem random_generic(const Dimensions& dims, std::uint64_t seed) {
    if (!dims.valid()) throw Error(ErrorKind::InvalidInput, "random_generic: invalid dims " + to_string(dims));
    CounterRng rng(seed, Stream::SystemMatrices);
    MultirateSystem sys{dims, {}, {}, {}, {}, {}, {}};
    sys.A  = rng.normal_matrix(dims.n, dims.n);
    sys.B  = rng.normal_matrix(dims.n, dims.m);
    sys.Cf = rng.normal_matrix(dims.p1, dims.n);
    sys.Cs = rng.normal_matrix(dims.p2, dims.n);
    sys.Df = rng.normal_matrix(dims.p1, dims.m);
    sys.Ds = rng.normal_matrix(dims.p2, dims.m);
    return sys;
}

/// Backward-running model built from A^{-1}:
///     A~ = A^{-1}, B~ = -A^{-1}B, C~ = C A^{-1}, D~ = D - C A^{-1} B.
inline MultirateSystem reverse_time(const MultirateSystem& sys, const TolerancePolicy& policy = {}) {
    require_valid(sys);
    const double cond = condition_number(sys.A);
    if (!(cond < policy.condition_cap))
        throw Error(ErrorKind::SingularA, "condition number of A is " + std::to_string(cond));
    const auto lu     = sys.A.fullPivLu();
    const Matrix Ainv = lu.inverse();
    const Matrix AinvB = lu.solve(sys.B);

    MultirateSystem rev{sys.dims, {}, {}, {}, {}, {}, {}};
    rev.A  = Ainv;
    rev.B  = -AinvB;
    rev.Cf = sys.Cf * Ainv;
    rev.Cs = sys.Cs * Ainv;
    rev.Df = sys.Df - sys.Cf * AinvB;
    rev.Ds = sys.Ds - sys.Cs * AinvB;
    return rev;
}

// ---------------------------------------------------------------------------
// Structured fixtures with known exact ranks.

enum class FixtureName { Example1, ShiftSmallN, ShiftLargeN, ShiftControllability };

constexpr std::string_view to_string(FixtureName f) {
    switch (f) {
        case FixtureName::Example1: return "example1";
        case FixtureName::ShiftSmallN: return "shift_small_n";
        case FixtureName::ShiftLargeN: return "shift_large_n";
        case FixtureName::ShiftControllability: return "shift_controllability";
    }
    return "unknown";
}

inline std::optional<FixtureName> parse_fixture_name(std::string_view s) {
    for (auto f : {FixtureName::Example1, FixtureName::ShiftSmallN, FixtureName::ShiftLargeN,
                   FixtureName::ShiftControllability})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

/// n x n circular left shift through k positions: column j is e_{(j+k) mod n}.
inline Matrix circular_shift(int n, int k) {
    Matrix S = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) S((j + k) % n, j) = 1.0;
    return S;
}

namespace detail {

inline MultirateSystem zero_system(const Dimensions& d) {
    return {d,
            Matrix::Zero(d.n, d.n),
            Matrix::Zero(d.n, d.m),
            Matrix::Zero(d.p1, d.n),
            Matrix::Zero(d.p2, d.n),
            Matrix::Zero(d.p1, d.m),
            Matrix::Zero(d.p2, d.m)};
}

[[noreturn]] inline void unsupported(FixtureName f, const Dimensions& d, int tau, const std::string& why) {
    throw Error(ErrorKind::UnsupportedDims, std::string(to_string(f)) + " " + to_string(d) +
                                                " tau=" + std::to_string(tau) + ": " + why);
}

inline MultirateSystem example1(const Dimensions& d, std::uint64_t seed) {
    if (d != Dimensions{1, 3, 1, 5, 2}) unsupported(FixtureName::Example1, d, 0, "requires dims (1,3,1,5,2)");
    CounterRng rng(seed, Stream::ExampleFixture);
    MultirateSystem sys = zero_system(d);
    sys.A  = rng.normal_matrix(1, 1);
    sys.B  = rng.normal_matrix(1, 3);
    sys.Cf = rng.normal_matrix(1, 1);
    sys.Cs = rng.normal_matrix(5, 1);
    sys.Df = rng.normal_matrix(1, 3);
    sys.Ds = rng.normal_matrix(5, 3);
    return sys;
}

// Shared pieces of both rank-D constructions; k = m - p1.
inline void fill_shift_io(MultirateSystem& sys, int k, int slow_identity) {
    const auto& d = sys.dims;
    sys.B.topLeftCorner(k, k).setIdentity();
    sys.Df.rightCols(d.p1).setIdentity();
    sys.Cs.topLeftCorner(slow_identity, slow_identity).setIdentity();
    sys.Ds.block(slow_identity, 0, k, k).setIdentity();
}

inline MultirateSystem shift_small_n(const Dimensions& d, int tau) {
    const int k = d.m - d.p1;
    if (k < 1) unsupported(FixtureName::ShiftSmallN, d, tau, "requires p1 < m");
    if (tau < 1 || tau >= d.N) unsupported(FixtureName::ShiftSmallN, d, tau, "requires 1 <= tau < N");
    if (d.n < k) unsupported(FixtureName::ShiftSmallN, d, tau, "requires n >= m - p1");
    if (d.n > (d.N - tau) * k) unsupported(FixtureName::ShiftSmallN, d, tau, "requires n <= (N - tau)(m - p1)");
    if (d.p2 < d.n + k) unsupported(FixtureName::ShiftSmallN, d, tau, "requires p2 >= n + m - p1");

    MultirateSystem sys = zero_system(d);
    sys.A = circular_shift(d.n, k);
    fill_shift_io(sys, k, d.n);
    return sys;
}

inline MultirateSystem shift_large_n(const Dimensions& d, int tau) {
    const int k = d.m - d.p1;
    if (k < 1) unsupported(FixtureName::ShiftLargeN, d, tau, "requires p1 < m");
    if (tau < 1 || tau >= d.N) unsupported(FixtureName::ShiftLargeN, d, tau, "requires 1 <= tau < N");
    const int cycle = (d.N - tau) * k;
    if (d.n <= cycle) unsupported(FixtureName::ShiftLargeN, d, tau, "requires n > (N - tau)(m - p1)");
    if (d.p2 < cycle + k) unsupported(FixtureName::ShiftLargeN, d, tau, "requires p2 >= (N - tau + 1)(m - p1)");

    MultirateSystem sys = zero_system(d);
    sys.A.topLeftCorner(cycle, cycle) = circular_shift(cycle, k);
    fill_shift_io(sys, k, cycle);
    return sys;
}

inline MultirateSystem shift_controllability(const Dimensions& d) {
    MultirateSystem sys = zero_system(d);
    sys.A = circular_shift(d.n, d.m % d.n);
    const int r = std::min(d.n, d.m);
    sys.B.topLeftCorner(r, r).setIdentity();
    return sys;
}

}  // namespace detail

/// Deterministic structured systems. tau is used only by the shift constructions
/// (for applicability); seed only by example1.
inline MultirateSystem fixture(FixtureName name, const Dimensions& dims, int tau, std::uint64_t seed) {
    if (!dims.valid()) throw Error(ErrorKind::InvalidInput, "fixture: invalid dims " + to_string(dims));
    switch (name) {
        case FixtureName::Example1: return detail::example1(dims, seed);
        case FixtureName::ShiftSmallN: return detail::shift_small_n(dims, tau);
        case FixtureName::ShiftLargeN: return detail::shift_large_n(dims, tau);
        case FixtureName::ShiftControllability: return detail::shift_controllability(dims);
    }
    throw Error(ErrorKind::InvalidInput, "unknown fixture");
}

/// [B, AB, ..., A^{nu-1}B].
inline Matrix controllability_matrix(const Matrix& A, const Matrix& B, int nu) {
    Matrix out(A.rows(), B.cols() * nu);
    Matrix blockAB = B;
    for (int k = 0; k < nu; ++k) {
        out.middleCols(k * B.cols(), B.cols()) = blockAB;
        blockAB = A * blockAB;
    }
    return out;
}

}  // namespace mrz
