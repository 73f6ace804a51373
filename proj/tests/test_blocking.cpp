#include <catch2/catch_amalgamated.hpp>

#include "mrzeros/blocking.hpp"
#include "test_support.hpp"

using namespace mrz;

namespace {

MultirateSystem scalar(double a, double b, double cf, double cs, double df, double ds, int N = 2) {
    MultirateSystem s{{1, 1, 1, 1, N}, {}, {}, {}, {}, {}, {}};
    s.A  = Matrix::Constant(1, 1, a);
    s.B  = Matrix::Constant(1, 1, b);
    s.Cf = Matrix::Constant(1, 1, cf);
    s.Cs = Matrix::Constant(1, 1, cs);
    s.Df = Matrix::Constant(1, 1, df);
    s.Ds = Matrix::Constant(1, 1, ds);
    return s;
}

double rel_diff(const Matrix& x, const Matrix& y) {
    return (x - y).norm() / std::max(1.0, y.norm());
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no mrz::Error thrown");
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("block matches a time-domain simulation of the unblocked model") {
    const std::vector<Dimensions> dims = {{1, 3, 1, 5, 2}, {3, 2, 1, 4, 3}, {2, 1, 2, 1, 4}, {4, 2, 2, 3, 5}};
    for (const auto& d : dims)
        for (int tau = 1; tau <= d.N; ++tau) {
            const auto sys = random_generic(d, 100 + tau);
            const auto blk = block(sys, tau);
            const auto sim = testing::simulate_blocked(sys, tau);
            INFO(to_string(d) << " tau=" << tau);
            CHECK(rel_diff(blk.A, sim.A) < 1e-12);
            CHECK(rel_diff(blk.B, sim.B) < 1e-12);
            CHECK(rel_diff(blk.C, sim.C) < 1e-12);
            CHECK(rel_diff(blk.D, sim.D) < 1e-12);
        }
}

TEST_CASE("block on a scalar system") {
    const auto sys = scalar(2, 3, 5, 7, 11, 13);
    for (int tau = 1; tau <= 2; ++tau) CHECK(block(sys, tau).A(0, 0) == 4.0);

    Matrix D2(3, 2);
    D2 << 11, 0,
          5 * 3, 11,
          13, 0;
    CHECK(block(sys, 2).D == D2);

    Matrix D1(3, 2);
    D1 << 11, 0,
          5 * 3, 11,
          7 * 3, 13;
    CHECK(block(sys, 1).D == D1);
}

TEST_CASE("block rejects out-of-range delays") {
    const auto sys = scalar(2, 3, 5, 7, 11, 13);
    CHECK(kind_of([&] { (void)block(sys, 0); }) == ErrorKind::TauOutOfRange);
    CHECK(kind_of([&] { (void)block(sys, 3); }) == ErrorKind::TauOutOfRange);
    CHECK(kind_of([&] { (void)block_reverse(sys, 0); }) == ErrorKind::TauOutOfRange);
}

TEST_CASE("fast rows of the blocked system do not depend on tau") {
    const auto sys   = random_generic({3, 2, 1, 4, 4}, 9);
    const auto first = fast_subsystem(block(sys, 1));
    CHECK(first.C.rows() == 4);
    for (int tau = 2; tau <= 4; ++tau) {
        const auto fs = fast_subsystem(block(sys, tau));
        CHECK(fs.C == first.C);
        CHECK(fs.D == first.D);
        CHECK(fs.output_rows() == 4 * 1);
    }
}

TEST_CASE("system pencil layout") {
    const auto sys = random_generic({1, 1, 1, 1, 2}, 1);
    const auto P   = system_pencil(block(sys, 1));
    CMatrix E      = CMatrix::Zero(4, 3);
    E(0, 0)        = 1.0;
    CHECK(P.E == E);
    CHECK(P.at(0.0) == CMatrix(-P.F));

    const auto Q = system_pencil(block(random_generic({3, 2, 1, 4, 3}, 2), 2));
    const Complex z1(0.3, -1.2), z2(-2.0, 0.5);
    // affine in Z: P(z1) + P(z2) = P(z1 + z2) - F
    CHECK((Q.at(z1) + Q.at(z2) - Q.at(z1 + z2) + Q.F).norm() < 1e-12);
    CHECK(Q.rows() == 3 + 3 * 1 + 4);
    CHECK(Q.cols() == 3 + 3 * 2);
}

TEST_CASE("example1 system matrix has the displayed pattern") {
    const auto sys = fixture(FixtureName::Example1, {1, 3, 1, 5, 2}, 1, 5);
    const auto M   = system_pencil(block(sys, 1)).at(1.0);
    REQUIRE(M.rows() == 8);
    REQUIRE(M.cols() == 7);
    const double a = sys.A(0, 0), b1 = sys.B(0, 0), b2 = sys.B(0, 1), b3 = sys.B(0, 2);
    // state row: [Z - a^2, -a b, -b]
    CHECK(std::abs(M(0, 0) - (1.0 - a * a)) < 1e-14);
    CHECK(std::abs(M(0, 1) + a * b1) < 1e-14);
    CHECK(std::abs(M(0, 3) + a * b3) < 1e-14);
    CHECK(std::abs(M(0, 4) + b1) < 1e-14);
    CHECK(std::abs(M(0, 5) + b2) < 1e-14);
    // first fast row: [cf, df, 0]
    CHECK(M(1, 0) == Complex(sys.Cf(0, 0)));
    for (int j = 0; j < 3; ++j) {
        CHECK(M(1, 1 + j) == Complex(sys.Df(0, j)));
        CHECK(M(1, 4 + j) == Complex(0.0));
    }
    // first slow row starts with cs1 * a
    CHECK(std::abs(M(3, 0) - sys.Cs(0, 0) * a) < 1e-14);

    const auto fs = fast_subsystem(block(sys, 1));
    CHECK(fs.C.rows() == 2);
    CHECK(fs.D.rows() == 2);
    CHECK(fs.B.cols() + fs.A.cols() == 7);
}

TEST_CASE("transfer_eval on a scalar system by hand") {
    const double b = 2, cf = 3, cs = 5, df = 7, ds = 11;
    const auto blk = block(scalar(1, b, cf, cs, df, ds), 1);
    const CMatrix V = transfer_eval(blk, 2.0);
    Matrix expected(3, 2);
    expected << cf * b + df, cf * b,
                2 * cf * b, cf * b + df,
                2 * cs * b, cs * b + ds;
    CHECK((V - expected.cast<Complex>()).norm() < 1e-12);
}

TEST_CASE("transfer_eval tends to D at large Z") {
    const auto blk  = block(random_generic({3, 2, 1, 4, 3}, 4), 2);
    const CMatrix V = transfer_eval(blk, 1e8);
    CHECK((V - blk.D.cast<Complex>()).norm() / blk.D.norm() < 1e-6);
}

TEST_CASE("transfer_eval at an eigenvalue of A_tau is singular") {
    const auto blk = block(scalar(1.5, 1, 1, 1, 1, 1), 1);
    CHECK(kind_of([&] { (void)transfer_eval(blk, 2.25); }) == ErrorKind::ResolventSingular);
}

TEST_CASE("block_reverse on A = I") {
    auto sys = scalar(1, 2, 3, 5, 7, 11);
    const auto rev = block_reverse(sys, 1);
    CHECK(rev.reverse_time);
    CHECK(rev.D(2, 0) == 0.0);
    CHECK(std::abs(rev.D(2, 1) - (11 - 5 * 2)) < 1e-14);
}

TEST_CASE("block_reverse is the forward blocking of the reverse-time system at the dual delay") {
    for (const Dimensions d : {Dimensions{3, 2, 1, 4, 3}, Dimensions{2, 3, 1, 6, 4}, Dimensions{1, 3, 1, 5, 2}})
        for (int tau = 1; tau <= d.N; ++tau) {
            const auto sys = random_generic(d, 77);
            const auto rev = block_reverse(sys, tau);
            const auto fwd = block(reverse_time(sys), d.N - tau + 1);
            // reverse the order of the input blocks and of the fast output blocks
            Eigen::PermutationMatrix<Eigen::Dynamic> in(d.N * d.m), out(d.N * d.p1 + d.p2);
            for (int i = 0; i < d.N; ++i)
                for (int k = 0; k < d.m; ++k) in.indices()[i * d.m + k] = (d.N - 1 - i) * d.m + k;
            for (int i = 0; i < d.N; ++i)
                for (int k = 0; k < d.p1; ++k) out.indices()[i * d.p1 + k] = (d.N - 1 - i) * d.p1 + k;
            for (int k = 0; k < d.p2; ++k) out.indices()[d.N * d.p1 + k] = d.N * d.p1 + k;
            INFO(to_string(d) << " tau=" << tau);
            CHECK(rel_diff(rev.A, fwd.A) < 1e-10);
            CHECK(rel_diff(Matrix(rev.B * in), fwd.B) < 1e-10);
            CHECK(rel_diff(Matrix(out * rev.C), fwd.C) < 1e-10);
            CHECK(rel_diff(Matrix(out * rev.D * in), fwd.D) < 1e-10);
        }
}

TEST_CASE("lift relation between neighbouring delays") {
    const auto sys = random_generic({3, 2, 1, 4, 3}, 12);
    const Complex z(0.7, 0.2);
    CHECK(lift_relation_residual(sys, 1, z) < 1e-10);
    CHECK(lift_relation_residual(sys, 2, z) < 1e-10);
    CHECK(kind_of([&] { (void)lift_relation_residual(sys, 1, 0.0); }) == ErrorKind::ZeroZ);
    CHECK(kind_of([&] { (void)lift_relation_residual(sys, 3, z); }) == ErrorKind::TauOutOfRange);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = random_generic({4, 3, 2, 5, 4}, seed);
        CounterRng rng(seed, Stream::Scratch);
        for (int tau = 1; tau < 4; ++tau) {
            const Complex w = std::polar(1.0, 6.283185307179586 * rng.next_uniform());
            CHECK(lift_relation_residual(s, tau, w) < 1e-9);
        }
    }
}
