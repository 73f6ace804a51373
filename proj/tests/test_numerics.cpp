#include <catch2/catch_amalgamated.hpp>

#include "mrzeros/numerics.hpp"
#include "mrzeros/oracle.hpp"
#include "test_support.hpp"

using namespace mrz;

TEST_CASE("numerical_rank basics") {
    const TolerancePolicy pol;
    CHECK(numerical_rank(Matrix::Identity(3, 3), pol) == 3);
    CHECK(numerical_rank(Matrix::Zero(4, 4), pol) == 0);
    CounterRng rng(1, Stream::Scratch);
    const Matrix u = rng.normal_matrix(5, 1), v = rng.normal_matrix(5, 1);
    CHECK(numerical_rank(Matrix(u * v.transpose()), pol) == 1);
    CHECK(numerical_rank(Matrix(0, 3), pol) == 0);
}

TEST_CASE("numerical_rank is invariant under well-conditioned multiplication") {
    const TolerancePolicy pol;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CounterRng rng(seed, Stream::Scratch);
        const Matrix X = rng.normal_matrix(6, 3) * rng.normal_matrix(3, 7);  // rank 3
        Matrix T;
        do {
            T = rng.normal_matrix(6, 6);
        } while (condition_number(T) >= 1e4);
        CHECK(numerical_rank(X, pol) == 3);
        CHECK(numerical_rank(Matrix(T * X), pol) == 3);
    }
}

TEST_CASE("rank_at on a 1x1 pencil") {
    const MatrixPencil P(Matrix::Identity(1, 1), Matrix::Constant(1, 1, 2.0));
    CHECK(rank_at(P, 2.0) == 0);
    CHECK(rank_at(P, 3.0) == 1);
}

TEST_CASE("normal_rank of simple pencils") {
    CHECK(normal_rank(MatrixPencil(Matrix::Identity(2, 2), Matrix::Zero(2, 2))) == 2);
    CHECK(normal_rank(MatrixPencil(Matrix::Zero(2, 2), Matrix::Zero(2, 2))) == 0);
}

TEST_CASE("example1 ranks") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto sys = fixture(FixtureName::Example1, {1, 3, 1, 5, 2}, 1, seed);
        const auto blk = block(sys, 1);
        const auto P   = system_pencil(blk);
        CHECK(rank_at(P, Complex(0.41, -0.93)) == 6);
        CHECK(normal_rank(P, {}, seed) == 6);
        CHECK(rank_at_infinity(blk) == 6);
        const auto rp = rank_profile(blk, {}, seed);
        CHECK(rp.rank_D == 5);
        CHECK(rp.rank_at_zero == 5);
        CHECK(rp.rank_at_zero <= rp.normal_rank);
        CHECK(rp.rank_at_infinity <= rp.normal_rank);
    }
}

TEST_CASE("rank_at_infinity with zero feedthrough") {
    auto sys = random_generic({3, 2, 1, 4, 3}, 2);
    sys.Df.setZero();
    sys.Ds.setZero();
    sys.Cf.setZero();
    sys.Cs.setZero();
    CHECK(rank_at_infinity(block(sys, 1)) == 3);
}

TEST_CASE("generic ranks for p1 >= m") {
    for (const Dimensions d : {Dimensions{3, 2, 2, 1, 2}, Dimensions{4, 1, 2, 1, 3}, Dimensions{2, 2, 3, 2, 2}})
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto sys = random_generic(d, seed);
            for (int tau = 1; tau <= d.N; ++tau) {
                const auto blk = block(sys, tau);
                CHECK(normal_rank(system_pencil(blk), {}, seed) == d.n + d.N * d.m);
                if (d.p1 > d.m) CHECK(rank_at_infinity(blk) == d.n + d.N * d.m);
            }
        }
}

TEST_CASE("normal rank does not depend on the sampling seed or tau") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dimensions d{4, 3, 1, 7, 3};
        const auto sys = random_generic(d, seed);
        const int ref  = normal_rank(system_pencil(block(sys, 1)), {}, 0);
        for (int tau = 1; tau <= d.N; ++tau) {
            const auto P = system_pencil(block(sys, tau));
            CHECK(normal_rank(P, {}, seed + 1000) == ref);
            CHECK(rank_at(P, Complex(-0.2, 0.9)) <= ref);
        }
        CHECK(ref == predict_normal_rank(d).value);
    }
}

TEST_CASE("eigenvalues") {
    using testing::same_point_set;
    Matrix D = Matrix::Zero(3, 3);
    D.diagonal() << 1, 2, 3;
    CHECK(same_point_set(eigenvalues(D), {1.0, 2.0, 3.0}, 1e-12));

    Matrix R(2, 2);
    R << 0, -1, 1, 0;
    CHECK(same_point_set(eigenvalues(R), {Complex(0, 1), Complex(0, -1)}, 1e-12));

    Matrix Cm(2, 2);
    Cm << 3, -2, 1, 0;  // companion of z^2 - 3z + 2
    CHECK(same_point_set(eigenvalues(Cm), {1.0, 2.0}, 1e-12));

    CHECK_THROWS_AS(eigenvalues(Matrix(Matrix::Zero(2, 3))), Error);
}

TEST_CASE("matrix_powers by repeated multiplication") {
    Matrix A(2, 2);
    A << 1, 1, 0, 1;
    const auto pw = matrix_powers(A, 4);
    REQUIRE(pw.size() == 5);
    CHECK(pw[0] == Matrix::Identity(2, 2));
    CHECK(pw[4](0, 1) == 4.0);
}
