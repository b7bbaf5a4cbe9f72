#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lisae/matrix.hpp"
#include "lisae/rng.hpp"

using namespace lisae;

TEST(Matrix, ConstructionAndIndexing) {
    Matrix m{{1.0, 2.0}, {3.0, 4.0}, {5.0, 6.0}};
    EXPECT_EQ(m.rows(), 3u);
    EXPECT_EQ(m.cols(), 2u);
    EXPECT_DOUBLE_EQ(m(2, 1), 6.0);
    EXPECT_THROW(Matrix(2, 2, Vector{1.0, 2.0, 3.0}), ParameterError);
    EXPECT_THROW((Matrix{{1.0, 2.0}, {3.0}}), ParameterError);
}

TEST(Matrix, Product) {
    Matrix a{{1.0, 2.0}, {3.0, 4.0}};
    Matrix b{{5.0, 6.0}, {7.0, 8.0}};
    Matrix c = a * b;
    EXPECT_DOUBLE_EQ(c(0, 0), 19.0);
    EXPECT_DOUBLE_EQ(c(0, 1), 22.0);
    EXPECT_DOUBLE_EQ(c(1, 0), 43.0);
    EXPECT_DOUBLE_EQ(c(1, 1), 50.0);
    EXPECT_THROW(a * Matrix(3, 3), ParameterError);
}

TEST(Matrix, MatvecAndTransposedMatvec) {
    Matrix m{{1.0, 0.0, 2.0}, {0.0, 3.0, 0.0}};
    Vector x{1.0, 2.0, 3.0};
    Vector y = matvec(m, x);
    ASSERT_EQ(y.size(), 2u);
    EXPECT_DOUBLE_EQ(y[0], 7.0);
    EXPECT_DOUBLE_EQ(y[1], 6.0);
    Vector z = matvec_transposed(m, Vector{1.0, 1.0});
    ASSERT_EQ(z.size(), 3u);
    EXPECT_DOUBLE_EQ(z[0], 1.0);
    EXPECT_DOUBLE_EQ(z[1], 3.0);
    EXPECT_DOUBLE_EQ(z[2], 2.0);
    EXPECT_THROW(matvec(m, Vector{1.0}), ParameterError);
}

TEST(Matrix, FiniteValidation) {
    Matrix m(2, 2, 1.0);
    EXPECT_TRUE(m.is_finite());
    m(1, 1) = std::nan("");
    EXPECT_FALSE(m.is_finite());
    EXPECT_THROW(m.require_finite("test"), DataError);
}

TEST(MatrixCsv, RoundTripPreservesEntriesExactly) {
    Rng rng(7);
    Matrix m(5, 4);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rng.normal() * 1e3;
    std::stringstream ss;
    write_csv(m, ss);
    Matrix back = read_csv(ss);
    ASSERT_EQ(back.rows(), m.rows());
    ASSERT_EQ(back.cols(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) {
        EXPECT_DOUBLE_EQ(back.data()[i], m.data()[i]);
    }
}

TEST(MatrixCsv, RejectsRaggedAndGarbage) {
    {
        std::stringstream ss("1,2\n3\n");
        EXPECT_THROW(read_csv(ss), ParseError);
    }
    {
        std::stringstream ss("1,abc\n");
        EXPECT_THROW(read_csv(ss), ParseError);
    }
}

TEST(MatrixCsv, FileIoErrors) {
    EXPECT_THROW(read_csv("/nonexistent/path/x.csv"), IoError);
}

TEST(Rng, SeededDeterminism) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.uniform(), b.uniform());
        EXPECT_EQ(a.normal(), b.normal());
    }
}

TEST(Rng, NormalMoments) {
    Rng rng(3);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.normal();
        sum += v;
        sumsq += v * v;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sumsq / n, 1.0, 0.02);
}

TEST(Rng, ShuffleIsPermutation) {
    Rng rng(11);
    auto idx = iota_indices(50);
    auto orig = idx;
    rng.shuffle(idx);
    EXPECT_NE(idx, orig);
    std::sort(idx.begin(), idx.end());
    EXPECT_EQ(idx, orig);
}
