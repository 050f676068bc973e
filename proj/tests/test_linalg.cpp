#include <complex>
#include <cstring>
#include <random>

#include <doctest.h>

#include "sdofsim/linalg.hpp"
#include "support/oracles.hpp"

using namespace sdofsim;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

namespace {

double phase_aligned_distance(const ComplexVector& a, const ComplexVector& b) {
    return (linalg::apply_phase_convention(a) - linalg::apply_phase_convention(b)).norm();
}

} // namespace

TEST_CASE("null_space_unit_vector: canonical rows force the remaining axis") {
    ComplexMatrix a(2, 3);
    a.setZero();
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    const auto v = linalg::null_space_unit_vector(a);
    ComplexVector e3 = ComplexVector::Zero(3);
    e3[2] = 1.0;
    CHECK(phase_aligned_distance(v.coeffs(), e3) < 1e-12);
}

TEST_CASE("null_space_unit_vector: 1x2 real row") {
    ComplexMatrix a(1, 2);
    const double s = std::sqrt(0.5);
    a(0, 0) = s;
    a(0, 1) = s;
    const auto v = linalg::null_space_unit_vector(a);
    ComplexVector expected(2);
    expected[0] = s;
    expected[1] = -s;
    CHECK(phase_aligned_distance(v.coeffs(), expected) < 1e-12);
}

TEST_CASE("null_space_unit_vector: matches the Gram-Schmidt oracle on random 2x3 input") {
    std::mt19937_64 engine(0xA11CE);
    for (int trial = 0; trial < 200; ++trial) {
        const ComplexMatrix a = oracles::random_complex_matrix(2, 3, engine);
        const auto v = linalg::null_space_unit_vector(a);
        CHECK((a * v.coeffs()).norm() < 1e-10 * a.norm());

        const auto oracle = oracles::gram_schmidt_null_basis(a);
        REQUIRE(oracle.size() == 1);
        CHECK(phase_aligned_distance(v.coeffs(), oracle.front()) < 1e-8);
    }
}

TEST_CASE("null_space_basis: single canonical row spans the other two axes") {
    ComplexMatrix a(1, 3);
    a.setZero();
    a(0, 0) = 1.0;
    const auto basis = linalg::null_space_basis(a);
    REQUIRE(basis.size() == 2);
    for (const auto& v : basis) {
        CHECK(std::abs(v.coeffs()[0]) < 1e-12);
        CHECK(std::abs(v.coeffs().norm() - 1.0) < 1e-12);
    }
    CHECK(std::abs(basis[0].coeffs().dot(basis[1].coeffs())) < 1e-12);
}

TEST_CASE("null_space_basis: random 1x4 row yields 3 orthonormal complements") {
    std::mt19937_64 engine(0xBEE);
    const ComplexMatrix a = oracles::random_complex_matrix(1, 4, engine);
    const auto basis = linalg::null_space_basis(a);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK((a * basis[i].coeffs()).norm() < 1e-10);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            CHECK(std::abs(basis[i].coeffs().dot(basis[j].coeffs()) - expected) < 1e-12);
        }
    }

    // Same span as the Gram-Schmidt complement: the oracle vectors project
    // fully onto the returned basis.
    const auto oracle = oracles::gram_schmidt_null_basis(a);
    REQUIRE(oracle.size() == 3);
    for (const auto& w : oracle) {
        ComplexVector projected = ComplexVector::Zero(4);
        for (const auto& b : basis) {
            projected += b.coeffs() * b.coeffs().dot(w);
        }
        CHECK((w - projected).norm() < 1e-8);
    }
}

TEST_CASE("null_space_basis: full-rank square matrix has an empty basis") {
    ComplexMatrix a = ComplexMatrix::Identity(2, 2);
    CHECK(linalg::null_space_basis(a).empty());
}

TEST_CASE("null_space_basis: empty matrix returns the canonical basis") {
    ComplexMatrix a(0, 3);
    const auto basis = linalg::null_space_basis(a);
    REQUIRE(basis.size() == 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(std::abs(basis[static_cast<std::size_t>(i)].coeffs()[i] - Complex(1.0, 0.0)) <
              1e-15);
    }
}

TEST_CASE("null-space residual and orthonormality properties over seeded draws") {
    struct Shape {
        int rows;
        int cols;
    };
    const Shape shapes[] = {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {2, 5}, {5, 6}};
    std::mt19937_64 engine(0x5EED);
    for (const auto& shape : shapes) {
        for (int trial = 0; trial < 1000; ++trial) {
            const ComplexMatrix a = oracles::random_complex_matrix(shape.rows, shape.cols, engine);
            const auto basis = linalg::null_space_basis(a);
            REQUIRE(static_cast<int>(basis.size()) == shape.cols - shape.rows);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                CHECK((a * basis[i].coeffs()).norm() <= 1e-10 * a.norm());
                for (std::size_t j = i; j < basis.size(); ++j) {
                    const double expected = i == j ? 1.0 : 0.0;
                    CHECK(std::abs(basis[i].coeffs().dot(basis[j].coeffs()) - expected) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("kernel determinism: identical inputs give identical output bytes") {
    std::mt19937_64 engine(42);
    const ComplexMatrix a = oracles::random_complex_matrix(3, 5, engine);
    const auto v1 = linalg::null_space_unit_vector(a);
    const auto v2 = linalg::null_space_unit_vector(a);
    REQUIRE(v1.dim() == v2.dim());
    CHECK(std::memcmp(v1.coeffs().data(), v2.coeffs().data(),
                      sizeof(Complex) * static_cast<std::size_t>(v1.dim())) == 0);

    const auto b1 = linalg::null_space_basis(a);
    const auto b2 = linalg::null_space_basis(a);
    REQUIRE(b1.size() == b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) {
        CHECK(std::memcmp(b1[i].coeffs().data(), b2[i].coeffs().data(),
                          sizeof(Complex) * static_cast<std::size_t>(b1[i].dim())) == 0);
    }
}

TEST_CASE("null-space error paths") {
    ComplexMatrix square = ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS(linalg::null_space_unit_vector(square), DimensionError);

    ComplexMatrix tall(3, 2);
    tall.setZero();
    CHECK_THROWS_AS(linalg::null_space_basis(tall), DimensionError);

    ComplexMatrix duplicate(2, 3);
    duplicate.setZero();
    duplicate(0, 0) = 1.0;
    duplicate(1, 0) = 1.0;
    CHECK_THROWS_AS(linalg::null_space_unit_vector(duplicate), RankDeficientError);

    ComplexMatrix non_finite(1, 2);
    non_finite(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    non_finite(0, 1) = 1.0;
    CHECK_THROWS_AS(linalg::null_space_unit_vector(non_finite), DimensionError);
}

TEST_CASE("log_det_hermitian_pd: identity and diagonal cases") {
    CHECK(linalg::log_det_hermitian_pd(ComplexMatrix::Identity(5, 5)) == doctest::Approx(0.0));
    ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 8.0;
    CHECK(linalg::log_det_hermitian_pd(diag) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("log_det_hermitian_pd: matches the cofactor-expansion oracle") {
    std::mt19937_64 engine(0xDE7);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix a = oracles::random_complex_matrix(4, 4, engine);
        const ComplexMatrix m =
            a * a.adjoint() + ComplexMatrix::Identity(4, 4);
        const double expected = std::log2(std::abs(oracles::cofactor_det(m)));
        const double got = linalg::log_det_hermitian_pd(m);
        CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("log_det_hermitian_pd: inverse identity") {
    std::mt19937_64 engine(0x1D);
    const ComplexMatrix a = oracles::random_complex_matrix(5, 5, engine);
    const ComplexMatrix m = a * a.adjoint() + 2.0 * ComplexMatrix::Identity(5, 5);
    const double forward = linalg::log_det_hermitian_pd(m);
    const double backward = linalg::log_det_hermitian_pd(m.inverse());
    CHECK(std::abs(forward + backward) < 1e-8);
}

TEST_CASE("log_det_hermitian_pd: error paths") {
    ComplexMatrix not_hermitian(2, 2);
    not_hermitian << Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0);
    CHECK_THROWS_AS(linalg::log_det_hermitian_pd(not_hermitian), NotHermitianError);

    ComplexMatrix indefinite = ComplexMatrix::Identity(2, 2);
    indefinite(1, 1) = -1.0;
    CHECK_THROWS_AS(linalg::log_det_hermitian_pd(indefinite), NotPositiveDefiniteError);
}

TEST_CASE("UnitVector validates its norm; phase convention anchors the first entry") {
    ComplexVector v(2);
    v[0] = Complex(0.0, 0.0);
    v[1] = Complex(0.0, 1.0);
    const auto unit = linalg::UnitVector::normalized(v);
    CHECK(unit.coeffs()[1].real() == doctest::Approx(1.0));
    CHECK(std::abs(unit.coeffs()[1].imag()) < 1e-15);

    ComplexVector too_long(2);
    too_long[0] = 1.0;
    too_long[1] = 1.0;
    CHECK_THROWS_AS(linalg::UnitVector{too_long}, std::invalid_argument);
}
