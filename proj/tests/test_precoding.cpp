#include <cstring>
#include <random>

#include <doctest.h>

#include "sdofsim/precoding.hpp"
#include "support/oracles.hpp"

using namespace sdofsim;
using channel::CsitState;
using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;

namespace {

channel::ChannelRealization realization_from(const ComplexMatrix& h, int slot = 0) {
    channel::ChannelRealization r;
    r.slot = slot;
    r.h = h;
    return r;
}

} // namespace

TEST_CASE("perfect-slot precoder on the identity channel returns canonical beams") {
    const auto r = realization_from(ComplexMatrix::Identity(3, 3));
    const auto beams = precoding::build_p_state_precoder(channel::tx_view(r, CsitState::kPAll));
    REQUIRE(beams.size() == 3);
    for (int k = 0; k < 3; ++k) {
        ComplexVector e = ComplexVector::Zero(3);
        e[k] = 1.0;
        CHECK((beams[static_cast<std::size_t>(k)].coeffs() - e).norm() < 1e-12);
    }
}

TEST_CASE("perfect-slot precoder solves the 2-user case by hand") {
    ComplexMatrix h(2, 2);
    const double s = std::sqrt(0.5);
    h << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(s, 0.0), Complex(s, 0.0);
    const auto r = realization_from(h);
    const auto beams = precoding::build_p_state_precoder(channel::tx_view(r, CsitState::kPAll));

    ComplexVector v1(2);
    v1 << Complex(s, 0.0), Complex(-s, 0.0);
    CHECK((beams[0].coeffs() - v1).norm() < 1e-12);
    ComplexVector v2(2);
    v2 << Complex(0.0, 0.0), Complex(1.0, 0.0);
    CHECK((beams[1].coeffs() - v2).norm() < 1e-12);
}

TEST_CASE("perfect-slot zero-forcing holds on random channels") {
    std::mt19937_64 engine(0x2F);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = realization_from(oracles::random_complex_matrix(4, 4, engine));
        const auto beams =
            precoding::build_p_state_precoder(channel::tx_view(r, CsitState::kPAll));
        for (int k = 0; k < 4; ++k) {
            CHECK(std::abs(beams[static_cast<std::size_t>(k)].coeffs().norm() - 1.0) <= 1e-12);
            for (int j = 0; j < 4; ++j) {
                const Complex gain =
                    (r.h.row(j) * beams[static_cast<std::size_t>(k)].coeffs()).value();
                if (j != k) {
                    CHECK(std::abs(gain) <= 1e-10 * r.h.row(j).norm());
                }
            }
        }
    }
}

TEST_CASE("delayed-slot noise beam is invisible to receivers with known CSI") {
    ComplexMatrix h(3, 3);
    h.setZero();
    h(0, 0) = 1.0; // row 1 is masked anyway
    h(1, 1) = 1.0;
    h(2, 2) = 1.0;
    const auto r = realization_from(h);
    const auto beams = precoding::build_d_state_precoder(channel::tx_view(r, CsitState::kDFirst));
    ComplexVector e1 = ComplexVector::Zero(3);
    e1[0] = 1.0;
    CHECK((beams[0].coeffs() - e1).norm() < 1e-12);
}

TEST_CASE("delayed-slot data beams anchor to each user's coordinate on the identity channel") {
    const auto r = realization_from(ComplexMatrix::Identity(3, 3));
    const auto beams = precoding::build_d_state_precoder(channel::tx_view(r, CsitState::kDFirst));
    REQUIRE(beams.size() == 3);
    for (int k = 1; k < 3; ++k) {
        ComplexVector e = ComplexVector::Zero(3);
        e[k] = 1.0;
        CHECK((beams[static_cast<std::size_t>(k)].coeffs() - e).norm() < 1e-12);
    }
}

TEST_CASE("delayed-slot K=2 boundary: the data beam is unconstrained and anchored at e2") {
    const auto r = realization_from(ComplexMatrix::Identity(2, 2));
    const auto beams = precoding::build_d_state_precoder(channel::tx_view(r, CsitState::kDFirst));
    REQUIRE(beams.size() == 2);
    // Noise beam orthogonal to row 2.
    CHECK(std::abs((r.h.row(1) * beams[0].coeffs()).value()) < 1e-12);
    ComplexVector e2 = ComplexVector::Zero(2);
    e2[1] = 1.0;
    CHECK((beams[1].coeffs() - e2).norm() < 1e-12);
}

TEST_CASE("delayed-slot zero-forcing invariants hold on random channels") {
    std::mt19937_64 engine(0x4D);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = realization_from(oracles::random_complex_matrix(4, 4, engine));
        const auto beams =
            precoding::build_d_state_precoder(channel::tx_view(r, CsitState::kDFirst));
        for (int j = 1; j < 4; ++j) {
            CHECK(std::abs((r.h.row(j) * beams[0].coeffs()).value()) <= 1e-10 * r.h.row(j).norm());
        }
        for (int k = 1; k < 4; ++k) {
            CHECK(std::abs(beams[static_cast<std::size_t>(k)].coeffs().norm() - 1.0) <= 1e-12);
            for (int j = 1; j < 4; ++j) {
                if (j == k) {
                    continue;
                }
                const Complex gain =
                    (r.h.row(j) * beams[static_cast<std::size_t>(k)].coeffs()).value();
                CHECK(std::abs(gain) <= 1e-10 * r.h.row(j).norm());
            }
        }
    }
}

TEST_CASE("delayed-slot precoder cannot depend on the masked row") {
    std::mt19937_64 engine(0x77);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = realization_from(oracles::random_complex_matrix(3, 3, engine));
        auto b = a;
        b.h.row(0) = oracles::random_complex_matrix(1, 3, engine).row(0);

        const auto beams_a =
            precoding::build_d_state_precoder(channel::tx_view(a, CsitState::kDFirst));
        const auto beams_b =
            precoding::build_d_state_precoder(channel::tx_view(b, CsitState::kDFirst));
        REQUIRE(beams_a.size() == beams_b.size());
        for (std::size_t i = 0; i < beams_a.size(); ++i) {
            CHECK(std::memcmp(beams_a[i].coeffs().data(), beams_b[i].coeffs().data(),
                              sizeof(Complex) * 3) == 0);
        }
    }
}

TEST_CASE("precoder directions are invariant under positive row scaling") {
    std::mt19937_64 engine(0x99);
    const auto base = oracles::random_complex_matrix(3, 3, engine);
    auto scaled = base;
    scaled.row(1) *= 4.0;

    const auto beams_base = precoding::build_p_state_precoder(
        channel::tx_view(realization_from(base), CsitState::kPAll));
    const auto beams_scaled = precoding::build_p_state_precoder(
        channel::tx_view(realization_from(scaled), CsitState::kPAll));
    for (std::size_t i = 0; i < beams_base.size(); ++i) {
        CHECK((beams_base[i].coeffs() - beams_scaled[i].coeffs()).norm() < 1e-12);
    }

    const auto d_base = precoding::build_d_state_precoder(
        channel::tx_view(realization_from(base), CsitState::kDFirst));
    const auto d_scaled = precoding::build_d_state_precoder(
        channel::tx_view(realization_from(scaled), CsitState::kDFirst));
    for (std::size_t i = 0; i < d_base.size(); ++i) {
        CHECK((d_base[i].coeffs() - d_scaled[i].coeffs()).norm() < 1e-12);
    }
}

TEST_CASE("stream roles: artificial noise sits only on delayed-slot direction 0") {
    const auto r = realization_from(ComplexMatrix::Identity(3, 3));
    const auto powers = precoding::allocate_powers(3, 30.0);
    const auto precoder = precoding::build_block_precoder(
        channel::tx_view(r, CsitState::kPAll), channel::tx_view(r, CsitState::kDFirst), powers);
    CHECK(precoder.d_role(0).kind == precoding::StreamKind::kArtificialNoise);
    for (int i = 0; i < 3; ++i) {
        CHECK(precoder.p_role(i).kind == precoding::StreamKind::kData);
        CHECK(precoder.p_role(i).user == i + 1);
    }
    for (int i = 1; i < 3; ++i) {
        CHECK(precoder.d_role(i).kind == precoding::StreamKind::kData);
        CHECK(precoder.d_role(i).user == i + 1);
    }
}

TEST_CASE("allocate_powers implements the stated split") {
    const auto p3 = precoding::allocate_powers(3, 30.0);
    CHECK(p3.p_data == doctest::Approx(10.0));
    CHECK(p3.d_noise == doctest::Approx(15.0));
    CHECK(p3.d_data == doctest::Approx(7.5));

    const auto p2 = precoding::allocate_powers(2, 4.0);
    CHECK(p2.p_data == doctest::Approx(2.0));
    CHECK(p2.d_noise == doctest::Approx(2.0));
    CHECK(p2.d_data == doctest::Approx(2.0));

    for (int users : {2, 3, 4, 6}) {
        for (double total : {0.5, 13.0, 1e6}) {
            const auto p = precoding::allocate_powers(users, total);
            CHECK(std::abs(p.p_data * users - total) <= 1e-12 * total);
            CHECK(std::abs(p.d_noise + p.d_data * (users - 1) - total) <= 1e-12 * total);

            const auto eq =
                precoding::allocate_powers(users, total, precoding::PowerPolicy::kEqualSplit);
            CHECK(std::abs(eq.d_noise + eq.d_data * (users - 1) - total) <= 1e-12 * total);
        }
    }

    CHECK_THROWS_AS(precoding::allocate_powers(3, 0.0), InvalidPowerError);
    CHECK_THROWS_AS(precoding::allocate_powers(3, -1.0), InvalidPowerError);
}

TEST_CASE("state mismatches are rejected") {
    const auto r = realization_from(ComplexMatrix::Identity(3, 3));
    CHECK_THROWS_AS(precoding::build_p_state_precoder(channel::tx_view(r, CsitState::kDFirst)),
                    DimensionError);
    CHECK_THROWS_AS(precoding::build_d_state_precoder(channel::tx_view(r, CsitState::kPAll)),
                    DimensionError);
}
