#include <gtest/gtest.h>

#include <numbers>

#include "iondistill/ladder_ops.hpp"
#include "iondistill/rng.hpp"
#include "iondistill/su2.hpp"

using namespace iondistill;

namespace {

constexpr double kPi = std::numbers::pi;

std::shared_ptr<const FockBasis> basis12() {
    return FockBasis::build(2, Truncation::total_excitation(12));
}

TEST(Su2State, MuZeroIsFockAlongX) {
    auto b = basis12();
    const StateVector v = su2_state(SU2Label::finite(0.0, 4), b);
    EXPECT_NEAR(std::abs(v.amplitude(b->index_of({4, 0})) - Complex{1.0}), 0.0, 1e-12);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}

TEST(Su2State, MuImaginaryHalfSpin) {
    auto b = basis12();
    const StateVector v = su2_state(SU2Label::finite(Complex{0.0, 1.0}, 1), b);
    const double r = 1.0 / std::numbers::sqrt2;
    EXPECT_NEAR(std::abs(v.amplitude(b->index_of({1, 0})) - Complex{r}), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(v.amplitude(b->index_of({0, 1})) - Complex{0.0, r}), 0.0, 1e-12);
}

TEST(Su2State, InfinityLabelAndTruncationGuard) {
    auto b = basis12();
    const StateVector v = su2_state(SU2Label::infinite(5), b);
    EXPECT_NEAR(std::abs(v.amplitude(b->index_of({0, 5})) - Complex{1.0}), 0.0, 1e-15);

    auto tiny = FockBasis::build(2, Truncation::total_excitation(3));
    EXPECT_THROW(su2_state(SU2Label::finite(0.3, 4), tiny), std::invalid_argument);
}

TEST(Su2State, RotatedFockIsNumberEigenstateOfTiltedMode) {
    // a_theta = cos(theta) a_x + sin(theta) a_y; |n_theta> carries n_T of its quanta
    auto b = basis12();
    for (const double theta : {0.0, kPi / 6.0, kPi / 3.0, 1.1}) {
        for (const int n_t : {1, 3, 5}) {
            const StateVector v = rotated_fock(n_t, theta, b);
            const Operator ax = annihilation(b, 0), ay = annihilation(b, 1);
            const Operator a_theta = Complex{std::cos(theta)} * ax + Complex{std::sin(theta)} * ay;
            const Operator n_theta = a_theta.adjoint() * a_theta;
            const StateVector residual = n_theta.apply(v) - Complex{double(n_t)} * v;
            EXPECT_LE(residual.norm(), 1e-10);
        }
    }
}

TEST(Su2State, RotatedFockLimits) {
    auto b = basis12();
    EXPECT_NEAR(std::abs(rotated_fock(3, 0.0, b).amplitude(b->index_of({3, 0})) - Complex{1.0}), 0.0,
                1e-12);
    EXPECT_NEAR(std::abs(rotated_fock(3, kPi / 2.0, b).amplitude(b->index_of({0, 3})) - Complex{1.0}),
                0.0, 1e-12);
    const StateVector diag = rotated_fock(1, kPi / 4.0, b);
    const double r = 1.0 / std::numbers::sqrt2;
    EXPECT_NEAR(std::abs(diag.amplitude(b->index_of({1, 0})) - Complex{r}), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(diag.amplitude(b->index_of({0, 1})) - Complex{r}), 0.0, 1e-12);
}

TEST(Su2Overlap, NormalizationAndDelta) {
    const SU2Label a = SU2Label::finite(Complex{0.3, -0.8}, 6);
    EXPECT_NEAR(std::abs(su2_overlap(a, a) - Complex{1.0}), 0.0, 1e-12);
    const SU2Label b = SU2Label::finite(Complex{0.3, -0.8}, 4);
    EXPECT_EQ(su2_overlap(a, b), Complex{});
}

TEST(Su2Overlap, ClosedFormMatchesBruteForce) {
    auto basis = basis12();
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const int two_j = static_cast<int>(rng.next() % 13);  // j <= 6
        auto draw = [&rng]() { return Complex{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0}; };
        const SU2Label l1 = SU2Label::finite(draw(), two_j);
        const SU2Label l2 = SU2Label::finite(draw(), two_j);
        const Complex closed = su2_overlap(l1, l2);
        const Complex brute = inner(su2_state(l1, basis), su2_state(l2, basis));
        EXPECT_NEAR(std::abs(closed - brute), 0.0, 1e-12);
    }
}

TEST(Su2Overlap, InfinityLimits) {
    auto basis = basis12();
    const SU2Label inf = SU2Label::infinite(4);
    const SU2Label fin = SU2Label::finite(Complex{0.7, 0.2}, 4);
    EXPECT_NEAR(std::abs(su2_overlap(inf, fin) - inner(su2_state(inf, basis), su2_state(fin, basis))),
                0.0, 1e-12);
    EXPECT_NEAR(std::abs(su2_overlap(fin, inf) - inner(su2_state(fin, basis), su2_state(inf, basis))),
                0.0, 1e-12);
    EXPECT_NEAR(std::abs(su2_overlap(inf, inf) - Complex{1.0}), 0.0, 1e-15);
}

TEST(Su2Overlap, MaximumProjectionVersusRotatedFock) {
    // <mu = ±i, j | mu = tan(theta), j> = e^{∓ i 2 j theta} / 2^j
    for (int two_j = 1; two_j <= 6; ++two_j) {
        const double j = two_j / 2.0;
        for (const double theta : {0.0, kPi / 12.0, kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
            const SU2Label rot = SU2Label::finite(std::tan(theta), two_j);
            const Complex plus = su2_overlap(SU2Label::finite(Complex{0.0, 1.0}, two_j), rot);
            const Complex minus = su2_overlap(SU2Label::finite(Complex{0.0, -1.0}, two_j), rot);
            const Complex want_plus = std::polar(std::pow(2.0, -j), -two_j * theta);
            const Complex want_minus = std::polar(std::pow(2.0, -j), two_j * theta);
            EXPECT_NEAR(std::abs(plus - want_plus), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(minus - want_minus), 0.0, 1e-12);
        }
    }
}

}  // namespace
