#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "mbl/errors.hpp"
#include "mbl/integrator.hpp"

using namespace mbl;

namespace {

Vector scalar(Complex v) {
    Vector y(1);
    y(0) = v;
    return y;
}

}  // namespace

TEST(DormandPrince, ComplexExponentialToTolerance) {
    const Complex lambda(-0.3, 2.0);
    const ode::Rhs f = [&](double, const Vector& y, Vector& dy) { dy = lambda * y; };
    const std::array<double, 5> times{0.0, 0.5, 1.0, 3.0, 10.0};
    const auto ys = ode::dormand_prince(f, scalar(1.0), times);
    ASSERT_EQ(ys.size(), times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        EXPECT_NEAR(std::abs(ys[k](0) - std::exp(lambda * times[k])), 0.0, 1e-9) << times[k];
    }
}

TEST(DormandPrince, TimeDependentRhs) {
    // y' = cos t, y(0) = 0  ->  y = sin t
    const ode::Rhs f = [](double t, const Vector&, Vector& dy) { dy = scalar(std::cos(t)); };
    const std::array<double, 3> times{0.0, 1.0, 7.5};
    const auto ys = ode::dormand_prince(f, scalar(0.0), times);
    EXPECT_NEAR(ys[2](0).real(), std::sin(7.5), 1e-9);
}

TEST(DormandPrince, FirstSnapshotIsInitialStateAndRepeatsAreAllowed) {
    const ode::Rhs f = [](double, const Vector& y, Vector& dy) { dy = -y; };
    const std::array<double, 4> times{2.0, 2.0, 3.0, 3.0};
    ode::Stats stats;
    const auto ys = ode::dormand_prince(f, scalar(4.0), times, {}, &stats);
    EXPECT_EQ(ys[0](0), Complex(4.0));
    EXPECT_EQ(ys[1](0), Complex(4.0));
    EXPECT_EQ(ys[2](0), ys[3](0));
    EXPECT_NEAR(ys[2](0).real(), 4.0 * std::exp(-1.0), 1e-9);
    EXPECT_GT(stats.accepted, 0u);
    EXPECT_EQ(stats.rhs_evals, 1 + 6 * (stats.accepted + stats.rejected));
}

TEST(DormandPrince, DecreasingTimesRejected) {
    const ode::Rhs f = [](double, const Vector& y, Vector& dy) { dy = y; };
    const std::array<double, 2> times{1.0, 0.5};
    EXPECT_THROW(ode::dormand_prince(f, scalar(1.0), times), ParameterError);
}

TEST(DormandPrince, EmptyTimesGiveNoSnapshots) {
    const ode::Rhs f = [](double, const Vector& y, Vector& dy) { dy = y; };
    EXPECT_TRUE(ode::dormand_prince(f, scalar(1.0), std::span<const double>{}).empty());
}

TEST(DormandPrince, StepBudgetExhaustionIsReported) {
    const ode::Rhs f = [](double, const Vector& y, Vector& dy) { dy = Complex(0, 500.0) * y; };
    const std::array<double, 2> times{0.0, 100.0};
    ode::Tolerances tol;
    tol.max_steps = 50;
    EXPECT_THROW(ode::dormand_prince(f, scalar(1.0), times, tol), IntegrationError);
}

TEST(DormandPrince, BlowUpIsReported) {
    const ode::Rhs f = [](double, const Vector& y, Vector& dy) { dy = scalar(y(0) * y(0)); };
    const std::array<double, 2> times{0.0, 2.0};  // y = 1/(1-t) blows up at t = 1
    EXPECT_THROW(ode::dormand_prince(f, scalar(1.0), times), IntegrationError);
}

TEST(DormandPrince, LooserToleranceTakesFewerSteps) {
    const ode::Rhs f = [](double, const Vector& y, Vector& dy) { dy = Complex(-0.1, 3.0) * y; };
    const std::array<double, 2> times{0.0, 20.0};
    ode::Stats tight, loose;
    ode::dormand_prince(f, scalar(1.0), times, {1e-12, 1e-16, 1'000'000}, &tight);
    ode::dormand_prince(f, scalar(1.0), times, {1e-6, 1e-10, 1'000'000}, &loose);
    EXPECT_LT(loose.accepted, tight.accepted);
}
