#include <gtest/gtest.h>

#include <algorithm>

#include "mbl/errors.hpp"
#include "mbl/model.hpp"
#include "oracles.hpp"

using namespace mbl;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SystemParams fig3_point() {
    SystemParams p;
    p.delta_m = p.delta_s = 9.8;
    p.g_ms = 19.6;
    p.omega_s = 0.06;
    p.omega_d = 0.01;
    return p;
}

SystemParams random_params(oracle::Gen& gen, Scenario s) {
    SystemParams p;
    p.scenario = s;
    p.delta_m = gen.uniform(-20, 20);
    p.delta_s = gen.uniform(-20, 20);
    p.g_ms = gen.uniform(0, 30);
    p.g_ms_tilde = gen.uniform(0, 60);
    p.omega_s = s == Scenario::A ? gen.uniform(0, 0.2) : 0.0;
    p.omega_d = gen.uniform(0, 0.05);
    p.kappa_m = gen.uniform(0.05, 1.5);
    p.kappa_s = gen.uniform(0.05, 1.5);
    p.fock_dim = gen.integer(2, 7);
    return p;
}

// Eigenvalues of the {|g',n>, |e',n-1>} block of a Hermitian matrix.
std::vector<double> block_eigenvalues(const Operator& h, int n) {
    const SpaceDescriptor& s = h.space();
    const int a = s.index(QubitLevel::ground, n), b = s.index(QubitLevel::excited, n - 1);
    Eigen::Matrix2cd blk;
    blk << h(a, a), h(a, b), h(b, a), h(b, b);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
    return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

}  // namespace

TEST(SystemParams, ValidationRules) {
    SystemParams p = fig3_point();
    EXPECT_NO_THROW(p.validate());

    SystemParams q = p;
    q.kappa_m = 0.0;
    EXPECT_NO_THROW(q.validate_hamiltonian());
    EXPECT_THROW(q.validate(), ParameterError);

    q = p;
    q.omega_d = -0.1;
    EXPECT_THROW(q.validate(), ParameterError);

    q = p;
    q.delta_m = std::numeric_limits<double>::infinity();
    EXPECT_THROW(q.validate(), ParameterError);

    q = p;
    q.fock_dim = 1;
    EXPECT_THROW(q.validate(), ParameterError);

    q = p;
    q.scenario = Scenario::B;
    EXPECT_THROW(q.validate(), ParameterError);
    q.omega_s = 0.0;
    EXPECT_NO_THROW(q.validate());
}

TEST(SystemParams, ScenarioParsing) {
    EXPECT_EQ(parse_scenario("A"), Scenario::A);
    EXPECT_EQ(parse_scenario("b"), Scenario::B);
    EXPECT_THROW(parse_scenario("C"), ParameterError);
    EXPECT_EQ(to_string(Scenario::B), "B");
}

TEST(BuildHeff, AllZeroParametersGiveZeroMatrix) {
    SystemParams p;
    EXPECT_EQ(max_abs(build_h_eff(p).data()), 0.0);
    p.scenario = Scenario::B;
    EXPECT_EQ(max_abs(build_h_eff(p).data()), 0.0);
}

TEST(BuildHeff, MatchesIndependentConstructionForRandomParameters) {
    oracle::Gen gen(101);
    for (int t = 0; t < 50; ++t) {
        const Scenario s = t % 2 ? Scenario::A : Scenario::B;
        const SystemParams p = random_params(gen, s);
        const Operator h = build_h_eff(p);
        EXPECT_LT(max_abs(h.data() - oracle::hamiltonian(p)), 1e-12) << "trial " << t;
        EXPECT_LT(hermiticity_defect(h), 1e-12);
    }
}

TEST(BuildHeff, ScenarioBIgnoresQubitDriveAndUsesTransverseCoupling) {
    SystemParams a = fig3_point();
    a.omega_s = 0.0;
    a.g_ms_tilde = 33.0;
    SystemParams b = a;
    b.scenario = Scenario::B;
    b.g_ms_tilde = a.g_ms;
    b.g_ms = 99.0;
    EXPECT_LT(max_abs(build_h_eff(a).data() - build_h_eff(b).data()), 1e-15);

    b.omega_s = 0.01;
    EXPECT_THROW(build_h_eff(b), ParameterError);
}

TEST(BuildHeff, SingleExcitationBlockAtOptimalDetuning) {
    SystemParams p = fig3_point();
    p.omega_s = p.omega_d = 0.0;
    const Operator h = build_h_eff(p);
    const int g0 = h.space().index(QubitLevel::ground, 0);
    auto ev = block_eigenvalues(h, 1);
    for (double& e : ev) e -= h(g0, g0).real();
    EXPECT_NEAR(ev[0], 0.0, 1e-12);
    EXPECT_NEAR(ev[1], 19.6, 1e-12);
}

TEST(BuildHeff, HermitianAtFigureThreeParameters) {
    EXPECT_LT(hermiticity_defect(build_h_eff(fig3_point())), 1e-12);
}

TEST(BuildHeff, SpaceMismatchIsRejected) {
    EXPECT_THROW(build_h_eff(fig3_point(), SpaceDescriptor(4)), DimensionError);
}

TEST(BuildHnonhermitian, ReducesToHeffWithoutDissipation) {
    SystemParams p = fig3_point();
    p.kappa_m = p.kappa_s = 0.0;
    EXPECT_EQ(build_h_nonhermitian(p).data(), build_h_eff(p).data());
}

TEST(BuildHnonhermitian, DoublyExcitedDiagonalCarriesBothDecays) {
    SystemParams p = fig3_point();
    p.delta_m = 3.0;
    p.delta_s = -1.25;
    p.kappa_m = 0.4;
    p.kappa_s = 0.7;
    const Operator h = build_h_nonhermitian(p);
    const SpaceDescriptor& s = h.space();
    const Complex e1 = h(s.index(QubitLevel::excited, 1), s.index(QubitLevel::excited, 1));
    const Complex g0 = h(s.index(QubitLevel::ground, 0), s.index(QubitLevel::ground, 0));
    // The qubit term is symmetric about zero, so the amplitude-equation
    // coefficient is measured from the |g',0> diagonal.
    const Complex expected(p.delta_m + p.delta_s, -(p.kappa_m + p.kappa_s) / 2.0);
    EXPECT_NEAR(std::abs(e1 - g0 - expected), 0.0, 1e-14);
}

TEST(BuildHnonhermitian, AntiHermitianPartIsDissipative) {
    const Operator h = build_h_nonhermitian(fig3_point());
    const Matrix anti = (h.data() - h.data().adjoint()) / Complex(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(anti);
    EXPECT_LE(es.eigenvalues().maxCoeff(), 1e-14);
    EXPECT_LT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(LabFrame, DetuningConversions) {
    LabFrameParams lab;
    lab.omega_m = ghz_to_gamma(9.8);
    lab.e_z = ghz_to_gamma(9.8);
    lab.omega_d_lab = ghz_to_gamma(9.8) - 9.8;
    lab.omega_s_lab = ghz_to_gamma(9.8) - 9.8;
    const auto [dm, ds] = lab_to_detunings(lab, Scenario::A);
    EXPECT_NEAR(dm, 9.8, 1e-9);
    EXPECT_NEAR(ds, 9.8, 1e-9);

    LabFrameParams res = lab;
    res.omega_d_lab = res.omega_m;
    EXPECT_EQ(lab_to_detunings(res, Scenario::A).first, 0.0);

    LabFrameParams flipped = lab;
    flipped.omega_d_lab = 2 * lab.omega_m - lab.omega_d_lab;
    EXPECT_NEAR(lab_to_detunings(flipped, Scenario::A).first, -dm, 1e-9);

    LabFrameParams b = lab;
    b.k_0 = 100.0;
    b.omega_d_lab = 90.0;
    EXPECT_NEAR(lab_to_detunings(b, Scenario::B).second, 10.0, 1e-12);
}

TEST(DressedSpectrum, ResonantValuesAndEqualWeights) {
    const double w = 50.0;
    const auto levels = dressed_spectrum(w, w, 19.6, 3);
    ASSERT_EQ(levels.size(), 6u);
    for (const auto& l : levels) {
        const double sign = l.branch == Branch::plus ? 1.0 : -1.0;
        EXPECT_NEAR(l.energy, l.n * w + sign * 19.6 * std::sqrt(l.n) / 2.0, 1e-10 * l.energy);
        EXPECT_NEAR(std::abs(l.c_g_n), 1.0 / std::sqrt(2.0), 1e-12);
        EXPECT_NEAR(l.c_e_nm1, sign * l.c_g_n, 1e-12);
    }
    EXPECT_NEAR(levels[0].energy, w + 9.8, 1e-12);
    EXPECT_NEAR(levels[1].energy, w - 9.8, 1e-12);
}

TEST(DressedSpectrum, AgreesWithDiagonalizedHamiltonian) {
    oracle::Gen gen(202);
    for (int t = 0; t < 30; ++t) {
        const double wm = gen.uniform(1, 40), ez = gen.uniform(1, 40), g = gen.uniform(0.1, 30);
        // Rotating frame at zero reference frequency reproduces the lab-frame block.
        SystemParams p;
        p.delta_m = wm;
        p.delta_s = ez;
        p.g_ms = g;
        p.fock_dim = 5;
        const Operator h = build_h_eff(p);
        const auto levels = dressed_spectrum(wm, ez, g, 3);
        for (int n = 1; n <= 3; ++n) {
            auto ev = block_eigenvalues(h, n);
            const double plus = ev[1] + ez / 2.0, minus = ev[0] + ez / 2.0;
            const auto& lp = levels[2 * (n - 1)];
            const auto& lm = levels[2 * (n - 1) + 1];
            EXPECT_NEAR(lp.energy, plus, 1e-10 * std::abs(plus));
            EXPECT_NEAR(lm.energy, minus, 1e-10 * std::abs(minus));

            // Eigenvector of the plus branch, compared up to a global sign.
            const SpaceDescriptor& s = h.space();
            const int a = s.index(QubitLevel::ground, n), b = s.index(QubitLevel::excited, n - 1);
            Eigen::Matrix2cd blk;
            blk << h(a, a), h(a, b), h(b, a), h(b, b);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(blk);
            const Eigen::Vector2cd v = es.eigenvectors().col(1);
            const double overlap = std::abs(v(0) * lp.c_g_n + v(1) * lp.c_e_nm1);
            EXPECT_NEAR(overlap, 1.0, 1e-10);
        }
    }
}

TEST(DressedSpectrum, AnharmonicLadderAtResonance) {
    for (double g : {0.5, 5.0, 19.6, 50.1}) {
        const auto l = dressed_spectrum(10.0, 10.0, g, 2);
        const double e1p = l[0].energy, e2p = l[2].energy;
        EXPECT_NEAR(e2p - 2.0 * e1p, g * (std::sqrt(2.0) - 2.0) / 2.0, 1e-10 * g);
        EXPECT_NE(e2p - e1p, e1p);
    }
}

TEST(DressedSpectrum, CoefficientsAreNormalized) {
    oracle::Gen gen(303);
    for (int t = 0; t < 200; ++t) {
        const auto levels =
            dressed_spectrum(gen.uniform(-50, 50), gen.uniform(-50, 50), gen.uniform(0, 60), 4);
        for (const auto& l : levels) {
            EXPECT_NEAR(l.c_g_n * l.c_g_n + l.c_e_nm1 * l.c_e_nm1, 1.0, 1e-12);
        }
    }
}

TEST(DressedSpectrum, DecoupledLimitCollapsesToBareStates) {
    const double wm = 3.0, ez = 5.0;
    const auto levels = dressed_spectrum(wm, ez, 0.0, 3);
    for (const auto& l : levels) {
        const double bare_g = l.n * wm, bare_e = (l.n - 1) * wm + ez;
        if (l.branch == Branch::plus) {
            EXPECT_DOUBLE_EQ(l.energy, std::max(bare_g, bare_e));
        } else {
            EXPECT_DOUBLE_EQ(l.energy, std::min(bare_g, bare_e));
        }
        const bool on_g = l.energy == bare_g;
        EXPECT_EQ(l.c_g_n, on_g ? 1.0 : 0.0);
        EXPECT_EQ(l.c_e_nm1, on_g ? 0.0 : 1.0);
    }
}

TEST(DressedSpectrum, RejectsBadArguments) {
    EXPECT_THROW(dressed_spectrum(1, 1, 1, 0), ParameterError);
    EXPECT_THROW(dressed_spectrum(1, 1, -1, 2), ParameterError);
}
