#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tripneg/dynamics.hpp"

using namespace tripneg;

namespace {

SystemParams non_uniform_r(double k1, double k2, double k3, double rabi) {
    SystemParams p;
    p.k1 = k1;
    p.k2 = k2;
    p.k3 = k3;
    p.r1 = std::sqrt(0.2);
    p.r2 = std::sqrt(0.3);
    p.r3 = std::sqrt(0.5);
    p.rabi = rabi;
    return p;
}

SystemParams random_params(std::mt19937_64& rng, double lambda = 1.0) {
    std::uniform_real_distribution<double> k(-20.0, 20.0);
    std::uniform_real_distribution<double> rabi(0.0, 12.0);
    std::normal_distribution<double> g;
    SystemParams p;
    p.k1 = k(rng);
    p.k2 = k(rng);
    p.k3 = k(rng);
    p.r1 = g(rng);
    p.r2 = g(rng);
    p.r3 = g(rng);
    p.rabi = rabi(rng);
    p.lambda = lambda;
    return p.with_normalized_couplings();
}

AmplitudeState w_state(double phi = 0.0) {
    return AmplitudeState::from_initial(InitialState{1 / std::numbers::sqrt3, 1 / std::numbers::sqrt3,
                                                     1 / std::numbers::sqrt3, phi, 1.0});
}

}  // namespace

TEST(BuildGenerator, DecoupledIsPureDecay) {
    SystemParams p = SystemParams::uniform(0.0, 0.0, 1.5);
    const auto g = build_generator(p);
    Mat4 expected = Mat4::Zero();
    expected(3, 3) = -1.5;
    EXPECT_EQ(g.m, expected);
}

TEST(BuildGenerator, UniformGoodCavityStructure) {
    const auto g = build_generator(SystemParams::uniform(5.0, 10.0));
    const auto h = g.hamiltonian();
    EXPECT_TRUE(h.isApprox(h.transpose()));
    for (int j = 0; j < 3; ++j) {
        EXPECT_DOUBLE_EQ(h(j, j), 0.0);
        EXPECT_NEAR(h(j, 3), 10.0 / std::numbers::sqrt3, 1e-14);
    }
    EXPECT_DOUBLE_EQ(h(0, 1), 5.0);
    EXPECT_DOUBLE_EQ(h(1, 2), 5.0);
    EXPECT_DOUBLE_EQ(h(0, 2), 5.0);
}

TEST(BuildGenerator, NonUniformDipolePlacement) {
    const auto g = build_generator(non_uniform_r(2.0, 5.0, 10.0, 10.0));
    const cplx mi(0.0, -1.0);
    // c11 row: K1 -> c12, K3 -> c13
    EXPECT_EQ(g.m(0, 1), mi * 2.0);
    EXPECT_EQ(g.m(0, 2), mi * 10.0);
    // c12 row: K1 -> c11, K2 -> c13
    EXPECT_EQ(g.m(1, 0), mi * 2.0);
    EXPECT_EQ(g.m(1, 2), mi * 5.0);
    // c13 row: K3 -> c11, K2 -> c12
    EXPECT_EQ(g.m(2, 0), mi * 10.0);
    EXPECT_EQ(g.m(2, 1), mi * 5.0);
    EXPECT_EQ(g.m(0, 3), mi * (std::sqrt(0.2) * 10.0));
    EXPECT_EQ(g.m(3, 2), mi * (std::sqrt(0.5) * 10.0));
}

TEST(BuildGenerator, OnlyDampingSurvivesRemovalOfHermitianPart) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = build_generator(random_params(rng, 0.7));
        const Mat4 rest = g.m + cplx(0.0, 1.0) * g.hamiltonian().cast<cplx>();
        int nonzero = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (std::abs(rest(i, j)) > 1e-14) ++nonzero;
        EXPECT_EQ(nonzero, 1);
        EXPECT_NEAR(rest(3, 3).real(), -0.7, 1e-14);
        for (int i = 0; i < 3; ++i) EXPECT_EQ(g.m(i, i), cplx(0.0));
    }
}

TEST(EvolveStepper, NullGeneratorKeepsStateConstant) {
    const auto g = build_generator(SystemParams::uniform(0.0, 0.0));
    const auto init = AmplitudeState::from_initial({0.6, 0.0, 0.8, 0.0, 1.0});
    const auto grid = uniform_grid(5.0, 11);
    const auto tr = evolve_stepper(g, init, grid);
    for (const auto& s : tr.states) {
        EXPECT_EQ(s.c11, init.c11);
        EXPECT_EQ(s.c13, init.c13);
        EXPECT_EQ(s.bm, cplx(0.0));
    }
}

class BrightModeOracle : public ::testing::TestWithParam<double> {};

TEST_P(BrightModeOracle, BothSolversMatchClosedForm) {
    const double rabi = GetParam();
    const oracle::BrightMode bright{rabi, 1.0};
    const auto g = build_generator(SystemParams::uniform(0.0, rabi));
    const auto grid = uniform_grid(6.0, 241);
    const auto res = evolve_resolvent(g, w_state(), grid);
    const auto step = evolve_stepper(g, w_state(), grid);
    // At the critically damped point the generator is defective and the
    // eigenvector route loses half the digits; the series route is used instead.
    const double res_tol = rabi == 0.5 ? 1e-9 : 1e-10;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        for (const auto& c : {res.states[i].c11, res.states[i].c12, res.states[i].c13}) {
            EXPECT_NEAR(std::abs(c - bright.atom(t)), 0.0, res_tol) << "t=" << t;
        }
        EXPECT_NEAR(std::abs(res.states[i].bm - bright.pseudomode(t)), 0.0, res_tol) << "t=" << t;
        EXPECT_NEAR(std::abs(step.states[i].c11 - bright.atom(t)), 0.0, 1e-7) << "t=" << t;
        EXPECT_NEAR(std::abs(step.states[i].bm - bright.pseudomode(t)), 0.0, 1e-7) << "t=" << t;
        EXPECT_NEAR(leaked_population(res.states[i]), 1.0 - std::norm(bright.bright(t)), 1e-9);
    }
}

INSTANTIATE_TEST_SUITE_P(GoodBadAndCritical, BrightModeOracle, ::testing::Values(10.0, 0.1, 0.5, 2.0));

TEST(EvolveResolvent, DefectiveGeneratorFallsBackToSeries) {
    const auto g = build_generator(SystemParams::uniform(0.0, 0.5));
    const std::vector<double> grid{0.0, 1.0};
    EXPECT_EQ(evolve_resolvent(g, w_state(), grid).method, Propagator::series);
    const auto g2 = build_generator(SystemParams::uniform(0.0, 10.0));
    EXPECT_EQ(evolve_resolvent(g2, w_state(), grid).method, Propagator::eigen);
}

TEST(EvolveResolvent, TimeZeroReturnsInitialStateExactly) {
    const auto g = build_generator(non_uniform_r(2.0, 18.0, 20.0, 10.0));
    const auto init = w_state(1.3);
    const std::vector<double> grid{0.0};
    const auto tr = evolve_resolvent(g, init, grid);
    EXPECT_EQ(tr.states[0].c11, init.c11);
    EXPECT_EQ(tr.states[0].c12, init.c12);
    EXPECT_EQ(tr.states[0].c13, init.c13);
    EXPECT_EQ(tr.states[0].bm, init.bm);
}

TEST(EvolveResolvent, SeriesAndEigenRoutesAgree) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = build_generator(random_params(rng));
        const ResolventPropagator prop(g);
        if (prop.path() != Propagator::eigen) continue;
        for (double t : {0.01, 0.7, 3.0}) {
            const Mat4 diff = prop.at(t) - expm_series(g.m * t);
            EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-9) << "trial " << trial << " t=" << t;
        }
    }
}

TEST(Solvers, AgreeOnGoodCavityUniformK) {
    for (double k : {0.0, 5.0, 10.0, 20.0}) {
        const auto g = build_generator(SystemParams::uniform(k, 10.0));
        const auto grid = uniform_grid(3.0, 2000);
        const auto a = evolve_stepper(g, w_state(), grid, {.tol = 1e-9});
        const auto b = evolve_resolvent(g, w_state(), grid);
        EXPECT_LT(sup_distance(a, b), 1e-6) << "K=" << k;
    }
}

TEST(Solvers, StrongDipoleCouplingSlowsLeakage) {
    const auto grid = uniform_grid(3.0, 301);
    // Mean logarithmic decay rate of the total norm over the window.
    auto loss_rate = [&](double k) {
        const auto tr = evolve_resolvent(build_generator(SystemParams::uniform(k, 10.0)), w_state(), grid);
        return -std::log(tr.states.back().total_norm()) / 3.0;
    };
    EXPECT_LT(loss_rate(20.0), 0.2 * loss_rate(0.0));
}

TEST(Solvers, NormIsNonIncreasing) {
    std::mt19937_64 rng(21);
    const auto grid = uniform_grid(5.0, 500);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = build_generator(random_params(rng));
        for (const auto& tr : {evolve_resolvent(g, w_state(0.4), grid), evolve_stepper(g, w_state(0.4), grid)}) {
            for (std::size_t i = 1; i < tr.size(); ++i) {
                EXPECT_LE(tr.states[i].total_norm(), tr.states[i - 1].total_norm() + 1e-9);
            }
        }
    }
}

TEST(Solvers, NormConservedWithoutReservoirDamping) {
    std::mt19937_64 rng(3);
    const auto grid = uniform_grid(10.0, 400);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = build_generator(random_params(rng, 0.0));
        for (const auto& s : evolve_resolvent(g, w_state(), grid).states)
            EXPECT_NEAR(s.total_norm(), 1.0, 1e-12);
        // drift of the embedded pair grows roughly as 40 * tol over this window
        for (const auto& s : evolve_stepper(g, w_state(), grid, {.tol = 1e-12}).states)
            EXPECT_NEAR(s.total_norm(), 1.0, 1e-9);
    }
}

TEST(Solvers, GlobalPhaseCovariance) {
    const auto g = build_generator(non_uniform_r(8.0, 12.0, 18.0, 10.0));
    const auto grid = uniform_grid(2.0, 50);
    const cplx phase = std::polar(1.0, 0.9);
    AmplitudeState rotated = w_state(0.3);
    rotated.c11 *= phase;
    rotated.c12 *= phase;
    rotated.c13 *= phase;
    const auto a = evolve_resolvent(g, w_state(0.3), grid);
    const auto b = evolve_resolvent(g, rotated, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_NEAR(std::abs(b.states[i].c12 - phase * a.states[i].c12), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(b.states[i].bm - phase * a.states[i].bm), 0.0, 1e-12);
        EXPECT_NEAR(std::norm(b.states[i].c13), std::norm(a.states[i].c13), 1e-12);
    }
}

TEST(EvolveStepper, StepUnderflowReportsDiagnostics) {
    const auto g = build_generator(SystemParams::uniform(20.0, 10.0));
    const auto grid = uniform_grid(3.0, 3);
    try {
        evolve_stepper(g, w_state(), grid, {.tol = 1e-12, .min_step = 0.5});
        FAIL() << "expected NumericalError";
    } catch (const NumericalError& e) {
        EXPECT_NE(std::string(e.what()).find("underflow"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("stiffness"), std::string::npos);
    }
}

TEST(EvolveStepper, RejectsBadGridAndTolerance) {
    const auto g = build_generator(SystemParams::uniform(0.0, 1.0));
    const std::vector<double> backwards{0.0, 1.0, 0.5};
    EXPECT_THROW(evolve_stepper(g, w_state(), backwards), ValidationError);
    const std::vector<double> ok{0.0, 1.0};
    EXPECT_THROW(evolve_stepper(g, w_state(), ok, {.tol = 0.0}), ValidationError);
    EXPECT_THROW(evolve_resolvent(g, w_state(), backwards), ValidationError);
}

TEST(LeakedPopulation, LimitsAndRoundOff) {
    EXPECT_EQ(leaked_population(AmplitudeState::from_initial({1.0, 0.0, 0.0, 0.0, 1.0})), 0.0);
    EXPECT_EQ(leaked_population(AmplitudeState{}), 1.0);
    AmplitudeState over{cplx(1.0 + 1e-12, 0.0), {}, {}, {}};
    EXPECT_EQ(leaked_population(over), 0.0);
    AmplitudeState bad{cplx(1.1, 0.0), {}, {}, {}};
    EXPECT_THROW(leaked_population(bad), NumericalError);
}
