#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "darkhole/dynamics.hpp"
#include "darkhole/steadystate.hpp"
#include "helpers.hpp"

using namespace darkhole;

namespace {

SystemParams base_lambda()
{
    SystemParams p;
    p.model_kind = ModelKind::LAMBDA_TWO_ELECTRON;
    p.gamma_ac = 1.0;
    p.gamma_bc = 1.0;
    p.rabi_alpha = 0.1;
    p.rabi_beta = 0.1;
    return p;
}

} // namespace

TEST_CASE("fields off: 4-dimensional steady manifold with empty upper state")
{
    SystemParams p = base_lambda();
    p.rabi_alpha = 0.0;
    p.rabi_beta = 0.0;
    SteadyStateResult ss =
        steady_state_nullspace(build_liouvillian(validate_params(p)));
    CHECK(ss.degenerate());
    CHECK(ss.nullspace_dim == 4);
    REQUIRE(ss.basis.size() == 4);
    for (const auto &op : ss.basis) {
        CHECK(std::abs(op(2, 2)) < 1e-10); // rho_CC = 0 on the manifold
        CHECK(std::abs(op(0, 2)) < 1e-10);
        CHECK(std::abs(op(1, 2)) < 1e-10);
    }
}

TEST_CASE("fig4 parameters at the center lock into the pure dark state")
{
    SystemParams p = base_lambda();
    p.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
    p.chi = 0.3;
    SteadyStateResult ss =
        steady_state_nullspace(build_liouvillian(validate_params(p)));
    REQUIRE(!ss.degenerate());
    CHECK(ss.nullspace_dim == 1);
    Mat3 dark = Mat3::Zero();
    dark(0, 0) = 0.5;
    dark(1, 1) = 0.5;
    dark(0, 1) = -0.5;
    dark(1, 0) = -0.5;
    CHECK((ss.rho.m - dark).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(ss.residual < 1e-11);
}

TEST_CASE("V system keeps scattering at the same field parameters")
{
    SystemParams p = base_lambda();
    p.model_kind = ModelKind::V_ONE_ELECTRON;
    SteadyStateResult ss =
        steady_state_nullspace(build_liouvillian(validate_params(p)));
    REQUIRE(!ss.degenerate());
    CHECK(ss.rho.m(2, 2).real() > 0.9);
    CHECK(ss.rho.m(0, 0).real() > 1e-3);
    // frozen from an independent null-space oracle: rho_aa = rho_bb = 1/29,
    // rho_cc = 27/29, Im rho_ac = -5/29 at alpha = beta = 0.1, gamma = 1
    CHECK(ss.rho.m(0, 0).real() == doctest::Approx(1.0 / 29.0).epsilon(1e-9));
    CHECK(ss.rho.m(2, 2).real() == doctest::Approx(27.0 / 29.0).epsilon(1e-9));
    CHECK(ss.rho.m(0, 2).imag() == doctest::Approx(-5.0 / 29.0).epsilon(1e-9));
}

TEST_CASE("periodic generators are rejected")
{
    SystemParams p = base_lambda();
    p.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
    p.chi = 0.3;
    p.detuning_alpha = 0.4; // delta != 0
    Liouvillian L = build_liouvillian(validate_params(p));
    REQUIRE(!L.autonomous());
    CHECK_THROWS_WITH_AS(steady_state_nullspace(L),
                         doctest::Contains("TIME_DEPENDENT_GENERATOR"), Error);
}

TEST_CASE("unique steady states satisfy the state invariants")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        ModelKind kind = trial % 2 ? ModelKind::LAMBDA_TWO_ELECTRON_EE
                                   : ModelKind::LAMBDA_TWO_ELECTRON;
        SystemParams p = testing::random_autonomous_params(rng, kind);
        SteadyStateResult ss =
            steady_state_nullspace(build_liouvillian(validate_params(p)));
        REQUIRE(!ss.degenerate());
        CHECK(ss.rho.trace_error() < 1e-12);
        CHECK(ss.rho.hermiticity_error() < 1e-12);
        CHECK(ss.rho.min_eigenvalue() > -1e-8);
        CHECK(ss.residual <= 1e-11);
    }
}

TEST_CASE("null space agrees with long-time integration")
{
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 5; ++trial) {
        SystemParams p = testing::random_autonomous_params(
            rng, ModelKind::LAMBDA_TWO_ELECTRON_EE);
        Liouvillian L = build_liouvillian(validate_params(p));
        SteadyStateResult ss = steady_state_nullspace(L);
        REQUIRE(!ss.degenerate());

        IntegrationPolicy policy;
        policy.tolerance = 1e-10;
        policy.max_time = 2000.0 / p.gamma_bc;
        policy.record_stride = 1 << 30;
        Trajectory traj = integrate(DensityMatrix::mixed(), L, policy);
        CHECK((traj.final_state() - ss.rho.m).cwiseAbs().maxCoeff() <= 1e-6);
    }
}
