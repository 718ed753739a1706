#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "darkhole/crosscheck.hpp"
#include "darkhole/liouvillian.hpp"
#include "helpers.hpp"

using namespace darkhole;

namespace {

SystemParams lambda_params(Complex alpha, Complex beta, double da, double db,
                           double gac, double gbc)
{
    SystemParams p;
    p.model_kind = ModelKind::LAMBDA_TWO_ELECTRON;
    p.rabi_alpha = alpha;
    p.rabi_beta = beta;
    p.detuning_alpha = da;
    p.detuning_beta = db;
    p.gamma_ac = gac;
    p.gamma_bc = gbc;
    return p;
}

SystemParams fig4_params(double detuning_alpha)
{
    SystemParams p = lambda_params(0.1, 0.1, detuning_alpha, 0.0, 1.0, 1.0);
    p.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
    p.chi = 0.3;
    return p;
}

// trace functional as a row vector on stacked matrices
Eigen::Matrix<Complex, 1, 9> trace_row()
{
    Eigen::Matrix<Complex, 1, 9> row = Eigen::Matrix<Complex, 1, 9>::Zero();
    row(stacked_index(0, 0)) = 1.0;
    row(stacked_index(1, 1)) = 1.0;
    row(stacked_index(2, 2)) = 1.0;
    return row;
}

} // namespace

TEST_CASE("resonant Lambda Hamiltonian has bare couplings and empty harmonics")
{
    auto vp = validate_params(lambda_params(0.1, 0.1, 0.0, 0.0, 1.0, 1.0));
    HamiltonianRWA h = build_hamiltonian_rwa(vp);
    CHECK(h.autonomous());
    CHECK(h.static_part.diagonal().cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.static_part(2, 0) == Complex(0.1, 0.0));
    CHECK(h.static_part(0, 2) == Complex(0.1, 0.0));
    CHECK(h.static_part(2, 1) == Complex(0.1, 0.0));
    CHECK(h.static_part(0, 1) == Complex(0.0, 0.0));
}

TEST_CASE("field-free Hamiltonian is diagonal")
{
    auto vp = validate_params(lambda_params(0.0, 0.0, 0.4, -0.2, 1.0, 1.0));
    HamiltonianRWA h = build_hamiltonian_rwa(vp);
    Mat3 offdiag = h.static_part;
    offdiag.diagonal().setZero();
    CHECK(offdiag.cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.static_part(0, 0) == Complex(0.4, 0.0));
    CHECK(h.static_part(1, 1) == Complex(-0.2, 0.0));
}

TEST_CASE("chi off Raman resonance sits in harmonics +-1 at delta")
{
    SystemParams p = fig4_params(0.2);
    HamiltonianRWA h = build_hamiltonian_rwa(validate_params(p));
    CHECK(h.modulation_delta == doctest::Approx(0.2));
    REQUIRE(h.periodic_parts.size() == 2);
    // Hermiticity pairing: coefficient of k is the adjoint of that of -k
    const Mat3 *minus = nullptr, *plus = nullptr;
    for (const auto &[coeff, k] : h.periodic_parts) {
        if (k == -1) minus = &coeff;
        if (k == +1) plus = &coeff;
    }
    REQUIRE(minus != nullptr);
    REQUIRE(plus != nullptr);
    CHECK((*plus - minus->adjoint()).cwiseAbs().maxCoeff() == 0.0);
    // only the {A,B} block carries the coupling
    for (const auto &[coeff, k] : h.periodic_parts)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!((i == 0 && j == 1) || (i == 1 && j == 0)))
                    CHECK(coeff(i, j) == Complex(0.0, 0.0));
    // the two halves add back to the full element
    CHECK(((*minus)(0, 1) + std::conj((*plus)(1, 0))) == Complex(0.3, 0.0));
}

TEST_CASE("chi at Raman resonance is static at full strength")
{
    SystemParams p = fig4_params(0.0);
    HamiltonianRWA h = build_hamiltonian_rwa(validate_params(p));
    CHECK(h.autonomous());
    CHECK(h.static_part(0, 1) == Complex(0.3, 0.0));
    CHECK(h.static_part(1, 0) == Complex(0.3, 0.0));
}

TEST_CASE("e-e shifts enter relative to the |A> origin")
{
    SystemParams p = fig4_params(0.0);
    p.chi = 0.0;
    p.shift_A = 0.2;
    p.shift_B = 0.5;
    p.shift_C = -0.1;
    HamiltonianRWA h = build_hamiltonian_rwa(validate_params(p));
    CHECK(h.static_part(0, 0) == Complex(0.0, 0.0));
    CHECK(h.static_part(1, 1).real() == doctest::Approx(0.3));
    CHECK(h.static_part(2, 2).real() == doctest::Approx(-0.3));
}

TEST_CASE("relaxation rates follow the printed coherence formulas")
{
    SUBCASE("equal rates")
    {
        auto r = build_relaxation(
            validate_params(lambda_params(0, 0, 0, 0, 1.0, 1.0)));
        CHECK(r.coherence_decay(0, 2) == doctest::Approx(1.0));
        CHECK(r.coherence_decay(1, 2) == doctest::Approx(1.0));
        CHECK(r.coherence_decay(0, 1) == 0.0);
    }
    SUBCASE("no decay at all")
    {
        auto r = build_relaxation(
            validate_params(lambda_params(0, 0, 0, 0, 0.0, 0.0)));
        CHECK(r.channels.empty());
        CHECK(r.coherence_decay(0, 2) == 0.0);
    }
    SUBCASE("single channel")
    {
        auto r = build_relaxation(
            validate_params(lambda_params(0, 0, 0, 0, 2.0, 0.0)));
        CHECK(r.coherence_decay(0, 2) == doctest::Approx(1.0));
        CHECK(r.coherence_decay(1, 2) == doctest::Approx(1.0));
        for (const auto &ch : r.channels) CHECK(ch.to != 1);
    }
    SUBCASE("V system halves")
    {
        SystemParams p = lambda_params(0, 0, 0, 0, 1.0, 0.5);
        p.model_kind = ModelKind::V_ONE_ELECTRON;
        auto r = build_relaxation(validate_params(p));
        CHECK(r.coherence_decay(0, 1) == doctest::Approx(0.75));
        CHECK(r.coherence_decay(0, 2) == doctest::Approx(0.5));
        CHECK(r.coherence_decay(1, 2) == doctest::Approx(0.25));
    }
}

TEST_CASE("pure relaxation maps rho_CC into the lower populations")
{
    SystemParams p = lambda_params(0.0, 0.0, 0.0, 0.0, 1.0, 1.0);
    Liouvillian L = build_liouvillian(validate_params(p));
    CHECK(L.autonomous());
    CHECK(L.static_part(stacked_index(0, 0), stacked_index(2, 2)).real() ==
          doctest::Approx(1.0));
    CHECK(L.static_part(stacked_index(1, 1), stacked_index(2, 2)).real() ==
          doctest::Approx(1.0));
    CHECK(L.static_part(stacked_index(2, 2), stacked_index(2, 2)).real() ==
          doctest::Approx(-2.0));

    DensityMatrix rho = DensityMatrix::level(2);
    Mat3 d = rhs(rho, 0.0, L);
    CHECK(d(0, 0).real() == doctest::Approx(1.0));
    CHECK(d(1, 1).real() == doctest::Approx(1.0));
    CHECK(d(2, 2).real() == doctest::Approx(-2.0));
}

TEST_CASE("trace row annihilates every superoperator part")
{
    std::mt19937_64 rng(11);
    auto row = trace_row();
    for (ModelKind kind :
         {ModelKind::V_ONE_ELECTRON, ModelKind::LAMBDA_TWO_ELECTRON,
          ModelKind::LAMBDA_TWO_ELECTRON_EE}) {
        for (int trial = 0; trial < 10; ++trial) {
            SystemParams p = testing::random_autonomous_params(rng, kind);
            if (kind == ModelKind::LAMBDA_TWO_ELECTRON_EE)
                p.chi = testing::random_rabi(rng, 0.1, 0.5);
            Liouvillian L = build_liouvillian(validate_params(p));
            CHECK((row * L.static_part).cwiseAbs().maxCoeff() < 1e-13);
            for (const auto &[part, k] : L.periodic_parts)
                CHECK((row * part).cwiseAbs().maxCoeff() < 1e-13);
        }
    }
}

TEST_CASE("generator preserves Hermiticity on random states and times")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> time(0.0, 20.0);
    SystemParams p = fig4_params(0.37); // driven, periodic parts active
    Liouvillian L = build_liouvillian(validate_params(p));
    for (int i = 0; i < 100; ++i) {
        DensityMatrix rho = testing::random_state(rng);
        for (int j = 0; j < 10; ++j) {
            Mat3 d = rhs(rho, time(rng), L);
            CHECK(hermiticity_defect(d) < 1e-12);
            CHECK(std::abs(d.trace()) < 1e-13);
        }
    }
}

TEST_CASE("EE generator with chi = 0 and zero shifts equals the plain one")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        SystemParams p = testing::random_autonomous_params(
            rng, ModelKind::LAMBDA_TWO_ELECTRON);
        SystemParams q = p;
        q.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
        q.chi = 0.0;
        q.shift_A = q.shift_B = q.shift_C = 0.0;
        Liouvillian a = build_liouvillian(validate_params(p));
        Liouvillian b = build_liouvillian(validate_params(q));
        CHECK((a.static_part - b.static_part).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK(b.periodic_parts.empty());
    }
}

TEST_CASE("dark state is stationary at Raman resonance")
{
    SystemParams p = lambda_params(0.1, 0.1, 0.25, 0.25, 1.0, 1.0);
    Liouvillian L = build_liouvillian(validate_params(p));
    Vec3 dark;
    dark << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0;
    Mat3 d = rhs(DensityMatrix::pure(dark), 0.0, L);
    CHECK(d.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Liouvillian::at matches apply for driven generators")
{
    SystemParams p = fig4_params(0.61);
    Liouvillian L = build_liouvillian(validate_params(p));
    REQUIRE(!L.autonomous());
    std::mt19937_64 rng(23);
    DensityMatrix rho = testing::random_state(rng);
    Vec9 v = stack_columns(rho.m);
    for (double t : {0.0, 1.7, 9.3}) {
        Vec9 direct;
        L.apply(t, v, direct);
        Vec9 dense = L.at(t) * v;
        CHECK((direct - dense).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("debug superoperator dump is a 9x9 grid of re,im pairs")
{
    Liouvillian L = build_liouvillian(
        validate_params(lambda_params(0.1, 0.1, 0.2, 0.0, 1.0, 1.0)));
    std::ostringstream os;
    dump_superop_csv(L.static_part, os);
    std::istringstream is(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) {
        ++lines;
        CHECK(std::count(line.begin(), line.end(), ',') == 17);
    }
    CHECK(lines == 9);
}

// ---- printed-equation crosscheck -------------------------------------------

TEST_CASE("printed equations match the generator at Raman resonance")
{
    std::mt19937_64 rng(29);
    SUBCASE("plain Lambda, chi = 0")
    {
        SystemParams p = lambda_params(Complex(0.07, 0.02), 0.123, 0.4, 0.4,
                                       1.3, 0.8);
        auto vp = validate_params(p);
        for (int i = 0; i < 50; ++i) {
            auto r = crosscheck_published_equations(vp, testing::random_state(rng),
                                                0.7 * i);
            CHECK(r.max() <= 1e-13);
        }
    }
    SUBCASE("EE kind with static chi and zero shifts")
    {
        SystemParams p = fig4_params(0.0);
        auto vp = validate_params(p);
        for (int i = 0; i < 50; ++i) {
            auto r = crosscheck_published_equations(vp, testing::random_state(rng),
                                                0.3 * i);
            CHECK(r.max() <= 1e-13);
        }
    }
}

TEST_CASE("off Raman resonance the discrepancy localizes in the AB equation")
{
    std::mt19937_64 rng(31);
    SystemParams p = lambda_params(Complex(0.07, 0.02), 0.123, 0.9, 0.4, 1.3,
                                   0.8);
    auto vp = validate_params(p);
    DensityMatrix rho = testing::random_state(rng);
    auto r = crosscheck_published_equations(vp, rho, 1.1);
    CHECK(r.max_abs_diff[0] <= 1e-13); // AA
    CHECK(r.max_abs_diff[1] <= 1e-13); // BB
    CHECK(r.max_abs_diff[2] <= 1e-13); // CC
    CHECK(r.max_abs_diff[4] <= 1e-13); // AC
    CHECK(r.max_abs_diff[5] <= 1e-13); // BC
    // printed (1d) first term uses rho_AC in place of rho_AB
    double predicted =
        std::abs((rho.m(0, 1) - rho.m(0, 2)) * Complex(0.9 - 0.4));
    CHECK(r.max_abs_diff[3] == doctest::Approx(predicted).epsilon(1e-10));
    CHECK(r.max_abs_diff[3] > 1e-3);
}

TEST_CASE("fully mixed state with fields off shows zero discrepancy")
{
    SystemParams p = lambda_params(0.0, 0.0, 0.9, 0.1, 1.0, 1.0);
    auto r = crosscheck_published_equations(validate_params(p),
                                        DensityMatrix::mixed(), 0.0);
    CHECK(r.max() == 0.0);
}

TEST_CASE("suspected-term list names the misprinted equations")
{
    auto has_equation = [](const DiscrepancyReport &r, const char *eq) {
        for (const auto &s : r.suspected)
            if (s.equation == eq) return true;
        return false;
    };
    std::mt19937_64 rng(37);
    SystemParams plain = lambda_params(0.1, 0.1, 0.0, 0.0, 1.0, 1.0);
    auto r1 = crosscheck_published_equations(validate_params(plain),
                                         testing::random_state(rng), 0.0);
    CHECK(has_equation(r1, "1d"));
    CHECK(!has_equation(r1, "3f"));

    auto r3 = crosscheck_published_equations(validate_params(fig4_params(0.4)),
                                         testing::random_state(rng), 0.0);
    CHECK(has_equation(r3, "1d"));
    CHECK(has_equation(r3, "3d"));
    CHECK(has_equation(r3, "3f"));
}

TEST_CASE("shift misprints produce the predicted discrepancies")
{
    // at Raman resonance with chi = 0 the only printed-vs-derived differences
    // come from the (3d) sign and the (3f) factor
    std::mt19937_64 rng(41);
    SystemParams p = fig4_params(0.5);
    p.detuning_beta = 0.5; // delta = 0
    p.chi = 0.0;
    p.shift_A = 0.3;
    p.shift_B = -0.2;
    p.shift_C = 0.1;
    DensityMatrix rho = testing::random_state(rng);
    auto r = crosscheck_published_equations(validate_params(p), rho, 2.2);
    CHECK(r.max_abs_diff[0] <= 1e-13);
    CHECK(r.max_abs_diff[1] <= 1e-13);
    CHECK(r.max_abs_diff[2] <= 1e-13);
    // (3d): printed +(Delta_A - Delta_B), derived +(Delta_B - Delta_A)
    double ab = std::abs(rho.m(0, 1) * Complex(2.0 * (0.3 - (-0.2))));
    CHECK(r.max_abs_diff[3] == doctest::Approx(ab).epsilon(1e-10));
    // (3f): printed (Delta_C - Delta_A), derived (Delta_C - Delta_B)
    double bc = std::abs(rho.m(1, 2) * Complex(0.3 - (-0.2)));
    CHECK(r.max_abs_diff[5] == doctest::Approx(bc).epsilon(1e-10));
    CHECK(r.max_abs_diff[4] <= 1e-13); // AC sits on the stated origin
}
