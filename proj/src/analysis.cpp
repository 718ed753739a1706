#include "darkhole/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "darkhole/liouvillian.hpp"
#include "darkhole/steadystate.hpp"

namespace darkhole {

std::pair<SuperpositionState, SuperpositionState>
dark_bright_basis(Complex alpha, Complex beta)
{
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (n2 == 0.0)
        throw Error(ErrorCode::BOTH_FIELDS_ZERO,
                    "dark/bright basis undefined at alpha = beta = 0");
    const double n = std::sqrt(n2);
    SuperpositionState dark{beta / n, -alpha / n,
                            SuperpositionState::Label::DARK};
    SuperpositionState bright{std::conj(alpha) / n, std::conj(beta) / n,
                              SuperpositionState::Label::BRIGHT};
    return {dark, bright};
}

HoleDistribution hole_population(const DensityMatrix &rho, ModelKind kind)
{
    if (kind == ModelKind::V_ONE_ELECTRON)
        throw Error(ErrorCode::WRONG_MODEL_KIND,
                    "hole distribution is a two-electron concept");
    HoleDistribution h;
    h.p_hole_a = rho.m(0, 0).real();
    h.p_hole_b = rho.m(1, 1).real();
    h.p_hole_c = rho.m(2, 2).real();
    h.n_a = h.p_hole_b + h.p_hole_c;
    h.n_b = h.p_hole_a + h.p_hole_c;
    h.n_c = h.p_hole_a + h.p_hole_b;
    return h;
}

std::array<double, 3> dressed_energies(const ValidatedParams &vp)
{
    const SystemParams &p = vp.get();
    SystemParams raman = p;
    if (p.has_ee() && p.chi != Complex(0.0, 0.0) &&
        p.modulation_delta() != 0.0)
        throw Error(ErrorCode::TIME_DEPENDENT_GENERATOR,
                    "dressed energies are defined at Raman resonance "
                    "(Delta_alpha = Delta_beta)");

    HamiltonianRWA h = build_hamiltonian_rwa(validate_params(raman));
    Eigen::SelfAdjointEigenSolver<Mat3> es(h.static_part,
                                           Eigen::EigenvaluesOnly);
    return {es.eigenvalues()(0), es.eigenvalues()(1), es.eigenvalues()(2)};
}

TrappingReport compare_v_lambda(const ValidatedParams &vp)
{
    const SystemParams &p = vp.get();
    if (p.modulation_delta() != 0.0)
        throw Error(ErrorCode::BAD_ARGUMENT,
                    "comparison is defined at Raman resonance");
    if (p.has_ee() && p.chi != Complex(0.0, 0.0))
        throw Error(ErrorCode::BAD_ARGUMENT, "comparison requires chi = 0");

    SystemParams pv = p;
    pv.model_kind = ModelKind::V_ONE_ELECTRON;
    SystemParams pl = p;
    pl.model_kind = ModelKind::LAMBDA_TWO_ELECTRON;

    TrappingReport report;

    SteadyStateResult v = steady_state_nullspace(build_liouvillian(validate_params(pv)));
    report.degenerate_v = v.degenerate();
    if (!v.degenerate()) {
        report.rho_v = v.rho;
        report.f_v = p.gamma_ac * v.rho.m(0, 0).real() +
                     p.gamma_bc * v.rho.m(1, 1).real();
    }

    SteadyStateResult l = steady_state_nullspace(build_liouvillian(validate_params(pl)));
    report.degenerate_lambda = l.degenerate();
    if (!l.degenerate()) {
        report.rho_lambda = l.rho;
        report.f_lambda = (p.gamma_ac + p.gamma_bc) * l.rho.m(2, 2).real();
        report.lambda_hole = hole_population(l.rho, pl.model_kind);
    }

    if (!report.degenerate_v && !report.degenerate_lambda)
        report.trapping_ratio =
            report.f_lambda > 0.0
                ? report.f_v / report.f_lambda
                : std::numeric_limits<double>::infinity();
    return report;
}

std::string TrappingReport::text() const
{
    std::ostringstream os;
    char buf[160];
    auto line = [&](const char *label, double value, bool degenerate) {
        if (degenerate)
            std::snprintf(buf, sizeof(buf), "  %-28s %s\n", label,
                          "n/a (degenerate steady manifold)");
        else
            std::snprintf(buf, sizeof(buf), "  %-28s %.6e\n", label, value);
        os << buf;
    };
    os << "V versus Lambda steady-state fluorescence\n";
    line("F_V  (one electron)", f_v, degenerate_v);
    line("F_Lambda (two electrons)", f_lambda, degenerate_lambda);
    if (!degenerate_v && !degenerate_lambda) {
        std::snprintf(buf, sizeof(buf), "  %-28s %.6e\n", "trapping ratio",
                      trapping_ratio);
        os << buf;
    }
    if (!degenerate_lambda) {
        std::snprintf(buf, sizeof(buf),
                      "  hole distribution (a,b,c)     %.6f  %.6f  %.6f\n",
                      lambda_hole.p_hole_a, lambda_hole.p_hole_b,
                      lambda_hole.p_hole_c);
        os << buf;
        std::snprintf(buf, sizeof(buf),
                      "  electron occupation (a,b,c)   %.6f  %.6f  %.6f\n",
                      lambda_hole.n_a, lambda_hole.n_b, lambda_hole.n_c);
        os << buf;
    }
    return os.str();
}

std::string TrappingReport::csv_header()
{
    return "f_v,f_lambda,trapping_ratio,degenerate_v,degenerate_lambda,"
           "p_hole_a,p_hole_b,p_hole_c";
}

std::string TrappingReport::csv_row() const
{
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%d,%d,%.17g,%.17g,%.17g",
                  f_v, f_lambda, trapping_ratio, degenerate_v ? 1 : 0,
                  degenerate_lambda ? 1 : 0, lambda_hole.p_hole_a,
                  lambda_hole.p_hole_b, lambda_hole.p_hole_c);
    return buf;
}

} // namespace darkhole
