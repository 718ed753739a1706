#include "darkhole/crosscheck.hpp"

#include <algorithm>
#include <cmath>

#include "darkhole/liouvillian.hpp"

namespace darkhole {

double DiscrepancyReport::max() const
{
    return *std::max_element(max_abs_diff.begin(), max_abs_diff.end());
}

void DiscrepancyReport::merge(const DiscrepancyReport &other)
{
    for (std::size_t k = 0; k < max_abs_diff.size(); ++k)
        max_abs_diff[k] = std::max(max_abs_diff[k], other.max_abs_diff[k]);
    if (suspected.empty()) suspected = other.suspected;
}

DiscrepancyReport crosscheck_published_equations(const ValidatedParams &vp,
                                             const DensityMatrix &rho, double t)
{
    const SystemParams &p = vp.get();
    const Mat3 &r = rho.m;
    const Complex I = IMAG_UNIT;

    const Complex a = p.rabi_alpha;
    const Complex b = p.rabi_beta;
    const double da = p.detuning_alpha;
    const double db = p.detuning_beta;
    const double g_ca = p.gamma_ac;
    const double g_cb = p.gamma_bc;
    const double G = 0.5 * (g_ca + g_cb); // Gamma_AC = Gamma_BC; Gamma_AB = 0

    const Complex r_AC = r(0, 2), r_BC = r(1, 2), r_AB = r(0, 1);
    const Complex r_AA = r(0, 0), r_BB = r(1, 1), r_CC = r(2, 2);

    // Eqs. (1a)-(1f) as printed, including the suspected rho_AC term in (1d).
    Complex d_AA = I * (r_AC * a - std::conj(r_AC) * std::conj(a)) + g_ca * r_CC;
    Complex d_BB = I * (r_BC * b - std::conj(r_BC) * std::conj(b)) + g_cb * r_CC;
    Complex d_CC = I * (-r_AC * a + std::conj(r_AC) * std::conj(a) - r_BC * b +
                        std::conj(r_BC) * std::conj(b)) -
                   (g_ca + g_cb) * r_CC;
    Complex d_AB =
        I * (-r_AC * (da - db) + r_AC * b - std::conj(r_BC) * std::conj(a));
    Complex d_AC = I * (-r_AC * da + std::conj(a) * (r_AA - r_CC) +
                        r_AB * std::conj(b)) -
                   G * r_AC;
    Complex d_BC = I * (-r_BC * db + std::conj(b) * (r_BB - r_CC) +
                        std::conj(r_AB) * std::conj(a)) -
                   G * r_BC;

    DiscrepancyReport report;
    report.suspected.push_back(
        {"1d", "-i rho_AC (Delta_alpha - Delta_beta)",
         "-i rho_AB (Delta_alpha - Delta_beta)"});

    if (p.has_ee()) {
        const Complex chi = p.chi;
        const double delta = p.modulation_delta();
        // both printed residual factors read as the slow e^{-i delta t}
        const Complex ph_m = std::exp(-I * delta * t); // e^{-i w_a t} e^{i w_b t}
        const Complex ph_p = std::conj(ph_m);

        d_AA += I * (r_AB * std::conj(chi) * ph_p -
                     std::conj(r_AB) * chi * ph_m);
        d_BB += I * (std::conj(r_AB) * chi * ph_m -
                     r_AB * std::conj(chi) * ph_p);
        d_AB += I * ((r_AA - r_BB) * chi * ph_m +
                     r_AB * (p.shift_A - p.shift_B));
        d_AC += I * (r_AC * (p.shift_C - p.shift_A) - r_BC * chi * ph_m);
        // printed (3f) carries (Delta_C - Delta_A), not (Delta_C - Delta_B)
        d_BC += I * (r_BC * (p.shift_C - p.shift_A) -
                     r_AC * std::conj(chi) * ph_p);

        report.suspected.push_back(
            {"3d", "+i rho_AB (Delta_A - Delta_B)",
             "+i rho_AB (Delta_B - Delta_A)"});
        report.suspected.push_back(
            {"3f", "+i rho_BC (Delta_C - Delta_A)",
             "+i rho_BC (Delta_C - Delta_B)"});
        if (chi != Complex(0.0, 0.0) && delta != 0.0)
            report.suspected.push_back(
                {"3e/3f", "chi e^{-/+ i delta t} at full amplitude",
                 "chi/2 e^{-/+ i delta t} (co-rotating RWA half off Raman "
                 "resonance)"});
    }

    // derived generator on the same parameter values; a V parameter set is
    // checked against the Lambda structure it shares its numbers with
    SystemParams lp = p;
    if (!p.two_electron()) lp.model_kind = ModelKind::LAMBDA_TWO_ELECTRON;
    Mat3 derived = rhs(rho, t, build_liouvillian(validate_params(lp)));

    const std::array<Complex, 6> printed = {d_AA, d_BB, d_CC, d_AB, d_AC, d_BC};
    const std::array<std::pair<int, int>, 6> pos = {
        {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
    for (std::size_t k = 0; k < 6; ++k)
        report.max_abs_diff[k] =
            std::abs(printed[k] - derived(pos[k].first, pos[k].second));
    return report;
}

} // namespace darkhole
