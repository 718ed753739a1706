#ifndef DARKHOLE_ANALYSIS_HPP
#define DARKHOLE_ANALYSIS_HPP

#include <array>
#include <string>
#include <utility>

#include "darkhole/model.hpp"

namespace darkhole {

/// Normalized superposition over the two field-coupled lower states.
struct SuperpositionState {
    enum class Label { DARK, BRIGHT };
    Complex c_A;
    Complex c_B;
    Label label;
};

/// CPT basis of span{A,B}: DARK = (beta|A> - alpha|B>)/sqrt(|alpha|^2+|beta|^2)
/// satisfies <C|H_RWA|DARK> = 0 exactly with this artifact's phase convention
/// (<C|H|A> = alpha, <C|H|B> = beta); BRIGHT is its orthogonal complement.
/// Reduces to (|A> - |B>)/sqrt(2) and (|A> + |B>)/sqrt(2) at alpha = beta.
/// Throws BOTH_FIELDS_ZERO.
std::pair<SuperpositionState, SuperpositionState>
dark_bright_basis(Complex alpha, Complex beta);

/// Occupation of the empty single-electron state. |A> = {c,b} occupied leaves
/// |a> empty, and cyclically, so the hole probabilities are just the
/// two-electron populations; the n_i are single-electron occupations and sum
/// to 2.
struct HoleDistribution {
    double p_hole_a;
    double p_hole_b;
    double p_hole_c;
    double n_a;
    double n_b;
    double n_c;
};

/// Throws WRONG_MODEL_KIND for the V system (no hole there).
HoleDistribution hole_population(const DensityMatrix &rho, ModelKind kind);

/// Eigenvalues of the static RWA Hamiltonian, sorted ascending. Only defined
/// where the generator is autonomous; evaluated at the Raman-resonant frame
/// where the chi term is static at full strength (the level-splitting picture
/// behind the satellite resonances). Throws TIME_DEPENDENT_GENERATOR when
/// delta != 0 with chi != 0.
std::array<double, 3> dressed_energies(const ValidatedParams &params);

/// Steady-state contrast between the one-electron V system and the
/// two-electron Lambda system at identical fields and decays.
struct TrappingReport {
    double f_v = 0.0;          // gamma_ac rho_aa + gamma_bc rho_bb
    double f_lambda = 0.0;     // (gamma_CA + gamma_CB) rho_CC
    double trapping_ratio = 0.0; // f_v / f_lambda (inf when f_lambda <= 0)
    bool degenerate_v = false;
    bool degenerate_lambda = false;
    DensityMatrix rho_v;
    DensityMatrix rho_lambda;
    HoleDistribution lambda_hole{}; // valid unless degenerate_lambda

    std::string text() const;    // aligned plain-text rendering
    std::string csv_row() const; // one regression row
    static std::string csv_header();
};

/// Requires Delta_alpha = Delta_beta and chi = 0; zero fields are allowed and
/// produce DEGENERATE flags instead of numbers. Throws BAD_ARGUMENT otherwise.
TrappingReport compare_v_lambda(const ValidatedParams &params);

} // namespace darkhole

#endif
