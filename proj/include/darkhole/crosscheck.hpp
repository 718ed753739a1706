#ifndef DARKHOLE_CROSSCHECK_HPP
#define DARKHOLE_CROSSCHECK_HPP

#include <array>
#include <string>
#include <vector>

#include "darkhole/model.hpp"

namespace darkhole {

struct SuspectedTerm {
    std::string equation; // e.g. "1d"
    std::string printed;
    std::string derived;
};

/// Entry-by-entry difference between the published equations of motion,
/// evaluated verbatim (misprints included), and the generator derived from
/// the Hamiltonian + relaxation model. Diagnostic output only; nothing in the
/// simulation path consumes it.
struct DiscrepancyReport {
    static constexpr std::array<const char *, 6> entry_labels = {
        "AA", "BB", "CC", "AB", "AC", "BC"};

    std::array<double, 6> max_abs_diff{}; // |printed - derived| per equation
    std::vector<SuspectedTerm> suspected;

    double max() const;
    void merge(const DiscrepancyReport &other); // elementwise max
};

/// Evaluates the published right-hand sides on (rho, t) against the derived
/// generator. The published residual phase factors e^{-i w_a t} e^{i w_b t}
/// and e^{-i w_alpha t} e^{i w_beta t} are both read as e^{-i delta t} with
/// delta = Delta_alpha - Delta_beta (their common slow residual in the
/// field-rotating frame). The EE kind is checked against the system with the
/// e-e terms, Eqs. (3); the other kinds against the plain system, Eqs. (1).
/// No V-system equations were published, so a V parameter set is checked with
/// the same numbers on the Lambda structure.
DiscrepancyReport crosscheck_published_equations(const ValidatedParams &params,
                                             const DensityMatrix &rho, double t);

} // namespace darkhole

#endif
