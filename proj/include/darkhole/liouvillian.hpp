#ifndef DARKHOLE_LIOUVILLIAN_HPP
#define DARKHOLE_LIOUVILLIAN_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "darkhole/model.hpp"
#include "darkhole/types.hpp"

namespace darkhole {

/// RWA Hamiltonian split into a static part and harmonics of the modulation
/// frequency delta: H(t) = H0 + sum_k H_k e^{i k delta t}. Hermiticity of the
/// total requires H_{-k} = H_k^dag, which the builders guarantee.
///
/// Frame and sign conventions (fixed for the whole artifact):
///  - both laser frequencies are absorbed into the slow variables, so the
///    only residual oscillation is the e-e cross coupling at
///    delta = detuning_alpha - detuning_beta;
///  - Lambda basis {A,B,C}: <C|H|A> = alpha, <C|H|B> = beta,
///    diag = (Delta_alpha, Delta_beta, 0) plus, for the EE kind, the
///    e-e shifts measured from the corrected |A> level;
///  - V basis {a,b,c}: <a|H|c> = alpha, <b|H|c> = beta,
///    diag = (-Delta_alpha, -Delta_beta, 0);
///  - off Raman resonance the RWA keeps the co-rotating half of the real
///    modulated e-e element: harmonic -1 carries (chi/2)|A><B|, harmonic +1
///    its conjugate transpose. At delta = 0 both halves are static and add,
///    so the static part carries the full chi|A><B| + chi^*|B><A|.
struct HamiltonianRWA {
    Mat3 static_part = Mat3::Zero();
    std::vector<std::pair<Mat3, int>> periodic_parts; // (coefficient, harmonic k)
    double modulation_delta = 0.0;

    bool autonomous() const { return periodic_parts.empty(); }
    Mat3 at(double t) const;
};

/// Single-electron radiative decay channels plus the coherence decay rates
/// they imply: each coherence (i,j) decays at half the sum of the total
/// decay rates out of i and j. Gamma_AB = 0 falls out because neither lower
/// state decays.
struct RelaxationSpec {
    struct Channel {
        int from;
        int to;
        double rate;
    };
    std::vector<Channel> channels;

    double total_out(int i) const;
    double coherence_decay(int i, int j) const
    {
        return 0.5 * (total_out(i) + total_out(j));
    }
};

/// Generator of the master equation acting on the column-stacked density
/// matrix: d vec(rho)/dt = [L0 + sum_k L_k e^{i k delta t}] vec(rho).
struct Liouvillian {
    Mat9 static_part = Mat9::Zero();
    std::vector<std::pair<Mat9, int>> periodic_parts;
    double modulation_delta = 0.0;

    bool autonomous() const { return periodic_parts.empty(); }
    Mat9 at(double t) const;
    /// out = L(t) v
    void apply(double t, const Vec9 &v, Vec9 &out) const;
};

HamiltonianRWA build_hamiltonian_rwa(const ValidatedParams &params);
RelaxationSpec build_relaxation(const ValidatedParams &params);
Liouvillian assemble_liouvillian(const HamiltonianRWA &h, const RelaxationSpec &r);

/// build + build + assemble
Liouvillian build_liouvillian(const ValidatedParams &params);

/// Superoperator of -i[h, .] under column stacking.
Mat9 commutator_superop(const Mat3 &h);

/// Evaluates the generator at time t on rho.
Mat3 rhs(const DensityMatrix &rho, double t, const Liouvillian &L);

/// Debug dump: row-major, "re,im" pairs, one row per line.
void dump_superop_csv(const Mat9 &m, std::ostream &os);

} // namespace darkhole

#endif
