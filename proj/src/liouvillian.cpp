#include "darkhole/liouvillian.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace darkhole {

Mat3 HamiltonianRWA::at(double t) const
{
    Mat3 h = static_part;
    for (const auto &[coeff, k] : periodic_parts)
        h += coeff * std::exp(IMAG_UNIT * (k * modulation_delta * t));
    return h;
}

double RelaxationSpec::total_out(int i) const
{
    double sum = 0.0;
    for (const auto &ch : channels)
        if (ch.from == i) sum += ch.rate;
    return sum;
}

Mat9 Liouvillian::at(double t) const
{
    Mat9 l = static_part;
    for (const auto &[part, k] : periodic_parts)
        l += part * std::exp(IMAG_UNIT * (k * modulation_delta * t));
    return l;
}

void Liouvillian::apply(double t, const Vec9 &v, Vec9 &out) const
{
    out.noalias() = static_part * v;
    for (const auto &[part, k] : periodic_parts) {
        Complex phase = std::exp(IMAG_UNIT * (k * modulation_delta * t));
        out.noalias() += phase * (part * v);
    }
}

HamiltonianRWA build_hamiltonian_rwa(const ValidatedParams &vp)
{
    const SystemParams &p = vp.get();
    HamiltonianRWA h;

    const Complex alpha = p.rabi_alpha;
    const Complex beta = p.rabi_beta;

    if (p.model_kind == ModelKind::V_ONE_ELECTRON) {
        h.static_part(0, 0) = -p.detuning_alpha;
        h.static_part(1, 1) = -p.detuning_beta;
        h.static_part(0, 2) = alpha;
        h.static_part(2, 0) = std::conj(alpha);
        h.static_part(1, 2) = beta;
        h.static_part(2, 1) = std::conj(beta);
        return h;
    }

    h.static_part(0, 0) = p.detuning_alpha;
    h.static_part(1, 1) = p.detuning_beta;
    h.static_part(2, 0) = alpha;
    h.static_part(0, 2) = std::conj(alpha);
    h.static_part(2, 1) = beta;
    h.static_part(1, 2) = std::conj(beta);

    if (!p.has_ee()) return h;

    // e-e shifts relative to the corrected |A> energy origin
    h.static_part(1, 1) += p.shift_B - p.shift_A;
    h.static_part(2, 2) += p.shift_C - p.shift_A;

    const double delta = p.modulation_delta();
    if (p.chi == Complex(0.0, 0.0)) return h;

    if (delta == 0.0) {
        // Raman resonance: both rotating halves of the modulated element are
        // static and add to the full coupling.
        h.static_part(0, 1) += p.chi;
        h.static_part(1, 0) += std::conj(p.chi);
        return h;
    }

    h.modulation_delta = delta;
    Mat3 minus = Mat3::Zero();
    minus(0, 1) = 0.5 * p.chi;
    h.periodic_parts.emplace_back(minus, -1);
    h.periodic_parts.emplace_back(minus.adjoint().eval(), +1);
    return h;
}

RelaxationSpec build_relaxation(const ValidatedParams &vp)
{
    const SystemParams &p = vp.get();
    RelaxationSpec r;
    if (p.model_kind == ModelKind::V_ONE_ELECTRON) {
        if (p.gamma_ac > 0.0) r.channels.push_back({0, 2, p.gamma_ac});
        if (p.gamma_bc > 0.0) r.channels.push_back({1, 2, p.gamma_bc});
    } else {
        // gamma_CA = gamma_ac, gamma_CB = gamma_bc
        if (p.gamma_ac > 0.0) r.channels.push_back({2, 0, p.gamma_ac});
        if (p.gamma_bc > 0.0) r.channels.push_back({2, 1, p.gamma_bc});
    }
    return r;
}

Mat9 commutator_superop(const Mat3 &h)
{
    Mat3 id = Mat3::Identity();
    Mat9 sup = Mat9::Zero();
    // vec(h rho) = (I (x) h) vec(rho), vec(rho h) = (h^T (x) I) vec(rho)
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            for (int l = 0; l < 3; ++l)
                for (int k = 0; k < 3; ++k) {
                    Complex v = id(j, l) * h(i, k) - h(l, j) * id(i, k);
                    sup(stacked_index(i, j), stacked_index(k, l)) +=
                        -IMAG_UNIT * v;
                }
    return sup;
}

namespace {

Mat9 relaxation_superop(const RelaxationSpec &r)
{
    Mat9 sup = Mat9::Zero();
    for (const auto &ch : r.channels)
        sup(stacked_index(ch.to, ch.to), stacked_index(ch.from, ch.from)) +=
            ch.rate;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            sup(stacked_index(i, j), stacked_index(i, j)) -=
                r.coherence_decay(i, j);
    return sup;
}

} // namespace

Liouvillian assemble_liouvillian(const HamiltonianRWA &h, const RelaxationSpec &r)
{
    Liouvillian l;
    l.static_part = commutator_superop(h.static_part) + relaxation_superop(r);
    l.modulation_delta = h.modulation_delta;
    for (const auto &[coeff, k] : h.periodic_parts)
        l.periodic_parts.emplace_back(commutator_superop(coeff), k);
    return l;
}

Liouvillian build_liouvillian(const ValidatedParams &params)
{
    return assemble_liouvillian(build_hamiltonian_rwa(params),
                                build_relaxation(params));
}

Mat3 rhs(const DensityMatrix &rho, double t, const Liouvillian &L)
{
    Vec9 v = stack_columns(rho.m);
    Vec9 dv;
    L.apply(t, v, dv);
    return unstack_columns(dv);
}

void dump_superop_csv(const Mat9 &m, std::ostream &os)
{
    char buf[96];
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g", m(i, j).real(),
                          m(i, j).imag());
            os << buf;
            if (j < 8) os << ',';
        }
        os << '\n';
    }
}

} // namespace darkhole
