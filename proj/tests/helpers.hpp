#ifndef DARKHOLE_TEST_HELPERS_HPP
#define DARKHOLE_TEST_HELPERS_HPP

#include <random>

#include "darkhole/model.hpp"

namespace darkhole::testing {

inline DensityMatrix random_state(std::mt19937_64 &rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Mat3 g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g(i, j) = Complex(normal(rng), normal(rng));
    Mat3 m = g * g.adjoint();
    m /= m.trace().real();
    DensityMatrix rho;
    rho.m = m;
    return rho;
}

inline Complex random_rabi(std::mt19937_64 &rng, double lo, double hi)
{
    std::uniform_real_distribution<double> mag(lo, hi);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    return std::polar(mag(rng), phase(rng));
}

// random autonomous parameter set in the acceptance-criteria ranges
inline SystemParams random_autonomous_params(std::mt19937_64 &rng,
                                             ModelKind kind)
{
    std::uniform_real_distribution<double> gamma(0.5, 2.0);
    std::uniform_real_distribution<double> detuning(-1.0, 1.0);
    std::uniform_real_distribution<double> shift(-0.5, 0.5);
    SystemParams p;
    p.model_kind = kind;
    p.gamma_ac = gamma(rng);
    p.gamma_bc = gamma(rng);
    p.rabi_alpha = random_rabi(rng, 0.05, 1.0);
    p.rabi_beta = random_rabi(rng, 0.05, 1.0);
    p.detuning_alpha = detuning(rng);
    p.detuning_beta = detuning(rng);
    if (kind == ModelKind::LAMBDA_TWO_ELECTRON_EE) {
        p.shift_A = shift(rng);
        p.shift_B = shift(rng);
        p.shift_C = shift(rng);
        p.chi = 0.0;
    }
    return p;
}

} // namespace darkhole::testing

#endif
