#ifndef DARKHOLE_STEADYSTATE_HPP
#define DARKHOLE_STEADYSTATE_HPP

#include <vector>

#include "darkhole/liouvillian.hpp"
#include "darkhole/model.hpp"

namespace darkhole {

struct SteadyStateResult {
    enum class Status { UNIQUE, DEGENERATE };

    Status status = Status::UNIQUE;
    int nullspace_dim = 0;
    /// Solution of L0 vec(rho) = 0 with Tr rho = 1; valid when UNIQUE.
    DensityMatrix rho;
    /// ||L0 vec(rho)||_inf of the returned state (UNIQUE only).
    double residual = 0.0;
    /// Operator basis of the steady manifold when DEGENERATE (right singular
    /// vectors below the null threshold, unstacked; not individually states).
    std::vector<Mat3> basis;

    bool degenerate() const { return status == Status::DEGENERATE; }
};

/// Direct steady state of an autonomous generator via its null space.
///
/// The unique case is solved by replacing the d rho_CC / dt row (stacked
/// index 8) of L0 with the trace row and solving against the unit vector --
/// a fixed, documented choice so outputs are bit-stable. Singular values
/// below 1e-10 x the largest count as null directions; more than one means
/// DEGENERATE and a basis of the steady manifold is returned instead of a
/// single state.
///
/// Throws TIME_DEPENDENT_GENERATOR when L has periodic parts.
SteadyStateResult steady_state_nullspace(const Liouvillian &L);

} // namespace darkhole

#endif
