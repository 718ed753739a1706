#include "darkhole/steadystate.hpp"

#include <Eigen/SVD>

namespace darkhole {

namespace {
constexpr int TRACE_ROW = 8; // the d rho_CC / dt row
constexpr double NULL_THRESHOLD = 1e-10;
} // namespace

SteadyStateResult steady_state_nullspace(const Liouvillian &L)
{
    if (!L.autonomous())
        throw Error(ErrorCode::TIME_DEPENDENT_GENERATOR,
                    "null-space steady state requires an autonomous generator");

    SteadyStateResult result;

    Eigen::JacobiSVD<Mat9> svd(L.static_part,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    const double cutoff = NULL_THRESHOLD * sv(0);
    int dim = 0;
    for (int k = 0; k < 9; ++k)
        if (sv(k) <= cutoff) ++dim;
    result.nullspace_dim = dim;

    if (dim != 1) {
        result.status = SteadyStateResult::Status::DEGENERATE;
        for (int k = 9 - dim; k < 9; ++k)
            result.basis.push_back(unstack_columns(svd.matrixV().col(k)));
        return result;
    }

    Mat9 a = L.static_part;
    a.row(TRACE_ROW).setZero();
    a(TRACE_ROW, stacked_index(0, 0)) = 1.0;
    a(TRACE_ROW, stacked_index(1, 1)) = 1.0;
    a(TRACE_ROW, stacked_index(2, 2)) = 1.0;
    Vec9 b = Vec9::Zero();
    b(TRACE_ROW) = 1.0;

    Vec9 x = a.fullPivLu().solve(b);
    result.rho.m = hermitian_part(unstack_columns(x));
    result.residual =
        (L.static_part * stack_columns(result.rho.m)).cwiseAbs().maxCoeff();
    return result;
}

} // namespace darkhole
