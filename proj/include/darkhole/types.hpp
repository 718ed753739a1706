#ifndef DARKHOLE_TYPES_HPP
#define DARKHOLE_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace darkhole {

using Complex = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3cd;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using Vec9 = Eigen::Matrix<Complex, 9, 1>;

constexpr Complex IMAG_UNIT{0.0, 1.0};

// Column stacking: matrix entry (i,j) lands at vector index i + 3j.
// This convention is fixed; the superoperator matrices and all golden
// CSV dumps depend on it.
inline Vec9 stack_columns(const Mat3 &m)
{
    Vec9 v;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            v(i + 3 * j) = m(i, j);
    return v;
}

inline Mat3 unstack_columns(const Vec9 &v)
{
    Mat3 m;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            m(i, j) = v(i + 3 * j);
    return m;
}

inline int stacked_index(int i, int j) { return i + 3 * j; }

inline Mat3 hermitian_part(const Mat3 &m) { return 0.5 * (m + m.adjoint()); }

// max-norm distance from Hermiticity
inline double hermiticity_defect(const Mat3 &m)
{
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace darkhole

#endif
