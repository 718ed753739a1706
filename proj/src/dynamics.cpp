#include "darkhole/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace darkhole {

void IntegrationPolicy::validate() const
{
    if (method == Method::RK4_FIXED) {
        if (!(step > 0.0))
            throw Error(ErrorCode::BAD_ARGUMENT, "step must be positive");
    } else {
        if (!(tolerance > 1e-14 && tolerance < 1e-3))
            throw Error(ErrorCode::BAD_ARGUMENT,
                        "tolerance must lie in (1e-14, 1e-3)");
    }
    if (!(max_time > start_time))
        throw Error(ErrorCode::BAD_ARGUMENT, "max_time must exceed start_time");
    if (record_stride < 1)
        throw Error(ErrorCode::BAD_ARGUMENT, "record_stride must be >= 1");
    if (record_dt < 0.0)
        throw Error(ErrorCode::BAD_ARGUMENT, "record_dt must be >= 0");
}

namespace {

ObservableRecord observables_of(const Mat3 &m)
{
    return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(0, 2).imag(),
            m(1, 2).imag()};
}

class Recorder {
public:
    Recorder(Trajectory &traj, const IntegrationPolicy &policy)
        : m_traj(traj), m_policy(policy)
    {
    }

    void record(double t, const Vec9 &y)
    {
        Mat3 m = unstack_columns(y);
        m_traj.times.push_back(t);
        m_traj.states.push_back(m);
        m_traj.observables.push_back(observables_of(m));
        Eigen::SelfAdjointEigenSolver<Mat3> es(m, Eigen::EigenvaluesOnly);
        m_traj.min_recorded_eigenvalue = std::min(
            m_traj.min_recorded_eigenvalue, es.eigenvalues().minCoeff());
    }

    // next time the integrator must land on exactly, or +inf
    double next_record_time() const
    {
        if (m_policy.record_dt <= 0.0)
            return std::numeric_limits<double>::infinity();
        return m_policy.start_time + (m_records + 1) * m_policy.record_dt;
    }

    void on_step(double t, const Vec9 &y)
    {
        if (m_policy.record_dt > 0.0) {
            if (t >= next_record_time() - 1e-9 * m_policy.record_dt) {
                ++m_records;
                record(t, y);
            }
        } else if (++m_steps % m_policy.record_stride == 0) {
            record(t, y);
        }
    }

    void finish(double t, const Vec9 &y)
    {
        if (m_traj.times.empty() || m_traj.times.back() != t) record(t, y);
    }

private:
    Trajectory &m_traj;
    const IntegrationPolicy &m_policy;
    long m_steps = 0;
    long m_records = 0;
};

// resymmetrize in stacked form; returns the correction magnitude
double resymmetrize_vec(Vec9 &y)
{
    double correction = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Complex upper = y(stacked_index(i, j));
            Complex lower = y(stacked_index(j, i));
            Complex avg = 0.5 * (upper + std::conj(lower));
            correction = std::max(correction, std::abs(upper - avg));
            y(stacked_index(i, j)) = avg;
            y(stacked_index(j, i)) = std::conj(avg);
        }
    return correction;
}

double trace_drift(const Vec9 &y)
{
    Complex tr = y(0) + y(4) + y(8);
    return std::abs(tr - Complex(1.0));
}

void check_initial_state(const DensityMatrix &rho0)
{
    if (rho0.hermiticity_error() > 1e-9 || rho0.trace_error() > 1e-9 ||
        rho0.min_eigenvalue() < -1e-8)
        throw Error(ErrorCode::INVALID_INITIAL_STATE,
                    "initial state violates density-matrix invariants");
}

void integrate_rk4(Vec9 &y, const Liouvillian &L, const IntegrationPolicy &p,
                   Trajectory &traj, Recorder &rec)
{
    Vec9 k1, k2, k3, k4, tmp;
    double t = p.start_time;
    const double t_end = p.max_time;
    const double eps = 1e-12 * (1.0 + std::abs(t_end));
    while (t < t_end - eps) {
        // march in equal substeps to the next record time (or the end)
        double t_stop = std::min(t_end, rec.next_record_time());
        if (t_stop <= t + eps) t_stop = t_end;
        long n = std::max<long>(
            1, static_cast<long>(std::ceil((t_stop - t) / p.step - 1e-9)));
        const double h = (t_stop - t) / static_cast<double>(n);
        for (long i = 0; i < n; ++i) {
            L.apply(t, y, k1);
            tmp = y + (0.5 * h) * k1;
            L.apply(t + 0.5 * h, tmp, k2);
            tmp = y + (0.5 * h) * k2;
            L.apply(t + 0.5 * h, tmp, k3);
            tmp = y + h * k3;
            L.apply(t + h, tmp, k4);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = (i + 1 == n) ? t_stop : t + h;
            traj.max_herm_correction =
                std::max(traj.max_herm_correction, resymmetrize_vec(y));
            traj.max_trace_drift = std::max(traj.max_trace_drift, trace_drift(y));
            rec.on_step(t, y);
        }
    }
}

// Dormand-Prince 5(4) with FSAL
void integrate_rk45(Vec9 &y, const Liouvillian &L, const IntegrationPolicy &p,
                    Trajectory &traj, Recorder &rec)
{
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b (5th order) minus b_hat (4th order)
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double t_end = p.max_time;
    double t = p.start_time;
    double h = std::min(0.1, t_end - t); // controller step; clamps are separate

    Vec9 k1, k2, k3, k4, k5, k6, k7, ynew, tmp, err;
    L.apply(t, y, k1);

    const double eps = 1e-12 * (1.0 + std::abs(t_end));
    while (t < t_end - eps) {
        if (h < 1e-12)
            throw Error(ErrorCode::STEP_UNDERFLOW,
                        "adaptive step collapsed below 1e-12");
        double t_stop = std::min(t_end, rec.next_record_time());
        if (t_stop <= t + eps) t_stop = t_end;
        const bool landing = (t + h >= t_stop);
        const double hs = landing ? (t_stop - t) : h;

        tmp = y + hs * (a21 * k1);
        L.apply(t + c2 * hs, tmp, k2);
        tmp = y + hs * (a31 * k1 + a32 * k2);
        L.apply(t + c3 * hs, tmp, k3);
        tmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        L.apply(t + c4 * hs, tmp, k4);
        tmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        L.apply(t + c5 * hs, tmp, k5);
        tmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        L.apply(t + hs, tmp, k6);
        ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        L.apply(t + hs, ynew, k7);

        err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double scale =
            p.tolerance * (1.0 + std::max(y.cwiseAbs().maxCoeff(),
                                          ynew.cwiseAbs().maxCoeff()));
        double ratio = err.cwiseAbs().maxCoeff() / scale;
        const bool accept = ratio <= 1.0;

        if (accept) {
            t = landing ? t_stop : t + hs;
            y = ynew;
            traj.max_herm_correction =
                std::max(traj.max_herm_correction, resymmetrize_vec(y));
            traj.max_trace_drift = std::max(traj.max_trace_drift, trace_drift(y));
            rec.on_step(t, y);
            L.apply(t, y, k1); // resymmetrization invalidates FSAL k7
        }
        // a step shortened only to land on an output time must not poison
        // the controller
        if (!landing || !accept) {
            double factor =
                (ratio > 0.0) ? 0.9 * std::pow(ratio, -0.2) : 5.0;
            h = hs * std::clamp(factor, 0.2, 5.0);
        }
    }
}

} // namespace

Trajectory integrate(const DensityMatrix &rho0, const Liouvillian &L,
                     const IntegrationPolicy &policy)
{
    policy.validate();
    check_initial_state(rho0);

    Trajectory traj;
    Recorder rec(traj, policy);
    Vec9 y = stack_columns(rho0.m);
    rec.record(policy.start_time, y);

    if (policy.method == IntegrationPolicy::Method::RK4_FIXED)
        integrate_rk4(y, L, policy, traj, rec);
    else
        integrate_rk45(y, L, policy, traj, rec);

    rec.finish(policy.max_time, y);
    return traj;
}

AveragedObservables quasi_steady_average(const Trajectory &traj, double t0,
                                         double t1)
{
    if (traj.times.empty() || t0 >= t1 ||
        t0 < traj.times.front() - 1e-9 * (1.0 + std::abs(traj.times.front())) ||
        t1 > traj.times.back() + 1e-9 * (1.0 + std::abs(traj.times.back())))
        throw Error(ErrorCode::WINDOW_TOO_SHORT,
                    "window not contained in the trajectory span");

    std::size_t i0 = 0;
    while (i0 < traj.times.size() && traj.times[i0] < t0 - 1e-12 * (1.0 + std::abs(t0)))
        ++i0;
    std::size_t i1 = traj.times.size();
    while (i1 > 0 && traj.times[i1 - 1] > t1 + 1e-12 * (1.0 + std::abs(t1)))
        --i1;
    if (i1 < i0 + 8)
        throw Error(ErrorCode::WINDOW_TOO_SHORT,
                    "fewer than 8 samples in the averaging window");

    auto component = [&](std::size_t i, int c) -> double {
        const ObservableRecord &o = traj.observables[i];
        switch (c) {
        case 0: return o.rho_AA;
        case 1: return o.rho_BB;
        case 2: return o.rho_CC;
        case 3: return o.im_rho_AC;
        default: return o.im_rho_BC;
        }
    };

    auto trapezoid_mean = [&](std::size_t a, std::size_t b, int c) -> double {
        double integral = 0.0;
        for (std::size_t i = a; i + 1 < b; ++i) {
            double dt = traj.times[i + 1] - traj.times[i];
            integral += 0.5 * dt * (component(i, c) + component(i + 1, c));
        }
        double span = traj.times[b - 1] - traj.times[a];
        return integral / span;
    };

    const std::size_t mid = i0 + (i1 - i0) / 2;
    double means[5], drift = 0.0;
    for (int c = 0; c < 5; ++c) {
        means[c] = trapezoid_mean(i0, i1, c);
        double first = trapezoid_mean(i0, mid + 1, c);
        double second = trapezoid_mean(mid, i1, c);
        drift = std::max(drift, std::abs(first - second));
    }
    double scale = 0.0;
    for (double m : means) scale = std::max(scale, std::abs(m));

    double lo = component(i0, 3), hi = lo;
    for (std::size_t i = i0; i < i1; ++i) {
        lo = std::min(lo, component(i, 3));
        hi = std::max(hi, component(i, 3));
    }

    AveragedObservables out;
    out.rho_AA = means[0];
    out.rho_BB = means[1];
    out.rho_CC = means[2];
    out.im_rho_AC = means[3];
    out.im_rho_BC = means[4];
    out.residual_pp = hi - lo;
    out.drift = drift;
    out.converged = drift <= 1e-4 * scale;
    return out;
}

void write_trajectory_csv(const Trajectory &traj, std::ostream &os)
{
    os << "t,rho_AA,rho_BB,rho_CC,re_rho_AB,im_rho_AB,re_rho_AC,im_rho_AC,"
          "re_rho_BC,im_rho_BC\n";
    char buf[512];
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Mat3 &m = traj.states[i];
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g\n",
                      traj.times[i], m(0, 0).real(), m(1, 1).real(),
                      m(2, 2).real(), m(0, 1).real(), m(0, 1).imag(),
                      m(0, 2).real(), m(0, 2).imag(), m(1, 2).real(),
                      m(1, 2).imag());
        os << buf;
    }
}

} // namespace darkhole
