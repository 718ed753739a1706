#ifndef DARKHOLE_DYNAMICS_HPP
#define DARKHOLE_DYNAMICS_HPP

#include <iosfwd>
#include <vector>

#include "darkhole/liouvillian.hpp"
#include "darkhole/model.hpp"

namespace darkhole {

struct IntegrationPolicy {
    enum class Method { RK4_FIXED, RK45_ADAPTIVE };

    Method method = Method::RK45_ADAPTIVE;
    double step = 0.01;       // RK4_FIXED; guidance: <= 0.1 / fastest rate
    double tolerance = 1e-9;  // RK45_ADAPTIVE; must lie in (1e-14, 1e-3)
    double start_time = 0.0;
    double max_time = 100.0;  // integrate over [start_time, max_time]
    int record_stride = 1;    // record every n-th accepted step...
    double record_dt = 0.0;   // ...or, if > 0, exactly every record_dt

    void validate() const; // throws BAD_ARGUMENT
};

struct ObservableRecord {
    double rho_AA;
    double rho_BB;
    double rho_CC;
    double im_rho_AC;
    double im_rho_BC;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Mat3> states;
    std::vector<ObservableRecord> observables;

    // diagnostics accumulated over every accepted step
    double max_trace_drift = 0.0;      // max |tr rho - 1|
    double max_herm_correction = 0.0;  // largest per-step resymmetrization
    double min_recorded_eigenvalue = 1.0;

    const Mat3 &final_state() const { return states.back(); }
};

/// Integrates d vec(rho)/dt = L(t) vec(rho) over [start_time, max_time].
/// rho is resymmetrized after every accepted step; the correction magnitude
/// is tracked and stays below ~1e-10 per step for sane tolerances.
/// Throws INVALID_INITIAL_STATE, STEP_UNDERFLOW (adaptive step < 1e-12).
Trajectory integrate(const DensityMatrix &rho0, const Liouvillian &L,
                     const IntegrationPolicy &policy);

struct AveragedObservables {
    double rho_AA;
    double rho_BB;
    double rho_CC;
    double im_rho_AC;
    double im_rho_BC;
    double residual_pp;  // peak-to-peak of Im rho_AC over the window
    double drift;        // largest first-half/second-half mean difference
    bool converged;      // drift <= 1e-4 x the mean scale
};

/// Trapezoidal time average of the recorded observables over [t0, t1].
/// The drift diagnostic compares the two half-window means; "mean scale" is
/// the largest |mean| among the five observables (>= 1/3 by unit trace).
/// Callers on periodic generators should make the window a whole (even)
/// number of modulation periods so the periodic component cancels.
/// Throws WINDOW_TOO_SHORT when the window leaves the trajectory span or
/// holds fewer than 8 samples.
AveragedObservables quasi_steady_average(const Trajectory &traj, double t0,
                                         double t1);

/// Header: t,rho_AA,rho_BB,rho_CC,re_rho_AB,im_rho_AB,re_rho_AC,im_rho_AC,
/// re_rho_BC,im_rho_BC. 17 significant digits.
void write_trajectory_csv(const Trajectory &traj, std::ostream &os);

} // namespace darkhole

#endif
