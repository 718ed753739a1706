#ifndef DARKHOLE_SPECTRA_HPP
#define DARKHOLE_SPECTRA_HPP

#include <string>
#include <vector>

#include "darkhole/dynamics.hpp"
#include "darkhole/model.hpp"

namespace darkhole {

struct DipFeature {
    enum class Kind { CENTRAL, SATELLITE_PLUS, SATELLITE_MINUS, UNCLASSIFIED };

    double position = 0.0;   // parabolically refined Delta_alpha
    double depth = 0.0;      // prominence over the local background
    double half_width = 0.0; // half width at half prominence
    Kind classification = Kind::UNCLASSIFIED;
};

const char *to_string(DipFeature::Kind kind);

struct ScanPoint {
    enum class Method { NULLSPACE, TIME_AVERAGE };

    double delta_alpha = 0.0;
    double im_rho_AC = 0.0;
    double im_rho_BC = 0.0;
    double rho_CC = 0.0;
    double rho_AA = 0.0;
    double rho_BB = 0.0;
    double residual = 0.0; // peak-to-peak oscillation of Im rho_AC; 0 for nullspace
    bool converged = true; // false flags a NOT_CONVERGED point
    Method method = Method::NULLSPACE;
};

struct SpectrumScan {
    std::vector<double> grid;
    SystemParams fixed; // the non-scanned parameters
    std::vector<ScanPoint> points;
    std::vector<DipFeature> dips;

    bool all_converged() const;
    /// Raman-resonance position of the central dip: Delta_beta corrected by
    /// the e-e shifts when they act.
    double raman_center() const;
};

/// Detuning scan over Delta_alpha. Per point the Liouvillian is rebuilt
/// (delta = Delta_alpha - Delta_beta changes); autonomous points use the
/// null-space steady state, driven points integrate past a transient burn-in
/// and average over a whole (even) number of modulation periods.
/// policy.method/tolerance/step control the integration (times are derived
/// internally). threads = 0 means all available cores; the result does not
/// depend on the thread count. NOT_CONVERGED points are flagged, never fatal.
/// Throws GRID_EMPTY, BAD_ARGUMENT (non-increasing grid).
SpectrumScan scan_detuning(const ValidatedParams &params,
                           const std::vector<double> &grid,
                           const IntegrationPolicy &policy, int threads = 0);

/// Local minima of |Im rho_AC| with at least the given topographic
/// prominence; positions refined by a three-point parabola. The dip nearest
/// to the shifted Raman condition is CENTRAL, the rest are satellites by the
/// sign of (position - central). An empty result is NO_DIPS, not a failure.
std::vector<DipFeature> find_dips(const SpectrumScan &scan, double prominence);

/// 0.05 x the full range of |Im rho_AC| over the scan.
double default_prominence(const SpectrumScan &scan);

/// Writes the scan (header delta_alpha,im_rho_AC,im_rho_BC,rho_CC,rho_AA,
/// rho_BB,residual,method) plus a companion <path minus .csv>.dips.csv.
/// Both files are written atomically. Throws IO_ERROR.
void export_csv(const SpectrumScan &scan, const std::string &path);

std::string dips_csv_path(const std::string &scan_csv_path);

/// Emits a small gnuplot script that renders the exported CSV.
void write_plot_script(const std::string &csv_path,
                       const std::string &script_path);

} // namespace darkhole

#endif
