#include "darkhole/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "darkhole/io_util.hpp"
#include "darkhole/liouvillian.hpp"
#include "darkhole/steadystate.hpp"

namespace darkhole {

namespace {
constexpr double PI = 3.14159265358979323846;
constexpr int SAMPLES_PER_PERIOD = 256;
// per-point integration budget, in units of the reference rate
constexpr double MAX_BURN_TIME = 2e5;
constexpr double MAX_WINDOW_TIME = 2e5;
constexpr double QUIET_NAN = std::numeric_limits<double>::quiet_NaN();
} // namespace

const char *to_string(DipFeature::Kind kind)
{
    switch (kind) {
    case DipFeature::Kind::CENTRAL: return "CENTRAL";
    case DipFeature::Kind::SATELLITE_PLUS: return "SATELLITE_PLUS";
    case DipFeature::Kind::SATELLITE_MINUS: return "SATELLITE_MINUS";
    case DipFeature::Kind::UNCLASSIFIED: return "UNCLASSIFIED";
    }
    return "?";
}

bool SpectrumScan::all_converged() const
{
    for (const auto &pt : points)
        if (!pt.converged) return false;
    return true;
}

double SpectrumScan::raman_center() const
{
    double center = fixed.detuning_beta;
    if (fixed.has_ee()) center += fixed.shift_B - fixed.shift_A;
    return center;
}

namespace {

ScanPoint solve_autonomous_point(double delta_alpha, const Liouvillian &L)
{
    ScanPoint pt;
    pt.delta_alpha = delta_alpha;
    pt.method = ScanPoint::Method::NULLSPACE;
    SteadyStateResult ss = steady_state_nullspace(L);
    if (ss.degenerate()) {
        pt.converged = false;
        pt.im_rho_AC = pt.im_rho_BC = pt.rho_CC = pt.rho_AA = pt.rho_BB =
            QUIET_NAN;
        return pt;
    }
    const Mat3 &m = ss.rho.m;
    pt.im_rho_AC = m(0, 2).imag();
    pt.im_rho_BC = m(1, 2).imag();
    pt.rho_CC = m(2, 2).real();
    pt.rho_AA = m(0, 0).real();
    pt.rho_BB = m(1, 1).real();
    pt.residual = 0.0;
    return pt;
}

ScanPoint solve_driven_point(const SystemParams &p, const Liouvillian &L,
                             const IntegrationPolicy &base_policy)
{
    ScanPoint pt;
    pt.delta_alpha = p.detuning_alpha;
    pt.method = ScanPoint::Method::TIME_AVERAGE;

    const double period = 2.0 * PI / std::abs(L.modulation_delta);
    if (period > MAX_WINDOW_TIME) {
        // modulation too slow to average within the per-point budget
        pt.converged = false;
        pt.im_rho_AC = pt.im_rho_BC = pt.rho_CC = pt.rho_AA = pt.rho_BB =
            QUIET_NAN;
        return pt;
    }
    const double gamma_sum = p.gamma_ac + p.gamma_bc;
    const double pump =
        gamma_sum > 0.0
            ? (std::norm(p.rabi_alpha) + std::norm(p.rabi_beta)) / gamma_sum
            : 0.0;

    // CPT transients settle on the pumping scale ~ alpha^2 / gamma, which is
    // much slower than 1/gamma at weak driving
    double burn;
    if (gamma_sum > 0.0 && pump > 0.0)
        burn = 20.0 / std::min(gamma_sum, pump);
    else if (gamma_sum > 0.0)
        burn = 20.0 / gamma_sum;
    else
        burn = 50.0 * period;
    burn = std::min(burn, MAX_BURN_TIME);

    // whole (even) number of periods: the two half-window means then cover
    // whole periods each and the drift diagnostic sees only the transient
    double gamma_min = std::numeric_limits<double>::infinity();
    if (p.gamma_ac > 0.0) gamma_min = std::min(gamma_min, p.gamma_ac);
    if (p.gamma_bc > 0.0) gamma_min = std::min(gamma_min, p.gamma_bc);
    long n_periods = 6;
    if (std::isfinite(gamma_min))
        while (n_periods * period < 5.0 / gamma_min &&
               (n_periods + 2) * period <= MAX_WINDOW_TIME)
            n_periods += 2;
    while (n_periods > 2 && n_periods * period > MAX_WINDOW_TIME)
        n_periods -= 2;

    IntegrationPolicy burn_policy = base_policy;
    burn_policy.start_time = 0.0;
    burn_policy.max_time = burn;
    burn_policy.record_dt = 0.0;
    burn_policy.record_stride = std::numeric_limits<int>::max();

    IntegrationPolicy window_policy = base_policy;
    window_policy.start_time = burn;
    window_policy.max_time = burn + n_periods * period;
    window_policy.record_dt = period / SAMPLES_PER_PERIOD;

    Trajectory settle = integrate(DensityMatrix::mixed(), L, burn_policy);
    DensityMatrix rho_burn;
    rho_burn.m = settle.final_state();
    rho_burn.resymmetrize();
    Trajectory window = integrate(rho_burn, L, window_policy);

    AveragedObservables avg = quasi_steady_average(
        window, window_policy.start_time, window_policy.max_time);
    pt.im_rho_AC = avg.im_rho_AC;
    pt.im_rho_BC = avg.im_rho_BC;
    pt.rho_CC = avg.rho_CC;
    pt.rho_AA = avg.rho_AA;
    pt.rho_BB = avg.rho_BB;
    pt.residual = avg.residual_pp;
    pt.converged = avg.converged;
    return pt;
}

ScanPoint solve_point(const SystemParams &fixed, double delta_alpha,
                      const IntegrationPolicy &policy)
{
    SystemParams p = fixed;
    p.detuning_alpha = delta_alpha;
    ValidatedParams vp = validate_params(p);
    Liouvillian L = build_liouvillian(vp);
    if (L.autonomous()) return solve_autonomous_point(delta_alpha, L);
    return solve_driven_point(p, L, policy);
}

} // namespace

SpectrumScan scan_detuning(const ValidatedParams &params,
                           const std::vector<double> &grid,
                           const IntegrationPolicy &policy, int threads)
{
    if (grid.empty()) throw Error(ErrorCode::GRID_EMPTY, "empty detuning grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw Error(ErrorCode::BAD_ARGUMENT,
                        "grid must be strictly increasing");

    SpectrumScan scan;
    scan.grid = grid;
    scan.fixed = params.get();
    scan.points.resize(grid.size());

    unsigned n_threads = threads > 0
                             ? static_cast<unsigned>(threads)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, grid.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= grid.size()) return;
            try {
                scan.points[i] = solve_point(scan.fixed, grid[i], policy);
            } catch (const std::exception &) {
                ScanPoint pt;
                pt.delta_alpha = grid[i];
                pt.converged = false;
                pt.im_rho_AC = pt.im_rho_BC = pt.rho_CC = pt.rho_AA =
                    pt.rho_BB = QUIET_NAN;
                scan.points[i] = pt;
            }
        }
    };

    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (auto &th : pool) th.join();
    }
    return scan;
}

double default_prominence(const SpectrumScan &scan)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &pt : scan.points) {
        if (!std::isfinite(pt.im_rho_AC)) continue;
        double v = std::abs(pt.im_rho_AC);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) return 0.0;
    return 0.05 * (hi - lo);
}

std::vector<DipFeature> find_dips(const SpectrumScan &scan, double prominence)
{
    if (!(prominence > 0.0))
        throw Error(ErrorCode::BAD_ARGUMENT, "prominence must be positive");

    const std::size_t n = scan.points.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::abs(scan.points[i].im_rho_AC);
        y[i] = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }
    const std::vector<double> &x = scan.grid;

    std::vector<DipFeature> dips;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(y[i] < y[i - 1])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && y[j + 1] == y[i]) ++j; // plateau
        if (j + 1 >= n || !(y[j + 1] > y[i])) {
            i = j + 1;
            continue;
        }
        const std::size_t k = (i + j) / 2;
        const double v = y[k];

        // topographic prominence on the inverted signal: highest barrier
        // before a lower value is reached on each side
        double left_barrier = 0.0;
        for (std::size_t m = i; m-- > 0;) {
            if (y[m] < v) break;
            left_barrier = std::max(left_barrier, y[m] - v);
        }
        double right_barrier = 0.0;
        for (std::size_t m = j + 1; m < n; ++m) {
            if (y[m] < v) break;
            right_barrier = std::max(right_barrier, y[m] - v);
        }
        const double prom = std::min(left_barrier, right_barrier);
        if (prom >= prominence) {
            DipFeature dip;
            dip.depth = prom;
            // three-point parabola around the minimum
            double y0 = y[k > 0 ? k - 1 : k], y1 = y[k],
                   y2 = y[k + 1 < n ? k + 1 : k];
            double denom = y0 - 2.0 * y1 + y2;
            double offset = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
            double dx = (k + 1 < n) ? x[k + 1] - x[k] : x[k] - x[k - 1];
            dip.position = x[k] + offset * dx;

            const double half = v + 0.5 * prom;
            double xl = x.front();
            for (std::size_t m = k; m-- > 0;) {
                if (y[m] >= half) {
                    double f = (half - y[m + 1]) / (y[m] - y[m + 1]);
                    xl = x[m + 1] + f * (x[m] - x[m + 1]);
                    break;
                }
                if (y[m] < v) {
                    xl = x[m];
                    break;
                }
            }
            double xr = x.back();
            for (std::size_t m = j + 1; m < n; ++m) {
                if (y[m] >= half) {
                    double f = (half - y[m - 1]) / (y[m] - y[m - 1]);
                    xr = x[m - 1] + f * (x[m] - x[m - 1]);
                    break;
                }
                if (y[m] < v) {
                    xr = x[m];
                    break;
                }
            }
            dip.half_width = 0.5 * (xr - xl);
            dips.push_back(dip);
        }
        i = j + 1;
    }

    if (!dips.empty()) {
        const double center = scan.raman_center();
        std::size_t central = 0;
        for (std::size_t m = 1; m < dips.size(); ++m)
            if (std::abs(dips[m].position - center) <
                std::abs(dips[central].position - center))
                central = m;
        for (std::size_t m = 0; m < dips.size(); ++m) {
            if (m == central)
                dips[m].classification = DipFeature::Kind::CENTRAL;
            else if (dips[m].position > dips[central].position)
                dips[m].classification = DipFeature::Kind::SATELLITE_PLUS;
            else
                dips[m].classification = DipFeature::Kind::SATELLITE_MINUS;
        }
    }
    return dips;
}

std::string dips_csv_path(const std::string &scan_csv_path)
{
    const std::string suffix = ".csv";
    if (scan_csv_path.size() > suffix.size() &&
        scan_csv_path.compare(scan_csv_path.size() - suffix.size(),
                              suffix.size(), suffix) == 0)
        return scan_csv_path.substr(0, scan_csv_path.size() - suffix.size()) +
               ".dips.csv";
    return scan_csv_path + ".dips.csv";
}

void export_csv(const SpectrumScan &scan, const std::string &path)
{
    std::ostringstream os;
    os << "delta_alpha,im_rho_AC,im_rho_BC,rho_CC,rho_AA,rho_BB,residual,"
          "method\n";
    char buf[512];
    for (const auto &pt : scan.points) {
        std::snprintf(buf, sizeof(buf),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                      pt.delta_alpha, pt.im_rho_AC, pt.im_rho_BC, pt.rho_CC,
                      pt.rho_AA, pt.rho_BB, pt.residual,
                      pt.method == ScanPoint::Method::NULLSPACE
                          ? "nullspace"
                          : "time-average");
        os << buf;
    }
    write_file_atomic(path, os.str());

    std::ostringstream ds;
    ds << "position,depth,half_width,classification\n";
    for (const auto &dip : scan.dips) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s\n", dip.position,
                      dip.depth, dip.half_width,
                      to_string(dip.classification));
        ds << buf;
    }
    write_file_atomic(dips_csv_path(path), ds.str());
}

void write_plot_script(const std::string &csv_path,
                       const std::string &script_path)
{
    std::ostringstream os;
    os << "# gnuplot script; render with: gnuplot " << script_path << "\n"
       << "set datafile separator ','\n"
       << "set xlabel 'Delta_alpha / reference rate'\n"
       << "set ylabel 'Im rho_AC'\n"
       << "set grid\n"
       << "set key off\n"
       << "plot '" << csv_path << "' using 1:2 skip 1 with lines lw 2\n";
    write_file_atomic(script_path, os.str());
}

} // namespace darkhole
