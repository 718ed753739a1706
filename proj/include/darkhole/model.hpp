#ifndef DARKHOLE_MODEL_HPP
#define DARKHOLE_MODEL_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "darkhole/errors.hpp"
#include "darkhole/types.hpp"

namespace darkhole {

/// Which three-level system the generator is built for.
///
/// V_ONE_ELECTRON: one electron over {a,b,c}, shared lower state c.
/// LAMBDA_TWO_ELECTRON: two aligned-spin electrons over the antisymmetrized
///   states {A,B,C}; C is the upper state of the Lambda.
/// LAMBDA_TWO_ELECTRON_EE: same, plus the electron-electron diagonal shifts
///   and the A<->B cross coupling chi.
enum class ModelKind {
    V_ONE_ELECTRON,
    LAMBDA_TWO_ELECTRON,
    LAMBDA_TWO_ELECTRON_EE,
};

const char *to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view s); // throws PARSE_ERROR

/// Physical inputs. All rates and frequencies are numbers in units of
/// reference_rate (the natural choice is gamma_bc); reference_rate is
/// metadata and is never applied to the values.
struct SystemParams {
    ModelKind model_kind = ModelKind::LAMBDA_TWO_ELECTRON;
    Complex rabi_alpha{0.0, 0.0};  // <C|H|A> (Lambda) / <a|H|c> (V)
    Complex rabi_beta{0.0, 0.0};   // <C|H|B> (Lambda) / <b|H|c> (V)
    double detuning_alpha = 0.0;   // laser alpha minus a<->c transition
    double detuning_beta = 0.0;
    double gamma_ac = 0.0;         // population decay a->c (= gamma_CA)
    double gamma_bc = 0.0;         // population decay b->c (= gamma_CB)
    double shift_A = 0.0;          // e-e diagonal shifts; EE kind only
    double shift_B = 0.0;
    double shift_C = 0.0;
    Complex chi{0.0, 0.0};         // e-e A<->B cross coupling; EE kind only
    double reference_rate = 1.0;

    // Absolute single-electron energies; documentation only. The RWA
    // dynamics sees them solely through the detunings.
    std::optional<std::array<double, 3>> level_energies;

    bool two_electron() const { return model_kind != ModelKind::V_ONE_ELECTRON; }
    bool has_ee() const { return model_kind == ModelKind::LAMBDA_TWO_ELECTRON_EE; }

    /// Residual modulation frequency of the chi coupling in the
    /// field-rotating frame.
    double modulation_delta() const { return detuning_alpha - detuning_beta; }
};

enum class ParamWarning {
    ALL_RATES_ZERO,
};

/// Parameter set that passed validate_params. Carries warning-level
/// conditions (never silently dropped) alongside the values.
class ValidatedParams {
public:
    const SystemParams &get() const { return m_params; }
    const SystemParams *operator->() const { return &m_params; }
    const std::vector<ParamWarning> &warnings() const { return m_warnings; }
    bool has_warning(ParamWarning w) const;

private:
    friend ValidatedParams validate_params(const SystemParams &, bool);
    SystemParams m_params;
    std::vector<ParamWarning> m_warnings;
};

/// Checks rate signs and flags degenerate inputs. With normalize_phases the
/// Rabi frequencies are replaced by their moduli (phases absorbed into the
/// basis states); by default nothing is mutated.
ValidatedParams validate_params(const SystemParams &params,
                                bool normalize_phases = false);

/// 3x3 complex density matrix over {A,B,C} (or {a,b,c} for the V system).
struct DensityMatrix {
    Mat3 m = Mat3::Zero();

    static DensityMatrix mixed(); // identity/3
    static DensityMatrix level(int i);
    static DensityMatrix pure(const Vec3 &psi); // normalizes
    /// Rejects non-Hermitian input; renormalizes the trace.
    static DensityMatrix from_matrix(const Mat3 &m, double herm_tol = 1e-9);

    double trace_error() const { return std::abs(m.trace() - Complex(1.0)); }
    double hermiticity_error() const { return hermiticity_defect(m); }
    double min_eigenvalue() const;

    /// m <- (m + m^dag)/2; returns the applied correction magnitude.
    double resymmetrize();
};

struct ExpectedFeature {
    std::string tag;  // e.g. "dip"
    double position;
    double tolerance;
};

struct ScenarioPreset {
    std::string name;
    SystemParams params;
    std::string description;
    std::vector<ExpectedFeature> expected_features;
};

/// Known presets: fig4, calcium_ns_np, ortho_lithium, custom-template.
ScenarioPreset scenario_preset(const std::string &name); // throws UNKNOWN_PRESET
std::vector<std::string> preset_names();

// ---- parameter file format ----------------------------------------------
// Flat "key = value" lines, '#' comments, complex values as re+imi pairs
// ("0.1+0i"). Keys: model_kind, rabi_alpha, rabi_beta, detuning_alpha,
// detuning_beta, gamma_ac, gamma_bc, shift_A, shift_B, shift_C, chi,
// reference_rate.

std::string format_complex(Complex z);
Complex parse_complex(std::string_view text); // throws PARSE_ERROR

std::string serialize_params(const SystemParams &params);
SystemParams parse_params(std::istream &in);  // parse errors carry line numbers
SystemParams parse_params_file(const std::string &path);

/// Applies one "key=value" override in the config-file syntax.
void apply_override(SystemParams &params, const std::string &key,
                    const std::string &value);

} // namespace darkhole

#endif
