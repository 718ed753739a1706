#include "darkhole/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>

namespace darkhole {

const char *to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::V_ONE_ELECTRON: return "V_ONE_ELECTRON";
    case ModelKind::LAMBDA_TWO_ELECTRON: return "LAMBDA_TWO_ELECTRON";
    case ModelKind::LAMBDA_TWO_ELECTRON_EE: return "LAMBDA_TWO_ELECTRON_EE";
    }
    return "?";
}

ModelKind model_kind_from_string(std::string_view s)
{
    if (s == "V_ONE_ELECTRON") return ModelKind::V_ONE_ELECTRON;
    if (s == "LAMBDA_TWO_ELECTRON") return ModelKind::LAMBDA_TWO_ELECTRON;
    if (s == "LAMBDA_TWO_ELECTRON_EE") return ModelKind::LAMBDA_TWO_ELECTRON_EE;
    throw Error(ErrorCode::PARSE_ERROR,
                "unknown model_kind '" + std::string(s) + "'");
}

bool ValidatedParams::has_warning(ParamWarning w) const
{
    return std::find(m_warnings.begin(), m_warnings.end(), w) != m_warnings.end();
}

ValidatedParams validate_params(const SystemParams &params, bool normalize_phases)
{
    if (params.gamma_ac < 0.0)
        throw Error(ErrorCode::NEGATIVE_RATE,
                    "gamma_ac = " + std::to_string(params.gamma_ac));
    if (params.gamma_bc < 0.0)
        throw Error(ErrorCode::NEGATIVE_RATE,
                    "gamma_bc = " + std::to_string(params.gamma_bc));
    if (!std::isfinite(params.gamma_ac) || !std::isfinite(params.gamma_bc) ||
        !std::isfinite(params.detuning_alpha) || !std::isfinite(params.detuning_beta))
        throw Error(ErrorCode::BAD_ARGUMENT, "non-finite parameter value");

    ValidatedParams v;
    v.m_params = params;
    if (normalize_phases) {
        v.m_params.rabi_alpha = std::abs(params.rabi_alpha);
        v.m_params.rabi_beta = std::abs(params.rabi_beta);
    }
    if (params.gamma_ac == 0.0 && params.gamma_bc == 0.0)
        v.m_warnings.push_back(ParamWarning::ALL_RATES_ZERO);
    return v;
}

// ---- DensityMatrix --------------------------------------------------------

DensityMatrix DensityMatrix::mixed()
{
    DensityMatrix rho;
    rho.m = Mat3::Identity() / 3.0;
    return rho;
}

DensityMatrix DensityMatrix::level(int i)
{
    DensityMatrix rho;
    rho.m(i, i) = 1.0;
    return rho;
}

DensityMatrix DensityMatrix::pure(const Vec3 &psi)
{
    Vec3 n = psi / psi.norm();
    DensityMatrix rho;
    rho.m = n * n.adjoint();
    return rho;
}

DensityMatrix DensityMatrix::from_matrix(const Mat3 &m, double herm_tol)
{
    double defect = hermiticity_defect(m);
    if (defect > herm_tol) {
        std::ostringstream os;
        os << "max |rho - rho^dag| = " << defect;
        throw Error(ErrorCode::HERMITICITY_VIOLATION, os.str());
    }
    double tr = m.trace().real();
    if (tr <= 0.0)
        throw Error(ErrorCode::INVALID_INITIAL_STATE, "non-positive trace");
    DensityMatrix rho;
    rho.m = hermitian_part(m) / tr;
    return rho;
}

double DensityMatrix::min_eigenvalue() const
{
    Eigen::SelfAdjointEigenSolver<Mat3> es(hermitian_part(m),
                                           Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::resymmetrize()
{
    double correction = 0.5 * hermiticity_defect(m);
    m = hermitian_part(m);
    return correction;
}

// ---- presets ---------------------------------------------------------------

std::vector<std::string> preset_names()
{
    return {"fig4", "calcium_ns_np", "ortho_lithium", "custom-template"};
}

ScenarioPreset scenario_preset(const std::string &name)
{
    ScenarioPreset p;
    p.name = name;
    SystemParams &s = p.params;
    s.gamma_ac = 1.0;
    s.gamma_bc = 1.0;
    s.rabi_alpha = 0.1;
    s.rabi_beta = 0.1;
    s.reference_rate = 1.0;

    if (name == "fig4") {
        s.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
        s.chi = 0.3;
        s.detuning_beta = 0.0;
        p.description =
            "Dark resonance with its two e-e satellites: gamma_ac = gamma_bc, "
            "alpha = beta = 0.1 gamma_bc, Delta_beta = 0, chi = 0.3 gamma_bc; "
            "all values in units of gamma_bc.";
        p.expected_features = {
            {"dip", -0.3, 0.05},
            {"dip", 0.0, 0.05},
            {"dip", +0.3, 0.05},
        };
    } else if (name == "calcium_ns_np") {
        s.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
        s.chi = 0.0; // vanishes for the sigma+/sigma- scheme
        p.description =
            "Calcium-like nsnp ortho ground configuration driven to npnp with "
            "sigma+/sigma- light (about 2.9 eV in calcium); the A-B e-e cross "
            "coupling vanishes, shifts are user-set placeholders (default 0).";
        p.expected_features = {{"dip", 0.0, 0.05}};
    } else if (name == "ortho_lithium") {
        s.model_kind = ModelKind::LAMBDA_TWO_ELECTRON_EE;
        s.chi = 0.0;
        p.description =
            "Ortho-lithium (three aligned spins) realization on the 1s2s2p / "
            "1s2p2p states; same Lambda structure as the calcium scheme, "
            "parameters left at generic desk-scale defaults.";
        p.expected_features = {{"dip", 0.0, 0.05}};
    } else if (name == "custom-template") {
        s.model_kind = ModelKind::LAMBDA_TWO_ELECTRON;
        p.description =
            "Editable starting point: resonant weak driving of the plain "
            "two-electron Lambda system, no e-e terms.";
        p.expected_features = {{"dip", 0.0, 0.05}};
    } else {
        throw Error(ErrorCode::UNKNOWN_PRESET, "'" + name + "'");
    }
    validate_params(p.params);
    return p;
}

// ---- text format -----------------------------------------------------------

namespace {

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(std::string_view text)
{
    std::string s(text);
    const char *begin = s.c_str();
    char *end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size())
        throw Error(ErrorCode::PARSE_ERROR, "bad number '" + s + "'");
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

std::string format_complex(Complex z)
{
    std::string s = format_double(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) s += "+";
    s += format_double(z.imag());
    s += "i";
    return s;
}

Complex parse_complex(std::string_view text)
{
    std::string_view s = trim(text);
    if (s.empty()) throw Error(ErrorCode::PARSE_ERROR, "empty complex value");
    if (s.back() != 'i' && s.back() != 'I')
        return Complex(parse_double(s), 0.0); // plain real is accepted

    std::string_view body = s.substr(0, s.size() - 1);
    // split at the sign that separates re from im, skipping exponent signs
    // and the leading sign
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        char c = body[k];
        if ((c == '+' || c == '-')) {
            char prev = body[k - 1];
            if (prev == 'e' || prev == 'E') continue;
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) // pure imaginary like "1.5i" or "i"
    {
        if (body.empty() || body == "+" || body == "-") {
            double sign = (body == "-") ? -1.0 : 1.0;
            return Complex(0.0, sign);
        }
        return Complex(0.0, parse_double(body));
    }
    double re = parse_double(body.substr(0, split));
    std::string_view im_part = body.substr(split);
    if (im_part == "+" || im_part == "-")
        return Complex(re, im_part == "-" ? -1.0 : 1.0);
    return Complex(re, parse_double(im_part));
}

std::string serialize_params(const SystemParams &p)
{
    std::ostringstream os;
    os << "model_kind = " << to_string(p.model_kind) << "\n";
    os << "rabi_alpha = " << format_complex(p.rabi_alpha) << "\n";
    os << "rabi_beta = " << format_complex(p.rabi_beta) << "\n";
    os << "detuning_alpha = " << format_double(p.detuning_alpha) << "\n";
    os << "detuning_beta = " << format_double(p.detuning_beta) << "\n";
    os << "gamma_ac = " << format_double(p.gamma_ac) << "\n";
    os << "gamma_bc = " << format_double(p.gamma_bc) << "\n";
    os << "shift_A = " << format_double(p.shift_A) << "\n";
    os << "shift_B = " << format_double(p.shift_B) << "\n";
    os << "shift_C = " << format_double(p.shift_C) << "\n";
    os << "chi = " << format_complex(p.chi) << "\n";
    os << "reference_rate = " << format_double(p.reference_rate) << "\n";
    return os.str();
}

void apply_override(SystemParams &p, const std::string &key,
                    const std::string &value)
{
    std::string_view v = trim(value);
    std::string k(trim(key));
    if (k == "model_kind") p.model_kind = model_kind_from_string(v);
    else if (k == "rabi_alpha") p.rabi_alpha = parse_complex(v);
    else if (k == "rabi_beta") p.rabi_beta = parse_complex(v);
    else if (k == "detuning_alpha") p.detuning_alpha = parse_double(v);
    else if (k == "detuning_beta") p.detuning_beta = parse_double(v);
    else if (k == "gamma_ac") p.gamma_ac = parse_double(v);
    else if (k == "gamma_bc") p.gamma_bc = parse_double(v);
    else if (k == "shift_A") p.shift_A = parse_double(v);
    else if (k == "shift_B") p.shift_B = parse_double(v);
    else if (k == "shift_C") p.shift_C = parse_double(v);
    else if (k == "chi") p.chi = parse_complex(v);
    else if (k == "reference_rate") p.reference_rate = parse_double(v);
    else
        throw Error(ErrorCode::PARSE_ERROR, "unknown key '" + k + "'");
}

SystemParams parse_params(std::istream &in)
{
    SystemParams p;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        if (auto hash = s.find('#'); hash != std::string_view::npos)
            s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::PARSE_ERROR,
                        "line " + std::to_string(lineno) + ": expected key = value");
        try {
            apply_override(p, std::string(trim(s.substr(0, eq))),
                           std::string(trim(s.substr(eq + 1))));
        } catch (const Error &e) {
            throw Error(ErrorCode::PARSE_ERROR,
                        "line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return p;
}

SystemParams parse_params_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IO_ERROR, "cannot open '" + path + "'");
    return parse_params(in);
}

} // namespace darkhole
