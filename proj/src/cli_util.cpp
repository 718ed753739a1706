#include "darkhole/cli_util.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "darkhole/analysis.hpp"

namespace darkhole {

std::vector<double> make_grid(double min, double max, long points)
{
    if (points < 1) throw Error(ErrorCode::GRID_EMPTY, "points must be >= 1");
    if (points == 1) return {min};
    if (!(max > min))
        throw Error(ErrorCode::BAD_ARGUMENT, "grid needs max > min");
    std::vector<double> grid(points);
    for (long i = 0; i < points; ++i)
        grid[i] = min + (static_cast<double>(i) * (max - min)) /
                            static_cast<double>(points - 1);
    return grid;
}

std::vector<double> parse_grid(const std::string &spec)
{
    std::istringstream is(spec);
    std::string a, b, c;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') ||
        !std::getline(is, c))
        throw Error(ErrorCode::PARSE_ERROR,
                    "grid must be min:max:points, got '" + spec + "'");
    char *end = nullptr;
    double lo = std::strtod(a.c_str(), &end);
    if (end != a.c_str() + a.size())
        throw Error(ErrorCode::PARSE_ERROR, "bad grid min '" + a + "'");
    double hi = std::strtod(b.c_str(), &end);
    if (end != b.c_str() + b.size())
        throw Error(ErrorCode::PARSE_ERROR, "bad grid max '" + b + "'");
    long n = std::strtol(c.c_str(), &end, 10);
    if (end != c.c_str() + c.size())
        throw Error(ErrorCode::PARSE_ERROR, "bad grid points '" + c + "'");
    return make_grid(lo, hi, n);
}

DensityMatrix rho0_from_spec(const std::string &spec,
                             const SystemParams &params)
{
    if (spec == "mixed") return DensityMatrix::mixed();
    if (spec == "C") return DensityMatrix::level(2);
    if (spec == "ground") {
        if (params.model_kind == ModelKind::V_ONE_ELECTRON)
            return DensityMatrix::level(2); // |c><c|
        DensityMatrix rho; // equal mixture of the lower Lambda pair
        rho.m(0, 0) = 0.5;
        rho.m(1, 1) = 0.5;
        return rho;
    }
    if (spec == "D") {
        auto [dark, bright] = dark_bright_basis(params.rabi_alpha,
                                                params.rabi_beta);
        Vec3 psi;
        if (params.model_kind == ModelKind::V_ONE_ELECTRON)
            psi << std::conj(dark.c_A), std::conj(dark.c_B), 0.0;
        else
            psi << dark.c_A, dark.c_B, 0.0;
        return DensityMatrix::pure(psi);
    }

    std::ifstream in(spec);
    if (!in)
        throw Error(ErrorCode::IO_ERROR,
                    "unknown rho0 spec and no such file: '" + spec + "'");
    Mat3 m;
    int row = 0;
    std::string line;
    while (std::getline(in, line) && row < 3) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string cell;
        std::vector<Complex> cells;
        while (ls >> cell) {
            if (!cell.empty() && cell.back() == ',') cell.pop_back();
            cells.push_back(parse_complex(cell));
        }
        if (cells.empty()) continue;
        if (cells.size() != 3)
            throw Error(ErrorCode::PARSE_ERROR,
                        "rho0 file rows need 3 entries, got " +
                            std::to_string(cells.size()));
        for (int j = 0; j < 3; ++j) m(row, j) = cells[j];
        ++row;
    }
    if (row != 3)
        throw Error(ErrorCode::PARSE_ERROR, "rho0 file needs 3 rows");
    return DensityMatrix::from_matrix(m);
}

std::pair<std::string, std::string> split_key_value(const std::string &text)
{
    auto eq = text.find('=');
    if (eq == std::string::npos)
        throw Error(ErrorCode::PARSE_ERROR,
                    "expected key=value, got '" + text + "'");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

} // namespace darkhole
