#ifndef DARKHOLE_ERRORS_HPP
#define DARKHOLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace darkhole {

enum class ErrorCode {
    NEGATIVE_RATE,
    UNKNOWN_PRESET,
    PARSE_ERROR,
    STEP_UNDERFLOW,
    INVALID_INITIAL_STATE,
    WINDOW_TOO_SHORT,
    NOT_CONVERGED,
    TIME_DEPENDENT_GENERATOR,
    BOTH_FIELDS_ZERO,
    WRONG_MODEL_KIND,
    HERMITICITY_VIOLATION,
    GRID_EMPTY,
    IO_ERROR,
    BAD_ARGUMENT,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          m_code(code)
    {
    }

    ErrorCode code() const { return m_code; }

private:
    ErrorCode m_code;
};

inline const char *to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NEGATIVE_RATE: return "NEGATIVE_RATE";
    case ErrorCode::UNKNOWN_PRESET: return "UNKNOWN_PRESET";
    case ErrorCode::PARSE_ERROR: return "PARSE_ERROR";
    case ErrorCode::STEP_UNDERFLOW: return "STEP_UNDERFLOW";
    case ErrorCode::INVALID_INITIAL_STATE: return "INVALID_INITIAL_STATE";
    case ErrorCode::WINDOW_TOO_SHORT: return "WINDOW_TOO_SHORT";
    case ErrorCode::NOT_CONVERGED: return "NOT_CONVERGED";
    case ErrorCode::TIME_DEPENDENT_GENERATOR: return "TIME_DEPENDENT_GENERATOR";
    case ErrorCode::BOTH_FIELDS_ZERO: return "BOTH_FIELDS_ZERO";
    case ErrorCode::WRONG_MODEL_KIND: return "WRONG_MODEL_KIND";
    case ErrorCode::HERMITICITY_VIOLATION: return "HERMITICITY_VIOLATION";
    case ErrorCode::GRID_EMPTY: return "GRID_EMPTY";
    case ErrorCode::IO_ERROR: return "IO_ERROR";
    case ErrorCode::BAD_ARGUMENT: return "BAD_ARGUMENT";
    }
    return "UNKNOWN";
}

} // namespace darkhole

#endif
