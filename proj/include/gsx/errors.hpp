#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsx {

/// Root of every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decomposition
struct NotDiagonalizable : Error { using Error::Error; };
struct RepeatedEigenvalues : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// Polynomial machinery
struct DuplicateNodes : Error { using Error::Error; };
struct IllConditioned : Error { using Error::Error; };

// Shift operators
struct DuplicatePhases : Error { using Error::Error; };
struct PhaseOutOfRange : Error { using Error::Error; };
struct ZeroSpectrum : Error { using Error::Error; };

// Signals and transforms
struct DimensionMismatch : Error { using Error::Error; };
struct WrongDomain : Error { using Error::Error; };

// Filters
struct DegreeMismatch : Error { using Error::Error; };
struct LengthExceedsDegree : Error { using Error::Error; };

// Correlation / Wiener
struct FastPathUnavailable : Error { using Error::Error; };
struct SingularNormalEquations : Error { using Error::Error; };
struct ConditionsNotMet : Error { using Error::Error; };
struct SpectralNull : Error { using Error::Error; };
struct ZeroReference : Error { using Error::Error; };

// Configuration (CLI exit code 2)
struct ConfigError : Error { using Error::Error; };

/// Text-format parse failure with 1-based position information.
struct ParseError : Error {
    std::size_t line;
    std::size_t column;

    ParseError(const std::string& what, std::size_t line_, std::size_t column_ = 0)
        : Error(what + " (line " + std::to_string(line_) +
                (column_ ? ", column " + std::to_string(column_) : "") + ")"),
          line(line_),
          column(column_) {}
};

} // namespace gsx
