#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "unitri/degrees.hpp"
#include "unitri/errors.hpp"
#include "unitri/genericity.hpp"
#include "unitri/linalg.hpp"
#include "unitri/tridiagonalizer.hpp"

namespace unitri {

/// Malformed matrix input. Line and column are 1-based.
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

/// JSON when the first non-blank character is '{', plain text otherwise.
ComplexMatrix parse_matrix(std::string_view text);

/// {"n": 4, "entries": [[[re, im], ...], ...]}
ComplexMatrix parse_json_matrix(std::string_view text);

/// One row per line, whitespace or comma separated "a+bi" tokens. Blank lines
/// and lines starting with '#' are skipped.
ComplexMatrix parse_text_matrix(std::string_view text);

/// Parses a single token such as "1.5-2i", "-i", "3", "2e-3j".
std::optional<Complex> parse_complex_token(std::string_view token);

enum class MatrixKind { gaussian, hermitian, tridiagonal, jordan };

MatrixKind parse_kind(std::string_view name);
const char* to_string(MatrixKind kind);

/// Deterministic matrix of the given kind. jordan ignores the seed.
ComplexMatrix generate_matrix(MatrixKind kind, std::size_t n, std::uint64_t seed);

using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Json vector_to_json(const Vector& v);
Json matrix_entries(const ComplexMatrix& m);
Json matrix_input_json(const ComplexMatrix& m);

Json genericity_json(const GenericityReport& g);
Json candidate_json(const SectionCandidate& c);
Json result_json(const TridiagResult& r);
Json verify_json(const VerifyReport& v);
Json degrees_json(const DegreeReport& d, std::uint64_t seed);

} // namespace unitri
