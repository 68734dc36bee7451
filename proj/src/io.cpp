#include "unitri/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <vector>

namespace unitri {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : InvalidInput("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      message_(message), line_(line), column_(column) {}

namespace {

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
    Position p;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++p.line;
            p.column = 1;
        } else {
            ++p.column;
        }
    }
    return p;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& message) {
    const Position p = position_of(text, offset);
    throw ParseError(message, p.line, p.column);
}

std::size_t find_key(std::string_view text, std::string_view key) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    const auto pos = text.find(quoted);
    return pos == std::string_view::npos ? 0 : pos;
}

// Reads an unsigned decimal number at s[pos]; advances pos past it.
std::optional<double> read_magnitude(std::string_view s, std::size_t& pos) {
    if (pos >= s.size()) return std::nullopt;
    const char c = s[pos];
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.')) return std::nullopt;
    double value = 0.0;
    const auto res = std::from_chars(s.data() + pos, s.data() + s.size(), value, std::chars_format::general);
    if (res.ec != std::errc()) return std::nullopt;
    pos = static_cast<std::size_t>(res.ptr - s.data());
    return value;
}

bool is_unit(char c) { return c == 'i' || c == 'j'; }

double read_sign(std::string_view s, std::size_t& pos) {
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) return s[pos++] == '-' ? -1.0 : 1.0;
    return 1.0;
}

std::vector<std::size_t> dims_or_throw(const Json& entries, std::string_view text) {
    const std::size_t at = find_key(text, "entries");
    if (!entries.is_array() || entries.empty()) fail_at(text, at, "\"entries\" must be a non-empty array of rows");
    std::vector<std::size_t> widths;
    for (const auto& row : entries) {
        if (!row.is_array()) fail_at(text, at, "each row of \"entries\" must be an array");
        widths.push_back(row.size());
    }
    return widths;
}

} // namespace

std::optional<Complex> parse_complex_token(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    double re = 0.0, im = 0.0;
    const double sign = read_sign(s, pos);
    const auto first = read_magnitude(s, pos);
    if (!first) {
        // "i", "-i"
        if (pos < s.size() && is_unit(s[pos]) && pos + 1 == s.size()) return Complex(0.0, sign);
        return std::nullopt;
    }
    if (pos == s.size()) {
        re = sign * *first;
    } else if (is_unit(s[pos]) && pos + 1 == s.size()) {
        im = sign * *first;
    } else if (s[pos] == '+' || s[pos] == '-') {
        re = sign * *first;
        const double isign = read_sign(s, pos);
        const auto second = read_magnitude(s, pos);
        if (pos >= s.size() || !is_unit(s[pos]) || pos + 1 != s.size()) return std::nullopt;
        im = isign * (second ? *second : 1.0);
    } else {
        return std::nullopt;
    }
    if (!std::isfinite(re) || !std::isfinite(im)) return std::nullopt;
    return Complex(re, im);
}

ComplexMatrix parse_text_matrix(std::string_view text) {
    std::vector<std::vector<Complex>> rows;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first != std::string_view::npos && line[first] != '#') {
            std::vector<Complex> row;
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) ++i;
                if (i >= line.size()) break;
                std::size_t j = i;
                while (j < line.size() && !(line[j] == ' ' || line[j] == '\t' || line[j] == ',' || line[j] == '\r')) ++j;
                const auto token = line.substr(i, j - i);
                const auto z = parse_complex_token(token);
                if (!z) throw ParseError("invalid complex number \"" + std::string(token) + "\"", line_no, i + 1);
                row.push_back(*z);
                i = j;
            }
            if (!rows.empty() && row.size() != rows.front().size()) {
                throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " +
                                     std::to_string(rows.front().size()),
                                 line_no, first + 1);
            }
            rows.push_back(std::move(row));
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    if (rows.empty()) throw ParseError("no matrix rows found", line_no == 0 ? 1 : line_no, 1);
    const std::size_t n = rows.size();
    if (rows.front().size() != n)
        throw ParseError("matrix must be square: " + std::to_string(n) + " rows of " +
                             std::to_string(rows.front().size()) + " entries",
                         1, 1);
    if (n > 4) throw ParseError("n must be between 1 and 4", 1, 1);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    return m;
}

ComplexMatrix parse_json_matrix(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        std::string what = e.what();
        const auto colon = what.rfind(": ");
        fail_at(text, offset, colon == std::string::npos ? what : what.substr(colon + 2));
    }
    if (!doc.is_object()) fail_at(text, 0, "top level must be an object");
    if (!doc.contains("n")) fail_at(text, 0, "missing \"n\"");
    if (!doc.contains("entries")) fail_at(text, 0, "missing \"entries\"");
    const auto& nj = doc["n"];
    if (!nj.is_number_integer() || nj.get<long long>() < 1 || nj.get<long long>() > 4)
        fail_at(text, find_key(text, "n"), "\"n\" must be an integer between 1 and 4");
    const auto n = static_cast<std::size_t>(nj.get<long long>());
    const auto& entries = doc["entries"];
    const auto widths = dims_or_throw(entries, text);
    const std::size_t at = find_key(text, "entries");
    if (widths.size() != n) fail_at(text, at, "\"entries\" has " + std::to_string(widths.size()) + " rows, n is " + std::to_string(n));
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (widths[i] != n)
            fail_at(text, at, "row " + std::to_string(i) + " has " + std::to_string(widths[i]) + " entries, n is " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            const auto& e = entries[i][j];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                fail_at(text, at, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") must be [re, im]");
            const Complex z(e[0].get<double>(), e[1].get<double>());
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                fail_at(text, at, "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
            m(i, j) = z;
        }
    }
    return m;
}

ComplexMatrix parse_matrix(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty input", 1, 1);
    if (text[first] == '{' || text[first] == '[') return parse_json_matrix(text);
    return parse_text_matrix(text);
}

MatrixKind parse_kind(std::string_view name) {
    if (name == "gaussian") return MatrixKind::gaussian;
    if (name == "hermitian") return MatrixKind::hermitian;
    if (name == "tridiagonal") return MatrixKind::tridiagonal;
    if (name == "jordan") return MatrixKind::jordan;
    throw InvalidInput("unknown matrix kind \"" + std::string(name) + "\"");
}

const char* to_string(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::gaussian: return "gaussian";
    case MatrixKind::hermitian: return "hermitian";
    case MatrixKind::tridiagonal: return "tridiagonal";
    case MatrixKind::jordan: return "jordan";
    }
    return "gaussian";
}

ComplexMatrix generate_matrix(MatrixKind kind, std::size_t n, std::uint64_t seed) {
    if (n < 1 || n > 4) throw InvalidInput("n must be between 1 and 4");
    ComplexMatrix m(n, n);
    if (kind == MatrixKind::jordan) {
        for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
        return m;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (auto& z : m.data()) z = Complex(nd(rng), nd(rng));
    if (kind == MatrixKind::hermitian) {
        ComplexMatrix h = m + adjoint(m);
        h *= Complex(0.5);
        return h;
    }
    if (kind == MatrixKind::tridiagonal) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i > j + 1 || j > i + 1) m(i, j) = 0.0;
    }
    return m;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(complex_to_json(z));
    return out;
}

Json matrix_entries(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
    return rows;
}

Json matrix_input_json(const ComplexMatrix& m) {
    Json j;
    j["n"] = m.rows();
    j["entries"] = matrix_entries(m);
    return j;
}

Json genericity_json(const GenericityReport& g) {
    Json j;
    j["s1"] = g.nonsingular;
    j["s2"] = g.distinct_eigenvalues;
    j["s3"] = g.pencil_rank_ok;
    j["generic"] = g.generic();
    j["heuristic"] = g.heuristic;
    j["witness"] = g.witness ? vector_to_json(g.witness->coords()) : Json(nullptr);
    Json common = Json::array();
    for (const auto& v : g.common_eigenvectors) common.push_back(vector_to_json(v.coords()));
    j["common_eigenvectors"] = common;
    j["sigma_ratio"] = g.sigma_ratio;
    j["eigenvalue_gap"] = g.eigenvalue_gap;
    j["details"] = g.details;
    return j;
}

Json candidate_json(const SectionCandidate& c) {
    Json j;
    j["v"] = vector_to_json(c.point.v.coords());
    j["t"] = vector_to_json(c.point.t.coords());
    j["sigma4"] = c.sigma4;
    j["curve_residual"] = c.curve_residual;
    j["jacobian_rcond"] = c.jacobian_rcond;
    j["shortcut"] = c.shortcut;
    j["accepted"] = c.accepted;
    j["rejection"] = c.rejection;
    return j;
}

Json result_json(const TridiagResult& r) {
    Json j;
    j["status"] = "solved";
    j["provenance"] = to_string(r.provenance);
    j["off_residual"] = r.off_residual;
    j["unitarity_residual"] = r.unitarity_residual;
    j["perturbation"] = r.perturbation;
    j["polished"] = r.polished;
    j["seed"] = r.seed;
    j["U"] = matrix_entries(r.U);
    j["T"] = matrix_entries(r.T);
    Json flag = Json::array();
    for (const auto& f : r.flag.basis) flag.push_back(vector_to_json(f));
    j["flag"] = flag;
    Json cands = Json::array();
    for (const auto& c : r.candidates) cands.push_back(candidate_json(c));
    j["candidates"] = cands;
    j["diagnostics"] = r.diagnostics;
    return j;
}

Json verify_json(const VerifyReport& v) {
    Json j;
    j["off_residual"] = v.off_residual;
    j["unitarity_residual"] = v.unitarity_residual;
    j["spectrum_gap"] = std::isfinite(v.spectrum_gap) ? Json(v.spectrum_gap) : Json(nullptr);
    j["consistent"] = v.consistent;
    return j;
}

namespace {

Json trial_json(const CountTrial& t) {
    Json j;
    j["count"] = t.count;
    Json pts = Json::array();
    for (const auto& p : t.points) {
        Json q;
        q["location"] = vector_to_json(p.location);
        q["multiplicity"] = p.multiplicity;
        q["residual"] = p.residual;
        q["near_branch"] = p.near_branch;
        pts.push_back(q);
    }
    j["points"] = pts;
    j["note"] = t.note;
    return j;
}

} // namespace

Json degrees_json(const DegreeReport& d, std::uint64_t seed) {
    Json j;
    j["seed"] = seed;
    j["skipped"] = d.skipped;
    j["notice"] = d.notice;
    j["trials"] = d.trials;
    j["deg_D_observed"] = d.deg_D_observed;
    j["deg_C_observed"] = d.deg_C_observed;
    j["section_zero_count"] = d.section_zero_count;
    j["expected"] = {{"deg_D", 4}, {"deg_C", 6}, {"max_section_zeros", 12}};
    j["deg_D_stable"] = d.deg_D_stable;
    j["deg_C_stable"] = d.deg_C_stable;
    j["deg_C_agreement"] = d.deg_C_agreement;
    Json detail = Json::array();
    for (const auto& t : d.per_trial_detail) {
        Json e;
        e["index"] = t.index;
        e["deg_D"] = trial_json(t.deg_D);
        e["deg_C"] = trial_json(t.deg_C);
        detail.push_back(e);
    }
    j["per_trial_detail"] = detail;
    j["section_zeros"] = d.skipped ? Json(nullptr) : trial_json(d.section_zeros);
    return j;
}

} // namespace unitri
