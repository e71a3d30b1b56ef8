#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsx/decomposition.hpp"
#include "gsx/errors.hpp"
#include "gsx/graph.hpp"
#include "gsx/shift.hpp"
#include "gsx/signal.hpp"
#include "gsx/types.hpp"
#include "gsx/wiener.hpp"

namespace gsx {

namespace detail {

// 17 significant digits: lossless double round trip in text.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline double parse_double(const std::string& tok, std::size_t line, std::size_t column) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + tok + "'", line, column);
    }
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

inline std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    return in;
}

} // namespace detail

// ---- Matrix Market (coordinate real general) --------------------------------

inline void save_matrix_market(const std::string& path, const Graph& g) {
    auto out = detail::open_out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    Index nnz = 0;
    for (Index i = 0; i < g.n(); ++i)
        for (Index j = 0; j < g.n(); ++j)
            if (g.adjacency(i, j) != 0.0) ++nnz;
    out << g.n() << " " << g.n() << " " << nnz << "\n";
    for (Index i = 0; i < g.n(); ++i)
        for (Index j = 0; j < g.n(); ++j)
            if (g.adjacency(i, j) != 0.0)
                out << (i + 1) << " " << (j + 1) << " "
                    << detail::format_double(g.adjacency(i, j)) << "\n";
}

inline Graph load_matrix_market(const std::string& path) {
    auto in = detail::open_in(path);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw ParseError("empty file", 1);
    ++lineno;
    {
        std::istringstream hdr(line);
        std::string banner, object, format, field, symmetry;
        hdr >> banner >> object >> format >> field >> symmetry;
        if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
            field != "real" || symmetry != "general")
            throw ParseError("expected '%%MatrixMarket matrix coordinate real general' banner",
                             lineno);
    }
    Index rows = 0, cols = 0;
    long nnz = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream sz(line);
        if (!(sz >> rows >> cols >> nnz)) throw ParseError("malformed size line", lineno);
        break;
    }
    if (nnz < 0) throw ParseError("missing size line", lineno + 1);
    if (rows != cols || rows < 1) throw ParseError("adjacency matrix must be square", lineno);
    RMatrix a = RMatrix::Zero(rows, cols);
    long seen = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream entry(line);
        Index i = 0, j = 0;
        std::string tok;
        if (!(entry >> i >> j >> tok)) throw ParseError("malformed entry", lineno);
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw ParseError("entry index out of range", lineno, 1);
        a(i - 1, j - 1) = detail::parse_double(tok, lineno, 3);
        ++seen;
    }
    if (seen != nnz)
        throw ParseError("declared " + std::to_string(nnz) + " entries, found " +
                             std::to_string(seen),
                         lineno);
    return Graph::from_adjacency(std::move(a));
}

// ---- Dense CSV adjacency ----------------------------------------------------

inline void save_adjacency_csv(const std::string& path, const Graph& g) {
    auto out = detail::open_out(path);
    for (Index i = 0; i < g.n(); ++i) {
        for (Index j = 0; j < g.n(); ++j)
            out << (j ? "," : "") << detail::format_double(g.adjacency(i, j));
        out << "\n";
    }
}

/// Dense CSV; an optional first line holding a single integer n is accepted.
inline Graph load_adjacency_csv(const std::string& path) {
    auto in = detail::open_in(path);
    std::string line;
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 0;
    std::string count_header; // candidate n line, reinterpreted if nothing follows
    std::size_t count_header_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto toks = detail::split_csv(line);
        if (rows.empty() && count_header.empty() && toks.size() == 1) {
            std::size_t used = 0;
            bool integral = false;
            try {
                (void)std::stol(toks[0], &used);
                integral = used == toks[0].size();
            } catch (const std::exception&) {}
            if (integral) {
                count_header = toks[0];
                count_header_line = lineno;
                continue;
            }
        }
        std::vector<double> row;
        row.reserve(toks.size());
        for (std::size_t c = 0; c < toks.size(); ++c)
            row.push_back(detail::parse_double(toks[c], lineno, c + 1));
        rows.push_back(std::move(row));
    }
    if (rows.empty() && !count_header.empty()) {
        // a lone integral value was a 1x1 matrix, not a count header
        rows.push_back({detail::parse_double(count_header, count_header_line, 1)});
    }
    if (rows.empty()) throw ParseError("no data rows", lineno ? lineno : 1);
    const Index n = static_cast<Index>(rows.size());
    RMatrix a(n, n);
    for (Index i = 0; i < n; ++i) {
        if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw ParseError("row has " +
                                 std::to_string(rows[static_cast<std::size_t>(i)].size()) +
                                 " columns, expected " + std::to_string(n),
                             i + 1);
        for (Index j = 0; j < n; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return Graph::from_adjacency(std::move(a));
}

// ---- Signal CSV ---------------------------------------------------------------

inline void save_signal_csv(const std::string& path, const GraphSignal& x) {
    auto out = detail::open_out(path);
    out << "# domain=" << (x.domain == Domain::Fourier ? "fourier" : "vertex") << "\n";
    out << "re,im\n";
    for (Index i = 0; i < x.size(); ++i)
        out << detail::format_double(x.values(i).real()) << ","
            << detail::format_double(x.values(i).imag()) << "\n";
}

inline GraphSignal load_signal_csv(const std::string& path) {
    auto in = detail::open_in(path);
    std::string line;
    std::size_t lineno = 0;
    Domain domain = Domain::Vertex;
    std::vector<cxd> vals;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.find("domain=fourier") != std::string::npos) domain = Domain::Fourier;
            else if (line.find("domain=vertex") != std::string::npos) domain = Domain::Vertex;
            else throw ParseError("unknown flag line '" + line + "'", lineno);
            continue;
        }
        if (line.rfind("re,", 0) == 0) continue; // column header
        const auto toks = detail::split_csv(line);
        if (toks.size() != 2) throw ParseError("expected two columns (re, im)", lineno);
        vals.emplace_back(detail::parse_double(toks[0], lineno, 1),
                          detail::parse_double(toks[1], lineno, 2));
    }
    if (vals.empty()) throw ParseError("no samples", lineno ? lineno : 1);
    CVector v(static_cast<Index>(vals.size()));
    for (Index i = 0; i < v.size(); ++i) v(i) = vals[static_cast<std::size_t>(i)];
    return GraphSignal{std::move(v), domain};
}

// ---- Node coordinates CSV (x, y per node) -------------------------------------

inline void save_coordinates_csv(const std::string& path, const RMatrix& coordinates) {
    if (coordinates.cols() != 2) throw DimensionMismatch("coordinates must be n x 2");
    auto out = detail::open_out(path);
    out << "x,y\n";
    for (Index i = 0; i < coordinates.rows(); ++i)
        out << detail::format_double(coordinates(i, 0)) << ","
            << detail::format_double(coordinates(i, 1)) << "\n";
}

// ---- Complex matrix CSV (re, im column pairs) --------------------------------

inline void save_complex_matrix_csv(const std::string& path, const CMatrix& m) {
    auto out = detail::open_out(path);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j)
            out << (j ? "," : "") << detail::format_double(m(i, j).real()) << ","
                << detail::format_double(m(i, j).imag());
        out << "\n";
    }
}

// ---- JSON exports -------------------------------------------------------------

inline nlohmann::json to_json(const cxd& z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json to_json(const CVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v(i)));
    return arr;
}

inline nlohmann::json to_json(const CMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json decomposition_to_json(const EigenDecomposition& d) {
    return nlohmann::json{{"n", d.n()},
                          {"lambda", to_json(d.lambda)},
                          {"v", to_json(d.v)},
                          {"v_inv", to_json(d.v_inv)},
                          {"ordering", d.ordering},
                          {"unitary_v", d.unitary_v}};
}

/// FNV-1a over the eigenvalue and eigenvector bytes; identifies the
/// decomposition a serialized shift operator refers to.
inline std::uint64_t decomposition_hash(const EigenDecomposition& d) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const void* data, std::size_t len) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ULL;
        }
    };
    mix(d.lambda.data(), sizeof(cxd) * static_cast<std::size_t>(d.lambda.size()));
    mix(d.v.data(), sizeof(cxd) * static_cast<std::size_t>(d.v.size()));
    return h;
}

inline nlohmann::json shift_to_json(const ShiftOperator& s) {
    nlohmann::json j{{"kind", to_string(s.kind())},
                     {"decomposition_hash", decomposition_hash(s.decomposition())}};
    if (is_unit_modulus(s.kind())) {
        nlohmann::json phases = nlohmann::json::array();
        for (Index i = 0; i < s.phases().size(); ++i) phases.push_back(s.phases()(i));
        j["phases"] = std::move(phases);
    }
    return j;
}

inline nlohmann::json taps_to_json(const FilterTaps& t) {
    return nlohmann::json{{"shift_kind", to_string(t.shift_kind)}, {"h", to_json(t.h)}};
}

inline nlohmann::json wiener_solution_to_json(const WienerSolution& sol) {
    return nlohmann::json{{"taps", to_json(sol.taps.h)},
                          {"shift_kind", to_string(sol.taps.shift_kind)},
                          {"residual", sol.residual},
                          {"condition", sol.condition},
                          {"path", sol.path}};
}

inline nlohmann::json correlation_flags_json(const CorrelationMatrix& r) {
    return nlohmann::json{
        {"lag_count", r.lag_count}, {"hermitian", r.hermitian}, {"toeplitz", r.toeplitz}};
}

} // namespace gsx
