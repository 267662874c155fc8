#pragma once

// Text and JSON formats used by the command-line tool, plus configuration.
//
// Matrix text format:
//   rows cols
//   re+imj re-imj ...      (one line per row, whitespace separated)
// Numbers are written with 17 significant digits so parse/serialize
// round-trips exactly.
//
// Ensemble JSON:
//   {"dims": [2, 2],
//    "items": [{"p": 0.95, "vector": [[re, im], ...]},
//              {"p": 0.05, "matrix": [[[re, im], ...], ...]},
//              {"p": 0.5,  "components": [{"r": 0.5, "vector": [[re, im], ...]}, ...]}]}
// "components" describes a pure-state code word mixture and is how coded
// sources for the two-step erasure ledger are written.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qit/holevo.hpp"

namespace qit {

namespace detail {

inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace detail

/// Parses one "re{sign}imj" token, e.g. "0.5-0.5j" or "1e-05+2e-10j".
inline std::optional<Complex> parse_complex_token(std::string_view token) {
    if (token.size() < 2 || token.back() != 'j') return std::nullopt;
    token.remove_suffix(1);
    std::size_t split = std::string_view::npos;
    for (std::size_t i = token.size(); i-- > 1;) {
        if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string_view::npos) return std::nullopt;
    const auto re = detail::parse_double(token.substr(0, split));
    const auto im = detail::parse_double(token.substr(split));
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
}

inline std::string format_complex_token(const Complex& z) {
    const double im = z.imag();
    return detail::format_g17(z.real()) + (std::signbit(im) ? "-" : "+") + detail::format_g17(std::abs(im)) + "j";
}

inline CMatrix parse_matrix(std::string_view text) {
    std::size_t pos = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    auto skip_space = [&](bool allow_newline) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r' ||
                                     (allow_newline && text[pos] == '\n'))) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++pos;
        }
    };
    auto next_token = [&](std::size_t& tok_line, std::size_t& tok_col) {
        skip_space(false);
        tok_line = line;
        tok_col = col;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\r' && text[pos] != '\n') {
            ++pos;
            ++col;
        }
        return text.substr(start, pos - start);
    };
    auto end_line = [&](std::size_t expected_line) {
        skip_space(false);
        if (pos < text.size() && text[pos] != '\n') throw ParseError("unexpected extra token", line, col);
        if (pos < text.size()) {
            ++pos;
            ++line;
            col = 1;
        }
        (void)expected_line;
    };

    skip_space(true);
    std::size_t tl = 0, tc = 0;
    const auto rows_tok = next_token(tl, tc);
    std::size_t rows = 0, cols = 0;
    if (std::from_chars(rows_tok.data(), rows_tok.data() + rows_tok.size(), rows).ptr != rows_tok.data() + rows_tok.size() ||
        rows == 0 || rows_tok.empty()) {
        throw ParseError("expected a positive row count", tl, tc);
    }
    const auto cols_tok = next_token(tl, tc);
    if (std::from_chars(cols_tok.data(), cols_tok.data() + cols_tok.size(), cols).ptr != cols_tok.data() + cols_tok.size() ||
        cols == 0 || cols_tok.empty()) {
        throw ParseError("expected a positive column count", tl, tc);
    }
    detail::checked_product(rows, cols, "parse_matrix");
    end_line(line);

    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (pos >= text.size()) throw ParseError("expected " + std::to_string(rows) + " rows", line, col);
        for (std::size_t c = 0; c < cols; ++c) {
            const auto tok = next_token(tl, tc);
            if (tok.empty()) throw ParseError("expected " + std::to_string(cols) + " entries in row", tl, tc);
            const auto z = parse_complex_token(tok);
            if (!z) throw ParseError("malformed complex number '" + std::string(tok) + "'", tl, tc);
            entries.push_back(*z);
        }
        end_line(line);
    }
    skip_space(true);
    if (pos != text.size()) throw ParseError("trailing content after matrix", line, col);
    return CMatrix(rows, cols, std::move(entries));
}

inline std::string serialize_matrix(const CMatrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ' ';
            out += format_complex_token(m(i, j));
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ensemble JSON

namespace detail {

using nlohmann::json;

inline json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("invalid JSON: ") + e.what(), line, column);
    }
}

inline Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(where + ": expected [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

inline CVector vector_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of [re, im]");
    std::vector<Complex> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return CVector(std::move(v));
}

inline CMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError(where + ": expected an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    std::vector<Complex> entries;
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw ParseError(where + ": ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            entries.push_back(complex_from_json(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        }
    }
    return CMatrix(rows, cols, std::move(entries));
}

inline json vector_to_json(const CVector& v) {
    json out = json::array();
    for (const auto& z : v) out.push_back({z.real(), z.imag()});
    return out;
}

inline json matrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        out.push_back(row);
    }
    return out;
}

inline Dims dims_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty()) {
        throw ParseError("ensemble: missing \"dims\" array");
    }
    Dims dims;
    for (const auto& d : doc["dims"]) {
        if (!d.is_number_unsigned() || d.get<std::size_t>() == 0) throw ParseError("ensemble: dims must be positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    return dims;
}

inline double probability_from_json(const json& item, const char* key, const std::string& where) {
    if (!item.contains(key) || !item[key].is_number()) throw ParseError(where + ": missing numeric \"" + key + "\"");
    return item[key].get<double>();
}

struct ParsedItem {
    double p;
    Ensemble::Member state;
    std::optional<std::pair<std::vector<double>, std::vector<PureState>>> components;
};

inline std::vector<ParsedItem> items_from_json(const json& doc) {
    const Dims dims = dims_from_json(doc);
    if (!doc.contains("items") || !doc["items"].is_array() || doc["items"].empty()) {
        throw ParseError("ensemble: missing \"items\" array");
    }
    std::vector<ParsedItem> out;
    for (std::size_t i = 0; i < doc["items"].size(); ++i) {
        const json& item = doc["items"][i];
        const std::string where = "items[" + std::to_string(i) + "]";
        if (!item.is_object()) throw ParseError(where + ": expected an object");
        const double p = probability_from_json(item, "p", where);
        const int forms = static_cast<int>(item.contains("vector")) + static_cast<int>(item.contains("matrix")) +
                          static_cast<int>(item.contains("components"));
        if (forms != 1) throw ParseError(where + ": exactly one of \"vector\", \"matrix\" or \"components\" is required");

        if (item.contains("vector")) {
            out.push_back({p, PureState(vector_from_json(item["vector"], where + ".vector"), dims), std::nullopt});
        } else if (item.contains("matrix")) {
            out.push_back({p, DensityOperator(matrix_from_json(item["matrix"], where + ".matrix"), dims), std::nullopt});
        } else {
            const json& comps = item["components"];
            if (!comps.is_array() || comps.empty()) throw ParseError(where + ".components: expected a nonempty array");
            std::vector<double> r;
            std::vector<PureState> states;
            for (std::size_t a = 0; a < comps.size(); ++a) {
                const std::string cw = where + ".components[" + std::to_string(a) + "]";
                r.push_back(probability_from_json(comps[a], "r", cw));
                if (!comps[a].contains("vector")) throw ParseError(cw + ": missing \"vector\"");
                states.emplace_back(vector_from_json(comps[a]["vector"], cw + ".vector"), dims);
            }
            double total = 0.0;
            for (const double x : r) total += x;
            if (std::abs(total - 1.0) > kDefaultTolerance) {
                throw ValidationError(where + ": component probabilities sum to " + format_number(total) + ", expected 1");
            }
            const std::size_t d = states.front().dim();
            CMatrix m(d, d);
            for (std::size_t a = 0; a < r.size(); ++a) m = m + Complex(r[a]) * states[a].projector();
            out.push_back({p, DensityOperator(hermitian_part(m), dims), std::make_pair(r, states)});
        }
    }
    return out;
}

}  // namespace detail

inline Ensemble parse_ensemble(std::string_view text) {
    const auto doc = detail::parse_json(text);
    std::vector<Ensemble::Item> items;
    for (auto& it : detail::items_from_json(doc)) items.push_back({it.p, std::move(it.state)});
    return Ensemble(std::move(items));
}

/// The coded source described by an ensemble file whose items all use
/// "components"; nullopt when any item is a plain vector or matrix.
inline std::optional<CodedSource> parse_coded_source(std::string_view text) {
    const auto doc = detail::parse_json(text);
    std::vector<double> outer;
    std::vector<std::vector<double>> inner;
    std::vector<std::vector<PureState>> states;
    for (auto& it : detail::items_from_json(doc)) {
        if (!it.components) return std::nullopt;
        outer.push_back(it.p);
        inner.push_back(it.components->first);
        states.push_back(it.components->second);
    }
    return CodedSource(std::move(outer), std::move(inner), std::move(states));
}

inline std::string serialize_ensemble(const Ensemble& e) {
    nlohmann::json doc;
    doc["dims"] = e.dims();
    doc["items"] = nlohmann::json::array();
    for (const auto& item : e.items()) {
        nlohmann::json j;
        j["p"] = item.p;
        if (const auto* psi = std::get_if<PureState>(&item.state)) {
            j["vector"] = detail::vector_to_json(psi->vector());
        } else {
            j["matrix"] = detail::matrix_to_json(std::get<DensityOperator>(item.state).matrix());
        }
        doc["items"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Configuration

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct Config {
    double k_boltzmann = 1.0;
    double hbar = 1.0;
    double default_tolerance = kDefaultTolerance;
    std::uint64_t seed = kDefaultSeed;
};

/// Explicitly supplied values; unset fields fall through to lower-precedence sources.
struct ConfigOverrides {
    std::optional<double> k_boltzmann;
    std::optional<double> hbar;
    std::optional<double> default_tolerance;
    std::optional<std::uint64_t> seed;
};

inline std::uint64_t parse_seed(std::string_view s, const char* where) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(std::string(where) + ": seed must be an unsigned 64-bit integer, got '" + std::string(s) + "'");
    }
    return v;
}

inline void validate(const Config& c) {
    if (!(c.k_boltzmann > 0.0)) throw ValidationError("config: k_boltzmann must be positive");
    if (!(c.hbar > 0.0)) throw ValidationError("config: hbar must be positive");
    if (!(c.default_tolerance > 0.0)) throw ValidationError("config: default_tolerance must be positive");
}

/// Config JSON: {"k_boltzmann": 1, "hbar": 1, "default_tolerance": 1e-9, "seed": 42}; all keys optional.
inline ConfigOverrides parse_config_json(std::string_view text) {
    const auto doc = detail::parse_json(text);
    if (!doc.is_object()) throw ParseError("config: expected a JSON object");
    ConfigOverrides o;
    for (const auto& [key, value] : doc.items()) {
        if (key == "seed") {
            if (!value.is_number_unsigned()) throw ParseError("config: seed must be an unsigned integer");
            o.seed = value.get<std::uint64_t>();
            continue;
        }
        if (!value.is_number()) throw ParseError("config: " + key + " must be a number");
        if (key == "k_boltzmann") {
            o.k_boltzmann = value.get<double>();
        } else if (key == "hbar") {
            o.hbar = value.get<double>();
        } else if (key == "default_tolerance") {
            o.default_tolerance = value.get<double>();
        } else {
            throw ParseError("config: unknown key \"" + key + "\"");
        }
    }
    return o;
}

/// Precedence, lowest to highest: defaults, config file, QIT_SEED, flags.
inline Config parse_config(const std::optional<std::string>& file_text, const std::optional<std::string>& env_seed,
                           const ConfigOverrides& flags) {
    Config c;
    auto apply = [&c](const ConfigOverrides& o) {
        if (o.k_boltzmann) c.k_boltzmann = *o.k_boltzmann;
        if (o.hbar) c.hbar = *o.hbar;
        if (o.default_tolerance) c.default_tolerance = *o.default_tolerance;
        if (o.seed) c.seed = *o.seed;
    };
    if (file_text) apply(parse_config_json(*file_text));
    if (env_seed && !env_seed->empty()) c.seed = parse_seed(*env_seed, "QIT_SEED");
    apply(flags);
    validate(c);
    return c;
}

}  // namespace qit
