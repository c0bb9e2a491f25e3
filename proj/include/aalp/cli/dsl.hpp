#pragma once

// Pair files. Line format, one statement per line, '#' starts
// a comment:
//
//   surface P2 | surface F <n>
//   curve <label> <degree>            (on P2)
//   curve <label> <a> <b>             (on F_n, class a Z + b F)
//   node <id> <label> <label> [fiber <tag>]
//   blowup node <id> as <E>
//   blowup smooth <label> at <tag> [fiber <tag>] as <E>
//   blowup away at <tag> [fiber <tag>] as <E>
//
// Nodes that are not declared are generated. Blow-ups come after all
// curves and nodes. A file whose first non-blank character is '{' is read
// as the JSON form of the same data.

#include "aalp/pairs.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace aalp::cli {

class ParseError : public Error {
public:
    ParseError(const std::string& file, std::size_t line, std::size_t col, const std::string& what)
        : Error(line == 0 ? file + ": " + what
                          : file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what)
    {
    }
};

struct ScriptStep {
    BlowUpStep step;
    std::size_t line = 0;
    std::size_t col = 0;
};

struct PairScript {
    LogPair base;
    std::vector<ScriptStep> steps;
};

namespace detail {

struct Token {
    std::string text;
    std::size_t col;
};

inline std::vector<Token> tokenize(const std::string& line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), i + 1});
        i = j;
    }
    return out;
}

inline bool valid_name(const std::string& s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.' && c != '\'')
            return false;
    return true;
}

struct BaseBuilder {
    std::optional<Surface> surface;
    std::vector<BoundaryComponent> boundary;
    struct PendingNode {
        std::string id, a, b;
        std::optional<std::string> fiber;
        std::size_t line, col_a, col_b;
    };
    std::vector<PendingNode> nodes;

    LogPair build(const std::string& file, std::size_t line) const
    {
        if (!surface)
            throw ParseError(file, line, 1, "missing 'surface' statement");
        std::vector<NodeRecord> recs;
        for (const auto& n : nodes) {
            std::optional<std::size_t> ia, ib;
            for (std::size_t i = 0; i < boundary.size(); ++i) {
                if (boundary[i].label == n.a)
                    ia = i;
                if (boundary[i].label == n.b)
                    ib = i;
            }
            if (!ia)
                throw ParseError(file, n.line, n.col_a, "unknown curve '" + n.a + "'");
            if (!ib)
                throw ParseError(file, n.line, n.col_b, "unknown curve '" + n.b + "'");
            recs.push_back({n.id, *ia, *ib, n.fiber});
        }
        try {
            return LogPair::create(*surface, boundary, recs);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(file, line, 1, e.what());
        }
    }
};

inline long long parse_int(const std::string& file, std::size_t line, const Token& t)
{
    auto q = parse_rational(t.text);
    if (!q || denominator(*q) != 1 || t.text.find('/') != std::string::npos)
        throw ParseError(file, line, t.col, "expected an integer, got '" + t.text + "'");
    if (abs(*q) > Rational(1000000))
        throw ParseError(file, line, t.col, "integer out of range: " + t.text);
    return numerator(*q).convert_to<long long>();
}

} // namespace detail

inline PairScript parse_text(const std::string& text, const std::string& file = "<input>")
{
    detail::BaseBuilder base;
    std::vector<ScriptStep> steps;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    std::size_t last_line = 1;
    std::optional<LogPair> built;

    auto need = [&](const std::vector<detail::Token>& t, std::size_t count, std::size_t line) {
        if (t.size() < count) {
            const std::size_t col = t.empty() ? 1 : t.back().col + t.back().text.size();
            throw ParseError(file, line, col, "statement '" + t[0].text + "' is incomplete");
        }
    };
    auto name = [&](const detail::Token& t, std::size_t line) {
        if (!detail::valid_name(t.text))
            throw ParseError(file, line, t.col, "invalid name '" + t.text + "'");
        return t.text;
    };
    auto expect = [&](const detail::Token& t, const char* word, std::size_t line) {
        if (t.text != word)
            throw ParseError(file, line, t.col, std::string("expected '") + word + "', got '" + t.text + "'");
    };

    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const auto t = detail::tokenize(raw);
        if (t.empty())
            continue;
        last_line = line_no;
        const std::string& kw = t[0].text;
        if (kw == "surface") {
            if (base.surface)
                throw ParseError(file, line_no, t[0].col, "duplicate 'surface' statement");
            need(t, 2, line_no);
            if (t[1].text == "P2" || t[1].text == "p2") {
                if (t.size() > 2)
                    throw ParseError(file, line_no, t[2].col, "unexpected '" + t[2].text + "'");
                base.surface = projective_plane();
            } else if (t[1].text == "F") {
                need(t, 3, line_no);
                const long long n = detail::parse_int(file, line_no, t[2]);
                if (n < 0)
                    throw ParseError(file, line_no, t[2].col, "Hirzebruch index must be nonnegative");
                if (t.size() > 3)
                    throw ParseError(file, line_no, t[3].col, "unexpected '" + t[3].text + "'");
                base.surface = hirzebruch(static_cast<int>(n));
            } else {
                throw ParseError(file, line_no, t[1].col, "unknown surface '" + t[1].text + "' (use P2 or F <n>)");
            }
        } else if (kw == "curve" || kw == "node") {
            if (!base.surface)
                throw ParseError(file, line_no, t[0].col, "'surface' must come first");
            if (!steps.empty())
                throw ParseError(file, line_no, t[0].col, "curves and nodes must precede blow-ups");
            if (kw == "curve") {
                const bool plane = (*base.surface)->is_projective_plane();
                const std::size_t want = plane ? 3 : 4;
                need(t, want, line_no);
                if (t.size() > want)
                    throw ParseError(file, line_no, t[want].col, "unexpected '" + t[want].text + "'");
                std::vector<long long> v;
                for (std::size_t i = 2; i < want; ++i)
                    v.push_back(detail::parse_int(file, line_no, t[i]));
                const std::string label = name(t[1], line_no);
                for (const auto& b : base.boundary)
                    if (b.label == label)
                        throw ParseError(file, line_no, t[1].col, "duplicate curve '" + label + "'");
                if (std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; }))
                    throw ParseError(file, line_no, t[2].col, "the zero class is not a curve");
                base.boundary.push_back({label, DivisorClass::from_ints(*base.surface, v), std::nullopt});
            } else {
                need(t, 4, line_no);
                detail::BaseBuilder::PendingNode n{name(t[1], line_no), t[2].text, t[3].text, std::nullopt,
                                                   line_no, t[2].col, t[3].col};
                if (t.size() > 4) {
                    expect(t[4], "fiber", line_no);
                    need(t, 6, line_no);
                    n.fiber = name(t[5], line_no);
                    if (t.size() > 6)
                        throw ParseError(file, line_no, t[6].col, "unexpected '" + t[6].text + "'");
                }
                base.nodes.push_back(std::move(n));
            }
        } else if (kw == "blowup") {
            if (!built)
                built = base.build(file, line_no);
            need(t, 2, line_no);
            ScriptStep s;
            s.line = line_no;
            std::size_t i = 2;
            const std::string& op = t[1].text;
            if (op == "node") {
                s.step.kind = CenterKind::Node;
                need(t, 3, line_no);
                s.step.target = t[2].text;
                s.col = t[2].col;
                i = 3;
            } else if (op == "smooth" || op == "away") {
                s.step.kind = op == "smooth" ? CenterKind::SmoothPoint : CenterKind::Away;
                if (op == "smooth") {
                    need(t, 3, line_no);
                    s.step.target = t[2].text;
                    s.col = t[2].col;
                    i = 3;
                }
                need(t, i + 2, line_no);
                expect(t[i], "at", line_no);
                if (op == "away")
                    s.col = t[i + 1].col;
                s.step.tag = name(t[i + 1], line_no);
                i += 2;
                if (i < t.size() && t[i].text == "fiber") {
                    need(t, i + 2, line_no);
                    s.step.fiber_tag = name(t[i + 1], line_no);
                    i += 2;
                }
            } else {
                throw ParseError(file, line_no, t[1].col, "unknown blow-up '" + op + "' (use node, smooth or away)");
            }
            need(t, i + 2, line_no);
            expect(t[i], "as", line_no);
            s.step.label = name(t[i + 1], line_no);
            if (t.size() > i + 2)
                throw ParseError(file, line_no, t[i + 2].col, "unexpected '" + t[i + 2].text + "'");
            steps.push_back(std::move(s));
        } else {
            throw ParseError(file, line_no, t[0].col, "unknown statement '" + kw + "'");
        }
    }
    if (!built)
        built = base.build(file, last_line);
    return {*built, std::move(steps)};
}

/// The JSON form:
///   {"surface": "P2" | "F<n>" | {"F": n},
///    "boundary": [{"label": "C1", "class": [a, b]}, ...],
///    "nodes": [{"id": "p", "between": ["C1", "C2"], "fiber": "t"}],
///    "blowups": [{"op": "node"|"smooth"|"away", "target": ..., "at": ..., "fiber": ..., "id": "E1"}]}
inline PairScript parse_json(const std::string& text, const std::string& file = "<input>")
{
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(file, line, col, "invalid JSON");
    }
    auto fail = [&](const std::string& why) -> ParseError { return ParseError(file, 1, 1, why); };
    try {
        if (!j.is_object())
            throw fail("top level must be an object");
        Surface s;
        const auto& js = j.at("surface");
        if (js.is_string()) {
            const std::string v = js.get<std::string>();
            if (v == "P2")
                s = projective_plane();
            else if (v.size() > 1 && v[0] == 'F' && std::all_of(v.begin() + 1, v.end(), ::isdigit))
                s = hirzebruch(std::stoi(v.substr(1)));
            else
                throw fail("unknown surface '" + v + "'");
        } else if (js.is_object() && js.contains("F")) {
            const int n = js.at("F").get<int>();
            if (n < 0)
                throw fail("Hirzebruch index must be nonnegative");
            s = hirzebruch(n);
        } else {
            throw fail("surface must be \"P2\", \"F<n>\" or {\"F\": n}");
        }
        std::vector<BoundaryComponent> boundary;
        for (const auto& c : j.at("boundary")) {
            const std::string label = c.at("label").get<std::string>();
            if (!detail::valid_name(label))
                throw fail("invalid name '" + label + "'");
            std::vector<long long> v = c.at("class").get<std::vector<long long>>();
            if (v.size() != s->rank())
                throw fail("class of '" + label + "' needs " + std::to_string(s->rank()) + " entries");
            boundary.push_back({label, DivisorClass::from_ints(s, v), std::nullopt});
        }
        std::vector<NodeRecord> nodes;
        if (j.contains("nodes"))
            for (const auto& n : j.at("nodes")) {
                const auto between = n.at("between").get<std::vector<std::string>>();
                if (between.size() != 2)
                    throw fail("node 'between' needs two labels");
                NodeRecord r{n.at("id").get<std::string>(), 0, 0, std::nullopt};
                std::optional<std::size_t> ia, ib;
                for (std::size_t i = 0; i < boundary.size(); ++i) {
                    if (boundary[i].label == between[0])
                        ia = i;
                    if (boundary[i].label == between[1])
                        ib = i;
                }
                if (!ia || !ib)
                    throw fail("node '" + r.id + "' refers to an unknown curve");
                r.first = *ia;
                r.second = *ib;
                if (n.contains("fiber"))
                    r.on_fiber_of = n.at("fiber").get<std::string>();
                nodes.push_back(std::move(r));
            }
        PairScript out{LogPair::create(s, boundary, nodes), {}};
        if (j.contains("blowups"))
            for (const auto& b : j.at("blowups")) {
                ScriptStep st;
                st.line = 1;
                st.col = 1;
                const std::string op = b.at("op").get<std::string>();
                if (op == "node")
                    st.step.kind = CenterKind::Node;
                else if (op == "smooth")
                    st.step.kind = CenterKind::SmoothPoint;
                else if (op == "away")
                    st.step.kind = CenterKind::Away;
                else
                    throw fail("unknown blow-up op '" + op + "'");
                if (op != "away")
                    st.step.target = b.at("target").get<std::string>();
                if (op != "node")
                    st.step.tag = b.at("at").get<std::string>();
                if (b.contains("fiber"))
                    st.step.fiber_tag = b.at("fiber").get<std::string>();
                st.step.label = b.at("id").get<std::string>();
                out.steps.push_back(std::move(st));
            }
        return out;
    } catch (const ParseError&) {
        throw;
    } catch (const json::exception& e) {
        throw fail(std::string("malformed pair file: ") + e.what());
    } catch (const Error& e) {
        throw fail(e.what());
    }
}

inline PairScript parse_pair_text(const std::string& text, const std::string& file = "<input>")
{
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        if (c == '{')
            return parse_json(text, file);
        break;
    }
    return parse_text(text, file);
}

inline PairScript load_pair_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path, 0, 0, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_pair_text(os.str(), path);
}

/// Applies the script; errors point at the offending statement.
inline std::vector<LogPair> run_script(const PairScript& s, const std::string& file = "<input>")
{
    std::vector<LogPair> states{s.base};
    for (const auto& st : s.steps) {
        try {
            states.push_back(apply_step(states.back(), st.step));
        } catch (const Error& e) {
            throw ParseError(file, st.line, st.col, e.what());
        }
    }
    return states;
}

} // namespace aalp::cli
