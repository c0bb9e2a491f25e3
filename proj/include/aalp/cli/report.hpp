#pragma once

// Plain-text reports for the command-line front end. Everything printed here
// is a function of the input only; timing goes to stderr in the driver.

#include "aalp/angles.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace aalp::cli {

inline std::string format_point(const RationalVector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

inline const char* verdict(const std::optional<bool>& v) { return !v ? "unknown" : *v ? "yes" : "no"; }

inline std::string lattice_dump(const LogPair& p)
{
    std::ostringstream os;
    const auto& s = p.surface();
    os << "surface: " << s->name() << "\n";
    os << "basis:";
    for (const auto& l : s->basis_labels())
        os << " " << l;
    os << "\n";
    os << "intersection:";
    for (const auto& row : s->intersection_matrix()) {
        os << " [";
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? " " : "") << row[j];
        os << "]";
    }
    os << "\n";
    os << "canonical: " << canonical_class(s).to_string() << "\n";
    os << "boundary:\n";
    for (const auto& b : p.boundary())
        os << "  " << b.label << " = " << b.cls.to_string() << "  (self-intersection "
           << to_string(self_intersection(b.cls)) << ")\n";
    os << "nodes:\n";
    if (p.nodes().empty())
        os << "  none\n";
    for (const auto& n : p.nodes()) {
        os << "  " << n.id << ": " << p.boundary()[n.first].label << " " << p.boundary()[n.second].label;
        if (n.on_fiber_of)
            os << " (fiber " << *n.on_fiber_of << ")";
        os << "\n";
    }
    return os.str();
}

inline std::vector<std::string> indented(const std::vector<std::string>& lines)
{
    std::vector<std::string> out;
    for (const auto& l : lines)
        out.push_back("  " + l);
    return out;
}

/// Minimal H-form lines, the closure's minimal form and its vertices.
inline void body_section(std::ostream& os, const AABody& body, const std::vector<std::string>& names)
{
    os << "exactness: " << to_string(body.exactness) << "\n";
    const bool empty = !is_feasible(body.open_part);
    os << "body:\n";
    if (empty)
        os << "  empty\n";
    else
        for (const auto& l : indented(canonical_lines(remove_redundant(body.open_part), names)))
            os << l << "\n";
    os << "closure:\n";
    if (empty) {
        os << "  empty\n";
        return;
    }
    const HPolytope closed = remove_redundant(body.closed_hull);
    for (const auto& l : indented(canonical_lines(closed, names)))
        os << l << "\n";
    os << "vertices:\n";
    for (const auto& v : vertices(closed).vertices)
        os << "  " << format_point(v) << "\n";
}

struct CheckResult {
    std::string text;
    bool unknown = false;
};

/// The full verdict report for one pair.
inline CheckResult check_report(const LogPair& p, long grid_denom)
{
    std::ostringstream os;
    os << lattice_dump(p);
    os << "dual_graph: " << (is_cycle(p) ? "cycle" : is_chain_union(p) ? "chains" : "other") << "\n";
    os << "anticanonical: " << (is_anticanonical(p) ? "yes" : "no") << "\n";
    const auto fam = log_adjoint(p);
    os << "log_adjoint: " << fam.constant.to_string();
    for (std::size_t i = 0; i < fam.increments.size(); ++i)
        os << " + b" << i + 1 << "*(" << fam.increments[i].to_string() << ")";
    os << "\n";

    std::optional<OuterBody> outer;
    AABody body;
    if (p.surface()->is_blow_up()) {
        outer = aa_outer_blowup(p, grid_denom);
        body = outer->body;
    } else {
        body = aa_halfspaces_rank_le2(p);
    }
    const auto logdp = is_log_dp(p);
    const auto strong = is_strongly_aldp(body);
    const auto aldp = is_aldp(body);
    const auto minimal = is_minimal(p);
    os << "verdicts:\n";
    os << "  log_del_pezzo: " << verdict(logdp) << "\n";
    os << "  strongly_aldp: " << verdict(strong) << "\n";
    os << "  aldp: " << verdict(aldp) << "\n";
    os << "  minimal: " << verdict(minimal) << "\n";
    body_section(os, body, aalp::detail::default_names(p.size(), "b"));

    if (outer) {
        os << "tracked_curves:\n";
        const auto f = log_adjoint(p);
        for (const auto& t : tracked_curves(p))
            os << "  " << t.id << " [" << to_string(t.kind) << (t.certified ? "" : ", uncertified")
               << "] = " << t.cls.to_string() << "  L.T = " << f.dot_with(t.cls).to_string() << "\n";
        const auto& q = outer->quadratic;
        os << "quadratic: L(b)^2 = " << to_string(q.constant);
        for (std::size_t i = 0; i < q.linear.size(); ++i)
            if (q.linear[i] != 0)
                os << " + (" << to_string(q.linear[i]) << ")*b" << i + 1;
        for (std::size_t i = 0; i < q.quadratic.size(); ++i)
            for (std::size_t j = i; j < q.quadratic.size(); ++j) {
                const Rational c = i == j ? q.quadratic[i][i] : 2 * q.quadratic[i][j];
                if (c != 0)
                    os << " + (" << to_string(c) << ")*b" << i + 1 << "*b" << j + 1;
            }
        os << "\n";
        os << "quadratic_signs (grid 1/" << q.grid_denominator << ", reported only): positive " << q.positive
           << ", zero " << q.zero << ", negative " << q.negative << "\n";
        for (const auto& s : q.nonpositive_samples)
            os << "  nonpositive at " << format_point(s) << "\n";
    }
    return {os.str(), !logdp || !strong || !aldp || !minimal};
}

struct Section {
    std::size_t index = 0; // zero-based
    Rational value;
};

struct AaResult {
    std::string text;
    AABody body; // after slicing
    std::vector<std::string> names;
    std::string title;
};

/// Section {b_i = v} of the body, in the remaining original coordinates.
inline AaResult aa_report(const LogPair& p, const std::optional<Section>& section, long grid_denom)
{
    AABody body = p.surface()->is_blow_up() ? aa_outer_blowup(p, grid_denom).body : aa_halfspaces_rank_le2(p);
    auto names = aalp::detail::default_names(p.size(), "b");
    std::string title = "AA";
    std::ostringstream os;
    if (section) {
        if (p.size() < 3)
            throw Error("--slice needs at least three boundary components");
        if (section->index >= p.size())
            throw Error("--slice: no coordinate b" + std::to_string(section->index + 1));
        const std::string head = names[section->index] + " = " + to_string(section->value);
        AABody cut;
        cut.exactness = body.exactness;
        cut.open_part = slice(body.open_part, section->index, section->value);
        cut.closed_hull = is_feasible(cut.open_part) ? closure(cut.open_part) : canonical_empty(cut.open_part.dim);
        body = std::move(cut);
        names.erase(names.begin() + static_cast<long>(section->index));
        title = "section " + head;
        os << "section: " << head << "\n";
    }
    body_section(os, body, names);
    return {os.str(), std::move(body), std::move(names), std::move(title)};
}

} // namespace aalp::cli
