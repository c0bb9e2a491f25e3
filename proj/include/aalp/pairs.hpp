#pragma once

// Log pairs (S, C = C_1 + ... + C_r) with SNC boundary, their node
// bookkeeping, the log adjoint family -K - sum (1 - b_i) C_i, and the
// blow-up / contraction calculus.
//
// A pair remembers the base pair it was built from and the ordered list of
// blow-up steps, so contracting any exceptional curve is done by replaying
// the script without that step.

#include "aalp/geometry.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace aalp {

struct BoundaryComponent {
    std::string label;
    DivisorClass cls;
    std::optional<std::size_t> exceptional_index; // basis index when the component is an exceptional curve

    bool operator==(const BoundaryComponent&) const = default;
};

/// One transverse intersection point of two distinct boundary components.
struct NodeRecord {
    std::string id;
    std::size_t first = 0;
    std::size_t second = 0;
    std::optional<std::string> on_fiber_of;

    bool operator==(const NodeRecord&) const = default;
};

/// target: component label (smooth), node id (node), unused (away).
struct BlowUpStep {
    CenterKind kind = CenterKind::Away;
    std::string target;
    std::string tag;
    std::optional<std::string> fiber_tag;
    std::string label;

    bool operator==(const BlowUpStep&) const = default;
};

/// c + d . b, an affine function of the angle vector.
struct AffineForm {
    Rational constant = 0;
    RationalVector coeffs;

    Rational operator()(const RationalVector& beta) const { return constant + dot(coeffs, beta); }

    bool operator==(const AffineForm&) const = default;

    std::string to_string(std::string_view var = "b") const
    {
        std::string out;
        auto term = [&](const Rational& c, const std::string& name) {
            if (c == 0)
                return;
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            if (name.empty())
                out += aalp::to_string(mag);
            else if (mag == 1)
                out += name;
            else
                out += aalp::to_string(mag) + "*" + name;
        };
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            term(coeffs[i], std::string(var) + std::to_string(i + 1));
        term(constant, "");
        return out.empty() ? "0" : out;
    }
};

/// constant + sum b_i * increments[i].
struct LogAdjointFamily {
    DivisorClass constant;
    std::vector<DivisorClass> increments;

    DivisorClass operator()(const RationalVector& beta) const
    {
        if (beta.size() != increments.size())
            throw Error("log adjoint: expected " + std::to_string(increments.size()) + " angles");
        DivisorClass out = constant;
        for (std::size_t i = 0; i < beta.size(); ++i)
            if (beta[i] != 0)
                out += beta[i] * increments[i];
        return out;
    }

    /// The affine function b -> (family(b)) . t.
    AffineForm dot_with(const DivisorClass& t) const
    {
        AffineForm f{intersect(constant, t), {}};
        for (const auto& d : increments)
            f.coeffs.push_back(intersect(d, t));
        return f;
    }
};

class LogPair {
public:
    /// Validates the pair. With fill_nodes, missing nodes are generated so
    /// that every pair of components meets in exactly C_i.C_j nodes.
    static LogPair create(Surface surface, std::vector<BoundaryComponent> boundary, std::vector<NodeRecord> nodes = {},
                          bool fill_nodes = true)
    {
        LogPair p;
        p.surface_ = std::move(surface);
        p.boundary_ = std::move(boundary);
        p.nodes_ = std::move(nodes);
        p.validate(fill_nodes);
        return p;
    }

    const Surface& surface() const { return surface_; }
    const std::vector<BoundaryComponent>& boundary() const { return boundary_; }
    const std::vector<NodeRecord>& nodes() const { return nodes_; }
    std::size_t size() const { return boundary_.size(); }
    const DivisorClass& cls(std::size_t i) const { return boundary_.at(i).cls; }

    /// The pair before any blow-up, or nullptr for a base pair.
    const std::shared_ptr<const LogPair>& origin() const { return origin_; }
    const std::vector<BlowUpStep>& history() const { return history_; }

    std::optional<std::size_t> component_index(std::string_view label) const
    {
        for (std::size_t i = 0; i < boundary_.size(); ++i)
            if (boundary_[i].label == label)
                return i;
        return std::nullopt;
    }

    const NodeRecord* find_node(std::string_view id) const
    {
        for (const auto& n : nodes_)
            if (n.id == id)
                return &n;
        return nullptr;
    }

    DivisorClass total() const
    {
        DivisorClass c = DivisorClass::zero(surface_);
        for (const auto& b : boundary_)
            c += b.cls;
        return c;
    }

    friend bool operator==(const LogPair& a, const LogPair& b)
    {
        if (!same_surface(a.surface_, b.surface_) || a.boundary_ != b.boundary_)
            return false;
        auto key = [](const LogPair& p) {
            std::vector<std::tuple<std::string, std::size_t, std::size_t, std::optional<std::string>>> k;
            for (const auto& n : p.nodes_)
                k.emplace_back(n.id, std::min(n.first, n.second), std::max(n.first, n.second), n.on_fiber_of);
            std::sort(k.begin(), k.end());
            return k;
        };
        return key(a) == key(b);
    }

private:
    friend LogPair apply_step(const LogPair& p, const BlowUpStep& step);

    void validate(bool fill_nodes)
    {
        if (!surface_)
            throw Error("log pair without a surface");
        if (boundary_.empty())
            throw Error("log pair boundary is empty");
        const std::size_t r = boundary_.size();
        std::set<std::string> labels;
        for (const auto& b : boundary_) {
            if (b.label.empty())
                throw Error("boundary component with an empty label");
            if (!labels.insert(b.label).second)
                throw Error("duplicate boundary label '" + b.label + "'");
            if (!same_surface(b.cls.surface(), surface_))
                throw SurfaceMismatch();
            if (b.cls.is_zero())
                throw Error("boundary component '" + b.label + "' has the zero class");
            if (!b.cls.is_integral())
                throw Error("boundary component '" + b.label + "' has a non-integral class");
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j)
                if (boundary_[i].cls == boundary_[j].cls && self_intersection(boundary_[i].cls) < 0)
                    throw Error("components '" + boundary_[i].label + "' and '" + boundary_[j].label +
                                "' share a class of negative self-intersection");

        std::map<std::pair<std::size_t, std::size_t>, long> expected;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = i + 1; j < r; ++j) {
                const Rational m = intersect(boundary_[i].cls, boundary_[j].cls);
                if (m < 0)
                    throw Error("components '" + boundary_[i].label + "' and '" + boundary_[j].label +
                                "' have negative intersection");
                expected[{i, j}] = static_cast<long>(numerator(m));
            }

        std::set<std::string> ids;
        std::map<std::pair<std::size_t, std::size_t>, long> have;
        for (auto& n : nodes_) {
            if (n.first >= r || n.second >= r)
                throw Error("node '" + n.id + "' refers to a missing component");
            if (n.first == n.second)
                throw Error("node '" + n.id + "' joins a component to itself");
            if (n.id.empty() || !ids.insert(n.id).second)
                throw Error("duplicate or empty node id '" + n.id + "'");
            ++have[{std::min(n.first, n.second), std::max(n.first, n.second)}];
        }
        for (const auto& [key, count] : expected) {
            const long got = have[key];
            const auto& la = boundary_[key.first].label;
            const auto& lb = boundary_[key.second].label;
            if (got > count)
                throw Error("components '" + la + "' and '" + lb + "' meet in " + std::to_string(count) +
                            " points but " + std::to_string(got) + " nodes are declared");
            if (got < count && !fill_nodes)
                throw Error("components '" + la + "' and '" + lb + "' meet in " + std::to_string(count) +
                            " points but only " + std::to_string(got) + " nodes are recorded");
            for (long k = got; k < count; ++k) {
                std::string base = la + "." + lb;
                std::string id = count == 1 ? base : base + "." + std::to_string(k + 1);
                for (int bump = 2; ids.count(id); ++bump)
                    id = base + "." + std::to_string(k + 1) + "_" + std::to_string(bump);
                ids.insert(id);
                nodes_.push_back({id, key.first, key.second, std::nullopt});
            }
        }
    }

    Surface surface_;
    std::vector<BoundaryComponent> boundary_;
    std::vector<NodeRecord> nodes_;
    std::shared_ptr<const LogPair> origin_;
    std::vector<BlowUpStep> history_;
};

// ---------------------------------------------------------------------------
// Builders for the model surfaces

/// Pair on F_n with components C1, C2, ... of classes a Z + b F.
inline LogPair fn_pair(int n, const std::vector<std::pair<long long, long long>>& classes)
{
    auto s = hirzebruch(n);
    std::vector<BoundaryComponent> b;
    for (std::size_t i = 0; i < classes.size(); ++i)
        b.push_back({"C" + std::to_string(i + 1), DivisorClass::from_ints(s, {classes[i].first, classes[i].second}),
                     std::nullopt});
    return LogPair::create(s, std::move(b));
}

/// Pair on P^2 with components of the given degrees.
inline LogPair p2_pair(const std::vector<long long>& degrees)
{
    auto s = projective_plane();
    std::vector<BoundaryComponent> b;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        b.push_back({"C" + std::to_string(i + 1), DivisorClass::from_ints(s, {degrees[i]}), std::nullopt});
    return LogPair::create(s, std::move(b));
}

// ---------------------------------------------------------------------------
// Log adjoint and dual graph

inline LogAdjointFamily log_adjoint(const LogPair& p)
{
    if (p.size() == 0)
        throw Error("log adjoint of an empty boundary");
    LogAdjointFamily f{anticanonical_class(p.surface()) - p.total(), {}};
    for (const auto& b : p.boundary())
        f.increments.push_back(b.cls);
    return f;
}

struct DualGraph {
    std::size_t vertices = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // one per node
};

inline DualGraph dual_graph(const LogPair& p)
{
    DualGraph g{p.size(), {}};
    for (const auto& n : p.nodes())
        g.edges.emplace_back(std::min(n.first, n.second), std::max(n.first, n.second));
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

namespace detail {

inline std::vector<std::size_t> degrees(const DualGraph& g)
{
    std::vector<std::size_t> d(g.vertices, 0);
    for (auto [a, b] : g.edges) {
        ++d[a];
        ++d[b];
    }
    return d;
}

inline std::size_t components(const DualGraph& g)
{
    std::vector<std::size_t> parent(g.vertices);
    for (std::size_t i = 0; i < g.vertices; ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t count = g.vertices;
    for (auto [a, b] : g.edges) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --count;
        }
    }
    return count;
}

} // namespace detail

/// Disjoint union of chains: a forest with all degrees <= 2.
inline bool is_chain_union(const LogPair& p)
{
    const auto g = dual_graph(p);
    const auto d = detail::degrees(g);
    if (std::any_of(d.begin(), d.end(), [](std::size_t x) { return x > 2; }))
        return false;
    return g.edges.size() + detail::components(g) == g.vertices;
}

/// A single cycle through every component (two components joined twice count).
inline bool is_cycle(const LogPair& p)
{
    const auto g = dual_graph(p);
    if (g.vertices < 2)
        return false;
    const auto d = detail::degrees(g);
    return std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 2; }) && detail::components(g) == 1;
}

inline bool is_anticanonical(const LogPair& p) { return p.total() == anticanonical_class(p.surface()); }

// ---------------------------------------------------------------------------
// Blow-ups

inline LogPair apply_step(const LogPair& p, const BlowUpStep& step)
{
    const auto& s = p.surface();
    if (step.label.empty())
        throw Error("blow-up needs a name for the exceptional curve");
    if (p.component_index(step.label))
        throw Error("name '" + step.label + "' is already a boundary label");
    CenterDescriptor center;
    center.kind = step.kind;
    std::optional<std::size_t> on_component;
    const NodeRecord* node = nullptr;
    switch (step.kind) {
    case CenterKind::SmoothPoint:
    case CenterKind::Away: {
        if (step.tag.empty())
            throw Error("blow-up center needs a point tag");
        if (p.find_node(step.tag))
            throw Error("point '" + step.tag + "' is a node of the boundary, not a smooth point");
        for (const auto& c : s->centers())
            if (c.tag == step.tag)
                throw Error("point '" + step.tag + "' was already blown up");
        center.tag = step.tag;
        center.fiber_tag = step.fiber_tag;
        if (step.kind == CenterKind::SmoothPoint) {
            on_component = p.component_index(step.target);
            if (!on_component)
                throw Error("unknown boundary component '" + step.target + "'");
            center.on_components = {step.target};
            center.base_level = !p.boundary()[*on_component].exceptional_index;
        }
        break;
    }
    case CenterKind::Node: {
        node = p.find_node(step.target);
        if (!node)
            throw Error("unknown node '" + step.target + "'");
        center.tag = node->id;
        const auto& a = p.boundary()[node->first];
        const auto& b = p.boundary()[node->second];
        center.on_components = {a.label, b.label};
        center.base_level = !a.exceptional_index && !b.exceptional_index;
        center.fiber_tag = node->on_fiber_of;
        break;
    }
    }

    auto t = blow_up_surface(s, center, step.label);
    const std::size_t e_index = t->rank() - 1;
    const DivisorClass e = DivisorClass::basis(t, e_index);
    std::vector<BoundaryComponent> boundary;
    for (const auto& b : p.boundary()) {
        std::optional<std::size_t> ex = b.exceptional_index;
        boundary.push_back({b.label, pullback(b.cls, t), ex});
    }
    std::vector<NodeRecord> nodes = p.nodes();
    if (on_component)
        boundary[*on_component].cls -= e;
    if (node) {
        const NodeRecord blown = *node;
        boundary[blown.first].cls -= e;
        boundary[blown.second].cls -= e;
        boundary.push_back({step.label, e, e_index});
        const std::size_t ei = boundary.size() - 1;
        nodes.erase(std::remove_if(nodes.begin(), nodes.end(), [&](const NodeRecord& n) { return n.id == blown.id; }),
                    nodes.end());
        for (std::size_t k : {blown.first, blown.second}) {
            const std::string id = step.label + "-" + boundary[k].label;
            if (std::any_of(nodes.begin(), nodes.end(), [&](const NodeRecord& n) { return n.id == id; }))
                throw Error("node id '" + id + "' already in use");
            nodes.push_back({id, ei, k, std::nullopt});
        }
    }
    LogPair out = LogPair::create(t, std::move(boundary), std::move(nodes), false);
    out.origin_ = p.origin_ ? p.origin_ : std::make_shared<const LogPair>(p);
    out.history_ = p.history_;
    BlowUpStep recorded = step;
    if (step.kind == CenterKind::Node)
        recorded.tag = center.tag;
    out.history_.push_back(std::move(recorded));
    return out;
}

inline std::string default_exceptional_label(const LogPair& p)
{
    const auto& labels = p.surface()->basis_labels();
    for (std::size_t k = p.surface()->blow_up_count() + 1;; ++k) {
        std::string l = "E" + std::to_string(k);
        if (std::find(labels.begin(), labels.end(), l) == labels.end() && !p.component_index(l))
            return l;
    }
}

/// Blows up a smooth boundary point on `component` and takes the proper transform.
inline LogPair blow_up_smooth_point(const LogPair& p, std::size_t component, const std::string& point_tag,
                                    std::optional<std::string> fiber_tag = std::nullopt, std::string label = {})
{
    if (component >= p.size())
        throw Error("component index out of range");
    if (label.empty())
        label = default_exceptional_label(p);
    return apply_step(p, {CenterKind::SmoothPoint, p.boundary()[component].label, point_tag, std::move(fiber_tag),
                          std::move(label)});
}

/// Blows up a point off the boundary; the boundary is pulled back unchanged.
inline LogPair blow_up_away(const LogPair& p, const std::string& point_tag,
                            std::optional<std::string> fiber_tag = std::nullopt, std::string label = {})
{
    if (label.empty())
        label = default_exceptional_label(p);
    return apply_step(p, {CenterKind::Away, {}, point_tag, std::move(fiber_tag), std::move(label)});
}

/// Blows up a node and takes the total transform; E joins the boundary.
inline LogPair blow_up_node(const LogPair& p, const std::string& node_id, std::string label = {})
{
    if (label.empty())
        label = default_exceptional_label(p);
    return apply_step(p, {CenterKind::Node, node_id, {}, std::nullopt, std::move(label)});
}

inline LogPair replay(const LogPair& base, const std::vector<BlowUpStep>& steps)
{
    LogPair p = base;
    for (const auto& s : steps)
        p = apply_step(p, s);
    return p;
}

// ---------------------------------------------------------------------------
// Tracked curves

enum class CurveKind { Boundary, Exceptional, FiberTransform, RulingTransform, LineTransform, General };

inline const char* to_string(CurveKind k)
{
    switch (k) {
    case CurveKind::Boundary: return "boundary";
    case CurveKind::Exceptional: return "exceptional";
    case CurveKind::FiberTransform: return "fiber";
    case CurveKind::RulingTransform: return "ruling";
    case CurveKind::LineTransform: return "line";
    case CurveKind::General: return "general";
    }
    return "?";
}

/// An effective class known on the surface. `certified` marks classes that
/// are irreducible curves (for points in general position).
struct TrackedCurve {
    std::string id;
    CurveKind kind;
    DivisorClass cls;
    bool certified = true;
};

namespace detail {

/// The base-model class of a boundary component (exceptional coordinates dropped).
inline RationalVector base_class(const LogPair& p, std::size_t i)
{
    auto c = p.cls(i).coeffs();
    c.resize(p.surface()->base_rank());
    return c;
}

} // namespace detail

/// Boundary components, exceptional curves of the construction history, the
/// ruling curves (or P^2 lines) through base-level centers, and the general
/// curves of the base model.
inline std::vector<TrackedCurve> tracked_curves(const LogPair& p)
{
    const auto& s = p.surface();
    const std::size_t base = s->base_rank();
    const auto centers = s->centers();
    std::vector<TrackedCurve> out;
    for (const auto& b : p.boundary())
        out.push_back({"C:" + b.label, CurveKind::Boundary, b.cls, true});

    for (std::size_t k = 0; k < centers.size(); ++k) {
        const std::string& label = s->basis_labels()[base + k];
        if (p.component_index(label))
            continue;
        DivisorClass c = DivisorClass::basis(s, base + k);
        for (std::size_t j = k + 1; j < centers.size(); ++j) {
            const auto& on = centers[j].on_components;
            if (std::find(on.begin(), on.end(), label) != on.end())
                c -= DivisorClass::basis(s, base + j);
        }
        out.push_back({"E:" + label, CurveKind::Exceptional, c, true});
    }

    auto base_vec = [&](std::initializer_list<long long> v) {
        RationalVector c(s->rank(), Rational(0));
        std::size_t i = 0;
        for (auto x : v)
            c[i++] = x;
        return DivisorClass(s, std::move(c));
    };
    auto on_boundary_with_class = [&](const CenterDescriptor& c, const RationalVector& cls) {
        for (const auto& l : c.on_components) {
            auto i = p.component_index(l);
            if (i && detail::base_class(p, *i) == cls)
                return true;
        }
        return false;
    };
    auto has_component_with_base_class = [&](const RationalVector& cls) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (detail::base_class(p, i) == cls)
                return true;
        return false;
    };

    const SurfaceModel& root = s->root();
    if (root.is_projective_plane()) {
        out.push_back({"H", CurveKind::General, base_vec({1}), true});
        std::vector<std::size_t> level;
        for (std::size_t k = 0; k < centers.size(); ++k)
            if (centers[k].base_level)
                level.push_back(k);
        for (std::size_t k : level)
            out.push_back({"line@" + centers[k].tag, CurveKind::LineTransform,
                           base_vec({1}) - DivisorClass::basis(s, base + k), true});
        for (std::size_t x = 0; x < level.size(); ++x)
            for (std::size_t y = x + 1; y < level.size(); ++y)
                out.push_back({"line@" + centers[level[x]].tag + "," + centers[level[y]].tag, CurveKind::LineTransform,
                               base_vec({1}) - DivisorClass::basis(s, base + level[x]) -
                                   DivisorClass::basis(s, base + level[y]),
                               false});
        return out;
    }

    const int n = *root.hirzebruch_index();
    const RationalVector fiber_base{Rational(0), Rational(1)};
    const RationalVector section_base{Rational(1), Rational(0)};
    out.push_back({"F", CurveKind::General, base_vec({0, 1}), true});
    if (n == 0 || !has_component_with_base_class(section_base))
        out.push_back({"Z", CurveKind::General, base_vec({1, 0}), true});

    // Fibers through base-level centers, grouped by shared fiber tag.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (!centers[k].base_level)
            continue;
        const std::string key = centers[k].fiber_tag ? "fiber:" + *centers[k].fiber_tag : "fiber@" + centers[k].tag;
        groups[key].push_back(k);
    }
    std::vector<std::pair<std::size_t, std::string>> ordered;
    for (const auto& [key, members] : groups)
        ordered.emplace_back(members.front(), key);
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [first, key] : ordered) {
        const auto& members = groups[key];
        bool is_boundary = false;
        for (auto k : members)
            is_boundary = is_boundary || on_boundary_with_class(centers[k], fiber_base);
        if (is_boundary)
            continue;
        DivisorClass c = base_vec({0, 1});
        for (auto k : members)
            c -= DivisorClass::basis(s, base + k);
        out.push_back({key, CurveKind::FiberTransform, c, true});
    }
    if (n == 0)
        for (std::size_t k = 0; k < centers.size(); ++k) {
            if (!centers[k].base_level || on_boundary_with_class(centers[k], section_base))
                continue;
            out.push_back({"ruling@" + centers[k].tag, CurveKind::RulingTransform,
                           base_vec({1, 0}) - DivisorClass::basis(s, base + k), true});
        }
    return out;
}

/// Minimality: no (-1)-curve E outside C with E.C = 1. Exact on
/// rank <= 2; on blow-ups a witness among the tracked curves gives false,
/// otherwise the answer is unknown.
inline std::optional<bool> is_minimal(const LogPair& p)
{
    const auto& s = p.surface();
    const DivisorClass c = p.total();
    if (s->is_projective_plane())
        return true;
    if (auto n = s->hirzebruch_index()) {
        if (*n != 1)
            return true;
        const DivisorClass z = DivisorClass::from_ints(s, {1, 0});
        for (const auto& b : p.boundary())
            if (b.cls == z)
                return true;
        return intersect(z, c) != 1;
    }
    const DivisorClass k = canonical_class(s);
    for (const auto& t : tracked_curves(p)) {
        if (t.kind == CurveKind::Boundary || !t.certified)
            continue;
        if (self_intersection(t.cls) == -1 && intersect(k, t.cls) == -1 && intersect(t.cls, c) == 1)
            return false;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Contraction

struct Contraction {
    LogPair pair;
    AffineForm residual;                        // L(b) = pi^* L'(b') - residual(b) E
    std::optional<std::size_t> removed_component;
};

/// Contracts an exceptional curve whose class is a basis vector e_k: either a
/// boundary component meeting exactly two others once each, or a curve off
/// the boundary that misses it or meets it transversally once.
inline Contraction contract(const LogPair& p, const std::variant<std::size_t, std::string>& which)
{
    const auto& s = p.surface();
    std::optional<DivisorClass> e;
    std::optional<std::size_t> component;
    if (const auto* idx = std::get_if<std::size_t>(&which)) {
        if (*idx >= p.size())
            throw Error("component index out of range");
        component = *idx;
        e = p.cls(*idx);
    } else {
        const auto& id = std::get<std::string>(which);
        for (const auto& t : tracked_curves(p))
            if (t.id == id)
                e = t.cls;
        if (!e)
            throw Error("unknown tracked curve '" + id + "'");
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p.cls(i) == *e)
                component = i;
    }
    if (self_intersection(*e) != -1)
        throw Error("not a (-1)-curve: self-intersection is " + to_string(self_intersection(*e)));
    std::optional<std::size_t> k;
    for (std::size_t i = s->base_rank(); i < s->rank(); ++i)
        if (*e == DivisorClass::basis(s, i))
            k = i;
    if (!k)
        throw Error("incidence pattern unsupported: only exceptional curves of the blow-up history can be contracted");

    std::vector<std::size_t> touching;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (component && i == *component)
            continue;
        const Rational m = intersect(*e, p.cls(i));
        if (m == 0)
            continue;
        if (m != 1)
            throw Error("incidence pattern unsupported: curve meets '" + p.boundary()[i].label + "' with multiplicity " +
                        to_string(m));
        touching.push_back(i);
    }
    if (component ? touching.size() != 2 : touching.size() > 1)
        throw Error("incidence pattern unsupported");

    const std::size_t step = *k - s->base_rank();
    auto steps = p.history();
    steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(step));
    LogPair contracted = replay(*p.origin(), steps);

    const auto lx = log_adjoint(p);
    const auto ly = log_adjoint(contracted);
    AffineForm residual = lx.dot_with(*e);

    // The pushforward drops coordinate k; it must reproduce the contracted family.
    auto push = [&](const DivisorClass& d) {
        auto c = d.coeffs();
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(*k));
        return DivisorClass(contracted.surface(), std::move(c));
    };
    if (!(push(lx.constant) == ly.constant))
        throw Error("pushforward identity failed for the constant class");
    for (std::size_t i = 0, j = 0; i < p.size(); ++i) {
        if (component && i == *component) {
            if (!push(lx.increments[i]).is_zero())
                throw Error("pushforward of the contracted component is not zero");
            continue;
        }
        if (!(push(lx.increments[i]) == ly.increments[j++]))
            throw Error("pushforward identity failed for component '" + p.boundary()[i].label + "'");
    }
    return {std::move(contracted), std::move(residual), component};
}

} // namespace aalp
