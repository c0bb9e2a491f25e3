#pragma once

// Exact rational polyhedra given by strict and weak linear inequalities.
//
// Feasibility is decided by Fourier-Motzkin elimination with strictness
// carried along (a combination is strict iff one of its inputs is). Every
// eliminated row remembers its nonnegative multipliers over the input rows,
// so an infeasible system comes with a Farkas-style certificate, and a
// feasible system yields an exact witness by back substitution.

#include "aalp/rational.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace aalp {

/// normal . x + offset > 0 (strict) or >= 0 (weak).
struct HalfSpace {
    RationalVector normal;
    Rational offset = 0;
    bool strict = false;

    Rational value(const RationalVector& x) const { return dot(normal, x) + offset; }
    bool satisfied_by(const RationalVector& x) const
    {
        const Rational v = value(x);
        return strict ? v > 0 : v >= 0;
    }
    /// The complementary halfspace (closure-wise): not(h).
    HalfSpace negated() const
    {
        HalfSpace h{normal, -offset, !strict};
        for (auto& c : h.normal)
            c = -c;
        return h;
    }
    HalfSpace weakened() const { return {normal, offset, false}; }
    HalfSpace strengthened() const { return {normal, offset, true}; }

    bool operator==(const HalfSpace&) const = default;
};

struct HPolytope {
    std::size_t dim = 0;
    std::vector<HalfSpace> halfspaces;

    HPolytope() = default;
    explicit HPolytope(std::size_t d, std::vector<HalfSpace> hs = {}) : dim(d), halfspaces(std::move(hs))
    {
        for (const auto& h : halfspaces)
            if (h.normal.size() != dim)
                throw Error("halfspace dimension does not match the polytope");
    }

    void add(HalfSpace h)
    {
        if (h.normal.size() != dim)
            throw Error("halfspace dimension does not match the polytope");
        halfspaces.push_back(std::move(h));
    }

    bool all_weak() const
    {
        return std::none_of(halfspaces.begin(), halfspaces.end(), [](const HalfSpace& h) { return h.strict; });
    }
};

struct VPolytope {
    std::size_t dim = 0;
    std::vector<RationalVector> vertices;
    std::vector<RationalVector> rays;
};

/// x -> matrix * x + translation; matrix has codomain rows and domain columns.
struct AffineMap {
    RationalMatrix matrix;
    RationalVector translation;

    std::size_t codomain_dim() const { return matrix.size(); }
    std::size_t domain_dim() const { return matrix.empty() ? 0 : matrix[0].size(); }

    RationalVector operator()(const RationalVector& x) const
    {
        if (x.size() != domain_dim())
            throw Error("affine map: dimension mismatch");
        RationalVector y = translation;
        for (std::size_t i = 0; i < matrix.size(); ++i)
            y[i] += dot(matrix[i], x);
        return y;
    }

    static AffineMap identity(std::size_t d)
    {
        AffineMap m{RationalMatrix(d, RationalVector(d, Rational(0))), RationalVector(d, Rational(0))};
        for (std::size_t i = 0; i < d; ++i)
            m.matrix[i][i] = 1;
        return m;
    }

    bool operator==(const AffineMap&) const = default;
};

/// (outer o inner)(x) = outer(inner(x)).
inline AffineMap compose(const AffineMap& outer, const AffineMap& inner)
{
    if (outer.domain_dim() != inner.codomain_dim())
        throw Error("compose: dimension mismatch");
    AffineMap out{RationalMatrix(outer.codomain_dim(), RationalVector(inner.domain_dim(), Rational(0))),
                  outer(inner.translation)};
    for (std::size_t i = 0; i < outer.codomain_dim(); ++i)
        for (std::size_t j = 0; j < inner.domain_dim(); ++j)
            for (std::size_t k = 0; k < inner.codomain_dim(); ++k)
                out.matrix[i][j] += outer.matrix[i][k] * inner.matrix[k][j];
    return out;
}

// ---------------------------------------------------------------------------
// Constructors

inline HalfSpace coordinate_halfspace(std::size_t dim, std::size_t i, int sign_, const Rational& offset, bool strict)
{
    HalfSpace h{RationalVector(dim, Rational(0)), offset, strict};
    h.normal.at(i) = sign_;
    return h;
}

/// 0 < x_i < 1 (strict) or 0 <= x_i <= 1 (weak).
inline HPolytope unit_cube(std::size_t dim, bool strict)
{
    HPolytope p(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        p.add(coordinate_halfspace(dim, i, 1, 0, strict));
        p.add(coordinate_halfspace(dim, i, -1, 1, strict));
    }
    return p;
}

/// The canonical empty polyhedron: the single constraint -1 >= 0.
inline HPolytope canonical_empty(std::size_t dim)
{
    return HPolytope(dim, {HalfSpace{RationalVector(dim, Rational(0)), -1, false}});
}

inline HPolytope intersection(const HPolytope& a, const HPolytope& b)
{
    if (a.dim != b.dim)
        throw Error("intersection: dimension mismatch");
    HPolytope out = a;
    out.halfspaces.insert(out.halfspaces.end(), b.halfspaces.begin(), b.halfspaces.end());
    return out;
}

inline bool contains(const HPolytope& p, const RationalVector& x)
{
    if (x.size() != p.dim)
        throw Error("contains: dimension mismatch");
    return std::all_of(p.halfspaces.begin(), p.halfspaces.end(),
                       [&](const HalfSpace& h) { return h.satisfied_by(x); });
}

inline HPolytope weakened(const HPolytope& p)
{
    HPolytope out(p.dim);
    for (const auto& h : p.halfspaces)
        out.add(h.weakened());
    return out;
}

inline HPolytope strengthened(const HPolytope& p)
{
    HPolytope out(p.dim);
    for (const auto& h : p.halfspaces)
        out.add(h.strengthened());
    return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin

/// Nonnegative multipliers over the input rows whose combination is a
/// contradictory constant: sum(l_i * h_i) has zero normal and an offset that
/// is negative, or zero with some strict h_i carrying positive weight.
struct InfeasibilityCertificate {
    RationalVector multipliers;
};

namespace detail {

struct FmRow {
    RationalVector a;
    Rational b;
    bool strict = false;
    RationalVector mult;
};

// Positive rescaling so that the largest |coefficient| (or |b| for
// constants) is 1; keeps numbers small and enables deduplication.
inline void normalise(FmRow& row)
{
    Rational scale = 0;
    for (const auto& c : row.a)
        if (abs(c) > scale)
            scale = abs(c);
    if (scale == 0)
        scale = abs(row.b);
    if (scale == 0 || scale == 1)
        return;
    for (auto& c : row.a)
        c /= scale;
    row.b /= scale;
    for (auto& m : row.mult)
        m /= scale;
}

// Keeps, for each normal direction, only the tightest row.
inline std::vector<FmRow> deduplicate(std::vector<FmRow> rows)
{
    std::map<std::vector<std::string>, std::size_t> index;
    std::vector<FmRow> out;
    for (auto& r : rows) {
        if (is_zero(r.a)) {
            // Constant rows that hold carry no information.
            if (r.b > 0 || (r.b == 0 && !r.strict))
                continue;
            out.push_back(std::move(r));
            continue;
        }
        std::vector<std::string> key;
        key.reserve(r.a.size());
        for (const auto& c : r.a)
            key.push_back(to_string(c));
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(std::move(key), out.size());
            out.push_back(std::move(r));
            continue;
        }
        FmRow& kept = out[it->second];
        if (r.b < kept.b || (r.b == kept.b && r.strict && !kept.strict))
            kept = std::move(r);
    }
    return out;
}

struct FmResult {
    bool feasible = false;
    std::optional<RationalVector> witness;
    std::optional<InfeasibilityCertificate> certificate;
};

inline FmResult fourier_motzkin(const HPolytope& p)
{
    const std::size_t n = p.dim;
    const std::size_t m = p.halfspaces.size();
    std::vector<FmRow> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& h = p.halfspaces[i];
        FmRow r{h.normal, h.offset, h.strict, RationalVector(m, Rational(0))};
        r.mult[i] = 1;
        normalise(r);
        rows.push_back(std::move(r));
    }
    rows = deduplicate(std::move(rows));

    std::vector<std::size_t> order;
    std::vector<std::vector<FmRow>> stage_rows; // rows mentioning the eliminated variable
    std::vector<bool> eliminated(n, false);

    auto contradiction = [&](const std::vector<FmRow>& rs) -> const FmRow* {
        for (const auto& r : rs)
            if (is_zero(r.a) && (r.b < 0 || (r.b == 0 && r.strict)))
                return &r;
        return nullptr;
    };

    for (std::size_t step = 0; step < n; ++step) {
        if (const FmRow* bad = contradiction(rows))
            return {false, std::nullopt, InfeasibilityCertificate{bad->mult}};
        // Greedy choice: the variable producing the fewest combinations.
        std::size_t best = n;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (eliminated[v])
                continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& r : rows) {
                if (r.a[v] > 0)
                    ++pos;
                else if (r.a[v] < 0)
                    ++neg;
            }
            const std::size_t cost = pos * neg;
            if (best == n || cost < best_cost) {
                best = v;
                best_cost = cost;
            }
        }
        const std::size_t v = best;
        eliminated[v] = true;
        std::vector<FmRow> lower, upper, rest;
        for (auto& r : rows) {
            if (r.a[v] > 0)
                lower.push_back(std::move(r));
            else if (r.a[v] < 0)
                upper.push_back(std::move(r));
            else
                rest.push_back(std::move(r));
        }
        for (const auto& lo : lower)
            for (const auto& up : upper) {
                const Rational wl = -up.a[v];
                const Rational wu = lo.a[v];
                FmRow c{RationalVector(n), wl * lo.b + wu * up.b, lo.strict || up.strict, RationalVector(m)};
                for (std::size_t k = 0; k < n; ++k)
                    c.a[k] = wl * lo.a[k] + wu * up.a[k];
                c.a[v] = 0;
                for (std::size_t k = 0; k < m; ++k)
                    c.mult[k] = wl * lo.mult[k] + wu * up.mult[k];
                normalise(c);
                rest.push_back(std::move(c));
            }
        std::vector<FmRow> involved = std::move(lower);
        involved.insert(involved.end(), std::make_move_iterator(upper.begin()), std::make_move_iterator(upper.end()));
        order.push_back(v);
        stage_rows.push_back(std::move(involved));
        rows = deduplicate(std::move(rest));
    }
    if (const FmRow* bad = contradiction(rows))
        return {false, std::nullopt, InfeasibilityCertificate{bad->mult}};

    // Back substitution in reverse elimination order.
    RationalVector x(n, Rational(0));
    for (std::size_t s = order.size(); s-- > 0;) {
        const std::size_t v = order[s];
        std::optional<Rational> lo, hi;
        bool lo_strict = false, hi_strict = false;
        for (const auto& r : stage_rows[s]) {
            Rational rest = r.b;
            for (std::size_t k = 0; k < n; ++k)
                if (k != v)
                    rest += r.a[k] * x[k];
            const Rational bound = -rest / r.a[v];
            if (r.a[v] > 0) {
                if (!lo || bound > *lo) {
                    lo = bound;
                    lo_strict = r.strict;
                } else if (bound == *lo) {
                    lo_strict = lo_strict || r.strict;
                }
            } else {
                if (!hi || bound < *hi) {
                    hi = bound;
                    hi_strict = r.strict;
                } else if (bound == *hi) {
                    hi_strict = hi_strict || r.strict;
                }
            }
        }
        if (lo && hi)
            x[v] = *lo == *hi ? *lo : (*lo + *hi) / 2;
        else if (lo)
            x[v] = lo_strict ? *lo + 1 : *lo;
        else if (hi)
            x[v] = hi_strict ? *hi - 1 : *hi;
        else
            x[v] = 0;
    }
    return {true, x, std::nullopt};
}

} // namespace detail

inline bool is_feasible(const HPolytope& p) { return detail::fourier_motzkin(p).feasible; }

/// An exact point of p, or nullopt when p is empty.
inline std::optional<RationalVector> find_point(const HPolytope& p)
{
    auto r = detail::fourier_motzkin(p);
    return r.witness;
}

inline std::optional<InfeasibilityCertificate> infeasibility_certificate(const HPolytope& p)
{
    return detail::fourier_motzkin(p).certificate;
}

/// Re-checks a certificate by direct substitution into the input rows.
inline bool verify_certificate(const HPolytope& p, const InfeasibilityCertificate& cert)
{
    if (cert.multipliers.size() != p.halfspaces.size())
        return false;
    RationalVector normal(p.dim, Rational(0));
    Rational offset = 0;
    bool strict = false;
    for (std::size_t i = 0; i < p.halfspaces.size(); ++i) {
        const Rational& l = cert.multipliers[i];
        if (l < 0)
            return false;
        if (l == 0)
            continue;
        const auto& h = p.halfspaces[i];
        for (std::size_t k = 0; k < p.dim; ++k)
            normal[k] += l * h.normal[k];
        offset += l * h.offset;
        strict = strict || h.strict;
    }
    return is_zero(normal) && (offset < 0 || (offset == 0 && strict));
}

/// Topological closure of a full-dimensional polyhedron (the weakened
/// system). The closure of the empty set is canonical_empty.
inline HPolytope closure(const HPolytope& p)
{
    if (!is_feasible(p))
        return canonical_empty(p.dim);
    if (!is_feasible(strengthened(p)))
        throw Error("closure: polyhedron is not full-dimensional");
    return weakened(p);
}

/// Every point of a lies in b.
inline bool is_subset(const HPolytope& a, const HPolytope& b)
{
    if (a.dim != b.dim)
        throw Error("is_subset: dimension mismatch");
    for (const auto& h : b.halfspaces) {
        HPolytope probe = a;
        probe.add(h.negated());
        if (is_feasible(probe))
            return false;
    }
    return true;
}

inline bool same_set(const HPolytope& a, const HPolytope& b) { return is_subset(a, b) && is_subset(b, a); }

/// Minimal H-representation of the same set, decided by one feasibility
/// test per constraint. Empty input yields canonical_empty.
inline HPolytope remove_redundant(const HPolytope& p)
{
    if (!is_feasible(p))
        return canonical_empty(p.dim);
    std::vector<HalfSpace> kept = p.halfspaces;
    for (std::size_t i = 0; i < kept.size();) {
        HPolytope probe(p.dim);
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i)
                probe.add(kept[j]);
        probe.add(kept[i].negated());
        if (!is_feasible(probe))
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return HPolytope(p.dim, std::move(kept));
}

/// Substitutes the affine map: {x : m(x) in p}.
inline HPolytope affine_preimage(const AffineMap& m, const HPolytope& p)
{
    if (m.codomain_dim() != p.dim || m.translation.size() != p.dim)
        throw Error("affine_preimage: dimension mismatch");
    const std::size_t d = m.domain_dim();
    HPolytope out(d);
    for (const auto& h : p.halfspaces) {
        HalfSpace g{RationalVector(d, Rational(0)), dot(h.normal, m.translation) + h.offset, h.strict};
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < p.dim; ++i)
                g.normal[j] += m.matrix[i][j] * h.normal[i];
        out.add(std::move(g));
    }
    return out;
}

/// The section {x_index = value}, as a polyhedron in the remaining coordinates.
inline HPolytope slice(const HPolytope& p, std::size_t index, const Rational& value)
{
    if (index >= p.dim || p.dim < 2)
        throw Error("slice: coordinate out of range");
    AffineMap embed{RationalMatrix(p.dim, RationalVector(p.dim - 1, Rational(0))), RationalVector(p.dim, Rational(0))};
    for (std::size_t i = 0, j = 0; i < p.dim; ++i) {
        if (i == index)
            embed.translation[i] = value;
        else
            embed.matrix[i][j++] = 1;
    }
    return affine_preimage(embed, p);
}

inline bool is_bounded(const HPolytope& p)
{
    if (!is_feasible(p))
        return true;
    HPolytope cone(p.dim);
    for (const auto& h : p.halfspaces)
        cone.add(HalfSpace{h.normal, 0, false});
    for (std::size_t k = 0; k < p.dim; ++k)
        for (int s : {1, -1}) {
            HPolytope probe = cone;
            probe.add(coordinate_halfspace(p.dim, k, s, -1, false));
            if (is_feasible(probe))
                return false;
        }
    return true;
}

/// Vertices of a closed bounded polyhedron by active-set enumeration: every
/// dim-subset of constraints with a unique feasible intersection point.
inline VPolytope vertices(const HPolytope& p)
{
    if (!p.all_weak())
        throw Error("vertices: strict constraints present; take the closure first");
    if (!is_bounded(p))
        throw Error("vertices: polyhedron is unbounded");
    VPolytope out{p.dim, {}, {}};
    if (!is_feasible(p))
        return out;
    const std::size_t d = p.dim;
    const std::size_t m = p.halfspaces.size();
    std::set<RationalVector> found;
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i)
        pick[i] = i;
    if (m < d)
        return out;
    while (true) {
        RationalMatrix a;
        RationalVector b;
        for (auto i : pick) {
            a.push_back(p.halfspaces[i].normal);
            b.push_back(-p.halfspaces[i].offset);
        }
        if (auto x = solve_square(a, b); x && contains(p, *x))
            found.insert(*x);
        // next combination
        std::size_t k = d;
        while (k > 0 && pick[k - 1] == m - d + (k - 1))
            --k;
        if (k == 0)
            break;
        ++pick[k - 1];
        for (std::size_t j = k; j < d; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    out.vertices.assign(found.begin(), found.end());
    return out;
}

/// Facet halfspaces of the convex hull of a full-dimensional vertex set.
inline HPolytope hull_halfspaces(const VPolytope& v)
{
    const std::size_t d = v.dim;
    const auto& pts = v.vertices;
    if (pts.size() < d + 1)
        throw Error("hull_halfspaces: not full-dimensional");
    {
        RationalMatrix diffs;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            RationalVector row(d);
            for (std::size_t k = 0; k < d; ++k)
                row[k] = pts[i][k] - pts[0][k];
            diffs.push_back(std::move(row));
        }
        if (matrix_rank(diffs) != d)
            throw Error("hull_halfspaces: not full-dimensional");
    }
    HPolytope out(d);
    std::set<std::vector<Integer>> seen;
    std::vector<std::size_t> pick(d);
    for (std::size_t i = 0; i < d; ++i)
        pick[i] = i;
    const std::size_t m = pts.size();
    while (true) {
        RationalMatrix diffs;
        for (std::size_t i = 1; i < d; ++i) {
            RationalVector row(d);
            for (std::size_t k = 0; k < d; ++k)
                row[k] = pts[pick[i]][k] - pts[pick[0]][k];
            diffs.push_back(std::move(row));
        }
        auto ns = nullspace(diffs, d);
        if (ns.size() == 1) {
            RationalVector normal = ns[0];
            Rational offset = -dot(normal, pts[pick[0]]);
            int side = 0;
            bool separating = true;
            for (const auto& q : pts) {
                const int s = sign(dot(normal, q) + offset);
                if (s == 0)
                    continue;
                if (side == 0)
                    side = s;
                else if (s != side) {
                    separating = false;
                    break;
                }
            }
            if (separating && side != 0) {
                if (side < 0) {
                    for (auto& c : normal)
                        c = -c;
                    offset = -offset;
                }
                RationalVector full = normal;
                full.push_back(offset);
                if (seen.insert(primitive_integer_vector(full)).second)
                    out.add(HalfSpace{normal, offset, false});
            }
        }
        std::size_t k = d;
        while (k > 0 && pick[k - 1] == m - d + (k - 1))
            --k;
        if (k == 0)
            break;
        ++pick[k - 1];
        for (std::size_t j = k; j < d; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text form: one constraint per line, integer coefficients with
// gcd 1, opposite weak pairs merged into "= 0" lines, lines sorted.

namespace detail {

inline std::string format_affine(const std::vector<Integer>& coeffs, const Integer& constant,
                                 const std::vector<std::string>& names)
{
    std::string out;
    auto term = [&](const Integer& c, const std::string& name) {
        if (c == 0)
            return;
        const bool neg = c < 0;
        const Integer mag = neg ? Integer(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (name.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += name;
        else
            out += to_string(mag) + "*" + name;
    };
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        term(coeffs[i], names.at(i));
    term(constant, "");
    return out.empty() ? "0" : out;
}

inline std::vector<std::string> default_names(std::size_t dim, std::string_view var)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dim; ++i)
        names.push_back(std::string(var) + std::to_string(i + 1));
    return names;
}

} // namespace detail

/// Same, with explicit variable names (one per coordinate).
inline std::vector<std::string> canonical_lines(const HPolytope& p, const std::vector<std::string>& names)
{
    if (names.size() != p.dim)
        throw Error("canonical_lines: one name per coordinate expected");
    struct Row {
        std::vector<Integer> v; // coefficients then constant
        bool strict;
    };
    std::vector<Row> rows;
    for (const auto& h : p.halfspaces) {
        RationalVector full = h.normal;
        full.push_back(h.offset);
        rows.push_back({primitive_integer_vector(full), h.strict});
    }
    std::set<std::string> lines;
    std::vector<bool> used(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (used[i])
            continue;
        if (!rows[i].strict) {
            std::vector<Integer> neg = rows[i].v;
            for (auto& z : neg)
                z = -z;
            for (std::size_t j = i + 1; j < rows.size(); ++j)
                if (!used[j] && !rows[j].strict && rows[j].v == neg) {
                    used[j] = true;
                    used[i] = true;
                    break;
                }
            if (used[i]) {
                std::vector<Integer> eq = rows[i].v;
                auto first = std::find_if(eq.begin(), eq.end(), [](const Integer& z) { return z != 0; });
                if (first != eq.end() && *first < 0)
                    for (auto& z : eq)
                        z = -z;
                const Integer c = eq.back();
                eq.pop_back();
                lines.insert(detail::format_affine(eq, c, names) + " = 0");
                continue;
            }
        }
        std::vector<Integer> v = rows[i].v;
        const Integer c = v.back();
        v.pop_back();
        lines.insert(detail::format_affine(v, c, names) + (rows[i].strict ? " > 0" : " >= 0"));
    }
    return {lines.begin(), lines.end()};
}

inline std::vector<std::string> canonical_lines(const HPolytope& p, std::string_view var = "b")
{
    return canonical_lines(p, detail::default_names(p.dim, var));
}

inline std::string canonical_form(const HPolytope& p, std::string_view var = "b")
{
    std::string out;
    for (const auto& l : canonical_lines(p, var))
        out += l + "\n";
    return out;
}

/// Parses lines produced by canonical_form (and the same grammar written by
/// hand). Blank lines and '#' comments are skipped.
inline HPolytope parse_canonical(std::string_view text, std::size_t dim, std::string_view var = "b")
{
    HPolytope out(dim);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::string s;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                s += ch;
        if (s.empty())
            continue;
        auto fail = [&](const std::string& why) {
            throw Error("canonical form line " + std::to_string(line_no) + ": " + why);
        };
        std::string op;
        std::size_t op_pos = std::string::npos;
        for (const char* candidate : {">=", "<=", ">", "<", "="}) {
            op_pos = s.find(candidate);
            if (op_pos != std::string::npos) {
                op = candidate;
                break;
            }
        }
        if (op.empty())
            fail("missing comparison");
        const std::string lhs = s.substr(0, op_pos);
        const std::string rhs = s.substr(op_pos + op.size());
        auto parse_side = [&](const std::string& e, RationalVector& coef, Rational& constant) {
            std::size_t i = 0;
            if (e.empty())
                fail("empty expression");
            while (i < e.size()) {
                int sgn = 1;
                if (e[i] == '+' || e[i] == '-') {
                    sgn = e[i] == '-' ? -1 : 1;
                    ++i;
                } else if (i != 0) {
                    fail("expected + or -");
                }
                std::size_t j = i;
                while (j < e.size() && (std::isdigit(static_cast<unsigned char>(e[j])) || e[j] == '/'))
                    ++j;
                Rational mag = 1;
                bool have_num = j > i;
                if (have_num) {
                    auto q = parse_rational(std::string_view(e).substr(i, j - i));
                    if (!q)
                        fail("bad number");
                    mag = *q;
                    i = j;
                }
                if (i < e.size() && e[i] == '*') {
                    if (!have_num)
                        fail("dangling *");
                    ++i;
                }
                if (e.compare(i, var.size(), var) == 0 && i + var.size() < e.size() &&
                    std::isdigit(static_cast<unsigned char>(e[i + var.size()]))) {
                    i += var.size();
                    std::size_t k = i;
                    while (k < e.size() && std::isdigit(static_cast<unsigned char>(e[k])))
                        ++k;
                    const std::size_t idx = std::stoul(e.substr(i, k - i));
                    if (idx == 0 || idx > dim)
                        fail("variable index out of range");
                    coef[idx - 1] += sgn * mag;
                    i = k;
                } else {
                    if (!have_num)
                        fail("expected a number or variable");
                    constant += sgn * mag;
                }
            }
        };
        RationalVector a(dim, Rational(0)), b(dim, Rational(0));
        Rational ca = 0, cb = 0;
        parse_side(lhs, a, ca);
        parse_side(rhs, b, cb);
        HalfSpace h{RationalVector(dim), ca - cb, false};
        for (std::size_t k = 0; k < dim; ++k)
            h.normal[k] = a[k] - b[k];
        if (op == ">" || op == ">=") {
            h.strict = op == ">";
            out.add(h);
        } else if (op == "<" || op == "<=") {
            h = h.negated();
            h.strict = op == "<";
            out.add(h);
        } else {
            out.add(h);
            out.add(h.negated().weakened());
        }
    }
    return out;
}

} // namespace aalp
