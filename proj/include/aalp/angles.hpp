#pragma once

// Bodies of ample angles AA(X, D) = { b in (0,1)^r : L(b) ample }, where L is
// the log adjoint family. Exact on P^2 and F_n (and for caller-supplied nef
// cones); an outer approximation from tracked curves on blow-ups.

#include "aalp/pairs.hpp"
#include "aalp/polytope.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace aalp {

enum class Exactness { Exact, OuterApproximation };

inline const char* to_string(Exactness e) { return e == Exactness::Exact ? "Exact" : "OuterApproximation"; }

struct AABody {
    std::vector<HalfSpace> constraints; // positivity constraints, cube excluded
    HPolytope open_part;                // constraints plus the open cube
    HPolytope closed_hull;              // closure of open_part, canonical_empty when empty
    Exactness exactness = Exactness::Exact;

    std::size_t dim() const { return open_part.dim; }
    bool empty() const { return !is_feasible(open_part); }
};

namespace detail {

inline HalfSpace positive(const AffineForm& f) { return {f.coeffs, f.constant, true}; }

// Drops constant constraints that always hold.
inline void add_constraint(std::vector<HalfSpace>& out, HalfSpace h)
{
    if (is_zero(h.normal) && (h.offset > 0 || (h.offset == 0 && !h.strict)))
        return;
    out.push_back(std::move(h));
}

inline AABody assemble(std::size_t r, std::vector<HalfSpace> constraints, Exactness e)
{
    AABody body;
    body.constraints = std::move(constraints);
    body.open_part = intersection(HPolytope(r, body.constraints), unit_cube(r, true));
    body.closed_hull = is_feasible(body.open_part) ? closure(body.open_part) : canonical_empty(r);
    body.exactness = e;
    return body;
}

/// The coordinates of a family value as affine forms: coordinate j of L(b).
inline std::vector<AffineForm> coordinate_forms(const LogAdjointFamily& f)
{
    const std::size_t rank = f.constant.coeffs().size();
    std::vector<AffineForm> out(rank);
    for (std::size_t j = 0; j < rank; ++j) {
        out[j].constant = f.constant[j];
        for (const auto& d : f.increments)
            out[j].coeffs.push_back(d[j]);
    }
    return out;
}

inline AffineForm operator-(AffineForm a, const AffineForm& b)
{
    a.constant -= b.constant;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        a.coeffs[i] -= b.coeffs[i];
    return a;
}

inline AffineForm scaled(AffineForm a, const Rational& s)
{
    a.constant *= s;
    for (auto& c : a.coeffs)
        c *= s;
    return a;
}

} // namespace detail

/// P^2: deg L(b) > 0. F_n: a(b) > 0 and b(b) - n a(b) > 0. Both within (0,1)^r.
inline AABody aa_halfspaces_rank_le2(const LogPair& p)
{
    const auto& s = p.surface();
    if (s->is_blow_up())
        throw Error("exact body of ample angles needs P2 or F_n");
    const auto coords = detail::coordinate_forms(log_adjoint(p));
    std::vector<HalfSpace> cs;
    if (s->is_projective_plane()) {
        detail::add_constraint(cs, detail::positive(coords[0]));
    } else {
        const int n = *s->hirzebruch_index();
        detail::add_constraint(cs, detail::positive(coords[0]));
        detail::add_constraint(cs, detail::positive(detail::operator-(coords[1], detail::scaled(coords[0], n))));
    }
    return detail::assemble(p.size(), std::move(cs), Exactness::Exact);
}

/// Built-in nef cones in basis coordinates: {a >= 0} on P^2, {a >= 0, b - na >= 0} on F_n.
inline std::optional<HPolytope> builtin_nef_cone(const Surface& s)
{
    if (s->is_projective_plane())
        return HPolytope(1, {HalfSpace{{Rational(1)}, 0, false}});
    if (auto n = s->hirzebruch_index())
        return HPolytope(2, {HalfSpace{{Rational(1), Rational(0)}, 0, false},
                             HalfSpace{{Rational(-*n), Rational(1)}, 0, false}});
    return std::nullopt;
}

/// Phi: b -> coordinates of L(b).
inline AffineMap log_adjoint_map(const LogPair& p)
{
    const auto f = log_adjoint(p);
    const std::size_t rank = p.surface()->rank();
    AffineMap m{RationalMatrix(rank, RationalVector(p.size(), Rational(0))), f.constant.coeffs()};
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < rank; ++j)
            m.matrix[j][i] = f.increments[i][j];
    return m;
}

/// closure(AA) = [0,1]^r with Phi^{-1}(Nef); the open part uses the interior of the cone.
inline AABody aa_via_nef(const LogPair& p, const HPolytope& nef, Exactness exactness = Exactness::Exact)
{
    if (nef.dim != p.surface()->rank())
        throw Error("nef cone dimension does not match the Picard rank");
    const std::size_t r = p.size();
    const HPolytope pre = affine_preimage(log_adjoint_map(p), nef);
    AABody body;
    for (const auto& h : pre.halfspaces)
        detail::add_constraint(body.constraints, h.strengthened());
    body.open_part = intersection(HPolytope(r, body.constraints), unit_cube(r, true));
    body.closed_hull = is_feasible(body.open_part) ? intersection(pre, unit_cube(r, false)) : canonical_empty(r);
    body.exactness = exactness;
    return body;
}

inline AABody aa_via_nef(const LogPair& p)
{
    auto nef = builtin_nef_cone(p.surface());
    if (!nef)
        throw Error("no built-in nef cone for " + p.surface()->name());
    return aa_via_nef(p, *nef);
}

/// q(b) = L(b)^2 = constant + linear . b + b^T quadratic b.
struct QuadraticReport {
    RationalMatrix quadratic;
    RationalVector linear;
    Rational constant = 0;
    long grid_denominator = 16;
    long positive = 0;
    long zero = 0;
    long negative = 0;
    std::vector<RationalVector> nonpositive_samples; // up to a few, in grid order

    Rational operator()(const RationalVector& b) const
    {
        Rational v = constant + dot(linear, b);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                v += quadratic[i][j] * b[i] * b[j];
        return v;
    }
};

/// AA_GRID_DENOM, default 16. Throws on a malformed value.
inline long grid_denominator_from_env()
{
    const char* v = std::getenv("AA_GRID_DENOM");
    if (!v || !*v)
        return 16;
    auto q = parse_rational(v);
    if (!q || denominator(*q) != 1 || *q < 2 || *q > 4096)
        throw Error("AA_GRID_DENOM must be an integer between 2 and 4096");
    return static_cast<long>(numerator(*q));
}

/// Calls fn on every point of the open grid {k/N : 0 < k < N}^r, in lexicographic order.
template <typename Fn>
void for_each_grid_point(std::size_t r, long denom, Fn&& fn)
{
    std::vector<long> k(r, 1);
    RationalVector b(r);
    if (denom < 2)
        return;
    while (true) {
        for (std::size_t i = 0; i < r; ++i)
            b[i] = Rational(Integer(k[i]), Integer(denom));
        fn(b);
        std::size_t i = r;
        while (i > 0 && k[i - 1] == denom - 1) {
            k[i - 1] = 1;
            --i;
        }
        if (i == 0)
            return;
        ++k[i - 1];
    }
}

struct OuterBody {
    AABody body;
    QuadraticReport quadratic;
};

/// Linear necessary conditions L(b).T > 0 over every tracked curve T, plus
/// the open cube. The self-intersection q(b) is reported with a sign table
/// over the grid points of the linear body, but never imposed.
inline OuterBody aa_outer_blowup(const LogPair& p, long grid_denom = grid_denominator_from_env())
{
    if (!p.surface()->is_blow_up())
        throw Error("outer approximation is for blown-up surfaces");
    const auto f = log_adjoint(p);
    std::vector<HalfSpace> cs;
    for (const auto& t : tracked_curves(p))
        detail::add_constraint(cs, detail::positive(f.dot_with(t.cls)));
    OuterBody out{detail::assemble(p.size(), std::move(cs), Exactness::OuterApproximation), {}};

    auto& q = out.quadratic;
    const std::size_t r = p.size();
    q.quadratic.assign(r, RationalVector(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            q.quadratic[i][j] = intersect(f.increments[i], f.increments[j]);
    for (std::size_t i = 0; i < r; ++i)
        q.linear.push_back(2 * intersect(f.constant, f.increments[i]));
    q.constant = self_intersection(f.constant);
    q.grid_denominator = grid_denom;
    for_each_grid_point(r, grid_denom, [&](const RationalVector& b) {
        if (!contains(out.body.open_part, b))
            return;
        const int sg = sign(q(b));
        if (sg > 0) {
            ++q.positive;
            return;
        }
        (sg == 0 ? q.zero : q.negative) += 1;
        if (q.nonpositive_samples.size() < 4)
            q.nonpositive_samples.push_back(b);
    });
    return out;
}

/// The exact body on rank <= 2, the outer body on blow-ups.
inline AABody aa_body(const LogPair& p)
{
    if (p.surface()->is_blow_up())
        return aa_outer_blowup(p).body;
    return aa_halfspaces_rank_le2(p);
}

// ---------------------------------------------------------------------------
// Verdicts. On outer bodies a negative answer is certain and a positive one
// is reported as unknown (nullopt).

inline std::optional<bool> is_aldp(const AABody& body)
{
    if (!contains(weakened(body.open_part), RationalVector(body.dim(), Rational(0))))
        return false;
    const bool v = is_feasible(body.open_part);
    if (body.exactness == Exactness::OuterApproximation && v)
        return std::nullopt;
    return v;
}

/// Every positivity constraint c + d.b > 0 has c > 0, or c = 0 with d >= 0, d != 0.
inline std::optional<bool> is_strongly_aldp(const AABody& body)
{
    for (const auto& h : body.constraints) {
        if (h.offset > 0)
            continue;
        const bool ok = h.offset == 0 && !is_zero(h.normal) &&
                        std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& c) { return c >= 0; });
        if (!ok)
            return false;
    }
    if (body.exactness == Exactness::OuterApproximation)
        return std::nullopt;
    return true;
}

inline std::optional<bool> is_aldp(const LogPair& p) { return is_aldp(aa_body(p)); }
inline std::optional<bool> is_strongly_aldp(const LogPair& p) { return is_strongly_aldp(aa_body(p)); }

/// -K - C ample. On blow-ups, false when a tracked curve or the
/// self-intersection rules it out, unknown otherwise.
inline std::optional<bool> is_log_dp(const LogPair& p)
{
    const auto l0 = log_adjoint(p).constant;
    if (auto v = is_ample(p.surface(), l0))
        return v;
    if (self_intersection(l0) <= 0)
        return false;
    for (const auto& t : tracked_curves(p))
        if (intersect(l0, t.cls) <= 0)
            return false;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reparametrization around an interior angle vector gamma.

inline Rational eta(const RationalVector& gamma)
{
    if (gamma.empty())
        throw Error("eta of an empty angle vector");
    Rational best = 0;
    for (const auto& g : gamma) {
        if (g <= 0 || g >= 1)
            throw Error("eta needs every angle strictly between 0 and 1");
        best = std::max(best, (1 - g) / g);
        best = std::max(best, g / (1 - g));
    }
    return best;
}

struct ReparamData {
    RationalVector gamma;
    Rational eta;
    DivisorClass A;
    std::vector<AffineForm> F_family; // coefficient of D_i in F(b)
    AffineMap f;
    AffineMap f_inv;
};

/// Builds eta, A = ((1+eta)/eta) L(gamma), F(b), f and f^{-1}, and verifies
/// L(b) = eta (K + A + F(b)) coefficientwise, A ample, the bounds
/// 0 <= F_i <= 1 at the cube vertices, and f o f^{-1} = f^{-1} o f = id.
inline ReparamData reparam(const LogPair& p, const RationalVector& gamma)
{
    const std::size_t r = p.size();
    if (gamma.size() != r)
        throw Error("reparam: expected " + std::to_string(r) + " angles");
    const AABody body = aa_body(p);
    if (body.exactness != Exactness::Exact)
        throw Error("reparam needs an exact body of ample angles");
    if (!contains(body.open_part, gamma))
        throw Error("reparam: gamma is not in the body of ample angles");

    const auto fam = log_adjoint(p);
    const Rational e = eta(gamma);
    const Rational scale = (1 + e) / e;
    ReparamData d{gamma, e, scale * fam(gamma), {}, AffineMap::identity(r), AffineMap::identity(r)};
    for (std::size_t i = 0; i < r; ++i) {
        AffineForm fi{1 - scale * gamma[i], RationalVector(r, Rational(0))};
        fi.coeffs[i] = 1 / e;
        d.F_family.push_back(std::move(fi));
        d.f.matrix[i][i] = 1 / e;
        d.f.translation[i] = 1 - scale * gamma[i];
        d.f_inv.matrix[i][i] = e;
        d.f_inv.translation[i] = -e + (1 + e) * gamma[i];
    }

    // eta (K + A + F(b)) as a family: constant and per-angle increments.
    const DivisorClass k = canonical_class(p.surface());
    DivisorClass constant = k + d.A;
    for (std::size_t i = 0; i < r; ++i)
        constant += d.F_family[i].constant * p.cls(i);
    constant *= e;
    if (!(constant == fam.constant))
        throw Error("reparam: constant classes differ");
    for (std::size_t i = 0; i < r; ++i) {
        DivisorClass inc = DivisorClass::zero(p.surface());
        for (std::size_t j = 0; j < r; ++j)
            inc += d.F_family[j].coeffs[i] * p.cls(j);
        if (!(e * inc == fam.increments[i]))
            throw Error("reparam: increment classes differ");
    }
    auto ample = is_ample(p.surface(), d.A);
    if (!ample || !*ample)
        throw Error("reparam: A is not ample");
    for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
        RationalVector v(r);
        for (std::size_t i = 0; i < r; ++i)
            v[i] = (mask >> i) & 1 ? 1 : 0;
        for (const auto& fi : d.F_family) {
            const Rational x = fi(v);
            if (x < 0 || x > 1)
                throw Error("reparam: F coefficient outside [0,1] at a cube vertex");
        }
    }
    const auto id = AffineMap::identity(r);
    if (!(compose(d.f, d.f_inv) == id) || !(compose(d.f_inv, d.f) == id))
        throw Error("reparam: f and f^{-1} are not inverse");
    return d;
}

// ---------------------------------------------------------------------------
// Serialization

/// Minimal H-representation in canonical text form.
inline std::string canonical_body(const HPolytope& p) { return canonical_form(remove_redundant(p)); }

inline std::string serialize(const AABody& body)
{
    return std::string("exactness: ") + to_string(body.exactness) + "\n" + canonical_body(body.open_part);
}

} // namespace aalp
