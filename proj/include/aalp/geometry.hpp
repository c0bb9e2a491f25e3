#pragma once

// Picard lattices of rational surfaces built from P^2 and the Hirzebruch
// surfaces F_n by point blow-ups, divisor-class arithmetic, and the exact
// positivity predicates on the rank <= 2 models.
//
// Basis conventions: P^2 uses [H]; F_n uses [Z, F] with Z^2 = -n, Z.F = 1,
// F^2 = 0; every blow-up appends its exceptional class after the pulled-back
// parent basis, so indices stay stable along a chain of blow-ups.

#include "aalp/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace aalp {

class SurfaceMismatch : public Error {
public:
    SurfaceMismatch() : Error("divisor classes live on different surfaces") {}
};

enum class CenterKind { SmoothPoint, Node, Away };

inline const char* to_string(CenterKind k)
{
    switch (k) {
    case CenterKind::SmoothPoint: return "smooth";
    case CenterKind::Node: return "node";
    case CenterKind::Away: return "away";
    }
    return "?";
}

/// Where a blow-up happened, recorded in the surface's provenance.
struct CenterDescriptor {
    CenterKind kind = CenterKind::Away;
    std::string tag;                          // point tag, or the blown-up node id
    std::vector<std::string> on_components;   // boundary labels through the center
    bool base_level = true;                   // not on an earlier exceptional curve
    std::optional<std::string> fiber_tag;     // shared ruling curve through the center

    bool operator==(const CenterDescriptor&) const = default;
};

class SurfaceModel;
using Surface = std::shared_ptr<const SurfaceModel>;

struct ProjectivePlaneOrigin {
    bool operator==(const ProjectivePlaneOrigin&) const = default;
};

struct HirzebruchOrigin {
    int n = 0;
    bool operator==(const HirzebruchOrigin&) const = default;
};

struct BlowUpOrigin {
    Surface parent;
    CenterDescriptor center;
};

using Provenance = std::variant<ProjectivePlaneOrigin, HirzebruchOrigin, BlowUpOrigin>;

/// A rational surface seen through its Picard lattice. Immutable.
class SurfaceModel {
public:
    using IntMatrix = std::vector<std::vector<std::int64_t>>;
    using IntVector = std::vector<std::int64_t>;

    /// Validates symmetry, sizes and the Hodge-index signature (1, rank-1).
    static Surface create(std::vector<std::string> basis_labels, IntMatrix intersection,
                          IntVector canonical, Provenance provenance)
    {
        const std::size_t r = basis_labels.size();
        if (r == 0)
            throw Error("surface rank must be positive");
        if (intersection.size() != r || canonical.size() != r)
            throw Error("surface data has inconsistent sizes");
        for (std::size_t i = 0; i < r; ++i) {
            if (intersection[i].size() != r)
                throw Error("intersection matrix is not square");
            for (std::size_t j = 0; j < r; ++j)
                if (intersection[i][j] != intersection[j][i])
                    throw Error("intersection matrix is not symmetric");
        }
        auto model = std::shared_ptr<SurfaceModel>(new SurfaceModel());
        model->labels_ = std::move(basis_labels);
        model->matrix_ = std::move(intersection);
        model->canonical_ = std::move(canonical);
        model->provenance_ = std::move(provenance);
        const Inertia in = model->signature();
        if (in.positive != 1 || in.negative != static_cast<int>(r) - 1)
            throw Error("intersection form violates the Hodge index theorem");
        return model;
    }

    std::size_t rank() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const IntMatrix& intersection_matrix() const { return matrix_; }
    const IntVector& canonical_coeffs() const { return canonical_; }
    const Provenance& provenance() const { return provenance_; }

    bool is_projective_plane() const { return std::holds_alternative<ProjectivePlaneOrigin>(provenance_); }
    bool is_blow_up() const { return std::holds_alternative<BlowUpOrigin>(provenance_); }
    std::optional<int> hirzebruch_index() const
    {
        if (const auto* h = std::get_if<HirzebruchOrigin>(&provenance_))
            return h->n;
        return std::nullopt;
    }

    /// The rank <= 2 model at the bottom of the blow-up chain.
    const SurfaceModel& root() const
    {
        const SurfaceModel* s = this;
        while (const auto* b = std::get_if<BlowUpOrigin>(&s->provenance_))
            s = b->parent.get();
        return *s;
    }
    std::size_t base_rank() const { return root().rank(); }
    std::size_t blow_up_count() const { return rank() - base_rank(); }

    /// Blow-up centers from the root upwards; entry k created basis index base_rank()+k.
    std::vector<CenterDescriptor> centers() const
    {
        std::vector<CenterDescriptor> out;
        const SurfaceModel* s = this;
        while (const auto* b = std::get_if<BlowUpOrigin>(&s->provenance_)) {
            out.push_back(b->center);
            s = b->parent.get();
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

    Inertia signature() const
    {
        RationalMatrix m(rank(), RationalVector(rank()));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j)
                m[i][j] = Rational(matrix_[i][j]);
        return inertia(std::move(m));
    }

    std::string name() const
    {
        if (is_projective_plane())
            return "P2";
        if (auto n = hirzebruch_index())
            return "F" + std::to_string(*n);
        return "Bl" + std::to_string(blow_up_count()) + "(" + root().name() + ")";
    }

    friend bool operator==(const SurfaceModel& a, const SurfaceModel& b)
    {
        if (&a == &b)
            return true;
        if (a.labels_ != b.labels_ || a.matrix_ != b.matrix_ || a.canonical_ != b.canonical_)
            return false;
        if (a.provenance_.index() != b.provenance_.index())
            return false;
        if (const auto* pa = std::get_if<BlowUpOrigin>(&a.provenance_)) {
            const auto& pb = std::get<BlowUpOrigin>(b.provenance_);
            return pa->center == pb.center && *pa->parent == *pb.parent;
        }
        return a.hirzebruch_index() == b.hirzebruch_index();
    }

private:
    SurfaceModel() = default;

    std::vector<std::string> labels_;
    IntMatrix matrix_;
    IntVector canonical_;
    Provenance provenance_;
};

inline bool operator==(const BlowUpOrigin& a, const BlowUpOrigin& b)
{
    return a.center == b.center && *a.parent == *b.parent;
}

inline bool same_surface(const Surface& a, const Surface& b)
{
    return a == b || (a && b && *a == *b);
}

inline Surface projective_plane()
{
    return SurfaceModel::create({"H"}, {{1}}, {-3}, ProjectivePlaneOrigin{});
}

inline Surface hirzebruch(int n)
{
    if (n < 0)
        throw Error("Hirzebruch index must be nonnegative");
    return SurfaceModel::create({"Z", "F"}, {{-n, 1}, {1, 0}}, {-2, -(n + 2)}, HirzebruchOrigin{n});
}

/// Blows up one point: appends E with E^2 = -1; K_new = pi^*K + E.
inline Surface blow_up_surface(const Surface& parent, CenterDescriptor center, std::string exceptional_label)
{
    const auto& labels = parent->basis_labels();
    if (std::find(labels.begin(), labels.end(), exceptional_label) != labels.end())
        throw Error("basis label '" + exceptional_label + "' already in use");
    auto new_labels = labels;
    new_labels.push_back(std::move(exceptional_label));
    auto m = parent->intersection_matrix();
    for (auto& row : m)
        row.push_back(0);
    m.emplace_back(m.size() + 1, 0);
    m.back().back() = -1;
    auto k = parent->canonical_coeffs();
    k.push_back(1);
    return SurfaceModel::create(std::move(new_labels), std::move(m), std::move(k),
                                BlowUpOrigin{parent, std::move(center)});
}

/// An exact Q-divisor class in the owning surface's basis.
class DivisorClass {
public:
    DivisorClass(Surface surface, RationalVector coeffs) : surface_(std::move(surface)), coeffs_(std::move(coeffs))
    {
        if (!surface_)
            throw Error("divisor class without a surface");
        if (coeffs_.size() != surface_->rank())
            throw Error("divisor class length does not match the surface rank");
    }

    static DivisorClass zero(const Surface& s) { return {s, RationalVector(s->rank(), Rational(0))}; }

    static DivisorClass basis(const Surface& s, std::size_t i)
    {
        auto d = zero(s);
        d.coeffs_.at(i) = 1;
        return d;
    }

    static DivisorClass from_ints(const Surface& s, const std::vector<long long>& v)
    {
        RationalVector c;
        c.reserve(v.size());
        for (auto x : v)
            c.emplace_back(x);
        return {s, std::move(c)};
    }

    const Surface& surface() const { return surface_; }
    const RationalVector& coeffs() const { return coeffs_; }
    const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }

    bool is_zero() const { return aalp::is_zero(coeffs_); }
    bool is_integral() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return denominator(q) == 1; });
    }

    DivisorClass& operator+=(const DivisorClass& o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    DivisorClass& operator-=(const DivisorClass& o)
    {
        check(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    DivisorClass& operator*=(const Rational& s)
    {
        for (auto& c : coeffs_)
            c *= s;
        return *this;
    }

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
    friend DivisorClass operator-(DivisorClass a) { return a *= Rational(-1); }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) { return a *= s; }
    friend DivisorClass operator*(DivisorClass a, const Rational& s) { return a *= s; }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b)
    {
        return same_surface(a.surface_, b.surface_) && a.coeffs_ == b.coeffs_;
    }

    /// "2Z + 3F - E1" in the surface's basis labels; "0" for the zero class.
    std::string to_string() const
    {
        std::string out;
        const auto& labels = surface_->basis_labels();
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const Rational& c = coeffs_[i];
            if (c == 0)
                continue;
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            if (mag != 1) {
                const bool frac = denominator(mag) != 1;
                out += frac ? "(" + aalp::to_string(mag) + ")" : aalp::to_string(mag);
            }
            out += labels[i];
        }
        return out.empty() ? "0" : out;
    }

private:
    void check(const DivisorClass& o) const
    {
        if (!same_surface(surface_, o.surface_))
            throw SurfaceMismatch();
    }

    Surface surface_;
    RationalVector coeffs_;
};

inline Rational intersect(const DivisorClass& a, const DivisorClass& b)
{
    if (!same_surface(a.surface(), b.surface()))
        throw SurfaceMismatch();
    const auto& m = a.surface()->intersection_matrix();
    Rational s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != 0 && b[j] != 0)
                s += a[i] * Rational(m[i][j]) * b[j];
    }
    return s;
}

inline Rational self_intersection(const DivisorClass& a) { return intersect(a, a); }

inline DivisorClass canonical_class(const Surface& s)
{
    RationalVector c;
    for (auto k : s->canonical_coeffs())
        c.emplace_back(k);
    return {s, std::move(c)};
}

inline DivisorClass anticanonical_class(const Surface& s) { return -canonical_class(s); }

/// Pulls a class back along the blow-up chain from an ancestor to `target`.
inline DivisorClass pullback(const DivisorClass& d, const Surface& target)
{
    if (d.surface()->rank() > target->rank())
        throw Error("pullback target has smaller rank");
    const SurfaceModel* s = target.get();
    while (s->rank() > d.surface()->rank()) {
        const auto* b = std::get_if<BlowUpOrigin>(&s->provenance());
        if (!b)
            throw SurfaceMismatch();
        s = b->parent.get();
    }
    if (!(*s == *d.surface()))
        throw SurfaceMismatch();
    auto c = d.coeffs();
    c.resize(target->rank(), Rational(0));
    return {target, std::move(c)};
}

/// On F_n: aZ + bF is ample iff a > 0 and b > na.
template <typename T>
bool fn_is_ample(const T& a, const T& b, int n)
{
    return a > 0 && b > T(n) * a;
}

/// On F_n: aZ + bF is nef iff a >= 0 and b >= na.
template <typename T>
bool fn_is_nef(const T& a, const T& b, int n)
{
    return a >= 0 && b >= T(n) * a;
}

/// The necessary condition for aZ + bF to be an irreducible curve.
inline bool fn_irreducible_admissible(long long a, long long b, int n)
{
    if (a == 0 && b == 0)
        throw Error("the zero class is not a curve class");
    return (a == 1 && b == 0) || (b >= n * a && a >= 0 && b >= 0);
}

/// Sufficient condition on F_n: the class contains an irreducible curve.
/// Excludes the multiples bF (b >= 2) and, on F_0, aZ_0 (a >= 2), which pass
/// the necessary condition but are composed with a pencil.
inline bool fn_has_irreducible_member(long long a, long long b, int n)
{
    if ((a == 1 && b == 0) || (a == 0 && b == 1))
        return true;
    return a >= 1 && b >= 1 && b >= n * a;
}

/// Exact ampleness on P^2 and F_n; nullopt ("unsupported") on blow-ups.
inline std::optional<bool> is_ample(const Surface& s, const DivisorClass& d)
{
    if (!same_surface(s, d.surface()))
        throw SurfaceMismatch();
    if (s->is_projective_plane())
        return d[0] > 0;
    if (auto n = s->hirzebruch_index())
        return fn_is_ample<Rational>(d[0], d[1], *n);
    return std::nullopt;
}

inline std::optional<bool> is_nef(const Surface& s, const DivisorClass& d)
{
    if (!same_surface(s, d.surface()))
        throw SurfaceMismatch();
    if (s->is_projective_plane())
        return d[0] >= 0;
    if (auto n = s->hirzebruch_index())
        return fn_is_nef<Rational>(d[0], d[1], *n);
    return std::nullopt;
}

} // namespace aalp
