#pragma once

// Enumeration of log del Pezzo pairs and rank <= 2 asymptotically log del
// Pezzo pairs. Candidates are generated from class data, filtered purely by
// the positivity predicates, and then matched against the built-in label
// tables; a survivor without a label is an internal inconsistency.

#include "aalp/angles.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace aalp {

/// (a, b) for a Z + b F on F_n; (d, 0) for degree d on P^2.
struct ClassCoord {
    long long a = 0;
    long long b = 0;

    auto operator<=>(const ClassCoord&) const = default;
};

struct CandidatePair {
    bool plane = false;
    int n = 0; // ignored on P^2
    std::vector<ClassCoord> classes;

    bool operator==(const CandidatePair&) const = default;

    std::string surface_name() const { return plane ? "P2" : "F" + std::to_string(n); }

    std::string classes_string() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < classes.size(); ++i) {
            if (i)
                out += ",";
            if (plane)
                out += std::to_string(classes[i].a);
            else
                out += "(" + std::to_string(classes[i].a) + "," + std::to_string(classes[i].b) + ")";
        }
        return out + "]";
    }

    LogPair to_pair() const
    {
        if (plane) {
            std::vector<long long> d;
            for (const auto& c : classes)
                d.push_back(c.a);
            return p2_pair(d);
        }
        std::vector<std::pair<long long, long long>> v;
        for (const auto& c : classes)
            v.emplace_back(c.a, c.b);
        return fn_pair(n, v);
    }
};

struct FamilyLabel {
    std::string label;     // table form, e.g. "I.2.n"
    std::optional<int> n;  // instantiation

    /// "I.2.3" for "I.2.n" at n = 3; labels without ".n" are unchanged.
    std::string display() const
    {
        if (n && label.size() > 2 && label.compare(label.size() - 2, 2, ".n") == 0)
            return label.substr(0, label.size() - 1) + std::to_string(*n);
        return label;
    }

    bool operator==(const FamilyLabel&) const = default;
};

enum class Strength { LogDP, StronglyALdP, ALdPNotStrong };

inline const char* to_string(Strength s)
{
    switch (s) {
    case Strength::LogDP: return "LogDP";
    case Strength::StronglyALdP: return "StronglyALdP";
    case Strength::ALdPNotStrong: return "ALdPNotStrong";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Label tables

/// Class a Z + (b0 + bn * n) F, or degree a on P^2.
struct ClassTemplate {
    long long a;
    long long b0;
    long long bn;
};

struct FamilyTemplate {
    std::string label;
    bool plane;
    int n_min;               // family exists for n >= n_min
    std::optional<int> only; // or only at this n
    std::vector<ClassTemplate> classes;

    bool exists_at(int n) const { return only ? n == *only : n >= n_min; }

    std::vector<ClassCoord> instantiate(int n) const
    {
        std::vector<ClassCoord> out;
        for (const auto& c : classes)
            out.push_back({c.a, c.b0 + c.bn * n});
        return out;
    }
};

/// Log del Pezzo pairs, families Maeda.i to Maeda.vii.
inline const std::vector<FamilyTemplate>& maeda_table()
{
    static const std::vector<FamilyTemplate> t = {
        {"Maeda.i", true, 0, std::nullopt, {{1, 0, 0}}},
        {"Maeda.ii", true, 0, std::nullopt, {{1, 0, 0}, {1, 0, 0}}},
        {"Maeda.iii", true, 0, std::nullopt, {{2, 0, 0}}},
        {"Maeda.iv", false, 0, std::nullopt, {{1, 0, 0}}},
        {"Maeda.v", false, 0, std::nullopt, {{1, 0, 0}, {0, 1, 0}}},
        {"Maeda.vi", false, 1, 1, {{1, 1, 0}}},
        {"Maeda.vii", false, 0, 0, {{1, 1, 0}}},
    };
    return t;
}

/// Asymptotically log del Pezzo pairs of Picard rank <= 2, in label order.
inline const std::vector<FamilyTemplate>& rank2_table()
{
    static const std::vector<FamilyTemplate> t = {
        {"I.1A", true, 0, std::nullopt, {{3, 0, 0}}},
        {"I.1B", true, 0, std::nullopt, {{2, 0, 0}}},
        {"I.1C", true, 0, std::nullopt, {{1, 0, 0}}},
        {"I.2.n", false, 0, std::nullopt, {{1, 0, 0}}},
        {"I.3A", false, 1, 1, {{2, 2, 0}}},
        {"I.3B", false, 1, 1, {{1, 1, 0}}},
        {"I.4A", false, 0, 0, {{2, 2, 0}}},
        {"I.4B", false, 0, 0, {{2, 1, 0}}},
        {"I.4C", false, 0, 0, {{1, 1, 0}}},
        {"I.5.1", false, 1, 1, {{2, 3, 0}}},
        {"I.6B.1", false, 1, 1, {{1, 2, 0}}},
        {"I.6C.1", false, 1, 1, {{0, 1, 0}}},
        {"II.1A", true, 0, std::nullopt, {{2, 0, 0}, {1, 0, 0}}},
        {"II.1B", true, 0, std::nullopt, {{1, 0, 0}, {1, 0, 0}}},
        {"II.2A.n", false, 0, std::nullopt, {{1, 0, 0}, {1, 0, 1}}},
        {"II.2B.n", false, 0, std::nullopt, {{1, 0, 0}, {1, 1, 1}}},
        {"II.2C.n", false, 0, std::nullopt, {{1, 0, 0}, {0, 1, 0}}},
        {"II.3", false, 1, 1, {{1, 1, 0}, {1, 1, 0}}},
        {"II.4A", false, 0, 0, {{1, 1, 0}, {1, 1, 0}}},
        {"II.4B", false, 0, 0, {{2, 1, 0}, {0, 1, 0}}},
        {"II.5A.1", false, 1, 1, {{2, 2, 0}, {0, 1, 0}}},
        {"II.5A.1", false, 1, 1, {{1, 2, 0}, {1, 1, 0}}},
        {"II.5B.1", false, 1, 1, {{1, 1, 0}, {0, 1, 0}}},
        {"ALdP.1.n", false, 1, std::nullopt, {{1, 0, 0}, {1, 2, 1}}},
        {"III.1", true, 0, std::nullopt, {{1, 0, 0}, {1, 0, 0}, {1, 0, 0}}},
        {"III.2", false, 0, 0, {{1, 1, 0}, {0, 1, 0}, {1, 0, 0}}},
        {"III.3.n", false, 0, std::nullopt, {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}},
        {"III.4.1", false, 1, 1, {{0, 1, 0}, {1, 1, 0}, {1, 1, 0}}},
        {"ALdP.2.n", false, 1, std::nullopt, {{1, 0, 0}, {1, 1, 1}, {0, 1, 0}}},
        {"ALdP.3.n", false, 1, std::nullopt, {{1, 0, 0}, {0, 1, 0}, {0, 1, 0}}},
        {"IV", false, 0, 0, {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}}},
        {"ALdP.4.n", false, 1, std::nullopt, {{1, 0, 0}, {0, 1, 0}, {0, 1, 0}, {1, 0, 1}}},
    };
    return t;
}

inline std::vector<ClassCoord> sorted(std::vector<ClassCoord> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

inline std::vector<ClassCoord> swap_rulings(std::vector<ClassCoord> v)
{
    for (auto& c : v)
        std::swap(c.a, c.b);
    return v;
}

/// The representative of a class multiset on F_0 up to swapping the rulings.
inline std::vector<ClassCoord> canonical_f0(const std::vector<ClassCoord>& v)
{
    return std::min(sorted(v), sorted(swap_rulings(v)));
}

struct Match {
    FamilyLabel label;
    std::size_t table_index;
    std::vector<ClassCoord> ordered; // the table's classes and order (on F_0 possibly with rulings swapped)
};

/// Unique label keyed by the class multiset. Throws when nothing or several labels match.
inline Match match_in(const std::vector<FamilyTemplate>& table, const CandidatePair& c)
{
    std::optional<Match> found;
    const auto key = sorted(c.classes);
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& f = table[i];
        if (f.plane != c.plane)
            continue;
        if (!c.plane && !f.exists_at(c.n))
            continue;
        auto inst = f.instantiate(c.n);
        std::optional<std::vector<ClassCoord>> ordered;
        if (sorted(inst) == key)
            ordered = inst;
        else if (!c.plane && c.n == 0 && sorted(swap_rulings(inst)) == key)
            ordered = inst;
        if (!ordered)
            continue;
        if (found && found->label.label != f.label)
            throw Error("class data " + c.classes_string() + " on " + c.surface_name() + " matches both " +
                        found->label.label + " and " + f.label);
        if (!found)
            found = Match{{f.label, c.plane ? std::nullopt : std::optional<int>(c.n)}, i, *ordered};
    }
    if (!found)
        throw Error("no label for " + c.classes_string() + " on " + c.surface_name());
    return *found;
}

inline FamilyLabel match_label(const CandidatePair& c) { return match_in(rank2_table(), c).label; }

// ---------------------------------------------------------------------------
// Enumeration

struct ClassificationEntry {
    CandidatePair pair; // in the table's component order
    FamilyLabel label;
    Strength strength;
    std::string body; // minimal canonical form of the open body
    std::size_t table_index = 0;
};

namespace detail {

/// All nonempty multisets (nondecreasing index lists) drawn from `pool`
/// with sum a <= max_a and sum b <= max_b; `unique` classes appear at most once.
inline void multisets(const std::vector<ClassCoord>& pool, long long max_a, long long max_b,
                      const std::vector<bool>& unique,
                      const std::function<void(const std::vector<ClassCoord>&)>& emit)
{
    std::vector<ClassCoord> current;
    std::function<void(std::size_t, long long, long long)> rec = [&](std::size_t start, long long sa, long long sb) {
        if (!current.empty())
            emit(current);
        for (std::size_t i = start; i < pool.size(); ++i) {
            const auto& c = pool[i];
            if (sa + c.a > max_a || sb + c.b > max_b)
                continue;
            current.push_back(c);
            rec(unique[i] ? i + 1 : i, sa + c.a, sb + c.b);
            current.pop_back();
        }
    };
    rec(0, 0, 0);
}

/// Classes a Z + b F on F_n containing an irreducible curve, within the box.
inline std::vector<ClassCoord> irreducible_pool(int n, long long max_a, long long max_b)
{
    std::vector<ClassCoord> out;
    for (long long a = 0; a <= max_a; ++a)
        for (long long b = 0; b <= max_b; ++b)
            if ((a || b) && fn_has_irreducible_member(a, b, n))
                out.push_back({a, b});
    return out;
}

inline Strength strength_of(const LogPair& p, const AABody& body)
{
    if (is_log_dp(p).value_or(false))
        return Strength::LogDP;
    if (is_strongly_aldp(body).value_or(false))
        return Strength::StronglyALdP;
    return Strength::ALdPNotStrong;
}

template <typename Accept>
std::vector<CandidatePair> candidates(int n_max, long long plane_degree, long long extra_a, long long extra_b,
                                      Accept&& accept)
{
    std::vector<CandidatePair> out;
    const std::vector<ClassCoord> lines = [&] {
        std::vector<ClassCoord> v;
        for (long long d = 1; d <= plane_degree; ++d)
            v.push_back({d, 0});
        return v;
    }();
    multisets(lines, plane_degree, 0, std::vector<bool>(lines.size(), false), [&](const std::vector<ClassCoord>& m) {
        CandidatePair c{true, 0, m};
        if (accept(c))
            out.push_back(std::move(c));
    });
    for (int n = 0; n <= n_max; ++n) {
        const long long max_a = extra_a;
        const long long max_b = n + extra_b;
        const auto pool = irreducible_pool(n, max_a, max_b);
        std::vector<bool> unique;
        for (const auto& c : pool)
            unique.push_back(n >= 1 && c.a == 1 && c.b == 0);
        multisets(pool, max_a, max_b, unique, [&](const std::vector<ClassCoord>& m) {
            if (n == 0 && canonical_f0(m) != m)
                return;
            CandidatePair c{false, n, m};
            if (accept(c))
                out.push_back(std::move(c));
        });
    }
    return out;
}

inline void sort_entries(std::vector<ClassificationEntry>& v)
{
    std::sort(v.begin(), v.end(), [](const ClassificationEntry& x, const ClassificationEntry& y) {
        auto key = [](const ClassificationEntry& e) {
            return std::make_tuple(e.pair.plane ? -1 : e.pair.n, e.table_index, e.pair.classes);
        };
        return key(x) < key(y);
    });
}

inline ClassificationEntry make_entry(const std::vector<FamilyTemplate>& table, const CandidatePair& c)
{
    Match m = match_in(table, c);
    CandidatePair ordered{c.plane, c.n, m.ordered};
    const LogPair p = ordered.to_pair();
    const AABody body = aa_halfspaces_rank_le2(p);
    return {ordered, m.label, detail::strength_of(p, body), canonical_body(body.open_part), m.table_index};
}

} // namespace detail

/// Class multisets whose unpolarized data passes the ALdP filter, on P^2
/// (total degree <= 3) and F_n for n <= n_max within sum a <= box_a,
/// sum b <= n + box_b. Unlabelled; used by the enumerator and by oracles.
inline std::vector<CandidatePair> aldp_candidates(int n_max, long long box_a = 2, long long box_b = 2)
{
    return detail::candidates(n_max, 3, box_a, box_b,
                              [](const CandidatePair& c) { return is_aldp(c.to_pair()).value_or(false); });
}

/// Rank <= 2 asymptotically log del Pezzo pairs for n <= n_max, labelled.
inline std::vector<ClassificationEntry> enumerate_rank2(int n_max)
{
    if (n_max < 0)
        throw Error("n_max must be nonnegative");
    std::vector<ClassificationEntry> out;
    for (const auto& c : aldp_candidates(n_max))
        out.push_back(detail::make_entry(rank2_table(), c));
    detail::sort_entries(out);
    return out;
}

/// Log del Pezzo pairs for n <= n_max, labelled Maeda.i to Maeda.vii.
inline std::vector<ClassificationEntry> enumerate_maeda(int n_max)
{
    if (n_max < 0)
        throw Error("n_max must be nonnegative");
    std::vector<ClassificationEntry> out;
    const auto cands = detail::candidates(n_max, 3, 1, 1,
                                          [](const CandidatePair& c) { return is_log_dp(c.to_pair()).value_or(false); });
    for (const auto& c : cands)
        out.push_back(detail::make_entry(maeda_table(), c));
    detail::sort_entries(out);
    return out;
}

inline const char* tsv_header() { return "n\tsurface\tclasses\tlabel\tstrength\tbody"; }

/// One row per entry; the body's canonical lines are joined with "; ".
inline std::string to_tsv(const std::vector<ClassificationEntry>& entries)
{
    std::ostringstream os;
    os << tsv_header() << "\n";
    for (const auto& e : entries) {
        std::string body = e.body;
        while (!body.empty() && body.back() == '\n')
            body.pop_back();
        std::string joined;
        for (char ch : body)
            joined += ch == '\n' ? std::string("; ") : std::string(1, ch);
        os << (e.pair.plane ? std::string("-") : std::to_string(e.pair.n)) << "\t" << e.pair.surface_name() << "\t"
           << e.pair.classes_string() << "\t" << e.label.display() << "\t" << to_string(e.strength) << "\t" << joined
           << "\n";
    }
    return os.str();
}

} // namespace aalp
