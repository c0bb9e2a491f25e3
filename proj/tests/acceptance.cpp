// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "aalp/classify.hpp"
#include "oracles.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace aalp;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& why)
    {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

std::set<std::string> golden(const std::string& name)
{
    std::ifstream in(std::string(AALP_GOLDEN_DIR) + "/" + name);
    std::set<std::string> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        if (!line.empty())
            rows.insert(line);
    return rows;
}

std::set<std::string> first_four(const std::vector<ClassificationEntry>& v)
{
    std::set<std::string> rows;
    for (const auto& e : v)
        rows.insert((e.pair.plane ? std::string("-") : std::to_string(e.pair.n)) + "\t" + e.pair.surface_name() + "\t" +
                    e.pair.classes_string() + "\t" + e.label.display());
    return rows;
}

std::vector<std::pair<long long, long long>> coords(const CandidatePair& c)
{
    std::vector<std::pair<long long, long long>> v;
    for (const auto& x : c.classes)
        v.emplace_back(x.a, x.b);
    return v;
}

std::vector<long long> degrees(const CandidatePair& c)
{
    std::vector<long long> v;
    for (const auto& x : c.classes)
        v.push_back(x.a);
    return v;
}

bool oracle_ample(const CandidatePair& c, const RationalVector& b)
{
    return c.plane ? oracle::p2_ample(degrees(c), b) : oracle::fn_ample(c.n, coords(c), b);
}

std::string cube_and(std::size_t r, const std::vector<long long>& normal)
{
    HPolytope h = unit_cube(r, true);
    RationalVector n;
    for (auto x : normal)
        n.emplace_back(x);
    h.add({n, Rational(0), true});
    return canonical_body(h);
}

bool label_is(const ClassificationEntry& e, const std::string& family) { return e.label.label == family; }

// -------------------------------------------------------------------------

Outcome criterion1(std::string& summary)
{
    Outcome o;
    const auto v = enumerate_maeda(12);
    o.require(v.size() == 31, "expected 31 entries, got " + std::to_string(v.size()));
    o.require(first_four(v) == golden("maeda_n12.tsv"), "table differs from golden");
    summary = std::to_string(v.size()) + " entries";
    return o;
}

Outcome criterion2(std::string& summary)
{
    Outcome o;
    const auto v = enumerate_rank2(12);
    o.require(first_four(v) == golden("rank2_n12.tsv"), "label set differs from golden");
    int not_strong = 0;
    for (const auto& e : v) {
        const bool fam = e.label.label.rfind("ALdP.", 0) == 0;
        const bool ns = e.strength == Strength::ALdPNotStrong;
        not_strong += ns;
        o.require(ns == fam, e.label.display() + " has the wrong strength");
        if (!e.pair.plane && e.pair.n == 2) {
            o.require(e.pair.classes_string() != "[(2,4)]", "[2,(2,4)] present");
            o.require(!(aalp::sorted(e.pair.classes) == aalp::sorted({{1, 0}, {1, 2}, {1, 2}})),
                      "[2,(1,2),(1,2)] present");
        }
    }
    o.require(not_strong == 4 * 12, "ALdPNotStrong count " + std::to_string(not_strong));
    summary = std::to_string(v.size()) + " entries, " + std::to_string(not_strong) + " ALdPNotStrong";
    return o;
}

Outcome criterion3(std::string& summary)
{
    Outcome o;
    const auto v = enumerate_rank2(12);
    int checked = 0;
    for (const auto& e : v) {
        const int n = e.pair.n;
        std::string want;
        if (label_is(e, "ALdP.1.n"))
            want = cube_and(2, {-n, 2});
        else if (label_is(e, "ALdP.2.n") || label_is(e, "ALdP.3.n"))
            want = cube_and(3, {-n, 1, 1});
        else
            continue;
        o.require(e.pair.classes.front() == ClassCoord{1, 0}, e.label.display() + ": C1 is not Z_n");
        o.require(e.body == want, e.label.display() + " body differs");
        ++checked;
    }
    o.require(checked == 36, "expected 36 bodies, checked " + std::to_string(checked));

    const auto fig = aa_halfspaces_rank_le2(fn_pair(1, {{1, 0}, {1, 3}}));
    HPolytope expect = unit_cube(2, false);
    expect.add({{Rational(-1), Rational(2)}, Rational(0), false});
    const HPolytope closed = remove_redundant(fig.closed_hull);
    o.require(canonical_form(closed) == canonical_form(remove_redundant(expect)), "trapezoid closure differs");
    const auto got = vertices(closed).vertices;
    std::vector<oracle::Row> rows;
    for (const auto& h : closed.halfspaces)
        rows.push_back({h.normal, h.offset});
    const auto brute = oracle::brute_vertices(rows, 2);
    const std::set<RationalVector> want = {{Rational(0), Rational(0)},
                                           {Rational(0), Rational(1)},
                                           {Rational(1), make_rational(1, 2)},
                                           {Rational(1), Rational(1)}};
    o.require(std::set<RationalVector>(got.begin(), got.end()) == want, "trapezoid vertices differ");
    o.require(brute == want, "brute-force vertices differ");
    summary = std::to_string(checked) + " bodies, trapezoid closure and 4 vertices";
    return o;
}

Outcome criterion4(std::string& summary)
{
    Outcome o;
    long cases = 0;
    for (const auto& e : enumerate_rank2(6)) {
        const LogPair p = e.pair.to_pair();
        const std::size_t r = p.size();
        const auto& s = p.surface();
        oracle::grid(r, 8, [&](const RationalVector& g) {
            if (!o.ok || !oracle_ample(e.pair, g))
                return;
            ++cases;
            std::optional<ReparamData> got;
            try {
                got = reparam(p, g);
            } catch (const Error& err) {
                o.require(false, e.label.display() + ": " + err.what());
                return;
            }
            const ReparamData& d = *got;
            // L(b) = eta (K + A + sum F_i(b) C_i) at b = 0 and b = e_i: an affine identity.
            for (std::size_t k = 0; k <= r; ++k) {
                RationalVector b(r, Rational(0));
                if (k < r)
                    b[k] = 1;
                RationalVector rhs = canonical_class(s).coeffs();
                for (std::size_t j = 0; j < rhs.size(); ++j)
                    rhs[j] += d.A[j];
                for (std::size_t i = 0; i < r; ++i) {
                    const Rational fi = d.F_family[i](b);
                    for (std::size_t j = 0; j < rhs.size(); ++j)
                        rhs[j] += fi * p.cls(i)[j];
                }
                for (auto& x : rhs)
                    x *= d.eta;
                RationalVector lhs;
                if (e.pair.plane) {
                    lhs = {oracle::p2_degree(degrees(e.pair), b)};
                } else {
                    const auto [a, f] = oracle::fn_adjoint(e.pair.n, coords(e.pair), b);
                    lhs = {a, f};
                }
                o.require(lhs == rhs, e.label.display() + ": identity fails");
            }
            const bool a_ample = e.pair.plane ? d.A[0] > 0 : d.A[0] > 0 && d.A[1] > e.pair.n * d.A[0];
            o.require(a_ample, e.label.display() + ": A not ample");
            for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
                RationalVector v(r);
                for (std::size_t i = 0; i < r; ++i)
                    v[i] = (mask >> i) & 1;
                for (const auto& fi : d.F_family)
                    o.require(fi(v) >= 0 && fi(v) <= 1, e.label.display() + ": F bound fails");
                o.require(d.f(d.f_inv(v)) == v && d.f_inv(d.f(v)) == v, e.label.display() + ": f o f^-1 != id");
            }
        });
    }
    o.require(cases > 0, "no grid points");
    summary = std::to_string(cases) + " (family, gamma) cases";
    return o;
}

Outcome criterion5(std::string& summary)
{
    Outcome o;
    int n = 0;
    for (const auto& e : enumerate_rank2(12)) {
        const LogPair p = e.pair.to_pair();
        const auto a = canonical_body(aa_halfspaces_rank_le2(p).closed_hull);
        const auto b = canonical_body(aa_via_nef(p).closed_hull);
        o.require(a == b, e.label.display() + ": closure != nef preimage");
        ++n;
    }
    summary = std::to_string(n) + " survivors";
    return o;
}

Outcome criterion6(std::string& summary)
{
    Outcome o;
    long points = 0;
    for (const auto& e : enumerate_rank2(6)) {
        const auto body = aa_halfspaces_rank_le2(e.pair.to_pair());
        oracle::grid(e.pair.classes.size(), 16, [&](const RationalVector& b) {
            ++points;
            if (contains(body.open_part, b) != oracle_ample(e.pair, b))
                o.require(false, e.label.display() + ": membership disagrees");
        });
    }
    summary = std::to_string(points) + " grid points";
    return o;
}

// Checks L_X(b) + rho(b) E = pi^* L_Y(b') coefficientwise and by intersection with E.
bool pushforward_holds(const LogPair& x, const Contraction& c, std::size_t k, std::mt19937& rng)
{
    const auto lx = log_adjoint(x), ly = log_adjoint(c.pair);
    const auto& sx = x.surface();
    const DivisorClass e = DivisorClass::basis(sx, k);
    std::uniform_int_distribution<int> num(1, 15);
    for (int t = 0; t < 3; ++t) {
        RationalVector b(x.size()), by;
        for (std::size_t i = 0; i < b.size(); ++i) {
            b[i] = make_rational(num(rng), 16);
            if (!c.removed_component || i != *c.removed_component)
                by.push_back(b[i]);
        }
        const DivisorClass d = lx(b) + c.residual(b) * e;
        if (intersect(d, e) != 0)
            return false;
        auto up = ly(by).coeffs();
        up.insert(up.begin() + static_cast<std::ptrdiff_t>(k), Rational(0));
        if (d.coeffs() != up)
            return false;
        if (self_intersection(d) != self_intersection(ly(by)))
            return false;
    }
    return true;
}

Outcome criterion7(std::string& summary)
{
    Outcome o;
    // round trip on every node of a few base pairs
    const std::vector<LogPair> bases = {fn_pair(1, {{1, 0}, {0, 1}}), fn_pair(0, {{1, 1}, {0, 1}, {1, 0}}),
                                        p2_pair({1, 1, 1}), fn_pair(3, {{1, 0}, {0, 1}, {0, 1}, {1, 3}})};
    for (const auto& p : bases)
        for (const auto& nd : p.nodes()) {
            const auto b = blow_up_node(p, nd.id, "E");
            const auto c = contract(b, b.size() - 1);
            o.require(c.pair == p, "round trip fails at " + nd.id);
        }
    // residual for boundary (Z~, F~, E): b1 + b2 - b3
    {
        const auto p = fn_pair(1, {{1, 0}, {0, 1}});
        const auto b = blow_up_node(p, p.nodes()[0].id, "E");
        const auto c = contract(b, std::size_t{2});
        const RationalVector expected = {Rational(1), Rational(1), Rational(-1)};
        o.require(c.residual.constant == 0 && c.residual.coeffs == expected, "residual is " + c.residual.to_string());
    }
    std::mt19937 rng(2024);
    int scripts = 0, contractions = 0;
    for (int t = 0; t < 100; ++t) {
        LogPair p = t % 3 == 0 ? p2_pair({1, 2}) : fn_pair(t % 5, {{1, 0}, {0, 1}});
        const int depth = 1 + static_cast<int>(rng() % 4);
        for (int d = 0; d < depth; ++d) {
            const std::string e = "E" + std::to_string(d + 1);
            const int op = static_cast<int>(rng() % 3);
            if (op == 0 && !p.nodes().empty())
                p = blow_up_node(p, p.nodes()[rng() % p.nodes().size()].id, e);
            else if (op == 1)
                p = blow_up_smooth_point(p, rng() % p.size(), "s" + std::to_string(d), std::nullopt, e);
            else
                p = blow_up_away(p, "a" + std::to_string(d), std::nullopt, e);
        }
        int here = 0;
        const auto& s = p.surface();
        for (std::size_t k = s->base_rank(); k < s->rank(); ++k) {
            const DivisorClass ek = DivisorClass::basis(s, k);
            std::optional<std::size_t> comp;
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p.cls(i) == ek)
                    comp = i;
            std::optional<std::string> curve;
            for (const auto& tc : tracked_curves(p))
                if (tc.kind == CurveKind::Exceptional && tc.cls == ek)
                    curve = tc.id;
            if (!comp && !curve)
                continue; // E_k was blown up again
            std::optional<Contraction> c;
            try {
                c = comp ? contract(p, *comp) : contract(p, *curve);
            } catch (const Error& err) {
                const std::string what = err.what();
                if (what.rfind("incidence pattern unsupported", 0) == 0 || what.rfind("not a (-1)-curve", 0) == 0)
                    continue;
                o.require(false, "script " + std::to_string(t) + ": " + what);
                continue;
            }
            ++here;
            o.require(pushforward_holds(p, *c, k, rng), "pushforward identity fails in script " + std::to_string(t));
        }
        o.require(here > 0, "script " + std::to_string(t) + " had no contractible curve");
        contractions += here;
        ++scripts;
    }
    summary = std::to_string(scripts) + " scripts, " + std::to_string(contractions) + " contractions";
    return o;
}

Outcome criterion8(std::string& summary)
{
    Outcome o;
    std::mt19937 rng(99);
    int pairs = 0, strong = 0, aldp = 0, logdp = 0;
    while (pairs < 1000) {
        const bool plane = rng() % 6 == 0;
        const int n = static_cast<int>(rng() % 7);
        const std::size_t r = 1 + rng() % 3;
        std::optional<LogPair> p;
        try {
            if (plane) {
                std::vector<long long> d;
                for (std::size_t i = 0; i < r; ++i)
                    d.push_back(1 + static_cast<long long>(rng() % 3));
                p = p2_pair(d);
            } else {
                std::vector<std::pair<long long, long long>> cls;
                for (std::size_t i = 0; i < r; ++i) {
                    long long a = rng() % 3, b = rng() % (n + 4);
                    if (a == 0 && b == 0)
                        b = 1;
                    if (!fn_irreducible_admissible(a, b, n))
                        a = 1, b = 0;
                    cls.emplace_back(a, b);
                }
                p = fn_pair(n, cls);
            }
        } catch (const Error&) {
            continue;
        }
        ++pairs;
        const auto body = aa_halfspaces_rank_le2(*p);
        const bool s = is_strongly_aldp(body).value();
        const bool a = is_aldp(body).value();
        const bool l = is_log_dp(*p).value();
        const bool zero_in = !body.empty() && contains(body.closed_hull, RationalVector(p->size(), Rational(0)));
        o.require(!s || a, "strong but not ALdP");
        o.require(!a || zero_in, "ALdP but 0 not in closure");
        o.require(!l || s, "log dP but not strong");
        strong += s, aldp += a, logdp += l;
    }
    for (int t = 0; t < 1000; ++t) {
        Surface s = t % 4 == 0 ? projective_plane() : hirzebruch(t % 7);
        const int depth = 1 + t % 5;
        for (int d = 0; d < depth; ++d) {
            s = blow_up_surface(s, {}, "E" + std::to_string(d + 1));
            const auto sig = s->signature();
            o.require(sig.positive == 1 && sig.negative == static_cast<int>(s->rank()) - 1 && sig.zero == 0,
                      "Hodge signature fails");
        }
    }
    std::uniform_int_distribution<int> c(-12, 12), den(1, 9);
    Surface sx = blow_up_surface(blow_up_surface(hirzebruch(3), {}, "E1"), {}, "E2");
    auto rnd = [&] {
        RationalVector v;
        for (std::size_t i = 0; i < sx->rank(); ++i)
            v.push_back(make_rational(c(rng), den(rng)));
        return DivisorClass(sx, v);
    };
    for (int t = 0; t < 1000; ++t) {
        const auto x = rnd(), y = rnd(), z = rnd();
        const Rational u = make_rational(c(rng), den(rng)), w = make_rational(c(rng), den(rng));
        o.require(intersect(x, y) == intersect(y, x), "intersect not symmetric");
        o.require(intersect(u * x + w * z, y) == u * intersect(x, y) + w * intersect(z, y), "intersect not bilinear");
    }
    summary = std::to_string(pairs) + " pairs (" + std::to_string(logdp) + " logdP, " + std::to_string(strong) +
              " strong, " + std::to_string(aldp) + " ALdP), 1000 blow-up chains, 1000 intersection triples";
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        Outcome (*run)(std::string&);
    };
    const std::vector<Criterion> all = {
        {1, "Maeda classification, n_max = 12", 1, criterion1},
        {2, "rank-2 classification, n_max = 12", 10, criterion2},
        {3, "ALdP bodies and the trapezoid", 1, criterion3},
        {4, "reparametrization on the 1/8 grid, n <= 6", 30, criterion4},
        {5, "closure equals nef preimage, n <= 12", 5, criterion5},
        {6, "grid oracle on the 1/16 grid, n <= 6", 60, criterion6},
        {7, "blow-up and contraction calculus", 10, criterion7},
        {8, "property suite", 5, criterion8},
    };
    int failed = 0;
    for (const auto& c : all) {
        std::string summary;
        Outcome o;
        const auto t0 = Clock::now();
        try {
            o = c.run(summary);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (o.ok && secs >= c.limit_s) {
            o.ok = false;
            o.detail = "over the time limit";
        }
        failed += !o.ok;
        std::ostringstream line;
        line.precision(3);
        line << std::fixed << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << summary
             << "] " << secs << " s (limit " << c.limit_s << " s)";
        if (!o.ok)
            line << ": " << o.detail;
        std::cout << line.str() << std::endl;
    }
    std::cout << (failed ? "FAILED " + std::to_string(failed) + " of 8" : std::string("all 8 criteria passed")) << "\n";
    return failed ? 1 : 0;
}
