#pragma once

// Exact rational scalars and vectors, plus the few exact linear-algebra
// routines the rest of the library needs (inertia, linear solves).

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aalp {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

/// Base class for every error the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long long num, long long den = 1)
{
    if (den == 0)
        throw Error("zero denominator");
    return Rational(Integer(num), Integer(den));
}

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }

inline std::string to_string(const Rational& q)
{
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string to_string(const Integer& z)
{
    std::ostringstream os;
    os << z;
    return os.str();
}

/// Parses "p", "p/q", "-p/q". Returns nullopt on malformed text.
inline std::optional<Rational> parse_rational(std::string_view text)
{
    if (text.empty())
        return std::nullopt;
    auto valid_int = [](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+'))
            ++i;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        return std::nullopt;
    std::string ns(num);
    if (!ns.empty() && ns[0] == '+')
        ns.erase(0, 1);
    Integer n(ns), d{std::string(den)};
    if (d == 0)
        return std::nullopt;
    return Rational(n, d);
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw Error("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline bool is_zero(const RationalVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

/// Least common multiple of all denominators.
inline Integer common_denominator(const RationalVector& v)
{
    Integer l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, denominator(x));
    return l;
}

/// Scales v by a positive rational so that the entries are coprime integers.
/// The zero vector is returned unchanged.
inline std::vector<Integer> primitive_integer_vector(const RationalVector& v)
{
    const Integer l = common_denominator(v);
    std::vector<Integer> out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& x : v) {
        Integer z = numerator(x * l);
        g = boost::multiprecision::gcd(g, boost::multiprecision::abs(z));
        out.push_back(std::move(z));
    }
    if (g > 1)
        for (auto& z : out)
            z /= g;
    return out;
}

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
};

/// Sylvester inertia of a symmetric rational matrix, by congruence
/// diagonalisation over Q.
inline Inertia inertia(RationalMatrix m)
{
    const std::size_t n = m.size();
    Inertia out;
    for (std::size_t k = 0; k < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_with = n;
            for (std::size_t j = k + 1; j < n; ++j)
                if (m[j][j] != 0) {
                    swap_with = j;
                    break;
                }
            if (swap_with != n) {
                std::swap(m[k], m[swap_with]);
                for (auto& row : m)
                    std::swap(row[k], row[swap_with]);
            } else {
                std::size_t partner = n;
                for (std::size_t j = k + 1; j < n; ++j)
                    if (m[k][j] != 0) {
                        partner = j;
                        break;
                    }
                if (partner == n) {
                    ++out.zero;
                    continue;
                }
                // e_k <- e_k + e_partner makes the pivot 2*m[k][partner].
                for (std::size_t c = 0; c < n; ++c)
                    m[k][c] += m[partner][c];
                for (std::size_t r = 0; r < n; ++r)
                    m[r][k] += m[r][partner];
            }
        }
        const Rational pivot = m[k][k];
        // Schur complement of the pivot; row and column k are read-only here.
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m[r][k] == 0)
                continue;
            const Rational f = m[r][k] / pivot;
            for (std::size_t c = k + 1; c < n; ++c)
                m[r][c] -= f * m[k][c];
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            m[r][k] = 0;
            m[k][r] = 0;
        }
        if (pivot > 0)
            ++out.positive;
        else
            ++out.negative;
    }
    return out;
}

/// Solves the square system A x = b exactly. Returns nullopt when A is singular.
inline std::optional<RationalVector> solve_square(RationalMatrix a, RationalVector b)
{
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0)
                continue;
            const Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

/// Basis of the right null space of a (rows x cols) matrix.
inline RationalMatrix nullspace(RationalMatrix a, std::size_t cols)
{
    const std::size_t rows = a.size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && a[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        const Rational lead = a[r][col];
        for (auto& x : a[r])
            x /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][col] == 0)
                continue;
            const Rational f = a[i][col];
            for (std::size_t c = 0; c < cols; ++c)
                a[i][c] -= f * a[r][c];
        }
        pivot_cols.push_back(col);
        ++r;
    }
    RationalMatrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end())
            continue;
        RationalVector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i)
            v[pivot_cols[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Rank of a rational matrix (rows x cols).
inline std::size_t matrix_rank(RationalMatrix a)
{
    std::size_t rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0)
                continue;
            const Rational f = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < cols; ++c)
                a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

} // namespace aalp
