// Brute-force reference computations for the tests. Nothing here calls the
// engine, the linear algebra module or the moment builders of the library.
#ifndef HBB_TESTS_ORACLES_HPP
#define HBB_TESTS_ORACLES_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hbb/hbb.hpp"

namespace oracle {

using hbb::Exponent;

template <class F>
using V = hbb::value_t<F>;

template <class F>
using Point = std::vector<V<F>>;

template <class F>
V<F> power(const F& field, const Point<F>& xi, const Exponent& alpha)
{
    V<F> acc = field.one();
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::uint32_t k = 0; k < alpha[i]; ++k)
            acc = acc * xi[i];
    return acc;
}

/// All exponents of degree <= d, by plain enumeration of the box.
inline std::vector<Exponent> simplex(std::size_t n, std::uint32_t d)
{
    std::vector<Exponent> out;
    std::vector<std::uint32_t> cur(n, 0);
    while (true) {
        std::uint64_t deg = 0;
        for (auto v : cur)
            deg += v;
        if (deg <= d)
            out.emplace_back(cur);
        std::size_t i = 0;
        while (i < n && cur[i] == d) {
            cur[i] = 0;
            ++i;
        }
        if (i == n)
            break;
        ++cur[i];
    }
    return out;
}

template <class F>
hbb::MomentSequence<F> moments(const F& field, std::size_t n, const std::vector<Point<F>>& points,
                               const std::vector<V<F>>& weights, const std::vector<Exponent>& support)
{
    std::vector<std::pair<Exponent, V<F>>> m;
    for (const auto& alpha : support) {
        V<F> acc = field.zero();
        for (std::size_t i = 0; i < points.size(); ++i)
            acc = acc + weights[i] * power(field, points[i], alpha);
        m.emplace_back(alpha, acc);
    }
    return hbb::MomentSequence<F>(field, n, std::move(m));
}

template <class F>
hbb::MomentSequence<F> moments(const F& field, std::size_t n, const std::vector<Point<F>>& points,
                               const std::vector<V<F>>& weights, std::uint32_t degree)
{
    return moments(field, n, points, weights, simplex(n, degree));
}

/// Gauss-Jordan on a copy; x with a x = b when the solution is unique.
template <class F>
std::optional<std::vector<V<F>>> solve(const F& field, std::vector<std::vector<V<F>>> a, std::vector<V<F>> b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t s = r;
        while (s < rows && a[s][c].is_zero())
            ++s;
        if (s == rows)
            continue;
        std::swap(a[s], a[r]);
        std::swap(b[s], b[r]);
        const V<F> inv = field.one() / a[r][c];
        for (auto& v : a[r])
            v = v * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            const V<F> f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        piv.push_back(c);
        ++r;
    }
    if (piv.size() != cols)
        return std::nullopt;
    for (std::size_t i = r; i < rows; ++i)
        if (!b[i].is_zero())
            return std::nullopt;
    std::vector<V<F>> x(cols, field.zero());
    for (std::size_t i = 0; i < piv.size(); ++i)
        x[piv[i]] = b[i];
    return x;
}

/// The polynomial in span{x^beta : beta in basis} taking `values` at `points`.
template <class F>
std::optional<hbb::Polynomial<F>> interpolate(const F& field, const std::vector<Exponent>& basis,
                                              const std::vector<Point<F>>& points, const std::vector<V<F>>& values)
{
    std::vector<std::vector<V<F>>> a;
    for (const auto& pt : points) {
        std::vector<V<F>> row;
        for (const auto& beta : basis)
            row.push_back(power(field, pt, beta));
        a.push_back(row);
    }
    auto c = solve(field, a, values);
    if (!c)
        return std::nullopt;
    hbb::Polynomial<F> p(field, basis.empty() ? points.front().size() : basis.front().size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        p.add_term(basis[i], (*c)[i]);
    return p;
}

/// Matrix of multiplication by x_k in the basis ps of functions on the
/// points: column j holds the coordinates of x_k ps[j].
template <class F>
std::vector<std::vector<V<F>>> mult_matrix(const F& field, const std::vector<hbb::Polynomial<F>>& ps,
                                           const std::vector<Point<F>>& points, std::size_t k)
{
    const std::size_t r = ps.size();
    std::vector<std::vector<V<F>>> a;
    for (const auto& pt : points) {
        std::vector<V<F>> row;
        for (const auto& p : ps)
            row.push_back(p.evaluate(pt));
        a.push_back(row);
    }
    std::vector<std::vector<V<F>>> m(r, std::vector<V<F>>(r, field.zero()));
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<V<F>> rhs;
        for (const auto& pt : points)
            rhs.push_back(pt[k] * ps[j].evaluate(pt));
        auto c = solve(field, a, rhs);
        for (std::size_t i = 0; i < r; ++i)
            m[i][j] = (*c)[i];
    }
    return m;
}

/// Product by the schoolbook double loop over term lists.
template <class F>
std::map<Exponent, V<F>> dense_product(const F& field, const hbb::Polynomial<F>& a, const hbb::Polynomial<F>& b)
{
    std::map<Exponent, V<F>> out;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            std::vector<std::uint32_t> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            auto [it, fresh] = out.emplace(Exponent(e), field.zero());
            it->second = it->second + ca * cb;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

template <class F>
std::map<Exponent, V<F>> term_map(const hbb::Polynomial<F>& p)
{
    return {p.terms().begin(), p.terms().end()};
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline V<hbb::RationalField> random_value(const hbb::RationalField& q, std::mt19937_64& rng, int span = 6)
{
    std::uniform_int_distribution<int> d(-span, span);
    return q.from_int(d(rng));
}

inline V<hbb::PrimeField> random_value(const hbb::PrimeField& f, std::mt19937_64& rng, int = 0)
{
    return f.random(rng);
}

template <class F>
V<F> random_nonzero(const F& field, std::mt19937_64& rng)
{
    for (;;) {
        auto v = random_value(field, rng);
        if (!v.is_zero())
            return v;
    }
}

template <class F>
std::vector<Point<F>> random_points(const F& field, std::size_t n, std::size_t r, std::mt19937_64& rng)
{
    std::vector<Point<F>> out;
    while (out.size() < r) {
        Point<F> pt;
        for (std::size_t i = 0; i < n; ++i)
            pt.push_back(random_value(field, rng));
        bool fresh = true;
        for (const auto& q : out)
            fresh = fresh && !(q == pt);
        if (fresh)
            out.push_back(pt);
    }
    return out;
}

template <class F>
hbb::Polynomial<F> random_polynomial(const F& field, std::size_t n, std::uint32_t degree, std::size_t terms,
                                     std::mt19937_64& rng)
{
    const auto exps = simplex(n, degree);
    std::uniform_int_distribution<std::size_t> pick(0, exps.size() - 1);
    hbb::Polynomial<F> p(field, n);
    for (std::size_t t = 0; t < terms; ++t)
        p.add_term(exps[pick(rng)], random_value(field, rng));
    return p;
}

template <class F>
struct Planted {
    std::size_t n = 0;
    std::vector<Point<F>> points;
    std::vector<V<F>> weights;
    std::uint32_t degree = 0;
};

/// Smallest simplex degree at which the engine certifies the planted rank.
template <class F>
std::optional<std::uint32_t> minimal_degree(const F& field, const Planted<F>& inst, std::uint32_t cap = 24)
{
    for (std::uint32_t d = 1; d <= cap; ++d) {
        const auto sigma = moments(field, inst.n, inst.points, inst.weights, d);
        const auto res = hbb::border_basis(sigma);
        if (res.certified && res.rank() == inst.points.size())
            return d;
    }
    return std::nullopt;
}

template <class F>
Planted<F> random_planted(const F& field, std::size_t n, std::size_t r, std::mt19937_64& rng)
{
    Planted<F> inst;
    inst.n = n;
    inst.points = random_points(field, n, r, rng);
    for (std::size_t i = 0; i < r; ++i)
        inst.weights.push_back(random_nonzero(field, rng));
    inst.degree = minimal_degree(field, inst).value_or(0);
    return inst;
}

} // namespace oracle

#endif
