#ifndef HBB_POLYS_HPP
#define HBB_POLYS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hbb/error.hpp"
#include "hbb/fields.hpp"

namespace hbb {

// ---------------------------------------------------------------------------
// Exponent vectors
// ---------------------------------------------------------------------------

/// Multi-index alpha in N^n, identified with the monomial x^alpha.
class Exponent
{
public:
    Exponent() = default;
    explicit Exponent(std::size_t nvars) : e_(nvars, 0) {}
    Exponent(std::initializer_list<std::uint32_t> e) : e_(e) {}
    explicit Exponent(std::vector<std::uint32_t> e) : e_(std::move(e)) {}

    static Exponent unit(std::size_t nvars, std::size_t i)
    {
        Exponent u(nvars);
        u.e_[i] = 1;
        return u;
    }

    std::size_t size() const noexcept { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const noexcept { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) noexcept { return e_[i]; }
    const std::vector<std::uint32_t>& data() const noexcept { return e_; }

    std::uint64_t degree() const noexcept { return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0}); }
    bool is_zero() const noexcept
    {
        return std::all_of(e_.begin(), e_.end(), [](auto v) { return v == 0; });
    }

    /// Componentwise <=, i.e. x^this divides x^other.
    bool divides(const Exponent& other) const noexcept
    {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > other.e_[i])
                return false;
        return true;
    }

    friend Exponent operator+(const Exponent& a, const Exponent& b)
    {
        Exponent out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out.e_[i] = a.e_[i] + b.e_[i];
        return out;
    }

    /// a - b, requires b | a.
    friend Exponent operator-(const Exponent& a, const Exponent& b)
    {
        Exponent out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out.e_[i] = a.e_[i] - b.e_[i];
        return out;
    }

    // Plain lexicographic comparison of the vectors; used for map keys and
    // deterministic iteration, never as the algorithm's monomial order.
    friend auto operator<=>(const Exponent&, const Exponent&) = default;
    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    std::vector<std::uint32_t> e_;
};

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::size_t i = 0; i < e.size(); ++i) {
            h ^= e[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::string to_string(const Exponent& e)
{
    std::string out = "(";
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(e[i]);
    }
    return out + ")";
}

/// x^alpha written with variables x1..xn, "1" for the zero exponent.
inline std::string monomial_string(const Exponent& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += "x" + std::to_string(i + 1);
        if (e[i] > 1)
            out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

/// All exponents of total degree <= degree in nvars variables.
inline std::vector<Exponent> simplex_exponents(std::size_t nvars, std::uint32_t degree)
{
    std::vector<Exponent> out;
    Exponent cur(nvars);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t var, std::uint32_t left) {
        if (var + 1 == nvars) {
            for (std::uint32_t v = 0; v <= left; ++v) {
                cur[var] = v;
                out.push_back(cur);
            }
            cur[var] = 0;
            return;
        }
        for (std::uint32_t v = 0; v <= left; ++v) {
            cur[var] = v;
            rec(var + 1, left - v);
        }
        cur[var] = 0;
    };
    if (nvars == 0)
        return {Exponent{}};
    rec(0, degree);
    return out;
}

/// Every nonzero alpha of the set has some alpha - e_i in the set, and 0 is in
/// it (the monomial set is connected to 1). The empty set is not connected.
inline bool is_connected_to_one(std::span<const Exponent> set)
{
    if (set.empty())
        return false;
    std::set<Exponent> lookup(set.begin(), set.end());
    bool has_zero = false;
    for (const auto& a : set) {
        if (a.is_zero()) {
            has_zero = true;
            continue;
        }
        bool found = false;
        for (std::size_t i = 0; i < a.size() && !found; ++i) {
            if (a[i] == 0)
                continue;
            Exponent prev = a;
            --prev[i];
            found = lookup.contains(prev);
        }
        if (!found)
            return false;
    }
    return has_zero;
}

/// Border of a monomial set: (B ∪ x1 B ∪ ... ∪ xn B) \ B, with the border of
/// the empty set taken to be {0}.
inline std::set<Exponent> border_of(std::span<const Exponent> b, std::size_t nvars)
{
    std::set<Exponent> out;
    if (b.empty()) {
        out.insert(Exponent(nvars));
        return out;
    }
    std::set<Exponent> inside(b.begin(), b.end());
    for (const auto& beta : b)
        for (std::size_t i = 0; i < nvars; ++i) {
            Exponent up = beta;
            ++up[i];
            if (!inside.contains(up))
                out.insert(std::move(up));
        }
    return out;
}

// ---------------------------------------------------------------------------
// Monomial orders
// ---------------------------------------------------------------------------

enum class OrderKind { deglex, degrevlex };

inline std::string to_string(OrderKind kind) { return kind == OrderKind::deglex ? "deglex" : "degrevlex"; }

/// Graded monomial order. `ranking` lists the variables from smallest to
/// largest; the default x1 < x2 < ... < xn yields the traversal
/// 1, x1, x2, x3, x1^2, x1*x2, ... used throughout the tests.
class MonomialOrder
{
public:
    MonomialOrder(OrderKind kind, std::vector<std::size_t> ranking) : kind_(kind), ranking_(std::move(ranking))
    {
        std::vector<std::size_t> sorted = ranking_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != i)
                throw Error(ErrorKind::InvalidInput, "variable ranking is not a permutation");
    }

    static MonomialOrder deglex(std::size_t nvars) { return {OrderKind::deglex, identity(nvars)}; }
    static MonomialOrder degrevlex(std::size_t nvars) { return {OrderKind::degrevlex, identity(nvars)}; }
    static MonomialOrder of_kind(OrderKind kind, std::size_t nvars) { return {kind, identity(nvars)}; }

    OrderKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& ranking() const noexcept { return ranking_; }
    std::size_t nvars() const noexcept { return ranking_.size(); }

    std::strong_ordering compare(const Exponent& a, const Exponent& b) const
    {
        if (auto c = a.degree() <=> b.degree(); c != 0)
            return c;
        const std::size_t n = ranking_.size();
        if (kind_ == OrderKind::deglex) {
            // the largest variable decides first; more of it is bigger
            for (std::size_t k = n; k-- > 0;) {
                const std::size_t v = ranking_[k];
                if (a[v] != b[v])
                    return a[v] <=> b[v];
            }
        } else {
            // the smallest variable decides first; more of it is smaller
            for (std::size_t k = 0; k < n; ++k) {
                const std::size_t v = ranking_[k];
                if (a[v] != b[v])
                    return b[v] <=> a[v];
            }
        }
        return std::strong_ordering::equal;
    }

    bool less(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    static std::vector<std::size_t> identity(std::size_t n)
    {
        std::vector<std::size_t> r(n);
        std::iota(r.begin(), r.end(), std::size_t{0});
        return r;
    }

    OrderKind kind_;
    std::vector<std::size_t> ranking_;
};

inline std::strong_ordering order_compare(const MonomialOrder& ord, const Exponent& a, const Exponent& b)
{
    return ord.compare(a, b);
}

// ---------------------------------------------------------------------------
// Sparse polynomials
// ---------------------------------------------------------------------------

template <ExactField F>
class Polynomial
{
public:
    using value_type = value_t<F>;
    using term_map = std::map<Exponent, value_type>;

    Polynomial(F field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

    static Polynomial constant(const F& field, std::size_t nvars, const value_type& c)
    {
        Polynomial p(field, nvars);
        p.add_term(Exponent(nvars), c);
        return p;
    }
    static Polynomial monomial(const F& field, const Exponent& alpha)
    {
        return monomial(field, alpha, field.one());
    }
    static Polynomial monomial(const F& field, const Exponent& alpha, const value_type& c)
    {
        Polynomial p(field, alpha.size());
        p.add_term(alpha, c);
        return p;
    }
    static Polynomial variable(const F& field, std::size_t nvars, std::size_t i)
    {
        return monomial(field, Exponent::unit(nvars, i));
    }

    const F& field() const noexcept { return field_; }
    std::size_t nvars() const noexcept { return nvars_; }
    const term_map& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    std::vector<Exponent> support() const
    {
        std::vector<Exponent> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_)
            out.push_back(e);
        return out;
    }

    value_type coeff(const Exponent& alpha) const
    {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? field_.zero() : it->second;
    }

    /// Adds c x^alpha, dropping the term if the coefficient cancels.
    void add_term(const Exponent& alpha, const value_type& c)
    {
        check_nvars(alpha);
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    Polynomial& operator*=(const value_type& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const value_type& s) { return a *= s; }
    friend Polynomial operator*(const value_type& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const
    {
        Polynomial out = *this;
        for (auto& [e, c] : out.terms_)
            c = -c;
        return out;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial out(a.field_, a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                out.add_term(ea + eb, ca * cb);
        return out;
    }

    /// x^gamma * p.
    Polynomial shifted(const Exponent& gamma) const
    {
        check_nvars(gamma);
        Polynomial out(field_, nvars_);
        for (const auto& [e, c] : terms_)
            out.terms_.emplace_hint(out.terms_.end(), e + gamma, c);
        return out;
    }

    value_type evaluate(std::span<const value_type> point) const
    {
        if (point.size() != nvars_)
            throw Error(ErrorKind::InvalidInput, "evaluation point has wrong dimension");
        value_type acc = field_.zero();
        for (const auto& [e, c] : terms_) {
            value_type t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (std::uint32_t k = 0; k < e[i]; ++k)
                    t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Largest exponent of the support for `ord`.
    std::optional<Exponent> leading_exponent(const MonomialOrder& ord) const
    {
        if (terms_.empty())
            return std::nullopt;
        auto best = terms_.begin();
        for (auto it = std::next(best); it != terms_.end(); ++it)
            if (ord.less(best->first, it->first))
                best = it;
        return best->first;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    void check_nvars(const Exponent& e) const
    {
        if (e.size() != nvars_)
            throw Error(ErrorKind::InvalidInput, "exponent " + hbb::to_string(e) + " has wrong number of variables");
    }

    F field_;
    std::size_t nvars_;
    term_map terms_;
};

/// scale * x^exponent with a nonzero scale.
template <ExactField F>
struct ScaledMonomial {
    Exponent exponent;
    value_t<F> scale;

    Polynomial<F> as_polynomial(const F& field) const { return Polynomial<F>::monomial(field, exponent, scale); }
};

template <ExactField F>
Polynomial<F> mono_mul(const Polynomial<F>& p, const Exponent& gamma)
{
    return p.shifted(gamma);
}

template <ExactField F>
value_t<F> evaluate(const Polynomial<F>& p, std::span<const value_t<F>> point)
{
    return p.evaluate(point);
}

/// xi^alpha.
template <ExactField F>
value_t<F> power_product(const F& field, std::span<const value_t<F>> point, const Exponent& alpha)
{
    value_t<F> acc = field.one();
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::uint32_t k = 0; k < alpha[i]; ++k)
            acc *= point[i];
    return acc;
}

/// Human-readable form, terms from the largest to the smallest in `ord`.
template <ExactField F>
std::string to_string(const Polynomial<F>& p, const MonomialOrder& ord)
{
    if (p.is_zero())
        return "0";
    std::vector<Exponent> exps = p.support();
    std::sort(exps.begin(), exps.end(), [&](const Exponent& a, const Exponent& b) { return ord.less(b, a); });
    std::ostringstream out;
    bool first = true;
    for (const auto& e : exps) {
        std::string c = p.field().to_string(p.coeff(e));
        bool neg = !c.empty() && c[0] == '-';
        if (neg)
            c.erase(0, 1);
        if (!first)
            out << (neg ? " - " : " + ");
        else if (neg)
            out << "-";
        if (e.is_zero())
            out << c;
        else if (c == "1")
            out << monomial_string(e);
        else
            out << c << "*" << monomial_string(e);
        first = false;
    }
    return out.str();
}

/// Remainder of multivariate division of f by `divisors` for `ord`. The
/// divisors need not be monic; a zero remainder certifies ideal membership
/// when the divisors form a Groebner basis.
template <ExactField F>
Polynomial<F> divide_remainder(Polynomial<F> f, std::span<const Polynomial<F>> divisors, const MonomialOrder& ord)
{
    std::vector<std::pair<Exponent, value_t<F>>> leads;
    for (const auto& g : divisors) {
        auto lead = g.leading_exponent(ord);
        if (!lead)
            throw Error(ErrorKind::InvalidInput, "division by the zero polynomial");
        leads.emplace_back(*lead, g.coeff(*lead));
    }
    Polynomial<F> rem(f.field(), f.nvars());
    while (!f.is_zero()) {
        const Exponent lt = *f.leading_exponent(ord);
        const value_t<F> lc = f.coeff(lt);
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!leads[i].first.divides(lt))
                continue;
            Polynomial<F> step = divisors[i].shifted(lt - leads[i].first);
            step *= lc / leads[i].second;
            f -= step;
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lt, lc);
            f.add_term(lt, -lc);
        }
    }
    return rem;
}

} // namespace hbb

#endif
