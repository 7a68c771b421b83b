#ifndef HBB_BORDER_HPP
#define HBB_BORDER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/linalg.hpp"
#include "hbb/moments.hpp"
#include "hbb/polys.hpp"

namespace hbb {

///
/// Output of the border basis computation for a moment sequence sigma.
///
///  - `b`, `c`: monomial basis of the quotient algebra and the dual monomial
///    exponents paired with it (m_i = scale_i x^{c_i}).
///  - `p`, `q`: bases of the quotient indexed by `b`, pairwise orthogonal for
///    <.,.>_sigma. Each p_i is x^{b_i} plus lower terms in x^b.
///  - `d`, `k`: leading exponents of the relations and the relations
///    themselves, x^{d_i} + (tail in x^b).
///  - `certified`: d equals the border of b and the support is large enough
///    for the flat-extension test; only then are `k` a border basis and the
///    multiplication tables meaningful.
///
template <ExactField F>
struct BorderBasisResult {
    F field;
    std::size_t nvars;
    MonomialOrder order;
    std::vector<Exponent> b;
    std::vector<Exponent> c;
    std::vector<Exponent> d;
    std::vector<Polynomial<F>> p;
    std::vector<Polynomial<F>> q; // empty when not requested
    std::vector<ScaledMonomial<F>> m;
    std::vector<Polynomial<F>> k;
    bool certified = false;
    std::string diagnostic;

    std::size_t rank() const noexcept { return b.size(); }
    bool has_q() const noexcept { return q.size() == b.size(); }

    friend bool operator==(const BorderBasisResult& x, const BorderBasisResult& y)
    {
        auto same_m = [](const auto& u, const auto& v) {
            if (u.size() != v.size())
                return false;
            for (std::size_t i = 0; i < u.size(); ++i)
                if (u[i].exponent != v[i].exponent || !(u[i].scale == v[i].scale))
                    return false;
            return true;
        };
        return x.nvars == y.nvars && x.order == y.order && x.b == y.b && x.c == y.c && x.d == y.d &&
               x.p == y.p && x.q == y.q && same_m(x.m, y.m) && x.k == y.k && x.certified == y.certified &&
               x.diagnostic == y.diagnostic;
    }
};

struct BorderBasisOptions {
    bool compute_q = true;
};

/// Multiplication by x_1..x_n in the basis p.
template <ExactField F>
struct MultTables {
    std::vector<Matrix<F>> matrices;

    std::size_t nvars() const noexcept { return matrices.size(); }
    const Matrix<F>& operator[](std::size_t k) const { return matrices.at(k); }
};

///
/// Orthogonal projection of f along ps, orthogonally to ms:
/// g = f; for each i, g -= <g, m_i>_sigma p_i. Each step uses the updated g.
/// Requires <p_i, m_j> = 0 for j < i and <p_i, m_i> = 1.
///
template <ExactField F>
Polynomial<F> proj(const MomentSequence<F>& sigma, Polynomial<F> f, std::span<const Polynomial<F>> ps,
                   std::span<const Polynomial<F>> ms)
{
    if (ps.size() != ms.size())
        throw Error(ErrorKind::InvalidInput, "proj needs as many p's as m's");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto lambda = inner(sigma, f, ms[i]);
        if (!lambda.is_zero())
            f -= ps[i] * lambda;
    }
    return f;
}

/// Monomials of the border of b that lie in s, are not in d, and whose
/// products with every element of c stay inside a; sorted by `ord`.
inline std::vector<Exponent> next_monomials(std::span<const Exponent> b, std::span<const Exponent> d,
                                            std::span<const Exponent> c, std::span<const Exponent> s,
                                            std::span<const Exponent> a, const MonomialOrder& ord)
{
    const std::set<Exponent> in_a(a.begin(), a.end());
    const std::set<Exponent> in_s(s.begin(), s.end());
    const std::set<Exponent> in_d(d.begin(), d.end());
    std::vector<Exponent> out;
    for (const auto& alpha : border_of(b, ord.nvars())) {
        if (!in_s.contains(alpha) || in_d.contains(alpha))
            continue;
        const bool fits =
            std::all_of(c.begin(), c.end(), [&](const Exponent& gamma) { return in_a.contains(alpha + gamma); });
        if (fits)
            out.push_back(alpha);
    }
    std::sort(out.begin(), out.end(), [&](const Exponent& x, const Exponent& y) { return ord.less(x, y); });
    return out;
}

/// True iff d = border(b) and the products of b+ and c+ are covered by the
/// support: by degree for a simplex support, explicitly otherwise. This is a
/// sufficient condition for a flat extension, not a characterisation.
template <ExactField F>
bool certify(const BorderBasisResult<F>& res, const SupportIndex& a)
{
    const std::size_t n = res.nvars;
    const auto border_b = border_of(res.b, n);
    if (border_b != std::set<Exponent>(res.d.begin(), res.d.end()) || res.d.size() != border_b.size())
        return false;

    auto closure = [&](const std::vector<Exponent>& set) {
        std::set<Exponent> out(set.begin(), set.end());
        auto border = border_of(set, n);
        out.insert(border.begin(), border.end());
        return out;
    };
    const auto b_plus = closure(res.b);
    const auto c_plus = closure(res.c);

    if (const auto simplex = a.simplex_degree()) {
        std::uint64_t db = 0, dc = 0;
        for (const auto& e : b_plus)
            db = std::max(db, e.degree());
        for (const auto& e : c_plus)
            dc = std::max(dc, e.degree());
        return db + dc <= *simplex;
    }
    for (const auto& beta : b_plus)
        for (const auto& gamma : c_plus)
            if (!a.contains(beta + gamma))
                return false;
    return true;
}

template <ExactField F>
bool certify(const BorderBasisResult<F>& res, std::span<const Exponent> a)
{
    return certify(res, SupportIndex(res.nvars, std::vector<Exponent>(a.begin(), a.end())));
}

namespace detail {

// Works on support ids; p's are dense over b, q's dense over c.
template <ExactField F>
class BorderEngine
{
    using V = value_t<F>;

public:
    BorderEngine(const MomentSequence<F>& sigma, const MonomialOrder& order, const BorderBasisOptions& opts)
        : sigma_(sigma), a_(sigma.index()), field_(sigma.field()), order_(order), opts_(opts)
    {
        const std::size_t s = a_.size();
        sorted_.resize(s);
        for (std::size_t i = 0; i < s; ++i)
            sorted_[i] = i;
        std::sort(sorted_.begin(), sorted_.end(),
                  [&](std::size_t x, std::size_t y) { return order_.less(a_[x], a_[y]); });
        position_.resize(s);
        degree_.resize(s);
        for (std::size_t pos = 0; pos < s; ++pos) {
            position_[sorted_[pos]] = pos;
            degree_[sorted_[pos]] = a_[sorted_[pos]].degree();
        }
        in_s_.assign(s, 1);
        in_t_.assign(s, 1);
        queued_.assign(s, 0);
        simplex_degree_ = a_.simplex_degree();
    }

    BorderBasisResult<F> run()
    {
        const auto zero_id = a_.find(Exponent(sigma_.nvars()));
        if (zero_id != SupportIndex::npos)
            enqueue(static_cast<std::size_t>(zero_id));

        while (!queue_.empty()) {
            const std::size_t alpha = sorted_[queue_.top()];
            queue_.pop();
            if (!in_s_[alpha] || !fits_dual(alpha))
                continue; // c only grows, so an unfit candidate never comes back
            process(alpha);
        }
        return build();
    }

private:
    const V& sigma_at(std::int64_t id) const { return sigma_.value_at(static_cast<std::size_t>(id)); }

    std::int64_t sum_or_throw(std::size_t x, std::size_t y) const
    {
        const auto id = a_.find_sum(x, y);
        if (id == SupportIndex::npos)
            throw Error(ErrorKind::SupportError,
                        "product x^" + to_string(a_[x] + a_[y]) + " leaves the moment support");
        return id;
    }

    void enqueue(std::size_t id)
    {
        if (queued_[id] || !in_s_[id])
            return;
        queued_[id] = 1;
        queue_.push(position_[id]);
    }

    bool fits_dual(std::size_t alpha) const
    {
        return std::all_of(c_.begin(), c_.end(),
                           [&](std::size_t gamma) { return a_.find_sum(alpha, gamma) != SupportIndex::npos; });
    }

    void process(std::size_t alpha)
    {
        const std::size_t r = b_.size();
        in_s_[alpha] = 0;

        // (a) p_alpha = proj(x^alpha, p, m); coef over b_[0..r), leading 1 on alpha
        std::vector<V> coef(r, field_.zero());
        for (std::size_t i = 0; i < r; ++i) {
            V acc = sigma_at(sum_or_throw(alpha, c_[i]));
            for (std::size_t j = 0; j < i; ++j)
                if (!coef[j].is_zero())
                    acc += coef[j] * sigma_at(sum_or_throw(b_[j], c_[i]));
            const V lambda = scale_[i] * acc;
            if (lambda.is_zero())
                continue;
            const auto& pi = P_[i];
            for (std::size_t j = 0; j <= i; ++j)
                if (!pi[j].is_zero())
                    coef[j] -= lambda * pi[j];
        }

        std::vector<std::size_t> support;
        for (std::size_t j = 0; j < r; ++j)
            if (!coef[j].is_zero())
                support.push_back(j);

        // (b) first gamma of t with x^gamma p_alpha inside the support and
        // <p_alpha, x^gamma> != 0
        std::optional<std::pair<std::size_t, V>> found;
        for (std::size_t pos = 0; pos < sorted_.size() && !found; ++pos) {
            const std::size_t gamma = sorted_[pos];
            if (!in_t_[gamma])
                continue;
            if (simplex_degree_ && degree_[alpha] + degree_[gamma] > *simplex_degree_)
                break; // t is graded, nothing later fits either
            const auto lead = a_.find_sum(alpha, gamma);
            if (lead == SupportIndex::npos)
                continue;
            V acc = sigma_at(lead);
            bool inside = true;
            for (std::size_t j : support) {
                const auto id = a_.find_sum(b_[j], gamma);
                if (id == SupportIndex::npos) {
                    inside = false;
                    break;
                }
                acc += coef[j] * sigma_at(id);
            }
            if (inside && !acc.is_zero())
                found.emplace(gamma, acc);
        }

        coef.push_back(field_.one());
        if (!found) {
            d_.push_back(alpha);
            K_.push_back(std::move(coef));
            return;
        }

        // (c) m_alpha = x^gamma / <p_alpha, x^gamma>
        const auto [gamma, pairing] = *found;
        const V scale = pairing.inverse();
        if (opts_.compute_q) {
            // q_alpha = proj(m_alpha, q, p); since <q_j, p_i> = delta_ij the
            // coefficients <g, p_i> equal <m_alpha, p_i> at every step.
            std::vector<V> qc(r + 1, field_.zero());
            qc[r] = scale;
            for (std::size_t i = 0; i < r; ++i) {
                V acc = field_.zero();
                for (std::size_t j = 0; j <= i; ++j)
                    if (!P_[i][j].is_zero())
                        acc += P_[i][j] * sigma_at(sum_or_throw(b_[j], gamma));
                const V mu = scale * acc;
                if (mu.is_zero())
                    continue;
                for (std::size_t j = 0; j <= i; ++j)
                    if (!Q_[i][j].is_zero())
                        qc[j] -= mu * Q_[i][j];
            }
            Q_.push_back(std::move(qc));
        }
        b_.push_back(alpha);
        P_.push_back(std::move(coef));
        c_.push_back(gamma);
        scale_.push_back(scale);
        in_t_[gamma] = 0;

        for (std::size_t var = 0; var < sigma_.nvars(); ++var) {
            const auto up = a_.find_shift(alpha, Exponent::unit(sigma_.nvars(), var));
            if (up != SupportIndex::npos)
                enqueue(static_cast<std::size_t>(up));
        }
    }

    BorderBasisResult<F> build() const
    {
        const std::size_t n = sigma_.nvars();
        BorderBasisResult<F> res{field_, n, order_, {}, {}, {}, {}, {}, {}, {}, false, {}};
        for (auto id : b_)
            res.b.push_back(a_[id]);
        for (auto id : c_)
            res.c.push_back(a_[id]);
        for (auto id : d_)
            res.d.push_back(a_[id]);

        auto over = [&](const std::vector<V>& coef, const std::vector<std::size_t>& ids, std::size_t lead) {
            Polynomial<F> poly(field_, n);
            for (std::size_t j = 0; j < coef.size(); ++j)
                poly.add_term(a_[j < ids.size() ? ids[j] : lead], coef[j]);
            return poly;
        };
        for (std::size_t i = 0; i < b_.size(); ++i) {
            res.p.push_back(over(P_[i], b_, b_[i]));
            res.m.push_back(ScaledMonomial<F>{a_[c_[i]], scale_[i]});
            if (opts_.compute_q)
                res.q.push_back(over(Q_[i], c_, c_[i]));
        }
        for (std::size_t i = 0; i < d_.size(); ++i) {
            // tail over b_[0..len-1), leading 1 on d_[i]
            const auto& coef = K_[i];
            Polynomial<F> poly(field_, n);
            for (std::size_t j = 0; j + 1 < coef.size(); ++j)
                poly.add_term(a_[b_[j]], coef[j]);
            poly.add_term(a_[d_[i]], coef.back());
            res.k.push_back(std::move(poly));
        }

        res.certified = certify(res, a_);
        if (!res.certified) {
            const auto border_b = border_of(res.b, n);
            const std::set<Exponent> have(res.d.begin(), res.d.end());
            std::string missing;
            for (const auto& e : border_b)
                if (!have.contains(e))
                    missing += (missing.empty() ? "" : " ") + monomial_string(e);
            if (!missing.empty())
                res.diagnostic = "insufficient data: no relation computed for border monomials " + missing;
            else
                res.diagnostic = "insufficient data: the support does not cover the products of b+ and c+";
        }
        return res;
    }

    const MomentSequence<F>& sigma_;
    const SupportIndex& a_;
    F field_;
    MonomialOrder order_;
    BorderBasisOptions opts_;
    std::optional<std::uint64_t> simplex_degree_;

    std::vector<std::size_t> sorted_;
    std::vector<std::size_t> position_;
    std::vector<std::uint64_t> degree_;
    std::vector<char> in_s_, in_t_, queued_;
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> queue_;

    std::vector<std::size_t> b_, c_, d_;
    std::vector<V> scale_;
    std::vector<std::vector<V>> P_, Q_, K_;
};

} // namespace detail

///
/// Border basis of the ideal of recurrence relations of sigma.
///
/// Candidates are treated one at a time in `order`; after each one the set of
/// admissible border monomials is recomputed against the current c.
///
template <ExactField F>
BorderBasisResult<F> border_basis(const MomentSequence<F>& sigma, const MonomialOrder& order,
                                  const BorderBasisOptions& opts = {})
{
    if (sigma.size() == 0)
        throw Error(ErrorKind::EmptySupport, "the moment support is empty");
    if (order.nvars() != sigma.nvars())
        throw Error(ErrorKind::InvalidInput, "monomial order and sequence disagree on the number of variables");
    return detail::BorderEngine<F>(sigma, order, opts).run();
}

template <ExactField F>
BorderBasisResult<F> border_basis(const MomentSequence<F>& sigma)
{
    return border_basis(sigma, MonomialOrder::deglex(sigma.nvars()));
}

/// M_k(i, j) = <sigma | x_k p_j q_i>, the matrix of multiplication by x_k in
/// the basis p. Its transpose is the matrix in the basis q.
template <ExactField F>
MultTables<F> mult_matrices(const MomentSequence<F>& sigma, const BorderBasisResult<F>& res)
{
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, "multiplication tables need a certified border basis");
    if (!res.has_q())
        throw Error(ErrorKind::InvalidInput, "multiplication tables need the q basis");
    const std::size_t r = res.rank();
    const std::size_t n = res.nvars;
    const F& field = res.field;

    // w(i, beta) = <x^beta, q_i>_sigma, memoised per i
    std::vector<std::map<Exponent, value_t<F>>> memo(r);
    auto w = [&](std::size_t i, const Exponent& beta) -> const value_t<F>& {
        auto it = memo[i].find(beta);
        if (it != memo[i].end())
            return it->second;
        value_t<F> acc = field.zero();
        for (const auto& [gamma, coeff] : res.q[i].terms())
            acc += coeff * sigma.value(beta + gamma);
        return memo[i].emplace(beta, std::move(acc)).first->second;
    };

    MultTables<F> tables;
    for (std::size_t var = 0; var < n; ++var) {
        const Exponent step = Exponent::unit(n, var);
        Matrix<F> mk(field, r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                value_t<F> acc = field.zero();
                for (const auto& [beta, coeff] : res.p[j].terms())
                    acc += coeff * w(i, beta + step);
                mk(i, j) = std::move(acc);
            }
        tables.matrices.push_back(std::move(mk));
    }
    return tables;
}

/// Representative of f in span(x^b) modulo the border relations. Monomials are
/// reduced recursively, x^alpha = x_i * x^(alpha - e_i), each step being one
/// application of a multiplication table to coordinates in the basis p.
template <ExactField F>
Polynomial<F> normal_form(const BorderBasisResult<F>& res, const MultTables<F>& tables, const Polynomial<F>& f)
{
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, "normal form needs a certified border basis");
    const F& field = res.field;
    const std::size_t n = res.nvars;
    const std::size_t r = res.rank();
    Polynomial<F> out(field, n);
    if (r == 0)
        return out; // the ideal is (1)

    std::map<Exponent, std::vector<value_t<F>>> coords;
    {
        std::vector<value_t<F>> unit(r, field.zero());
        unit[0] = field.one(); // p_0 = 1
        coords.emplace(Exponent(n), std::move(unit));
    }
    std::function<const std::vector<value_t<F>>&(const Exponent&)> coords_of =
        [&](const Exponent& alpha) -> const std::vector<value_t<F>>& {
        if (auto it = coords.find(alpha); it != coords.end())
            return it->second;
        std::size_t var = 0;
        while (alpha[var] == 0)
            ++var;
        Exponent prev = alpha;
        --prev[var];
        auto v = tables[var].apply(coords_of(prev));
        return coords.emplace(alpha, std::move(v)).first->second;
    };

    std::vector<value_t<F>> total(r, field.zero());
    for (const auto& [alpha, c] : f.terms()) {
        const auto& v = coords_of(alpha);
        for (std::size_t j = 0; j < r; ++j)
            total[j] += c * v[j];
    }
    for (std::size_t j = 0; j < r; ++j)
        if (!total[j].is_zero())
            out += res.p[j] * total[j];
    return out;
}

/// Relations whose leading exponents are minimal for divisibility; for a
/// monomial order this is a minimal Groebner basis of the ideal.
template <ExactField F>
std::vector<Polynomial<F>> minimal_groebner(const BorderBasisResult<F>& res)
{
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, "Groebner extraction needs a certified border basis");
    std::vector<Polynomial<F>> out;
    for (std::size_t i = 0; i < res.d.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < res.d.size() && minimal; ++j)
            if (j != i && res.d[j] != res.d[i] && res.d[j].divides(res.d[i]))
                minimal = false;
        if (minimal)
            out.push_back(res.k[i]);
    }
    return out;
}

} // namespace hbb

#endif
