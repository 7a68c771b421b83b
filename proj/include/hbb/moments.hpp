#ifndef HBB_MOMENTS_HPP
#define HBB_MOMENTS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/linalg.hpp"
#include "hbb/polys.hpp"

namespace hbb {

///
/// Index of a finite exponent set with O(1) lookup of sums.
///
/// Exponents are packed into integers with radix 2 * (max coordinate + 1), so
/// the key of a sum of two members is the sum of their keys and never carries.
/// Small key spaces use a dense table, larger ones a hash map; sets whose keys
/// would overflow 64 bits fall back to hashing full exponents.
///
class SupportIndex
{
public:
    static constexpr std::int64_t npos = -1;

    SupportIndex() = default;

    SupportIndex(std::size_t nvars, std::vector<Exponent> exponents) : nvars_(nvars), exps_(std::move(exponents))
    {
        std::uint32_t max_coord = 0;
        for (const auto& e : exps_) {
            if (e.size() != nvars_)
                throw Error(ErrorKind::InvalidInput, "exponent " + to_string(e) + " has wrong number of variables");
            for (std::size_t i = 0; i < nvars_; ++i)
                max_coord = std::max(max_coord, e[i]);
            max_degree_ = std::max<std::uint64_t>(max_degree_, e.degree());
        }
        max_coord_ = max_coord;

        const std::uint64_t radix = 2 * (std::uint64_t{max_coord} + 1);
        unsigned __int128 space = 1;
        for (std::size_t i = 0; i < nvars_ && space <= (unsigned __int128)1 << 62; ++i)
            space *= radix;
        packed_ = space <= (unsigned __int128)1 << 62;

        if (packed_) {
            radix_ = radix;
            keys_.reserve(exps_.size());
            for (const auto& e : exps_)
                keys_.push_back(pack(e));
            dense_ = space <= (1u << 22);
            if (dense_)
                table_.assign(static_cast<std::size_t>(space), -1);
            for (std::size_t id = 0; id < exps_.size(); ++id)
                insert_key(keys_[id], id);
        } else {
            for (std::size_t id = 0; id < exps_.size(); ++id)
                if (!fallback_.emplace(exps_[id], id).second)
                    throw Error(ErrorKind::InvalidInput, "duplicate exponent " + to_string(exps_[id]));
        }
    }

    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return exps_.size(); }
    bool empty() const noexcept { return exps_.empty(); }
    const std::vector<Exponent>& exponents() const noexcept { return exps_; }
    const Exponent& operator[](std::size_t id) const { return exps_[id]; }
    std::uint64_t max_degree() const noexcept { return max_degree_; }

    std::int64_t find(const Exponent& e) const
    {
        if (e.size() != nvars_)
            return npos;
        if (!packed_) {
            auto it = fallback_.find(e);
            return it == fallback_.end() ? npos : static_cast<std::int64_t>(it->second);
        }
        for (std::size_t i = 0; i < nvars_; ++i)
            if (e[i] > max_coord_)
                return npos;
        return lookup_key(pack(e));
    }

    bool contains(const Exponent& e) const { return find(e) != npos; }

    /// Id of exps[i] + exps[j], or npos.
    std::int64_t find_sum(std::size_t i, std::size_t j) const
    {
        if (!packed_)
            return find(exps_[i] + exps_[j]);
        return lookup_key(keys_[i] + keys_[j]);
    }

    /// Id of exps[i] + extra, or npos.
    std::int64_t find_shift(std::size_t i, const Exponent& extra) const { return find(exps_[i] + extra); }

    /// The set is the full simplex {|alpha| <= D}; returns D.
    std::optional<std::uint64_t> simplex_degree() const
    {
        if (exps_.empty())
            return std::nullopt;
        // |simplex(n, D)| = binom(D + n, n)
        unsigned __int128 count = 1;
        for (std::size_t k = 1; k <= nvars_; ++k) {
            count = count * (max_degree_ + k) / k;
            if (count > exps_.size())
                return std::nullopt;
        }
        if (count != exps_.size())
            return std::nullopt;
        return max_degree_;
    }

private:
    std::uint64_t pack(const Exponent& e) const
    {
        std::uint64_t key = 0;
        for (std::size_t i = nvars_; i-- > 0;)
            key = key * radix_ + e[i];
        return key;
    }

    void insert_key(std::uint64_t key, std::size_t id)
    {
        if (dense_) {
            if (table_[key] != -1)
                throw Error(ErrorKind::InvalidInput, "duplicate exponent " + to_string(exps_[id]));
            table_[key] = static_cast<std::int32_t>(id);
        } else if (!sparse_.emplace(key, id).second) {
            throw Error(ErrorKind::InvalidInput, "duplicate exponent " + to_string(exps_[id]));
        }
    }

    std::int64_t lookup_key(std::uint64_t key) const
    {
        if (dense_)
            return key < table_.size() ? table_[key] : npos;
        auto it = sparse_.find(key);
        return it == sparse_.end() ? npos : static_cast<std::int64_t>(it->second);
    }

    std::size_t nvars_ = 0;
    std::vector<Exponent> exps_;
    std::uint32_t max_coord_ = 0;
    std::uint64_t max_degree_ = 0;
    bool packed_ = true;
    bool dense_ = false;
    std::uint64_t radix_ = 1;
    std::vector<std::uint64_t> keys_;
    std::vector<std::int32_t> table_;
    std::unordered_map<std::uint64_t, std::size_t> sparse_;
    std::unordered_map<Exponent, std::size_t, ExponentHash> fallback_;
};

/// sigma = sum_i weight_i * e_{point_i}, the rank-r model recovered by the
/// decomposition routines.
template <ExactField F>
struct Decomposition {
    struct Term {
        value_t<F> weight;
        std::vector<value_t<F>> point;

        friend bool operator==(const Term&, const Term&) = default;
    };

    std::vector<Term> terms;

    std::size_t rank() const noexcept { return terms.size(); }
};

/// Sort terms by their printed coordinates, lexicographically; the canonical
/// order for output and comparisons.
template <ExactField F>
void canonicalize(const F& field, Decomposition<F>& dec)
{
    auto key = [&](const typename Decomposition<F>::Term& t) {
        std::vector<std::string> k;
        for (const auto& v : t.point)
            k.push_back(field.to_string(v));
        return k;
    };
    std::stable_sort(dec.terms.begin(), dec.terms.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });
}

///
/// Truncated moment sequence: the values sigma_alpha = <sigma | x^alpha> on a
/// finite support connected to 0. Immutable after construction.
///
template <ExactField F>
class MomentSequence
{
public:
    using value_type = value_t<F>;

    /// The support must be connected to 0 (or empty; the engine rejects the
    /// empty support separately).
    MomentSequence(F field, std::size_t nvars, std::vector<std::pair<Exponent, value_type>> moments)
        : field_(std::move(field)), nvars_(nvars)
    {
        if (nvars_ == 0)
            throw Error(ErrorKind::InvalidInput, "a moment sequence needs at least one variable");
        std::sort(moments.begin(), moments.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<Exponent> exps;
        exps.reserve(moments.size());
        values_.reserve(moments.size());
        for (auto& [e, v] : moments) {
            exps.push_back(std::move(e));
            values_.push_back(std::move(v));
        }
        index_ = SupportIndex(nvars_, std::move(exps));
        if (!index_.empty() && !is_connected_to_one(index_.exponents()))
            throw Error(ErrorKind::InvalidInput, "moment support is not connected to 0");
    }

    /// Simplex support {|alpha| <= degree} with values from `moment`.
    static MomentSequence simplex(const F& field, std::size_t nvars, std::uint32_t degree,
                                  const std::function<value_type(const Exponent&)>& moment)
    {
        std::vector<std::pair<Exponent, value_type>> m;
        for (auto& e : simplex_exponents(nvars, degree)) {
            value_type v = moment(e);
            m.emplace_back(std::move(e), std::move(v));
        }
        return MomentSequence(field, nvars, std::move(m));
    }

    const F& field() const noexcept { return field_; }
    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return values_.size(); }
    const SupportIndex& index() const noexcept { return index_; }
    const std::vector<Exponent>& support() const noexcept { return index_.exponents(); }
    const value_type& value_at(std::size_t id) const { return values_[id]; }
    bool contains(const Exponent& e) const { return index_.contains(e); }

    const value_type& value(const Exponent& e) const
    {
        const auto id = index_.find(e);
        if (id == SupportIndex::npos)
            throw Error(ErrorKind::SupportError, "moment " + to_string(e) + " is outside the support");
        return values_[static_cast<std::size_t>(id)];
    }

    bool is_zero() const
    {
        return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.is_zero(); });
    }

    friend bool operator==(const MomentSequence& a, const MomentSequence& b)
    {
        return a.nvars_ == b.nvars_ && a.support() == b.support() && a.values_ == b.values_;
    }

private:
    F field_;
    std::size_t nvars_;
    SupportIndex index_;
    std::vector<value_type> values_;
};

/// <sigma | p> = sum_alpha p_alpha sigma_alpha. Out-of-support exponents are an
/// error, never an implicit zero.
template <ExactField F>
value_t<F> apply(const MomentSequence<F>& sigma, const Polynomial<F>& p)
{
    value_t<F> acc = sigma.field().zero();
    std::string missing;
    for (const auto& [e, c] : p.terms()) {
        const auto id = sigma.index().find(e);
        if (id == SupportIndex::npos) {
            missing += (missing.empty() ? "" : " ") + to_string(e);
            continue;
        }
        acc += c * sigma.value_at(static_cast<std::size_t>(id));
    }
    if (!missing.empty())
        throw Error(ErrorKind::SupportError, "exponents outside the moment support: " + missing);
    return acc;
}

/// <p, q>_sigma = <sigma | p q>.
template <ExactField F>
value_t<F> inner(const MomentSequence<F>& sigma, const Polynomial<F>& p, const Polynomial<F>& q)
{
    return apply(sigma, p * q);
}

/// Truncated Hankel matrix: entry (i, j) = <sigma | cols[j] * rows[i]>.
template <ExactField F>
Matrix<F> hankel(const MomentSequence<F>& sigma, const std::vector<Polynomial<F>>& cols,
                 const std::vector<Polynomial<F>>& rows)
{
    Matrix<F> h(sigma.field(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            h(i, j) = inner(sigma, cols[j], rows[i]);
    return h;
}

/// Monomial-labelled Hankel matrix (sigma_{beta + beta'}).
template <ExactField F>
Matrix<F> hankel(const MomentSequence<F>& sigma, const std::vector<Exponent>& cols, const std::vector<Exponent>& rows)
{
    Matrix<F> h(sigma.field(), rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            h(i, j) = sigma.value(cols[j] + rows[i]);
    return h;
}

/// sigma_alpha = sum_i w_i xi_i^alpha on the given support.
template <ExactField F>
MomentSequence<F> moments_of_decomposition(const F& field, std::size_t nvars, const Decomposition<F>& dec,
                                           const std::vector<Exponent>& support)
{
    for (const auto& t : dec.terms)
        if (t.point.size() != nvars)
            throw Error(ErrorKind::InvalidInput, "decomposition point has wrong dimension");
    std::vector<std::pair<Exponent, value_t<F>>> m;
    m.reserve(support.size());
    for (const auto& alpha : support) {
        value_t<F> acc = field.zero();
        for (const auto& t : dec.terms)
            acc += t.weight * power_product<F>(field, t.point, alpha);
        m.emplace_back(alpha, std::move(acc));
    }
    return MomentSequence<F>(field, nvars, std::move(m));
}

/// Same, on the simplex of the given degree.
template <ExactField F>
MomentSequence<F> moments_of_decomposition(const F& field, std::size_t nvars, const Decomposition<F>& dec,
                                           std::uint32_t degree)
{
    return moments_of_decomposition(field, nvars, dec, simplex_exponents(nvars, degree));
}

} // namespace hbb

#endif
