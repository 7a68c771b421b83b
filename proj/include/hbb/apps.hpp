#ifndef HBB_APPS_HPP
#define HBB_APPS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hbb/border.hpp"
#include "hbb/decomp.hpp"
#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/moments.hpp"
#include "hbb/polys.hpp"

namespace hbb {

// ---------------------------------------------------------------------------
// Symmetric tensors
// ---------------------------------------------------------------------------

/// Homogeneous polynomial of degree d in x0..xn, stored by its raw
/// coefficients (multinomial factors included).
template <ExactField F>
struct SymmetricTensor {
    F field;
    std::uint32_t degree = 0;
    std::size_t nvars = 0; // n + 1, x0 included
    std::map<Exponent, value_t<F>> coeffs;

    void validate() const
    {
        if (nvars < 2)
            throw Error(ErrorKind::InvalidInput, "a tensor needs at least the variables x0 and x1");
        for (const auto& [e, c] : coeffs) {
            if (e.size() != nvars)
                throw Error(ErrorKind::InvalidInput, "tensor exponent " + to_string(e) + " has wrong length");
            if (e.degree() != degree)
                throw Error(ErrorKind::InvalidInput,
                            "tensor exponent " + to_string(e) + " is not of degree " + std::to_string(degree));
        }
    }

    value_t<F> coeff(const Exponent& e) const
    {
        auto it = coeffs.find(e);
        return it == coeffs.end() ? field.zero() : it->second;
    }
};

/// d! / (beta_0! ... beta_n!) as an element of the field.
template <ExactField F>
value_t<F> multinomial(const F& field, const Exponent& beta)
{
    mpz_class acc = 1;
    unsigned long total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        mpz_class b;
        total += beta[i];
        mpz_bin_uiui(b.get_mpz_t(), total, beta[i]);
        acc *= b;
    }
    return field.parse(acc.get_str());
}

/// sigma_alpha = t_(d - |alpha|, alpha) / multinomial, on the simplex of degree d
/// in n variables.
template <ExactField F>
MomentSequence<F> tensor_to_moments(const SymmetricTensor<F>& t)
{
    t.validate();
    const std::size_t n = t.nvars - 1;
    return MomentSequence<F>::simplex(t.field, n, t.degree, [&](const Exponent& alpha) {
        std::vector<std::uint32_t> full(t.nvars);
        full[0] = t.degree - static_cast<std::uint32_t>(alpha.degree());
        for (std::size_t i = 0; i < n; ++i)
            full[i + 1] = alpha[i];
        const Exponent beta(std::move(full));
        const auto m = multinomial(t.field, beta);
        if (m.is_zero())
            throw Error(ErrorKind::InvalidInput, "multinomial coefficient of " + to_string(beta) +
                                                     " vanishes in the field");
        return t.coeff(beta) / m;
    });
}

/// Raw coefficients of sum_i w_i (x0 + xi_i1 x1 + ... + xi_in xn)^d.
template <ExactField F>
SymmetricTensor<F> expand_tensor(const F& field, const Decomposition<F>& dec, std::size_t nvars,
                                 std::uint32_t degree)
{
    SymmetricTensor<F> t{field, degree, nvars, {}};
    for (auto& beta : simplex_exponents(nvars, degree)) {
        if (beta.degree() != degree)
            continue;
        value_t<F> acc = field.zero();
        for (const auto& term : dec.terms) {
            value_t<F> prod = term.weight;
            for (std::size_t j = 1; j < nvars; ++j)
                for (std::uint32_t e = 0; e < beta[j]; ++e)
                    prod *= term.point[j - 1];
            acc += prod;
        }
        acc *= multinomial(field, beta);
        if (!acc.is_zero())
            t.coeffs.emplace(std::move(beta), std::move(acc));
    }
    return t;
}

///
/// Waring decomposition t = sum_i w_i (x0 + xi_i1 x1 + ... + xi_in xn)^d,
/// returned dehomogenised (the x0 coordinate is 1). The expansion is checked
/// against t coefficient by coefficient.
///
template <ExactField F>
Decomposition<F> tensor_decompose(const SymmetricTensor<F>& t, const MonomialOrder& order,
                                  const DecomposeOptions& opts = {})
{
    const auto sigma = tensor_to_moments(t);
    const auto res = border_basis(sigma, order);
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, res.diagnostic);
    auto dec = decompose(sigma, res, mult_matrices(sigma, res), opts);
    const auto back = expand_tensor(t.field, dec, t.nvars, t.degree);
    std::set<Exponent> keys;
    for (const auto& [e, c] : t.coeffs)
        keys.insert(e);
    for (const auto& [e, c] : back.coeffs)
        keys.insert(e);
    for (const auto& e : keys)
        if (!(t.coeff(e) == back.coeff(e)))
            throw Error(ErrorKind::VerificationFailed,
                        "re-expanded tensor differs at " + to_string(e) +
                            "; if some point has x0-coordinate 0, apply a linear change of coordinates first");
    canonicalize(t.field, dec);
    return dec;
}

template <ExactField F>
Decomposition<F> tensor_decompose(const SymmetricTensor<F>& t)
{
    return tensor_decompose(t, MonomialOrder::deglex(t.nvars - 1));
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

/// C = {c : sum_i c_i xi_i^alpha = 0 for all |alpha| <= degree}.
template <ExactField F>
struct CodeSpec {
    F field;
    std::vector<std::vector<value_t<F>>> points;
    std::uint32_t degree = 0;

    std::size_t nvars() const { return points.empty() ? 0 : points.front().size(); }
    std::size_t length() const { return points.size(); }

    void validate() const
    {
        if (points.empty())
            throw Error(ErrorKind::InvalidInput, "a code needs at least one evaluation point");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].size() != nvars() || nvars() == 0)
                throw Error(ErrorKind::InvalidInput, "code points have inconsistent dimensions");
            for (std::size_t j = 0; j < i; ++j)
                if (points[i] == points[j])
                    throw Error(ErrorKind::InvalidInput, "code points " + std::to_string(j + 1) + " and " +
                                                             std::to_string(i + 1) + " coincide");
        }
    }
};

template <ExactField F>
MomentSequence<F> syndrome_moments(const CodeSpec<F>& code, const std::vector<value_t<F>>& word)
{
    code.validate();
    if (word.size() != code.length())
        throw Error(ErrorKind::InvalidInput, "word has length " + std::to_string(word.size()) + ", code has " +
                                                 std::to_string(code.length()));
    return MomentSequence<F>::simplex(code.field, code.nvars(), code.degree, [&](const Exponent& alpha) {
        value_t<F> acc = code.field.zero();
        for (std::size_t i = 0; i < word.size(); ++i)
            if (!word[i].is_zero())
                acc += word[i] * power_product<F>(code.field, code.points[i], alpha);
        return acc;
    });
}

template <ExactField F>
struct DecodeResult {
    std::vector<value_t<F>> corrected;
    std::vector<std::size_t> positions; // 0-based
    std::vector<value_t<F>> values;
    std::vector<Polynomial<F>> locators;
    bool certified = false;
};

///
/// Syndrome decoding: the relations of the syndrome sequence locate the
/// errors among the code points, their values solve the Vandermonde system,
/// and the corrected word must lie in the code.
///
template <ExactField F>
DecodeResult<F> decode(const CodeSpec<F>& code, const std::vector<value_t<F>>& received, const MonomialOrder& order)
{
    const auto sigma = syndrome_moments(code, received);
    DecodeResult<F> out;
    out.corrected = received;
    if (sigma.is_zero()) {
        out.certified = true;
        return out;
    }
    const auto res = border_basis(sigma, order);
    out.locators = res.k;
    out.certified = res.certified;

    const auto roots = common_roots(res.k, code.points);
    if (roots.empty())
        throw Error(ErrorKind::DecodingFailure, "no code point is a common root of the error locators");
    std::vector<std::vector<value_t<F>>> pts;
    for (auto i : roots)
        pts.push_back(code.points[i]);
    std::vector<value_t<F>> weights;
    try {
        weights = solve_weights(pts, sigma, sigma.support());
    } catch (const Error& e) {
        throw Error(ErrorKind::DecodingFailure, std::string("no consistent error values: ") + e.what());
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (weights[i].is_zero())
            continue;
        out.positions.push_back(roots[i]);
        out.values.push_back(weights[i]);
        out.corrected[roots[i]] -= weights[i];
    }
    if (!syndrome_moments(code, out.corrected).is_zero())
        throw Error(ErrorKind::DecodingFailure, "corrected word is not a codeword");
    return out;
}

template <ExactField F>
DecodeResult<F> decode(const CodeSpec<F>& code, const std::vector<value_t<F>>& received)
{
    return decode(code, received, MonomialOrder::deglex(code.nvars()));
}

// ---------------------------------------------------------------------------
// Prony and sparse interpolation
// ---------------------------------------------------------------------------

/// Points and weights of a sampled exponential sum sigma_alpha = h(alpha).
template <ExactField F>
Decomposition<F> prony_grid(const MomentSequence<F>& samples, const MonomialOrder& order,
                            const DecomposeOptions& opts = {})
{
    auto dec = decompose(samples, order, opts);
    canonicalize(samples.field(), dec);
    return dec;
}

template <ExactField F>
struct SparseTerm {
    value_t<F> weight;
    std::vector<std::uint64_t> exponent;

    friend bool operator==(const SparseTerm&, const SparseTerm&) = default;
};

/// sigma_alpha = h(zeta_1^alpha_1, ..., zeta_n^alpha_n) on the simplex of the
/// given degree.
inline MomentSequence<RationalField> sparse_samples(const std::vector<SparseTerm<RationalField>>& terms,
                                                    const std::vector<long>& zeta, std::uint32_t degree)
{
    const RationalField field;
    const std::size_t n = zeta.size();
    std::vector<std::vector<Rational>> points;
    for (const auto& t : terms) {
        if (t.exponent.size() != n)
            throw Error(ErrorKind::InvalidInput, "sparse term has wrong number of exponents");
        std::vector<Rational> pt;
        for (std::size_t j = 0; j < n; ++j) {
            mpz_class v;
            mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(zeta[j]), t.exponent[j]);
            pt.emplace_back(mpq_class(v));
        }
        points.push_back(std::move(pt));
    }
    return MomentSequence<RationalField>::simplex(field, n, degree, [&](const Exponent& alpha) {
        Rational acc;
        for (std::size_t i = 0; i < terms.size(); ++i)
            acc += terms[i].weight * power_product<RationalField>(field, points[i], alpha);
        return acc;
    });
}

/// k with base^k = value, or NotAPower.
inline std::uint64_t integer_log(const Rational& value, long base)
{
    if (base < 2)
        throw Error(ErrorKind::InvalidInput, "logarithm base must be at least 2");
    if (!value.is_integer() || value.num() < 1)
        throw Error(ErrorKind::NotAPower, value.to_string() + " is not a power of " + std::to_string(base));
    mpz_class x = value.num();
    std::uint64_t k = 0;
    while (x != 1) {
        if (!mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(base)))
            throw Error(ErrorKind::NotAPower, value.to_string() + " is not a power of " + std::to_string(base));
        x /= base;
        ++k;
    }
    return k;
}

/// Exponents of each point coordinate to the bases zeta.
inline std::vector<SparseTerm<RationalField>> sparse_terms_from(const Decomposition<RationalField>& dec,
                                                                const std::vector<long>& zeta)
{
    std::vector<SparseTerm<RationalField>> out;
    for (const auto& t : dec.terms) {
        if (t.point.size() != zeta.size())
            throw Error(ErrorKind::InvalidInput, "zeta has wrong length");
        SparseTerm<RationalField> st{t.weight, {}};
        for (std::size_t j = 0; j < zeta.size(); ++j)
            st.exponent.push_back(integer_log(t.point[j], zeta[j]));
        out.push_back(std::move(st));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
    return out;
}

///
/// Sparse interpolation from samples on the grid zeta^alpha: the points are
/// powers of zeta and their integer logarithms are the exponents of h.
///
inline std::vector<SparseTerm<RationalField>> sparse_interpolate(const MomentSequence<RationalField>& samples,
                                                                 const std::vector<long>& zeta,
                                                                 const MonomialOrder& order,
                                                                 const DecomposeOptions& opts = {})
{
    if (zeta.size() != samples.nvars())
        throw Error(ErrorKind::InvalidInput, "zeta has " + std::to_string(zeta.size()) + " entries for " +
                                                 std::to_string(samples.nvars()) + " variables");
    return sparse_terms_from(decompose(samples, order, opts), zeta);
}

inline std::vector<SparseTerm<RationalField>> sparse_interpolate(const MomentSequence<RationalField>& samples,
                                                                 const std::vector<long>& zeta)
{
    return sparse_interpolate(samples, zeta, MonomialOrder::deglex(samples.nvars()));
}

// ---------------------------------------------------------------------------
// Vanishing ideal of points
// ---------------------------------------------------------------------------

template <ExactField F>
struct VanishingResult {
    std::vector<Polynomial<F>> generators;
    std::vector<Polynomial<F>> interpolants; // u_i(xi_j) = delta_ij, in input order
    BorderBasisResult<F> basis;
};

///
/// Border basis of the ideal of the points, computed from the moments
/// sum_i w_i xi_i^alpha on the simplex of the given degree (unit weights by
/// default), together with the interpolation polynomials.
///
template <ExactField F>
VanishingResult<F> vanishing_ideal(const F& field, const std::vector<std::vector<value_t<F>>>& points,
                                   std::uint32_t degree, const MonomialOrder& order,
                                   std::optional<std::vector<value_t<F>>> weights = std::nullopt,
                                   const DecomposeOptions& opts = {})
{
    if (points.empty())
        throw Error(ErrorKind::InvalidInput, "vanishing ideal of an empty point set");
    const std::size_t n = points.front().size();
    if (n != order.nvars())
        throw Error(ErrorKind::InvalidInput, "points and monomial order disagree on the number of variables");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != n)
            throw Error(ErrorKind::InvalidInput, "points have inconsistent dimensions");
        for (std::size_t j = 0; j < i; ++j)
            if (points[i] == points[j])
                throw Error(ErrorKind::InvalidInput, "repeated point " + std::to_string(i + 1));
    }
    if (weights && weights->size() != points.size())
        throw Error(ErrorKind::InvalidInput, "one weight per point is required");

    Decomposition<F> dec;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto w = weights ? (*weights)[i] : field.one();
        if (w.is_zero())
            throw Error(ErrorKind::InvalidInput, "weights must be nonzero");
        dec.terms.push_back({w, points[i]});
    }
    const auto sigma = moments_of_decomposition(field, n, dec, degree);
    auto res = border_basis(sigma, order);
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, "degree " + std::to_string(degree) + " is too small: " + res.diagnostic);
    const auto full = decompose_detailed(sigma, res, mult_matrices(sigma, res), opts);

    VanishingResult<F> out{res.k, {}, res};
    for (const auto& pt : points) {
        const auto& terms = full.decomposition.terms;
        auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& t) { return t.point == pt; });
        if (it == terms.end())
            throw Error(ErrorKind::VerificationFailed, "a point was not recovered from its own moments");
        out.interpolants.push_back(full.idempotents[static_cast<std::size_t>(it - terms.begin())]);
    }
    return out;
}

} // namespace hbb

#endif
