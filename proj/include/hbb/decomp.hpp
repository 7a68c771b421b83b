#ifndef HBB_DECOMP_HPP
#define HBB_DECOMP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hbb/border.hpp"
#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/linalg.hpp"
#include "hbb/moments.hpp"
#include "hbb/polys.hpp"

namespace hbb {

struct DecomposeOptions {
    std::uint64_t seed = 0;
    unsigned max_attempts = 10;
    /// Largest prime for which roots in Z/pZ are found by trying every residue.
    std::uint32_t exhaustive_root_limit = 1u << 20;
};

template <ExactField F>
struct RootMult {
    value_t<F> value;
    std::size_t multiplicity;
};

// ---------------------------------------------------------------------------
// Integer factorisation, used to enumerate rational root candidates
// ---------------------------------------------------------------------------

namespace detail {

inline mpz_class pollard_brent(const mpz_class& n, unsigned long c)
{
    if (n % 2 == 0)
        return 2;
    auto f = [&](const mpz_class& x) { return mpz_class((x * x + c) % n); };
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    while (g == 1) {
        x = y;
        for (unsigned long i = 0; i < r; ++i)
            y = f(y);
        unsigned long k = 0;
        while (k < r && g == 1) {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                y = f(y);
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd(mpz_class(abs(x - ys)), n);
        } while (g == 1);
    }
    return g;
}

inline void factor_into(mpz_class n, std::map<mpz_class, unsigned>& out)
{
    if (n < 0)
        n = -n;
    if (n <= 1)
        return;
    for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            n /= p;
        }
        if (n == 1)
            return;
    }
    std::vector<mpz_class> stack{n};
    while (!stack.empty()) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (m == 1)
            continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 30) > 0) {
            ++out[m];
            continue;
        }
        mpz_class d;
        for (unsigned long c = 1;; ++c) {
            d = pollard_brent(m, c);
            if (d != m)
                break;
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
}

/// Positive divisors of n not exceeding limit (all of them when limit < 0).
inline std::vector<mpz_class> divisors_up_to(const mpz_class& n, const mpz_class& limit)
{
    std::map<mpz_class, unsigned> fac;
    factor_into(n, fac);
    std::vector<std::pair<mpz_class, unsigned>> primes(fac.begin(), fac.end());
    std::vector<mpz_class> out;
    std::function<void(std::size_t, const mpz_class&)> rec = [&](std::size_t i, const mpz_class& acc) {
        if (i == primes.size()) {
            out.push_back(acc);
            return;
        }
        mpz_class cur = acc;
        for (unsigned e = 0; e <= primes[i].second; ++e) {
            if (limit >= 0 && cur > limit)
                break;
            rec(i + 1, cur);
            cur *= primes[i].first;
        }
    };
    rec(0, mpz_class(1));
    std::sort(out.begin(), out.end());
    return out;
}

/// log2 |x| for x != 0.
inline double log2_abs(const mpz_class& x)
{
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
    return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

/// Sum a_i u^i v^(n-i), i.e. v^n times the polynomial at u/v.
inline mpz_class homogeneous_eval(const std::vector<mpz_class>& a, const mpz_class& u, const mpz_class& v)
{
    mpz_class acc = 0, vpow = 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = acc * u + a[i] * vpow;
        vpow *= v;
    }
    return acc;
}

/// Exact quotient of a by (v x - u).
inline std::vector<mpz_class> deflate_linear(const std::vector<mpz_class>& a, const mpz_class& u, const mpz_class& v)
{
    const std::size_t n = a.size() - 1;
    std::vector<mpz_class> q(n);
    mpz_class carry = 0;
    // a = (v x - u) q: top down, q[n-1] = a[n] / v, q[i-1] = (a[i] + u q[i]) / v
    for (std::size_t i = n; i >= 1; --i) {
        mpz_class num = a[i] + carry;
        q[i - 1] = num / v;
        carry = u * q[i - 1];
    }
    return q;
}

} // namespace detail

/// Roots in Q of a polynomial with rational coefficients (lowest degree
/// first), with multiplicities. Candidates u/v come from the divisors of the
/// constant and leading coefficients once denominators are cleared, pruned by
/// the Fujiwara bound on root size.
inline std::vector<RootMult<RationalField>> rational_roots(const std::vector<Rational>& coeffs)
{
    std::vector<RootMult<RationalField>> out;
    std::vector<mpz_class> a;
    {
        mpz_class l = 1;
        for (const auto& c : coeffs)
            l = lcm(l, c.den());
        for (const auto& c : coeffs)
            a.push_back(mpz_class(c.num() * (l / c.den())));
    }
    while (!a.empty() && a.back() == 0)
        a.pop_back();
    if (a.size() <= 1)
        return out;

    auto add_root = [&](const Rational& r) {
        for (auto& rm : out)
            if (rm.value == r) {
                ++rm.multiplicity;
                return;
            }
        out.push_back({r, 1});
    };

    std::size_t zeros = 0;
    while (a.size() > 1 && a.front() == 0) {
        a.erase(a.begin());
        ++zeros;
    }
    for (std::size_t i = 0; i < zeros; ++i)
        add_root(Rational());

    while (a.size() > 1) {
        mpz_class g = 0;
        for (const auto& x : a)
            g = gcd(g, x);
        for (auto& x : a)
            x /= g;
        if (a.back() < 0)
            for (auto& x : a)
                x = -x;

        if (a.size() == 2) {
            add_root(Rational(mpq_class(-a[0], a[1])));
            break;
        }

        // Fujiwara: |root| <= 2 max_i |a_{n-i} / a_n|^(1/i)
        const std::size_t n = a.size() - 1;
        double log_bound = -std::numeric_limits<double>::infinity();
        const double log_lead = detail::log2_abs(a[n]);
        for (std::size_t i = 1; i <= n; ++i) {
            if (a[n - i] == 0)
                continue;
            const double halved = i == n ? 1.0 : 0.0; // the constant term enters halved
            log_bound = std::max(log_bound, (detail::log2_abs(a[n - i]) - halved - log_lead) / static_cast<double>(i));
        }
        mpz_class bound = -1;
        if (log_bound + 1.0 < 60.0) {
            const double b = std::ceil(std::exp2(log_bound + 1.0) * 1.001) + 1.0;
            bound = mpz_class(static_cast<unsigned long>(b));
        }

        bool found = false;
        for (const auto& v : detail::divisors_up_to(a[n], mpz_class(-1))) {
            const mpz_class limit = bound < 0 ? mpz_class(-1) : mpz_class(bound * v);
            for (const auto& u0 : detail::divisors_up_to(a[0], limit)) {
                if (gcd(u0, v) != 1)
                    continue;
                for (int sign : {1, -1}) {
                    const mpz_class u = sign * u0;
                    if (detail::homogeneous_eval(a, u, v) != 0)
                        continue;
                    add_root(Rational(mpq_class(u, v)));
                    a = detail::deflate_linear(a, u, v);
                    found = true;
                    break;
                }
                if (found)
                    break;
            }
            if (found)
                break;
        }
        if (!found)
            break;
    }
    return out;
}

/// Roots in Z/pZ by trying every residue.
inline std::vector<RootMult<PrimeField>> prime_field_roots(const PrimeField& field, std::vector<Zp> coeffs,
                                                           std::uint32_t exhaustive_limit)
{
    if (field.modulus() > exhaustive_limit)
        throw Error(ErrorKind::UnsupportedField, "root search in Z/" + std::to_string(field.modulus()) +
                                                     "Z exceeds the exhaustive-search limit " +
                                                     std::to_string(exhaustive_limit));
    while (!coeffs.empty() && coeffs.back().is_zero())
        coeffs.pop_back();
    std::vector<RootMult<PrimeField>> out;
    std::size_t total = 0;
    for (std::uint32_t x = 0; x < field.modulus() && total + 1 < coeffs.size(); ++x) {
        const Zp z(x, field.modulus());
        if (!horner(field, coeffs, z).is_zero())
            continue;
        const std::size_t mult = root_multiplicity(field, coeffs, z);
        out.push_back({z, mult});
        total += mult;
    }
    return out;
}

inline std::vector<RootMult<RationalField>> field_roots(const RationalField&, const std::vector<Rational>& coeffs,
                                                        const DecomposeOptions& = {})
{
    return rational_roots(coeffs);
}

inline std::vector<RootMult<PrimeField>> field_roots(const PrimeField& field, const std::vector<Zp>& coeffs,
                                                     const DecomposeOptions& opts = {})
{
    return prime_field_roots(field, coeffs, opts.exhaustive_root_limit);
}

template <ExactField F>
struct Eigenpair {
    value_t<F> value;
    std::vector<value_t<F>> vector;
};

///
/// Eigenvalues and eigenvectors of a square matrix whose characteristic
/// polynomial splits into distinct linear factors over the field.
///
/// IrrationalSpectrum when it does not split; DefectiveEigenvalue when a root
/// is repeated or an eigenspace is not a line.
///
template <ExactField F>
std::vector<Eigenpair<F>> eigen_decompose(const Matrix<F>& m, const DecomposeOptions& opts = {})
{
    const F& field = m.field();
    const std::size_t n = m.rows();
    const auto cp = charpoly(m);
    const auto roots = field_roots(field, cp, opts);
    std::size_t total = 0;
    for (const auto& r : roots)
        total += r.multiplicity;
    if (total < n)
        throw Error(ErrorKind::IrrationalSpectrum, "characteristic polynomial has " + std::to_string(n - total) +
                                                       " roots outside the coefficient field");
    std::vector<Eigenpair<F>> out;
    for (const auto& r : roots) {
        if (r.multiplicity != 1)
            throw Error(ErrorKind::DefectiveEigenvalue,
                        "eigenvalue " + field.to_string(r.value) + " has multiplicity " +
                            std::to_string(r.multiplicity));
        Matrix<F> shifted = m;
        for (std::size_t i = 0; i < n; ++i)
            shifted(i, i) -= r.value;
        auto ns = nullspace(shifted);
        if (ns.size() != 1)
            throw Error(ErrorKind::DefectiveEigenvalue, "eigenspace of " + field.to_string(r.value) +
                                                            " has dimension " + std::to_string(ns.size()));
        out.push_back({r.value, std::move(ns.front())});
    }
    return out;
}

inline std::vector<Eigenpair<RationalField>> rational_eigen(const Matrix<RationalField>& m)
{
    return eigen_decompose(m);
}

/// A decomposition together with the interpolation polynomials u_i
/// (u_i(xi_j) = delta_ij), in the same order as the terms.
template <ExactField F>
struct DecompositionDetail {
    Decomposition<F> decomposition;
    std::vector<Polynomial<F>> idempotents;
    std::vector<std::uint64_t> lambda;
    unsigned attempts = 0;
};

namespace detail {

template <ExactField F>
void verify_reconstruction(const MomentSequence<F>& sigma, const Decomposition<F>& dec)
{
    const F& field = sigma.field();
    for (std::size_t id = 0; id < sigma.size(); ++id) {
        const Exponent& alpha = sigma.support()[id];
        value_t<F> acc = field.zero();
        for (const auto& t : dec.terms)
            acc += t.weight * power_product<F>(field, t.point, alpha);
        if (!(acc == sigma.value_at(id)))
            throw Error(ErrorKind::VerificationFailed,
                        "reconstructed moment at " + to_string(alpha) + " is " + field.to_string(acc) +
                            ", expected " + field.to_string(sigma.value_at(id)));
    }
}

} // namespace detail

///
/// Points and weights of sigma = sum_i w_i e_{xi_i} from a certified border
/// basis.
///
/// A random combination M = sum_k lambda_k M_k is diagonalised; its
/// eigenvectors, read as coordinates in the basis p, are multiples v_i of the
/// interpolation polynomials. Then xi_ij = <sigma | x_j v_i> / <sigma | v_i>,
/// u_i = v_i / v_i(xi_i) and w_i = <sigma | u_i>. The result is checked on
/// every moment of sigma.
///
template <ExactField F>
DecompositionDetail<F> decompose_detailed(const MomentSequence<F>& sigma, const BorderBasisResult<F>& res,
                                          const MultTables<F>& tables, const DecomposeOptions& opts = {})
{
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, "decomposition needs a certified border basis");
    const F& field = res.field;
    const std::size_t r = res.rank();
    const std::size_t n = res.nvars;
    DecompositionDetail<F> out;
    if (r == 0) {
        detail::verify_reconstruction(sigma, out.decomposition);
        return out;
    }

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint64_t> draw(1, 2 * static_cast<std::uint64_t>(r) * r);
    std::string last_reason;
    for (unsigned attempt = 1; attempt <= opts.max_attempts; ++attempt) {
        std::vector<std::uint64_t> lambda(n);
        for (auto& l : lambda)
            l = draw(rng);
        Matrix<F> ml(field, r, r);
        for (std::size_t k = 0; k < n; ++k)
            ml = ml + field.from_int(static_cast<std::int64_t>(lambda[k])) * tables[k];

        std::vector<Eigenpair<F>> pairs;
        try {
            pairs = eigen_decompose(ml, opts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DefectiveEigenvalue)
                throw;
            last_reason = e.what();
            continue;
        }

        Decomposition<F> dec;
        std::vector<Polynomial<F>> idem;
        bool retry = false;
        for (const auto& pair : pairs) {
            Polynomial<F> v(field, n);
            for (std::size_t j = 0; j < r; ++j)
                if (!pair.vector[j].is_zero())
                    v += res.p[j] * pair.vector[j];
            const auto mass = apply(sigma, v);
            if (mass.is_zero()) {
                retry = true;
                last_reason = "an eigenvector has zero moment";
                break;
            }
            const auto inv_mass = mass.inverse();
            std::vector<value_t<F>> xi;
            xi.reserve(n);
            for (std::size_t j = 0; j < n; ++j)
                xi.push_back(apply(sigma, v.shifted(Exponent::unit(n, j))) * inv_mass);
            const auto at_xi = v.evaluate(xi);
            if (at_xi.is_zero()) {
                retry = true;
                last_reason = "an eigenvector vanishes at its own point";
                break;
            }
            Polynomial<F> u = v * at_xi.inverse();
            auto weight = apply(sigma, u);
            dec.terms.push_back({std::move(weight), std::move(xi)});
            idem.push_back(std::move(u));
        }
        if (retry)
            continue;

        detail::verify_reconstruction(sigma, dec);
        out.decomposition = std::move(dec);
        out.idempotents = std::move(idem);
        out.lambda = std::move(lambda);
        out.attempts = attempt;
        return out;
    }
    throw Error(ErrorKind::RetriesExhausted, "no separating combination found after " +
                                                 std::to_string(opts.max_attempts) + " attempts (" + last_reason +
                                                 ")");
}

template <ExactField F>
Decomposition<F> decompose(const MomentSequence<F>& sigma, const BorderBasisResult<F>& res,
                           const MultTables<F>& tables, const DecomposeOptions& opts = {})
{
    return decompose_detailed(sigma, res, tables, opts).decomposition;
}

/// Border basis, tables and decomposition in one call.
template <ExactField F>
Decomposition<F> decompose(const MomentSequence<F>& sigma, const MonomialOrder& order,
                           const DecomposeOptions& opts = {})
{
    const auto res = border_basis(sigma, order);
    if (!res.certified)
        throw Error(ErrorKind::NotCertified, res.diagnostic);
    return decompose(sigma, res, mult_matrices(sigma, res), opts);
}

/// Indices (0-based) of the candidates at which every polynomial vanishes.
template <ExactField F>
std::vector<std::size_t> common_roots(const std::vector<Polynomial<F>>& polys,
                                      const std::vector<std::vector<value_t<F>>>& candidates)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const bool root = std::all_of(polys.begin(), polys.end(), [&](const Polynomial<F>& p) {
            return p.evaluate(candidates[i]).is_zero();
        });
        if (root)
            out.push_back(i);
    }
    return out;
}

///
/// Weights w with sum_i w_i xi_i^alpha = sigma_alpha for alpha in `exponents`,
/// then checked against every other moment in the support.
///
template <ExactField F>
std::vector<value_t<F>> solve_weights(const std::vector<std::vector<value_t<F>>>& points,
                                      const MomentSequence<F>& sigma, const std::vector<Exponent>& exponents)
{
    const F& field = sigma.field();
    if (exponents.size() < points.size())
        throw Error(ErrorKind::SingularSystem, "fewer equations than unknown weights");
    Matrix<F> a(field, exponents.size(), points.size());
    std::vector<value_t<F>> rhs;
    rhs.reserve(exponents.size());
    for (std::size_t row = 0; row < exponents.size(); ++row) {
        for (std::size_t i = 0; i < points.size(); ++i)
            a(row, i) = power_product<F>(field, points[i], exponents[row]);
        rhs.push_back(sigma.value(exponents[row]));
    }
    auto w = solve(a, rhs);

    Decomposition<F> dec;
    for (std::size_t i = 0; i < points.size(); ++i)
        dec.terms.push_back({w[i], points[i]});
    try {
        detail::verify_reconstruction(sigma, dec);
    } catch (const Error& e) {
        throw Error(ErrorKind::InconsistentSystem, std::string("weights do not explain all moments: ") + e.what());
    }
    return w;
}

} // namespace hbb

#endif
