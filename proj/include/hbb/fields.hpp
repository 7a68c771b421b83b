#ifndef HBB_FIELDS_HPP
#define HBB_FIELDS_HPP

#include <cctype>
#include <concepts>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "hbb/error.hpp"

namespace hbb {

///
/// Coefficient domains.
///
/// A *field* object (PrimeField, RationalField) is a small value describing the
/// domain; its `value_type` is an immutable-by-convention exact scalar with the
/// usual arithmetic operators. Field objects are passed around by value and
/// carried by every container so that zero/one/parse are always available.
///

enum class FieldKind { prime, rational };

struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    std::uint32_t p = 0; // meaningful iff kind == prime

    static FieldSpec rational() { return {FieldKind::rational, 0}; }
    static FieldSpec prime(std::uint32_t modulus) { return {FieldKind::prime, modulus}; }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline std::string to_string(const FieldSpec& spec)
{
    if (spec.kind == FieldKind::rational)
        return "rational";
    return "prime:" + std::to_string(spec.p);
}

/// Deterministic primality test for 32-bit moduli.
constexpr bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

struct ScalarSyntax {
    bool negative = false;
    std::string_view num;
    std::string_view den; // empty when absent
};

// optional sign, decimal digits, optional "/digits"
inline ScalarSyntax split_scalar(std::string_view text)
{
    const std::string_view s = trim(text);
    ScalarSyntax out;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        out.negative = s[i] == '-';
        ++i;
    }
    const auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        return j;
    };
    std::size_t j = digits(i);
    if (j == i)
        throw Error(ErrorKind::ParseError, "malformed field value '" + std::string(text) + "'");
    out.num = s.substr(i, j - i);
    if (j < s.size()) {
        if (s[j] != '/')
            throw Error(ErrorKind::ParseError, "malformed field value '" + std::string(text) + "'");
        const std::size_t k = digits(j + 1);
        if (k == j + 1 || k != s.size())
            throw Error(ErrorKind::ParseError, "malformed field value '" + std::string(text) + "'");
        out.den = s.substr(j + 1, k - j - 1);
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Z/pZ
// ---------------------------------------------------------------------------

/// Residue modulo a prime p < 2^32, stored canonically in [0, p-1].
class Zp
{
public:
    Zp(std::uint32_t value, std::uint32_t modulus) noexcept : v_(value % modulus), p_(modulus) {}

    std::uint32_t value() const noexcept { return v_; }
    std::uint32_t modulus() const noexcept { return p_; }
    bool is_zero() const noexcept { return v_ == 0; }

    Zp inverse() const
    {
        if (v_ == 0)
            throw Error(ErrorKind::DivisionByZero, "inverse of zero in Z/" + std::to_string(p_) + "Z");
        // extended Euclid on (v, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = p_, new_r = v_;
        while (new_r != 0) {
            const std::int64_t q = r / new_r;
            t = std::exchange(new_t, t - q * new_t);
            r = std::exchange(new_r, r - q * new_r);
        }
        if (t < 0)
            t += p_;
        return raw(static_cast<std::uint32_t>(t), p_);
    }

    std::string to_string() const { return std::to_string(v_); }

    friend Zp operator+(Zp a, Zp b) noexcept
    {
        std::uint64_t s = std::uint64_t(a.v_) + b.v_;
        if (s >= a.p_)
            s -= a.p_;
        return raw(static_cast<std::uint32_t>(s), a.p_);
    }
    friend Zp operator-(Zp a, Zp b) noexcept
    {
        return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : static_cast<std::uint32_t>(std::uint64_t(a.v_) + a.p_ - b.v_),
                   a.p_);
    }
    friend Zp operator*(Zp a, Zp b) noexcept
    {
        return raw(static_cast<std::uint32_t>(std::uint64_t(a.v_) * b.v_ % a.p_), a.p_);
    }
    friend Zp operator/(Zp a, Zp b) { return a * b.inverse(); }
    Zp operator-() const noexcept { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

    Zp& operator+=(Zp b) noexcept { return *this = *this + b; }
    Zp& operator-=(Zp b) noexcept { return *this = *this - b; }
    Zp& operator*=(Zp b) noexcept { return *this = *this * b; }
    Zp& operator/=(Zp b) { return *this = *this / b; }

    friend bool operator==(Zp a, Zp b) noexcept { return a.v_ == b.v_ && a.p_ == b.p_; }

private:
    static Zp raw(std::uint32_t v, std::uint32_t p) noexcept
    {
        Zp z(0, p);
        z.v_ = v;
        return z;
    }

    std::uint32_t v_;
    std::uint32_t p_;
};

class PrimeField
{
public:
    using value_type = Zp;

    explicit PrimeField(std::uint32_t p) : p_(p)
    {
        if (!is_prime(p))
            throw Error(ErrorKind::InvalidInput, "modulus " + std::to_string(p) + " is not prime");
    }

    std::uint32_t modulus() const noexcept { return p_; }
    FieldSpec spec() const noexcept { return FieldSpec::prime(p_); }

    Zp zero() const noexcept { return Zp(0, p_); }
    Zp one() const noexcept { return Zp(1, p_); }

    Zp from_int(std::int64_t n) const noexcept
    {
        std::int64_t r = n % static_cast<std::int64_t>(p_);
        if (r < 0)
            r += p_;
        return Zp(static_cast<std::uint32_t>(r), p_);
    }

    Zp parse(std::string_view text) const
    {
        const auto syn = detail::split_scalar(text);
        Zp value = reduce_digits(syn.num);
        if (!syn.den.empty()) {
            const Zp den = reduce_digits(syn.den);
            if (den.is_zero()) {
                if (syn.den.find_first_not_of('0') == std::string_view::npos)
                    throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
                throw Error(ErrorKind::FieldMismatch,
                            "denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(p_));
            }
            value = value / den;
        }
        return syn.negative ? -value : value;
    }

    std::string to_string(const Zp& a) const { return a.to_string(); }

    /// Uniform element of the field.
    template <class Rng>
    Zp random(Rng& rng) const
    {
        std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
        return Zp(dist(rng), p_);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    Zp reduce_digits(std::string_view digits) const
    {
        std::uint64_t acc = 0;
        for (char ch : digits)
            acc = (acc * 10 + static_cast<std::uint64_t>(ch - '0')) % p_;
        return Zp(static_cast<std::uint32_t>(acc), p_);
    }

    std::uint32_t p_;
};

// ---------------------------------------------------------------------------
// Q
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational in lowest terms with positive denominator.
class Rational
{
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(long num, long den) : v_(num, den)
    {
        if (den == 0)
            throw Error(ErrorKind::DivisionByZero, "zero denominator");
        v_.canonicalize();
    }
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    const mpq_class& get() const noexcept { return v_; }
    const mpz_class& num() const noexcept { return v_.get_num(); }
    const mpz_class& den() const noexcept { return v_.get_den(); }
    bool is_zero() const noexcept { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational inverse() const
    {
        if (is_zero())
            throw Error(ErrorKind::DivisionByZero, "inverse of zero in Q");
        return from_canonical(mpq_class(1 / v_));
    }

    std::string to_string() const { return v_.get_str(); }

    friend Rational operator+(const Rational& a, const Rational& b) { return from_canonical(a.v_ + b.v_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return from_canonical(a.v_ - b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return from_canonical(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b)
    {
        if (b.is_zero())
            throw Error(ErrorKind::DivisionByZero, "division by zero in Q");
        return from_canonical(a.v_ / b.v_);
    }
    Rational operator-() const { return from_canonical(-v_); }

    Rational& operator+=(const Rational& b) { v_ += b.v_; return *this; }
    Rational& operator-=(const Rational& b) { v_ -= b.v_; return *this; }
    Rational& operator*=(const Rational& b) { v_ *= b.v_; return *this; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }

private:
    // gmp keeps the results of arithmetic canonical
    static Rational from_canonical(mpq_class v)
    {
        Rational r;
        r.v_ = std::move(v);
        return r;
    }

    mpq_class v_;
};

class RationalField
{
public:
    using value_type = Rational;

    FieldSpec spec() const noexcept { return FieldSpec::rational(); }

    Rational zero() const { return Rational(); }
    Rational one() const { return Rational(1); }
    Rational from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }

    Rational parse(std::string_view text) const
    {
        const auto syn = detail::split_scalar(text);
        mpz_class num(std::string(syn.num), 10);
        mpz_class den(1);
        if (!syn.den.empty()) {
            den = mpz_class(std::string(syn.den), 10);
            if (den == 0)
                throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
        }
        if (syn.negative)
            num = -num;
        return Rational(mpq_class(num, den));
    }

    std::string to_string(const Rational& a) const { return a.to_string(); }

    friend bool operator==(const RationalField&, const RationalField&) = default;
};

/// What the algorithms need from a coefficient domain: exact arithmetic and
/// exact zero tests. No ordering, no square roots.
template <class F>
concept ExactField = std::copyable<F> && requires(const F& f, const typename F::value_type& a,
                                                  std::string_view text, std::int64_t n) {
    { f.zero() } -> std::same_as<typename F::value_type>;
    { f.one() } -> std::same_as<typename F::value_type>;
    { f.from_int(n) } -> std::same_as<typename F::value_type>;
    { f.parse(text) } -> std::same_as<typename F::value_type>;
    { f.to_string(a) } -> std::same_as<std::string>;
    { f.spec() } -> std::same_as<FieldSpec>;
    { a.is_zero() } -> std::same_as<bool>;
    { a.inverse() } -> std::same_as<typename F::value_type>;
    { a + a } -> std::same_as<typename F::value_type>;
    { a - a } -> std::same_as<typename F::value_type>;
    { a * a } -> std::same_as<typename F::value_type>;
    { a / a } -> std::same_as<typename F::value_type>;
    { -a } -> std::same_as<typename F::value_type>;
    { a == a } -> std::same_as<bool>;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

template <ExactField F>
using value_t = typename F::value_type;

inline FieldSpec parse_field_spec(std::string_view text)
{
    const std::string_view s = detail::trim(text);
    if (s == "rational" || s == "Q")
        return FieldSpec::rational();
    if (s.starts_with("prime:")) {
        const std::string digits(s.substr(6));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
            throw Error(ErrorKind::ParseError, "bad prime modulus in '" + std::string(text) + "'");
        const std::uint64_t p = std::stoull(digits);
        if (p > 0xFFFFFFFFull || !is_prime(p))
            throw Error(ErrorKind::InvalidInput, "modulus in '" + std::string(text) + "' is not a 32-bit prime");
        return FieldSpec::prime(static_cast<std::uint32_t>(p));
    }
    throw Error(ErrorKind::ParseError, "unknown field '" + std::string(text) + "' (expected rational or prime:p)");
}

} // namespace hbb

#endif
