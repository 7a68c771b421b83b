#ifndef HBB_TESTS_SUPPORT_HPP
#define HBB_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "hbb/hbb.hpp"

namespace fx {

using hbb::Exponent;
using hbb::Polynomial;
using hbb::PrimeField;
using hbb::Rational;
using hbb::RationalField;
using hbb::Zp;

inline const RationalField Q{};
inline const PrimeField P32003{32003};

inline Rational q(const std::string& s) { return Q.parse(s); }
inline Zp fp(const std::string& s) { return P32003.parse(s); }

template <class F>
Polynomial<F> poly(const F& field, std::size_t n, std::initializer_list<std::pair<Exponent, std::string>> terms)
{
    Polynomial<F> p(field, n);
    for (const auto& [e, c] : terms)
        p.add_term(e, field.parse(c));
    return p;
}

template <class F>
std::vector<hbb::value_t<F>> vals(const F& field, std::initializer_list<std::string> xs)
{
    std::vector<hbb::value_t<F>> out;
    for (const auto& x : xs)
        out.push_back(field.parse(x));
    return out;
}

template <class F>
hbb::Matrix<F> mat(const F& field, std::initializer_list<std::initializer_list<std::string>> rows)
{
    std::vector<std::vector<hbb::value_t<F>>> r;
    for (const auto& row : rows)
        r.push_back(vals(field, row));
    return hbb::Matrix<F>::from_rows(field, r);
}

inline std::string data(const std::string& name) { return std::string(HBB_DATA_DIR) + "/" + name; }

// sigma_alpha = 2 + 3 * 2^(a1 + a2) - 3^a1 on |alpha| <= 4
inline hbb::MomentSequence<RationalField> exp_sum_sequence()
{
    return hbb::MomentSequence<RationalField>::simplex(Q, 2, 4, [](const Exponent& a) {
        long v = 2 + 3 * (1L << (a[0] + a[1]));
        long p3 = 1;
        for (unsigned i = 0; i < a[0]; ++i)
            p3 *= 3;
        return Q.from_int(v - p3);
    });
}

inline hbb::SymmetricTensor<RationalField> quartic_tensor()
{
    return hbb::io::tensor_from_json(Q, hbb::io::read_json_file(data("quartic_tensor.json")));
}

inline hbb::MomentSequence<RationalField> quartic_sequence() { return hbb::tensor_to_moments(quartic_tensor()); }

inline hbb::MomentSequence<PrimeField> syndrome_sequence()
{
    return hbb::io::sequence_from_json(P32003, hbb::io::read_json_file(data("syndrome_sequence.json")));
}

inline hbb::CodeSpec<PrimeField> ternary_code(bool alt)
{
    return hbb::io::code_from_json(P32003,
                                   hbb::io::read_json_file(data(alt ? "ternary_code_alt.json" : "ternary_code.json")));
}

inline std::vector<Zp> received_word()
{
    return vals(P32003, {"0", "3", "3", "3", "0", "0", "-6", "-2", "0", "-1", "0"});
}

/// sigma_k = 1 at k = d1, 0 elsewhere on {0..d}.
inline hbb::MomentSequence<RationalField> impulse(std::uint32_t d1, std::uint32_t d)
{
    return hbb::MomentSequence<RationalField>::simplex(
        Q, 1, d, [&](const Exponent& a) { return Q.from_int(a[0] == d1 ? 1 : 0); });
}

template <class E>
void expect_error(hbb::ErrorKind kind, E&& fn)
{
    try {
        fn();
        ADD_FAILURE() << "expected " << hbb::to_string(kind);
    } catch (const hbb::Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

} // namespace fx

#endif
