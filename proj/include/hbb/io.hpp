#ifndef HBB_IO_HPP
#define HBB_IO_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hbb/apps.hpp"
#include "hbb/border.hpp"
#include "hbb/decomp.hpp"
#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/moments.hpp"
#include "hbb/polys.hpp"

namespace hbb::io {

using json = nlohmann::json;

inline json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str());
}

namespace detail {

inline const json& member(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::uint64_t unsigned_member(const json& j, const char* key)
{
    const json& v = member(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw Error(ErrorKind::ParseError, std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Scalars, field specs, exponents
// ---------------------------------------------------------------------------

inline json to_json(const FieldSpec& spec)
{
    if (spec.kind == FieldKind::rational)
        return {{"type", "rational"}};
    return {{"type", "prime"}, {"p", spec.p}};
}

/// {"type":"rational"}, {"type":"prime","p":p}, or the strings "rational" /
/// "prime:p".
inline FieldSpec field_spec_from_json(const json& j)
{
    if (j.is_string())
        return parse_field_spec(j.get<std::string>());
    const json& type = detail::member(j, "type");
    if (!type.is_string())
        throw Error(ErrorKind::ParseError, "field type must be a string");
    const auto t = type.get<std::string>();
    if (t == "rational")
        return FieldSpec::rational();
    if (t == "prime") {
        const auto p = detail::unsigned_member(j, "p");
        if (p > 0xFFFFFFFFull || !is_prime(p))
            throw Error(ErrorKind::InvalidInput, "modulus " + std::to_string(p) + " is not a 32-bit prime");
        return FieldSpec::prime(static_cast<std::uint32_t>(p));
    }
    throw Error(ErrorKind::ParseError, "unknown field type '" + t + "'");
}

template <ExactField F>
value_t<F> value_from_json(const F& field, const json& j)
{
    if (j.is_string())
        return field.parse(j.get<std::string>());
    if (j.is_number_integer())
        return field.parse(j.dump());
    throw Error(ErrorKind::ParseError, "field value must be a string or an integer, got " + j.dump());
}

template <ExactField F>
json value_to_json(const F& field, const value_t<F>& v)
{
    return field.to_string(v);
}

inline json to_json(const Exponent& e) { return e.data(); }

inline Exponent exponent_from_json(const json& j, std::size_t nvars)
{
    if (!j.is_array() || j.size() != nvars)
        throw Error(ErrorKind::ParseError, "exponent " + j.dump() + " must be an array of " + std::to_string(nvars) +
                                               " non-negative integers");
    std::vector<std::uint32_t> e;
    for (const auto& v : j) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 0xFFFFFFF)
            throw Error(ErrorKind::ParseError, "bad exponent entry " + v.dump());
        e.push_back(v.get<std::uint32_t>());
    }
    return Exponent(std::move(e));
}

inline json to_json(const std::vector<Exponent>& es)
{
    json out = json::array();
    for (const auto& e : es)
        out.push_back(to_json(e));
    return out;
}

inline std::vector<Exponent> exponents_from_json(const json& j, std::size_t nvars)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "expected an array of exponents");
    std::vector<Exponent> out;
    for (const auto& e : j)
        out.push_back(exponent_from_json(e, nvars));
    return out;
}

template <ExactField F>
json point_to_json(const F& field, const std::vector<value_t<F>>& pt)
{
    json out = json::array();
    for (const auto& v : pt)
        out.push_back(value_to_json(field, v));
    return out;
}

template <ExactField F>
std::vector<value_t<F>> point_from_json(const F& field, const json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "a point must be an array of field values");
    std::vector<value_t<F>> out;
    for (const auto& v : j)
        out.push_back(value_from_json(field, v));
    return out;
}

/// Comma-separated field values, e.g. "0,3,3,-1".
template <ExactField F>
std::vector<value_t<F>> parse_word(const F& field, const std::string& text)
{
    std::vector<value_t<F>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(field.parse(item));
    if (out.empty())
        throw Error(ErrorKind::ParseError, "empty word");
    return out;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

template <ExactField F>
json to_json(const Polynomial<F>& p)
{
    json out = json::array();
    for (const auto& [e, c] : p.terms())
        out.push_back({{"alpha", to_json(e)}, {"coeff", value_to_json(p.field(), c)}});
    return out;
}

template <ExactField F>
Polynomial<F> polynomial_from_json(const F& field, std::size_t nvars, const json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "a polynomial must be an array of terms");
    Polynomial<F> p(field, nvars);
    for (const auto& t : j)
        p.add_term(exponent_from_json(detail::member(t, "alpha"), nvars),
                   value_from_json(field, detail::member(t, "coeff")));
    return p;
}

template <ExactField F>
json to_json(const std::vector<Polynomial<F>>& ps)
{
    json out = json::array();
    for (const auto& p : ps)
        out.push_back(to_json(p));
    return out;
}

template <ExactField F>
std::vector<Polynomial<F>> polynomials_from_json(const F& field, std::size_t nvars, const json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "expected an array of polynomials");
    std::vector<Polynomial<F>> out;
    for (const auto& p : j)
        out.push_back(polynomial_from_json(field, nvars, p));
    return out;
}

// ---------------------------------------------------------------------------
// Moment sequences
// ---------------------------------------------------------------------------

/// Field spec of a document: the "field" member, or rational when absent.
inline FieldSpec field_spec_of(const json& doc)
{
    if (doc.is_object() && doc.contains("field"))
        return field_spec_from_json(doc.at("field"));
    return FieldSpec::rational();
}

template <ExactField F>
json to_json(const MomentSequence<F>& s)
{
    json moments = json::array();
    for (std::size_t id = 0; id < s.size(); ++id)
        moments.push_back({{"alpha", to_json(s.support()[id])}, {"value", value_to_json(s.field(), s.value_at(id))}});
    return {{"nvars", s.nvars()}, {"field", to_json(s.field().spec())}, {"moments", moments}};
}

/// {"nvars", "field", "moments":[{"alpha","value"}]}; with a "degree" member
/// the support is the whole simplex and unlisted moments are 0.
template <ExactField F>
MomentSequence<F> sequence_from_json(const F& field, const json& j)
{
    const std::size_t n = detail::unsigned_member(j, "nvars");
    if (n == 0)
        throw Error(ErrorKind::InvalidInput, "nvars must be positive");
    const json& list = detail::member(j, "moments");
    if (!list.is_array())
        throw Error(ErrorKind::ParseError, "'moments' must be an array");
    std::vector<std::pair<Exponent, value_t<F>>> entries;
    for (const auto& m : list)
        entries.emplace_back(exponent_from_json(detail::member(m, "alpha"), n),
                             value_from_json(field, detail::member(m, "value")));

    if (!j.contains("degree"))
        return MomentSequence<F>(field, n, std::move(entries));

    const auto degree = detail::unsigned_member(j, "degree");
    std::map<Exponent, value_t<F>> given;
    for (auto& [e, v] : entries) {
        if (e.degree() > degree)
            throw Error(ErrorKind::InvalidInput, "moment " + to_string(e) + " lies outside the degree " +
                                                     std::to_string(degree) + " simplex");
        if (!given.emplace(e, v).second)
            throw Error(ErrorKind::InvalidInput, "duplicate moment " + to_string(e));
    }
    return MomentSequence<F>::simplex(field, n, static_cast<std::uint32_t>(degree), [&](const Exponent& e) {
        auto it = given.find(e);
        return it == given.end() ? field.zero() : it->second;
    });
}

// ---------------------------------------------------------------------------
// Matrices, border basis results
// ---------------------------------------------------------------------------

template <ExactField F>
json to_json(const Matrix<F>& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(value_to_json(m.field(), m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <ExactField F>
Matrix<F> matrix_from_json(const F& field, const json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "a matrix must be an array of rows");
    std::vector<std::vector<value_t<F>>> rows;
    for (const auto& r : j)
        rows.push_back(point_from_json(field, r));
    return Matrix<F>::from_rows(field, rows);
}

inline json to_json(const MonomialOrder& ord)
{
    return to_string(ord.kind());
}

inline OrderKind order_kind_from_string(const std::string& s)
{
    if (s == "deglex")
        return OrderKind::deglex;
    if (s == "degrevlex")
        return OrderKind::degrevlex;
    throw Error(ErrorKind::ParseError, "unknown monomial order '" + s + "'");
}

template <ExactField F>
json to_json(const BorderBasisResult<F>& res, const MultTables<F>* tables = nullptr)
{
    json m = json::array();
    for (const auto& sm : res.m)
        m.push_back({{"alpha", to_json(sm.exponent)}, {"scale", value_to_json(res.field, sm.scale)}});
    json out = {{"r", res.rank()},
                {"nvars", res.nvars},
                {"field", to_json(res.field.spec())},
                {"order", to_json(res.order)},
                {"ranking", res.order.ranking()},
                {"b", to_json(res.b)},
                {"c", to_json(res.c)},
                {"d", to_json(res.d)},
                {"p", to_json(res.p)},
                {"q", to_json(res.q)},
                {"m", m},
                {"k", to_json(res.k)},
                {"certified", res.certified}};
    if (!res.diagnostic.empty())
        out["diagnostic"] = res.diagnostic;
    if (tables) {
        json mats = json::array();
        for (const auto& mk : tables->matrices)
            mats.push_back(to_json(mk));
        out["matrices"] = mats;
    }
    return out;
}

template <ExactField F>
BorderBasisResult<F> result_from_json(const F& field, const json& j)
{
    const std::size_t n = detail::unsigned_member(j, "nvars");
    const auto kind = order_kind_from_string(detail::member(j, "order").get<std::string>());
    std::vector<std::size_t> ranking;
    if (j.contains("ranking"))
        ranking = j.at("ranking").get<std::vector<std::size_t>>();
    else
        ranking = MonomialOrder::of_kind(kind, n).ranking();
    BorderBasisResult<F> res{field, n, MonomialOrder(kind, ranking), {}, {}, {}, {}, {}, {}, {}, false, {}};
    res.b = exponents_from_json(detail::member(j, "b"), n);
    res.c = exponents_from_json(detail::member(j, "c"), n);
    res.d = exponents_from_json(detail::member(j, "d"), n);
    res.p = polynomials_from_json(field, n, detail::member(j, "p"));
    res.q = polynomials_from_json(field, n, detail::member(j, "q"));
    res.k = polynomials_from_json(field, n, detail::member(j, "k"));
    for (const auto& sm : detail::member(j, "m"))
        res.m.push_back({exponent_from_json(detail::member(sm, "alpha"), n),
                         value_from_json(field, detail::member(sm, "scale"))});
    res.certified = detail::member(j, "certified").get<bool>();
    if (j.contains("diagnostic"))
        res.diagnostic = j.at("diagnostic").get<std::string>();
    return res;
}

// ---------------------------------------------------------------------------
// Decompositions, tensors, codes, sparse terms
// ---------------------------------------------------------------------------

/// Terms in canonical order.
template <ExactField F>
json to_json(const F& field, Decomposition<F> dec)
{
    canonicalize(field, dec);
    json terms = json::array();
    for (const auto& t : dec.terms)
        terms.push_back({{"weight", value_to_json(field, t.weight)}, {"point", point_to_json(field, t.point)}});
    return {{"rank", dec.rank()}, {"terms", terms}};
}

template <ExactField F>
Decomposition<F> decomposition_from_json(const F& field, const json& j)
{
    Decomposition<F> dec;
    for (const auto& t : detail::member(j, "terms"))
        dec.terms.push_back(
            {value_from_json(field, detail::member(t, "weight")), point_from_json(field, detail::member(t, "point"))});
    return dec;
}

template <ExactField F>
json to_json(const SymmetricTensor<F>& t)
{
    json terms = json::array();
    for (const auto& [e, c] : t.coeffs)
        terms.push_back({{"alpha", to_json(e)}, {"coeff", value_to_json(t.field, c)}});
    return {{"degree", t.degree}, {"nvars", t.nvars}, {"field", to_json(t.field.spec())}, {"terms", terms}};
}

/// {"degree":d, "nvars":n+1, "terms":[{"alpha","coeff"}]} with raw
/// polynomial coefficients.
template <ExactField F>
SymmetricTensor<F> tensor_from_json(const F& field, const json& j)
{
    SymmetricTensor<F> t{field, static_cast<std::uint32_t>(detail::unsigned_member(j, "degree")),
                         detail::unsigned_member(j, "nvars"), {}};
    for (const auto& term : detail::member(j, "terms")) {
        auto e = exponent_from_json(detail::member(term, "alpha"), t.nvars);
        auto c = value_from_json(field, detail::member(term, "coeff"));
        if (c.is_zero())
            continue;
        if (!t.coeffs.emplace(e, c).second)
            throw Error(ErrorKind::InvalidInput, "duplicate tensor term " + to_string(e));
    }
    t.validate();
    return t;
}

template <ExactField F>
std::vector<std::vector<value_t<F>>> points_from_json(const F& field, const json& j)
{
    if (!j.is_array())
        throw Error(ErrorKind::ParseError, "'points' must be an array of points");
    std::vector<std::vector<value_t<F>>> out;
    for (const auto& p : j)
        out.push_back(point_from_json(field, p));
    return out;
}

template <ExactField F>
json points_to_json(const F& field, const std::vector<std::vector<value_t<F>>>& pts)
{
    json out = json::array();
    for (const auto& p : pts)
        out.push_back(point_to_json(field, p));
    return out;
}

template <ExactField F>
json to_json(const CodeSpec<F>& code)
{
    return {{"field", to_json(code.field.spec())},
            {"points", points_to_json(code.field, code.points)},
            {"degree", code.degree}};
}

/// {"field", "points":[[...],...], "degree"}; an optional "word" member is
/// ignored here.
template <ExactField F>
CodeSpec<F> code_from_json(const F& field, const json& j)
{
    CodeSpec<F> code{field, points_from_json(field, detail::member(j, "points")),
                     static_cast<std::uint32_t>(detail::unsigned_member(j, "degree"))};
    code.validate();
    return code;
}

/// Positions are reported 1-based.
template <ExactField F>
json to_json(const F& field, const DecodeResult<F>& r)
{
    json errors = json::array();
    for (std::size_t i = 0; i < r.positions.size(); ++i)
        errors.push_back({{"position", r.positions[i] + 1}, {"value", value_to_json(field, r.values[i])}});
    return {{"corrected", point_to_json(field, r.corrected)},
            {"errors", errors},
            {"locators", to_json(r.locators)},
            {"certified", r.certified}};
}

inline json to_json(const std::vector<SparseTerm<RationalField>>& terms)
{
    const RationalField q;
    json out = json::array();
    for (const auto& t : terms)
        out.push_back({{"weight", value_to_json(q, t.weight)}, {"exponent", t.exponent}});
    return {{"terms", out}};
}

inline std::vector<SparseTerm<RationalField>> sparse_terms_from_json(const json& j)
{
    const RationalField q;
    std::vector<SparseTerm<RationalField>> out;
    for (const auto& t : detail::member(j, "terms"))
        out.push_back({value_from_json(q, detail::member(t, "weight")),
                       detail::member(t, "exponent").get<std::vector<std::uint64_t>>()});
    return out;
}

template <ExactField F>
json to_json(const VanishingResult<F>& v)
{
    return {{"generators", to_json(v.generators)},
            {"interpolants", to_json(v.interpolants)},
            {"b", to_json(v.basis.b)},
            {"certified", v.basis.certified}};
}

inline json error_to_json(const Error& e)
{
    return {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
}

} // namespace hbb::io

#endif
