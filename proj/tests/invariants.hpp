// Structural checks on engine output, shared by the unit tests and the
// acceptance binary. Each returns human-readable violations; empty means ok.
#ifndef HBB_TESTS_INVARIANTS_HPP
#define HBB_TESTS_INVARIANTS_HPP

#include <set>
#include <string>
#include <vector>

#include "hbb/hbb.hpp"
#include "oracles.hpp"

namespace inv {

using namespace hbb;

template <class F>
bool products_inside(const MomentSequence<F>& sigma, const Polynomial<F>& a, const Polynomial<F>& b)
{
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms())
            if (!sigma.contains(ea + eb))
                return false;
    return true;
}

/// Pairing of p with m and q, leading-term shape of p and k, and vanishing
/// of the relations against every admissible monomial.
template <class F>
std::vector<std::string> engine_violations(const MomentSequence<F>& sigma, const BorderBasisResult<F>& res)
{
    std::vector<std::string> out;
    const F& field = res.field;
    const std::size_t r = res.rank();
    if (res.c.size() != r || res.p.size() != r || res.m.size() != r || res.q.size() != r)
        out.push_back("b, c, p, q, m differ in length");
    if (res.k.size() != res.d.size())
        out.push_back("k and d differ in length");
    if (!out.empty())
        return out;

    std::vector<Polynomial<F>> ms;
    for (const auto& m : res.m) {
        if (m.scale.is_zero())
            out.push_back("zero scale in m");
        ms.push_back(m.as_polynomial(field));
    }

    // leading term x^alpha and a tail on earlier elements of b
    auto shape = [&](const Polynomial<F>& p, const Exponent& alpha, const char* what) {
        if (!(p.coeff(alpha) == field.one()))
            out.push_back(std::string(what) + " " + to_string(alpha) + " is not monic in its leading exponent");
        for (const auto& [e, c] : p.terms()) {
            if (e == alpha)
                continue;
            const bool earlier = std::find(res.b.begin(), res.b.end(), e) != res.b.end() && res.order.less(e, alpha);
            if (!earlier)
                out.push_back(std::string(what) + " " + to_string(alpha) + " has a term " + to_string(e) +
                              " outside the earlier basis monomials");
        }
    };
    for (std::size_t i = 0; i < r; ++i)
        shape(res.p[i], res.b[i], "p");
    for (std::size_t i = 0; i < res.k.size(); ++i)
        shape(res.k[i], res.d[i], "k");

    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const auto want = i == j ? field.one() : field.zero();
            if (j <= i && products_inside(sigma, res.p[i], ms[j]) && !(inner(sigma, res.p[i], ms[j]) == want))
                out.push_back("<p_" + std::to_string(i) + ", m_" + std::to_string(j) + "> is wrong");
            if (products_inside(sigma, res.p[i], res.q[j]) && !(inner(sigma, res.p[i], res.q[j]) == want))
                out.push_back("<p_" + std::to_string(i) + ", q_" + std::to_string(j) + "> is wrong");
        }

    for (std::size_t i = 0; i < res.k.size(); ++i)
        for (const auto& gamma : sigma.support()) {
            const auto mono = Polynomial<F>::monomial(field, gamma);
            if (!products_inside(sigma, res.k[i], mono))
                continue;
            if (!inner(sigma, res.k[i], mono).is_zero())
                out.push_back("relation for " + to_string(res.d[i]) + " pairs nonzero with x^" + to_string(gamma));
        }
    return out;
}

/// Commuting tables, relations vanishing on the planted points, rank and
/// (for deglex) b = c, and an exact round trip through the decomposition.
template <class F>
std::vector<std::string> planted_violations(const MomentSequence<F>& sigma, const BorderBasisResult<F>& res,
                                            const MultTables<F>& tables, const oracle::Planted<F>& inst)
{
    std::vector<std::string> out;
    if (!res.certified)
        out.push_back("not certified");
    if (res.rank() != inst.points.size())
        out.push_back("rank " + std::to_string(res.rank()) + " instead of " + std::to_string(inst.points.size()));
    if (!out.empty())
        return out;
    for (std::size_t i = 0; i < tables.nvars(); ++i)
        for (std::size_t j = i + 1; j < tables.nvars(); ++j)
            if (!(tables[i] * tables[j] == tables[j] * tables[i]))
                out.push_back("tables " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
    for (const auto& k : res.k)
        for (const auto& pt : inst.points)
            if (!k.evaluate(pt).is_zero())
                out.push_back("a relation does not vanish at a planted point");
    if (res.order.kind() == OrderKind::deglex &&
        std::set<Exponent>(res.b.begin(), res.b.end()) != std::set<Exponent>(res.c.begin(), res.c.end()))
        out.push_back("b and c differ as sets");

    try {
        const auto dec = decompose(sigma, res, tables);
        const auto back = moments_of_decomposition(sigma.field(), sigma.nvars(), dec, sigma.support());
        if (!(back == sigma))
            out.push_back("decomposition does not reproduce sigma");
        for (std::size_t i = 0; i < inst.points.size(); ++i) {
            const bool found = std::any_of(dec.terms.begin(), dec.terms.end(), [&](const auto& t) {
                return t.point == inst.points[i] && t.weight == inst.weights[i];
            });
            if (!found)
                out.push_back("planted term " + std::to_string(i) + " not recovered");
        }
    } catch (const Error& e) {
        out.push_back(std::string("decompose failed: ") + e.what());
    }
    return out;
}

/// The minimal elements reduce every relation to zero, both by multivariate
/// division and by the normal form.
template <class F>
std::vector<std::string> groebner_violations(const BorderBasisResult<F>& res, const MultTables<F>& tables)
{
    std::vector<std::string> out;
    if (std::set<Exponent>(res.b.begin(), res.b.end()) != std::set<Exponent>(res.c.begin(), res.c.end()))
        out.push_back("b and c differ as sets");
    const auto g = minimal_groebner(res);
    for (const auto& k : res.k) {
        if (!divide_remainder<F>(k, g, res.order).is_zero())
            out.push_back("a relation does not reduce to zero by the minimal elements");
        if (!normal_form(res, tables, k).is_zero())
            out.push_back("a relation has a nonzero normal form");
    }
    return out;
}

} // namespace inv

#endif
