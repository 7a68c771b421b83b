#include <random>
#include <set>

#include <gtest/gtest.h>

#include "invariants.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hbb;
using fx::expect_error;
using fx::P32003;
using fx::Q;

namespace {

using QPoly = Polynomial<RationalField>;

QPoly qpoly(std::size_t n, std::initializer_list<std::pair<Exponent, std::string>> terms)
{
    return fx::poly(Q, n, terms);
}

std::vector<std::vector<Rational>> quartic_points()
{
    return {fx::vals(Q, {"-1", "3"}), fx::vals(Q, {"1", "1"}), fx::vals(Q, {"2", "2"})};
}

template <class F>
void expect_clean(const MomentSequence<F>& sigma, const BorderBasisResult<F>& res)
{
    for (const auto& v : inv::engine_violations(sigma, res))
        ADD_FAILURE() << v;
}

} // namespace

// ---------------------------------------------------------------------------
// Projection and candidate selection
// ---------------------------------------------------------------------------

TEST(Projection, FirstStepOnExponentialSum)
{
    const auto sigma = fx::exp_sum_sequence();
    const std::vector<QPoly> ps{qpoly(2, {{{0, 0}, "1"}})};
    const std::vector<QPoly> ms{qpoly(2, {{{0, 0}, "1/4"}})};
    EXPECT_EQ(proj<RationalField>(sigma, qpoly(2, {{{1, 0}, "1"}}), ps, ms), qpoly(2, {{{1, 0}, "1"}, {{0, 0}, "-5/4"}}));
}

TEST(Projection, SecondStepOnQuarticMoments)
{
    const auto sigma = fx::quartic_sequence();
    const std::vector<QPoly> ps{qpoly(2, {{{0, 0}, "1"}}), qpoly(2, {{{1, 0}, "1"}, {{0, 0}, "-6"}})};
    const std::vector<QPoly> ms{qpoly(2, {{{0, 0}, "-1"}}), qpoly(2, {{{1, 0}, "1/26"}})};
    const auto g = proj<RationalField>(sigma, qpoly(2, {{{0, 1}, "1"}}), ps, ms);
    EXPECT_EQ(g, qpoly(2, {{{0, 1}, "1"}, {{1, 0}, "1/13"}, {{0, 0}, "-32/13"}}));
    for (const auto& m : ms)
        EXPECT_TRUE(inner(sigma, g, m).is_zero());
}

TEST(Projection, EmptyListsAndMismatch)
{
    const auto sigma = fx::exp_sum_sequence();
    const auto f = qpoly(2, {{{1, 1}, "3"}});
    EXPECT_EQ(proj<RationalField>(sigma, f, {}, {}), f);
    const std::vector<QPoly> one{f};
    expect_error(ErrorKind::InvalidInput, [&] { (void)proj<RationalField>(sigma, f, one, {}); });
}

TEST(NextMonomials, AdmissibleBorderMonomials)
{
    const auto ord = MonomialOrder::deglex(3);
    const auto a = simplex_exponents(3, 2);
    const std::vector<Exponent> b{{0, 0, 0}, {1, 0, 0}};
    const std::vector<Exponent> c{{1, 0, 0}, {0, 0, 0}};
    std::vector<Exponent> s;
    for (const auto& e : a)
        if (std::find(b.begin(), b.end(), e) == b.end())
            s.push_back(e);
    const std::vector<Exponent> want{{0, 1, 0}, {0, 0, 1}};
    EXPECT_EQ(next_monomials(b, {}, c, s, a, ord), want);

    EXPECT_EQ(next_monomials({}, {}, {}, a, a, ord), std::vector<Exponent>{Exponent(3)});

    const auto line = simplex_exponents(1, 5);
    const std::vector<Exponent> origin{{0}};
    std::vector<Exponent> rest(line.begin() + 1, line.end());
    for (std::uint32_t d1 = 0; d1 <= 5; ++d1) {
        const std::vector<Exponent> dual{{d1}};
        const auto got = next_monomials(origin, {}, dual, rest, line, MonomialOrder::deglex(1));
        EXPECT_EQ(got.size(), 1 + d1 <= 5 ? 1u : 0u) << d1;
    }
}

// ---------------------------------------------------------------------------
// Worked instances
// ---------------------------------------------------------------------------

TEST(BorderBasis, UnivariateImpulse)
{
    for (std::uint32_t d1 = 0; d1 <= 5; ++d1) {
        const auto sigma = fx::impulse(d1, 2 * d1 + 2);
        const auto res = border_basis(sigma);
        ASSERT_TRUE(res.certified) << d1;
        ASSERT_EQ(res.rank(), d1 + 1);
        for (std::uint32_t i = 0; i <= d1; ++i) {
            EXPECT_EQ(res.b[i], Exponent{i});
            EXPECT_EQ(res.c[i], Exponent{d1 - i});
            EXPECT_EQ(res.m[i].scale, Q.one());
            EXPECT_EQ(res.p[i], QPoly::monomial(Q, Exponent{i}));
        }
        ASSERT_EQ(res.k.size(), 1u);
        EXPECT_EQ(res.k[0], QPoly::monomial(Q, Exponent{d1 + 1}));
        EXPECT_EQ(minimal_groebner(res), res.k);
        expect_clean(sigma, res);
    }
}

TEST(BorderBasis, ExponentialSum)
{
    const auto sigma = fx::exp_sum_sequence();
    const auto res = border_basis(sigma);
    ASSERT_TRUE(res.certified);
    EXPECT_EQ(res.b, (std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_EQ(res.c, (std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_EQ(res.p[0], qpoly(2, {{{0, 0}, "1"}}));
    EXPECT_EQ(res.p[1], qpoly(2, {{{1, 0}, "1"}, {{0, 0}, "-5/4"}}));
    // orthogonality forces +9/5 on x1 here
    EXPECT_EQ(res.p[2], qpoly(2, {{{0, 1}, "1"}, {{1, 0}, "9/5"}, {{0, 0}, "-4"}}));
    EXPECT_EQ(res.d, (std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}}));

    const auto tables = mult_matrices(sigma, res);
    EXPECT_EQ(tables[0], fx::mat(Q, {{"5/4", "-5/16", "0"}, {"1", "91/20", "96/25"}, {"0", "-1", "1/5"}}));
    EXPECT_EQ(charpoly(tables[0]), fx::vals(Q, {"-6", "11", "-6", "1"}));
    const std::vector<std::vector<Rational>> pts{fx::vals(Q, {"1", "1"}), fx::vals(Q, {"2", "2"}),
                                                 fx::vals(Q, {"3", "1"})};
    for (std::size_t k = 0; k < 2; ++k) {
        const auto want = oracle::mult_matrix(Q, res.p, pts, k);
        EXPECT_EQ(tables[k], Matrix<RationalField>::from_rows(Q, want));
    }
    expect_clean(sigma, res);
}

TEST(BorderBasis, QuarticMoments)
{
    const auto sigma = fx::quartic_sequence();
    const auto res = border_basis(sigma);
    ASSERT_TRUE(res.certified);
    EXPECT_EQ(res.b, (std::vector<Exponent>{{0, 0}, {1, 0}, {0, 1}}));
    EXPECT_EQ(std::set<Exponent>(res.c.begin(), res.c.end()), std::set<Exponent>(res.b.begin(), res.b.end()));
    EXPECT_EQ(res.p[1], qpoly(2, {{{1, 0}, "1"}, {{0, 0}, "-6"}}));
    EXPECT_EQ(res.p[2], qpoly(2, {{{0, 1}, "1"}, {{1, 0}, "1/13"}, {{0, 0}, "-32/13"}}));
    const std::vector<QPoly> k{
        qpoly(2, {{{2, 0}, "1"}, {{1, 0}, "-3/2"}, {{0, 1}, "-3/2"}, {{0, 0}, "2"}}),
        qpoly(2, {{{1, 1}, "1"}, {{1, 0}, "-5/2"}, {{0, 1}, "-1/2"}, {{0, 0}, "2"}}),
        qpoly(2, {{{0, 2}, "1"}, {{1, 0}, "1/2"}, {{0, 1}, "-7/2"}, {{0, 0}, "2"}}),
    };
    EXPECT_EQ(res.k, k);
    EXPECT_EQ(minimal_groebner(res).size(), 3u);
    EXPECT_TRUE(certify(res, sigma.support()));
    expect_clean(sigma, res);

    const auto tables = mult_matrices(sigma, res);
    EXPECT_EQ(tables[0], fx::mat(Q, {{"6", "-26", "0"}, {"1", "-60/13", "18/169"}, {"0", "3/2", "8/13"}}));
    EXPECT_EQ(tables[0], Matrix<RationalField>::from_rows(Q, oracle::mult_matrix(Q, res.p, quartic_points(), 0)));

    // the same operator in the monomial basis [1, x2, x1]
    const std::vector<QPoly> mono{qpoly(2, {{{0, 0}, "1"}}), qpoly(2, {{{0, 1}, "1"}}), qpoly(2, {{{1, 0}, "1"}})};
    const auto in_mono = Matrix<RationalField>::from_rows(Q, oracle::mult_matrix(Q, mono, quartic_points(), 0));
    EXPECT_EQ(in_mono, fx::mat(Q, {{"0", "-2", "-2"}, {"0", "1/2", "3/2"}, {"1", "5/2", "3/2"}}));
    Matrix<RationalField> change(Q, 3, 3); // column j: p_j in [1, x2, x1]
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 3; ++i)
            change(i, j) = res.p[j].coeff(mono[i].support().front());
    EXPECT_EQ(change * tables[0], in_mono * change);
}

TEST(BorderBasis, QuarticNormalForms)
{
    const auto sigma = fx::quartic_sequence();
    const auto res = border_basis(sigma);
    const auto tables = mult_matrices(sigma, res);
    EXPECT_EQ(normal_form(res, tables, qpoly(2, {{{2, 0}, "1"}})),
              qpoly(2, {{{1, 0}, "3/2"}, {{0, 1}, "3/2"}, {{0, 0}, "-2"}}));
    const auto in_b = qpoly(2, {{{1, 0}, "7"}, {{0, 1}, "-1/3"}, {{0, 0}, "5"}});
    EXPECT_EQ(normal_form(res, tables, in_b), in_b);

    const auto f = qpoly(2, {{{2, 1}, "1"}});
    std::vector<Rational> values;
    for (const auto& pt : quartic_points())
        values.push_back(f.evaluate(pt));
    const auto want = oracle::interpolate(Q, res.b, quartic_points(), values);
    ASSERT_TRUE(want.has_value());
    EXPECT_EQ(normal_form(res, tables, f), *want);
}

TEST(BorderBasis, SyndromeSequenceLocators)
{
    const auto sigma = fx::syndrome_sequence();
    const auto res = border_basis(sigma);
    EXPECT_EQ(res.b, (std::vector<Exponent>{{0, 0, 0}, {1, 0, 0}}));
    EXPECT_EQ(res.c, (std::vector<Exponent>{{1, 0, 0}, {0, 0, 0}}));
    const std::vector<Polynomial<PrimeField>> k{
        fx::poly(P32003, 3, {{{0, 1, 0}, "1"}, {{1, 0, 0}, "1/2"}, {{0, 0, 0}, "3/2"}}),
        fx::poly(P32003, 3, {{{0, 0, 1}, "1"}, {{0, 0, 0}, "-1"}}),
    };
    EXPECT_EQ(res.k, k);
    // x1^2 and the mixed border monomials never become admissible at degree 2
    EXPECT_FALSE(res.certified);
    EXPECT_NE(res.diagnostic.find("x1^2"), std::string::npos);
    expect_clean(sigma, res);
}

TEST(BorderBasis, ZeroSequence)
{
    const auto sigma = MomentSequence<RationalField>::simplex(Q, 2, 3, [](const Exponent&) { return Q.zero(); });
    const auto res = border_basis(sigma);
    EXPECT_TRUE(res.b.empty());
    EXPECT_EQ(res.d, std::vector<Exponent>{Exponent(2)});
    ASSERT_EQ(res.k.size(), 1u);
    EXPECT_EQ(res.k[0], qpoly(2, {{{0, 0}, "1"}}));
    EXPECT_TRUE(res.certified);
    const auto tables = mult_matrices(sigma, res);
    EXPECT_EQ(tables[0].rows(), 0u);
    EXPECT_TRUE(normal_form(res, tables, qpoly(2, {{{3, 1}, "5"}})).is_zero());
}

TEST(BorderBasis, RankOneTables)
{
    const auto xi = fx::vals(Q, {"7", "-2/3", "5"});
    Decomposition<RationalField> dec;
    dec.terms.push_back({fx::q("5"), xi});
    const auto sigma = moments_of_decomposition(Q, 3, dec, 2);
    const auto res = border_basis(sigma);
    ASSERT_TRUE(res.certified);
    ASSERT_EQ(res.rank(), 1u);
    const auto tables = mult_matrices(sigma, res);
    for (std::size_t k = 0; k < 3; ++k)
        EXPECT_EQ(tables[k], Matrix<RationalField>::from_rows(Q, {{xi[k]}}));
    ASSERT_EQ(res.k.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k)
        EXPECT_EQ(res.k[k], QPoly::variable(Q, 3, k) - QPoly::constant(Q, 3, xi[k]));
}

TEST(BorderBasis, InsufficientDataIsReported)
{
    std::mt19937_64 rng(3);
    auto inst = oracle::random_planted(Q, 2, 6, rng);
    ASSERT_GT(inst.degree, 1u);
    const auto sigma = oracle::moments(Q, 2, inst.points, inst.weights, inst.degree - 1);
    const auto res = border_basis(sigma);
    EXPECT_FALSE(res.certified);
    EXPECT_NE(res.diagnostic.find("insufficient data"), std::string::npos);
    expect_error(ErrorKind::NotCertified, [&] { (void)mult_matrices(sigma, res); });
    expect_error(ErrorKind::NotCertified, [&] { (void)minimal_groebner(res); });
    expect_clean(sigma, res);
}

TEST(BorderBasis, Errors)
{
    const MomentSequence<RationalField> empty(Q, 2, {});
    expect_error(ErrorKind::EmptySupport, [&] { (void)border_basis(empty); });
    expect_error(ErrorKind::InvalidInput,
                 [] { (void)border_basis(fx::exp_sum_sequence(), MonomialOrder::deglex(3)); });
    auto res = border_basis(fx::exp_sum_sequence(), MonomialOrder::deglex(2), BorderBasisOptions{false});
    EXPECT_TRUE(res.q.empty());
    expect_error(ErrorKind::InvalidInput, [&] { (void)mult_matrices(fx::exp_sum_sequence(), res); });
}

TEST(BorderBasis, NonSimplexSupport)
{
    // a box support certified by the explicit product check
    std::vector<std::pair<Exponent, Rational>> m;
    for (std::uint32_t i = 0; i <= 4; ++i)
        for (std::uint32_t j = 0; j <= 4; ++j) {
            const long v = 2 * (1L << i) * 1 + 3 * 1 * (1L << (2 * j));
            m.emplace_back(Exponent{i, j}, Q.from_int(v));
        }
    const MomentSequence<RationalField> sigma(Q, 2, m);
    const auto res = border_basis(sigma);
    EXPECT_EQ(res.rank(), 2u);
    EXPECT_TRUE(res.certified) << res.diagnostic;
    expect_clean(sigma, res);
}

TEST(Certify, BorderMismatchAndCoverage)
{
    const auto sigma = fx::quartic_sequence();
    auto res = border_basis(sigma);
    EXPECT_TRUE(certify(res, sigma.support()));
    auto shorter = res;
    shorter.d.pop_back();
    EXPECT_FALSE(certify(shorter, sigma.support()));
    // b+ and c+ have degree 2 each, so degree 3 data is not enough
    EXPECT_FALSE(certify(res, simplex_exponents(2, 3)));

    BorderBasisResult<RationalField> none{Q, 2, MonomialOrder::deglex(2), {}, {}, {Exponent(2)}, {}, {}, {}, {}, false, {}};
    EXPECT_TRUE(certify(none, simplex_exponents(2, 0)));
}

TEST(Groebner, KeepsOnlyMinimalLeads)
{
    BorderBasisResult<RationalField> res{Q, 2, MonomialOrder::deglex(2), {}, {}, {}, {}, {}, {}, {}, true, {}};
    res.d = {Exponent{2, 0}, Exponent{2, 1}};
    res.k = {qpoly(2, {{{2, 0}, "1"}}), qpoly(2, {{{2, 1}, "1"}})};
    EXPECT_EQ(minimal_groebner(res), std::vector<QPoly>{res.k[0]});
}

TEST(BorderBasis, Deterministic)
{
    std::mt19937_64 rng(8);
    const auto inst = oracle::random_planted(P32003, 3, 7, rng);
    const auto sigma = oracle::moments(P32003, 3, inst.points, inst.weights, inst.degree);
    for (auto kind : {OrderKind::deglex, OrderKind::degrevlex}) {
        const auto ord = MonomialOrder::of_kind(kind, 3);
        EXPECT_TRUE(border_basis(sigma, ord) == border_basis(sigma, ord));
    }
}

// ---------------------------------------------------------------------------
// Random planted instances
// ---------------------------------------------------------------------------

template <class F>
void planted_suite(const F& field, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    for (int t = 0; t < count; ++t) {
        const std::size_t n = 1 + t % 3;
        const std::size_t r = 1 + (t * 5) % 8;
        const auto inst = oracle::random_planted(field, n, r, rng);
        ASSERT_GT(inst.degree, 0u) << "no certifying degree for trial " << t;
        const auto sigma = oracle::moments(field, n, inst.points, inst.weights, inst.degree);
        for (auto kind : {OrderKind::deglex, OrderKind::degrevlex}) {
            const auto res = border_basis(sigma, MonomialOrder::of_kind(kind, n));
            SCOPED_TRACE("trial " + std::to_string(t) + " " + to_string(kind));
            for (const auto& v : inv::engine_violations(sigma, res))
                ADD_FAILURE() << v;
            if (!res.certified)
                continue; // the minimal degree is measured in deglex only
            const auto tables = mult_matrices(sigma, res);
            for (const auto& v : inv::planted_violations(sigma, res, tables, inst))
                ADD_FAILURE() << v;
            if (kind == OrderKind::deglex)
                for (const auto& v : inv::groebner_violations(res, tables))
                    ADD_FAILURE() << v;

            // tables against interpolation, normal forms on random monomials
            for (std::size_t k = 0; k < n; ++k)
                EXPECT_EQ(tables[k], Matrix<F>::from_rows(field, oracle::mult_matrix(field, res.p, inst.points, k)));
            std::uniform_int_distribution<std::uint32_t> e(0, 5);
            for (int s = 0; s < 100; ++s) {
                std::vector<std::uint32_t> alpha(n);
                for (auto& a : alpha)
                    a = e(rng);
                const auto f = Polynomial<F>::monomial(field, Exponent(alpha));
                std::vector<value_t<F>> values;
                for (const auto& pt : inst.points)
                    values.push_back(f.evaluate(pt));
                EXPECT_EQ(normal_form(res, tables, f), *oracle::interpolate(field, res.b, inst.points, values));
            }
        }
    }
}

TEST(BorderBasisProperty, PlantedInstancesOverQ) { planted_suite(Q, 31, 30); }

TEST(BorderBasisProperty, PlantedInstancesOverPrimeField) { planted_suite(P32003, 32, 30); }
