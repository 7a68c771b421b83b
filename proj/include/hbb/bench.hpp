#ifndef HBB_BENCH_HPP
#define HBB_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hbb/border.hpp"
#include "hbb/error.hpp"
#include "hbb/fields.hpp"
#include "hbb/moments.hpp"
#include "hbb/polys.hpp"

namespace hbb {

struct BenchConfig {
    std::uint32_t p = 32003;
    std::vector<std::size_t> nvars{2};
    std::vector<std::size_t> ranks{10};
    std::optional<std::uint32_t> degree; // smallest certifying degree when empty
    std::uint64_t seed = 42;
    unsigned repetitions = 3;

    void validate() const
    {
        if (repetitions < 1)
            throw Error(ErrorKind::InvalidInput, "repetitions must be at least 1");
        if (nvars.empty() || ranks.empty())
            throw Error(ErrorKind::InvalidInput, "bench needs at least one n and one r");
        for (auto n : nvars)
            if (n < 1)
                throw Error(ErrorKind::InvalidInput, "n must be at least 1");
        for (auto r : ranks)
            if (r < 1)
                throw Error(ErrorKind::InvalidInput, "r must be at least 1");
        if (!is_prime(p))
            throw Error(ErrorKind::InvalidInput, "bench modulus must be prime");
    }
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t r = 0;
    std::uint32_t degree = 0;
    std::size_t moments = 0;
    double seconds = 0.0;
    bool certified = false;
    std::size_t rank = 0;
};

/// r distinct uniform points of (Z/pZ)^n, by rejection. The stream depends only
/// on (seed, n, r).
inline std::vector<std::vector<Zp>> bench_points(const PrimeField& field, std::size_t n, std::size_t r,
                                                 std::uint64_t seed)
{
    long double space = 1;
    for (std::size_t i = 0; i < n; ++i)
        space *= field.modulus();
    if (static_cast<long double>(r) > space)
        throw Error(ErrorKind::InvalidInput, "more points requested than the space holds");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<Zp>> out;
    while (out.size() < r) {
        std::vector<Zp> pt;
        std::vector<std::uint32_t> key;
        for (std::size_t i = 0; i < n; ++i) {
            pt.push_back(field.random(rng));
            key.push_back(pt.back().value());
        }
        if (seen.insert(key).second)
            out.push_back(std::move(pt));
    }
    return out;
}

/// 2(k + 1) for the smallest k with binom(k + n, n) >= r: below it the border of
/// b cannot fit twice into the simplex.
inline std::uint32_t bench_degree_lower_bound(std::size_t n, std::size_t r)
{
    std::uint32_t k = 0;
    for (;; ++k) {
        unsigned __int128 count = 1;
        for (std::size_t i = 1; i <= n; ++i)
            count = count * (k + i) / i;
        if (count >= r)
            break;
    }
    return 2 * (k + 1);
}

inline MomentSequence<PrimeField> bench_sequence(const PrimeField& field, const std::vector<std::vector<Zp>>& points,
                                                 std::size_t n, std::uint32_t degree)
{
    Decomposition<PrimeField> dec;
    for (const auto& pt : points)
        dec.terms.push_back({field.one(), pt});
    return moments_of_decomposition(field, n, dec, degree);
}

/// One (n, r) measurement: degree search (untimed), then the median wall time
/// of border_basis over the repetitions.
inline BenchRow bench_one(const BenchConfig& cfg, std::size_t n, std::size_t r)
{
    const PrimeField field(cfg.p);
    const auto points = bench_points(field, n, r, cfg.seed);
    const auto order = MonomialOrder::deglex(n);

    auto good = [&](const BorderBasisResult<PrimeField>& res) { return res.certified && res.rank() == r; };

    std::uint32_t degree = 0;
    if (cfg.degree) {
        degree = *cfg.degree;
    } else {
        const std::uint32_t lo = bench_degree_lower_bound(n, r);
        bool found = false;
        for (degree = lo; degree <= 2 * lo + 4; ++degree) {
            if (good(border_basis(bench_sequence(field, points, n, degree), order))) {
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorKind::BenchFailure, "no certifying degree found for n=" + std::to_string(n) +
                                                     ", r=" + std::to_string(r));
    }

    const auto sigma = bench_sequence(field, points, n, degree);
    std::vector<double> times;
    BenchRow row{n, r, degree, sigma.size(), 0.0, false, 0};
    for (unsigned rep = 0; rep < cfg.repetitions; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto res = border_basis(sigma, order);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
        row.certified = res.certified;
        row.rank = res.rank();
        if (!good(res))
            throw Error(ErrorKind::BenchFailure, "run n=" + std::to_string(n) + ", r=" + std::to_string(r) +
                                                     ", D=" + std::to_string(degree) +
                                                     (res.certified ? " has rank " + std::to_string(res.rank())
                                                                    : " is not certified"));
    }
    std::sort(times.begin(), times.end());
    const std::size_t m = times.size();
    row.seconds = m % 2 ? times[m / 2] : (times[m / 2 - 1] + times[m / 2]) / 2;
    return row;
}

inline std::vector<BenchRow> bench(const BenchConfig& cfg)
{
    cfg.validate();
    std::vector<BenchRow> rows;
    for (auto n : cfg.nvars)
        for (auto r : cfg.ranks)
            rows.push_back(bench_one(cfg, n, r));
    return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows)
{
    out << "n,r,D,s,wall_time_s,certified\n";
    for (const auto& row : rows)
        out << row.n << ',' << row.r << ',' << row.degree << ',' << row.moments << ',' << row.seconds << ','
            << (row.certified ? "true" : "false") << '\n';
}

} // namespace hbb

#endif
