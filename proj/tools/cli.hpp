#ifndef HBB_TOOLS_CLI_HPP
#define HBB_TOOLS_CLI_HPP

#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hbb/hbb.hpp"

namespace hbb::cli {

using io::json;

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2 };

inline bool is_input_error(ErrorKind kind)
{
    return kind == ErrorKind::ParseError || kind == ErrorKind::InvalidInput || kind == ErrorKind::EmptySupport;
}

template <class Fn>
json with_field(const FieldSpec& spec, Fn&& fn)
{
    if (spec.kind == FieldKind::rational)
        return fn(RationalField{});
    return fn(PrimeField(spec.p));
}

inline std::vector<long> parse_long_list(const std::string& text)
{
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad integer '" + item + "' in list '" + text + "'");
        }
    }
    if (out.empty())
        throw Error(ErrorKind::ParseError, "empty list");
    return out;
}

struct Options {
    std::string input;
    std::string output;
    std::string order = "deglex";
    std::string field;
    std::uint64_t seed = 0;
    std::optional<std::uint32_t> degree;
    std::string csv;
    std::string zeta;
    std::string word;
    std::string nvars = "2";
    std::string ranks = "10";
    unsigned reps = 3;
    bool parallel = false;
};

/// Run one subcommand. Results go to --output (default `out`), diagnostics to
/// `err`. Returns 0, 1 for domain errors, 2 for usage and input errors.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Border bases of Hankel kernels and their decompositions", "hbb"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input,-i", o.input, "input JSON file");
        if (needs_input)
            in->required();
        sub->add_option("--output,-o", o.output, "output file (default: stdout)");
        sub->add_option("--order", o.order, "monomial order")->check(CLI::IsMember({"deglex", "degrevlex"}));
        sub->add_option("--field", o.field, "override the field: rational or prime:p");
        sub->add_option("--seed", o.seed, "seed for random combinations");
    };

    auto* bb = app.add_subcommand("borderbasis", "border basis of a moment sequence");
    add_common(bb, true);
    auto* dc = app.add_subcommand("decompose", "points and weights of a moment sequence");
    add_common(dc, true);
    auto* pr = app.add_subcommand("prony", "exponential sum recovery from grid samples");
    add_common(pr, true);
    auto* ip = app.add_subcommand("interpolate", "sparse interpolation from samples at powers of zeta");
    add_common(ip, true);
    ip->add_option("--zeta", o.zeta, "comma-separated integer bases")->required();
    auto* tn = app.add_subcommand("tensor", "Waring decomposition of a symmetric tensor");
    add_common(tn, true);
    auto* de = app.add_subcommand("decode", "syndrome decoding of a received word");
    add_common(de, true);
    de->add_option("--word", o.word, "received word, comma-separated (default: the input's \"word\")");
    auto* va = app.add_subcommand("vanishing", "vanishing ideal and interpolants of points");
    add_common(va, true);
    va->add_option("--degree", o.degree, "degree of the moment simplex");
    auto* be = app.add_subcommand("bench", "timing of the border basis on random points");
    add_common(be, false);
    be->add_option("--degree", o.degree, "fixed degree (default: smallest certifying)");
    be->add_option("--csv", o.csv, "CSV output file (default: --output or stdout)");
    be->add_option("--nvars", o.nvars, "comma-separated numbers of variables");
    be->add_option("--ranks", o.ranks, "comma-separated numbers of points");
    be->add_option("--reps", o.reps, "repetitions per measurement")->check(CLI::PositiveNumber);
    be->add_flag("--parallel-trials", o.parallel, "run measurements concurrently (timings unreliable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return usage_error;
    }

    auto emit = [&](const std::string& text) {
        if (o.output.empty()) {
            out << text << "\n";
            return;
        }
        std::ofstream f(o.output);
        if (!f)
            throw Error(ErrorKind::InvalidInput, "cannot write '" + o.output + "'");
        f << text << "\n";
    };

    try {
        const auto order_kind = io::order_kind_from_string(o.order);
        DecomposeOptions dopts;
        dopts.seed = o.seed;

        if (be->parsed()) {
            BenchConfig cfg;
            cfg.seed = o.seed ? o.seed : cfg.seed;
            if (!o.field.empty()) {
                const auto spec = parse_field_spec(o.field);
                if (spec.kind != FieldKind::prime)
                    throw Error(ErrorKind::InvalidInput, "bench runs over a prime field");
                cfg.p = spec.p;
            }
            cfg.nvars.clear();
            for (long v : parse_long_list(o.nvars))
                cfg.nvars.push_back(static_cast<std::size_t>(std::max(0L, v)));
            cfg.ranks.clear();
            for (long v : parse_long_list(o.ranks))
                cfg.ranks.push_back(static_cast<std::size_t>(std::max(0L, v)));
            cfg.degree = o.degree;
            cfg.repetitions = o.reps;
            cfg.validate();
            std::vector<BenchRow> rows;
            if (o.parallel) {
                std::vector<std::future<BenchRow>> jobs;
                for (auto n : cfg.nvars)
                    for (auto r : cfg.ranks)
                        jobs.push_back(std::async(std::launch::async, [&cfg, n, r] { return bench_one(cfg, n, r); }));
                for (auto& j : jobs)
                    rows.push_back(j.get());
            } else {
                rows = bench(cfg);
            }
            std::ostringstream csv;
            write_bench_csv(csv, rows);
            if (!o.csv.empty()) {
                std::ofstream f(o.csv);
                if (!f)
                    throw Error(ErrorKind::InvalidInput, "cannot write '" + o.csv + "'");
                f << csv.str();
            } else {
                std::string text = csv.str();
                text.pop_back();
                emit(text);
            }
            return ok;
        }

        const json doc = io::read_json_file(o.input);
        const FieldSpec spec = o.field.empty() ? io::field_spec_of(doc) : parse_field_spec(o.field);

        json result = with_field(spec, [&](const auto& field) -> json {
            using F = std::decay_t<decltype(field)>;

            if (bb->parsed()) {
                const auto sigma = io::sequence_from_json(field, doc);
                const auto res = border_basis(sigma, MonomialOrder::of_kind(order_kind, sigma.nvars()));
                if (!res.certified)
                    return io::to_json(res);
                const auto tables = mult_matrices(sigma, res);
                return io::to_json(res, &tables);
            }
            if (dc->parsed() || pr->parsed()) {
                const auto sigma = io::sequence_from_json(field, doc);
                const auto order = MonomialOrder::of_kind(order_kind, sigma.nvars());
                return io::to_json(field, dc->parsed() ? decompose(sigma, order, dopts)
                                                       : prony_grid(sigma, order, dopts));
            }
            if (ip->parsed()) {
                if constexpr (std::is_same_v<F, RationalField>) {
                    const auto sigma = io::sequence_from_json(field, doc);
                    return io::to_json(sparse_interpolate(sigma, parse_long_list(o.zeta),
                                                          MonomialOrder::of_kind(order_kind, sigma.nvars()), dopts));
                } else {
                    throw Error(ErrorKind::UnsupportedField, "sparse interpolation runs over the rationals");
                }
            }
            if (tn->parsed()) {
                const auto t = io::tensor_from_json(field, doc);
                return io::to_json(field, tensor_decompose(t, MonomialOrder::of_kind(order_kind, t.nvars - 1), dopts));
            }
            if (de->parsed()) {
                const auto code = io::code_from_json(field, doc);
                std::vector<value_t<F>> word;
                if (!o.word.empty())
                    word = io::parse_word(field, o.word);
                else if (doc.contains("word"))
                    word = io::point_from_json(field, doc.at("word"));
                else
                    throw Error(ErrorKind::InvalidInput, "no received word (use --word or a \"word\" member)");
                return io::to_json(field, decode(code, word, MonomialOrder::of_kind(order_kind, code.nvars())));
            }
            // vanishing
            const auto points = io::points_from_json(field, io::detail::member(doc, "points"));
            std::optional<std::uint32_t> degree = o.degree;
            if (!degree && doc.contains("degree"))
                degree = static_cast<std::uint32_t>(io::detail::unsigned_member(doc, "degree"));
            if (!degree)
                throw Error(ErrorKind::InvalidInput, "no degree given (use --degree or a \"degree\" member)");
            std::optional<std::vector<value_t<F>>> weights;
            if (doc.contains("weights"))
                weights = io::point_from_json(field, doc.at("weights"));
            if (points.empty())
                throw Error(ErrorKind::InvalidInput, "no points");
            return io::to_json(vanishing_ideal(field, points, *degree,
                                               MonomialOrder::of_kind(order_kind, points.front().size()), weights,
                                               dopts));
        });
        emit(result.dump(2));
        return ok;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        try {
            emit(io::error_to_json(e).dump(2));
        } catch (const Error&) {
            out << io::error_to_json(e).dump(2) << "\n";
        }
        return is_input_error(e.kind()) ? usage_error : domain_error;
    } catch (const io::json::exception& e) {
        err << "error: " << e.what() << "\n";
        out << io::error_to_json(Error(ErrorKind::ParseError, e.what())).dump(2) << "\n";
        return usage_error;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"hbb"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace hbb::cli

#endif
