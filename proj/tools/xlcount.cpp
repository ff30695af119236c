//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount.cpp
//! Command-line front end: validate, estimate, fit, predict, bootstrap and
//! compare claim-count triangles.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlcount/bootstrap.hpp"
#include "xlcount/distributions.hpp"
#include "xlcount/error.hpp"
#include "xlcount/estimators.hpp"
#include "xlcount/json.hpp"
#include "xlcount/model_selection.hpp"
#include "xlcount/prediction.hpp"
#include "xlcount/triangle.hpp"

#ifndef XLCOUNT_DATA_DIR
#    define XLCOUNT_DATA_DIR "data"
#endif

namespace
{
using namespace xlcount;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

//! Failure reading or parsing inputs, reported with exit code 2
struct InputError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
// OPTIONS
//---------------------------------------------------------------------------//
struct CommonOptions
{
    std::string n_file;
    std::string d_file;
    std::string exposure_file;
    int example = 0;
    std::string out;
    bool json = false;
};

struct PredictOptions
{
    std::string model = "auto";
    std::vector<std::string> target{"next-year"};
    std::optional<double> next_exposure;
    std::string pmf_csv;
};

struct BootstrapOptions
{
    std::string model = "auto";
    std::int64_t sims = 100000;
    std::uint64_t seed = 0;
    std::vector<std::string> target{"next-year"};
    std::optional<double> next_exposure;
    bool fast_ultimate = false;
    std::string hist;
    int threads = 1;
    bool observed_delta = true;
};

void add_common(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--n-file", opts.n_file, "New-claims triangle CSV (origin,dev,value)");
    cmd->add_option("--d-file", opts.d_file, "Drops triangle CSV (origin,dev,value)");
    cmd->add_option("--exposure-file", opts.exposure_file,
                    "Exposure CSV (origin,exposure); origin n+1 is next year");
    cmd->add_option("--example", opts.example, "Use bundled example triangle 1 or 2")
        ->check(CLI::Range(1, 2));
    cmd->add_option("--out", opts.out, "Write the JSON result to this path");
    cmd->add_flag("--json", opts.json, "Print JSON instead of a table");
}

//---------------------------------------------------------------------------//
// INPUT
//---------------------------------------------------------------------------//
std::string read_input(std::string const& path, char const* what)
{
    if (path.empty())
        throw InputError(std::string("missing ") + what + " path");
    try
    {
        return read_text_file(path);
    }
    catch (Error const&)
    {
        throw;
    }
    catch (std::exception const& e)
    {
        throw InputError(e.what());
    }
}

std::string example_path(int example, char const* file)
{
    return std::string(XLCOUNT_DATA_DIR) + "/triangle" + std::to_string(example)
           + "/" + file;
}

TrianglePair load_pair(CommonOptions const& opts)
{
    auto n_file = opts.n_file;
    auto d_file = opts.d_file;
    auto e_file = opts.exposure_file;
    if (opts.example != 0)
    {
        if (n_file.empty())
            n_file = example_path(opts.example, "n.csv");
        if (d_file.empty())
            d_file = example_path(opts.example, "d.csv");
        if (e_file.empty())
            e_file = example_path(opts.example, "exposure.csv");
    }
    auto n_text = read_input(n_file, "--n-file");
    auto d_text = read_input(d_file, "--d-file");
    auto e_text = read_input(e_file, "--exposure-file");
    auto exposure = parse_exposure_csv(e_text);
    auto new_claims = parse_triangle_csv(n_text);
    auto drops = parse_triangle_csv(d_text, new_claims.size());
    return TrianglePair(std::move(new_claims), std::move(drops), std::move(exposure));
}

double next_exposure_of(TrianglePair const& pair, std::optional<double> given)
{
    if (given)
        return *given;
    if (auto e = pair.exposure().next(pair.size()))
        return *e;
    throw Error(ErrorCode::InvalidParameter,
                "no next-year exposure: add origin n+1 to the exposure file "
                "or pass --next-exposure");
}

//---------------------------------------------------------------------------//
// OUTPUT
//---------------------------------------------------------------------------//
std::string fixed3(double v)
{
    if (!std::isfinite(v))
        return v < 0 ? "-inf" : "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string row3(std::vector<double> const& values)
{
    std::string s;
    for (auto v : values)
        s += (s.empty() ? "" : " ") + fixed3(v);
    return s;
}

void write_file(std::string const& path, std::string const& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw InputError("cannot write '" + path + "'");
    os << text;
}

//! Emit JSON to --out and to stdout under --json; otherwise print the table
void emit(CommonOptions const& opts, json const& doc, std::string const& table)
{
    if (!opts.out.empty())
        write_file(opts.out, doc.dump(2) + "\n");
    if (opts.json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << table;
}

Model parse_model(std::string const& name, TrianglePair const& pair)
{
    if (name == "poisson")
        return Model::Poisson;
    if (name == "negbin")
        return Model::NegBin;
    return compare(pair).selected;
}

//! Origin/dev pairs named by --target next-year|ultimate|cell i j
std::vector<CellTarget> parse_target(std::vector<std::string> const& words, int n)
{
    if (words.size() == 1 && words[0] == "next-year")
        return {CellTarget::next(n)};
    if (words.size() == 1 && words[0] == "ultimate")
        return ultimate_cells(n);
    if (words.size() == 3 && words[0] == "cell")
    {
        try
        {
            int i = std::stoi(words[1]);
            int j = std::stoi(words[2]);
            check_lower_cell(n, i, j);
            return {{i, j, false}};
        }
        catch (std::invalid_argument const&)
        {
        }
    }
    throw InputError("--target expects next-year, ultimate or 'cell i j'");
}

//---------------------------------------------------------------------------//
// SUBCOMMANDS
//---------------------------------------------------------------------------//
int cmd_validate(CommonOptions const& opts)
{
    auto pair = load_pair(opts);
    auto report = validate(pair);
    std::string table;
    if (report.ok())
        table = "admissible\n";
    for (auto const& v : report.violations)
        table += "violation: " + v.message + "\n";
    emit(opts, json(report), table);
    return report.ok() ? kExitOk : kExitDomain;
}

int cmd_estimate(CommonOptions const& opts)
{
    auto pair = load_pair(opts);
    require_admissible(pair);
    auto fit = fit_poisson(pair);
    int const n = pair.size();
    std::vector<double> primes;
    for (int j = 1; j <= n; ++j)
        primes.push_back(lambda_prime(fit, j));

    json doc = {{"lambda_hat", fit.lambda_hat},
                {"delta_hat", fit.delta_hat},
                {"lambda_prime", primes}};
    std::string table = "lambda_hat   " + row3(fit.lambda_hat) + "\n"
                        + "delta_hat    " + row3(fit.delta_hat) + "\n"
                        + "lambda_prime " + row3(primes) + "\n";
    if (auto e = pair.exposure().next(n))
    {
        doc["next_year_intensity"] = primes.back() * *e;
        table += "next-year intensity " + fixed3(primes.back() * *e) + "\n";
    }
    emit(opts, doc, table);
    return kExitOk;
}

int cmd_fit(CommonOptions const& opts, std::string const& model, bool joint)
{
    auto pair = load_pair(opts);
    require_admissible(pair);
    json doc;
    std::string table;
    if (model == "poisson")
    {
        auto fit = fit_poisson(pair);
        doc = fit;
        doc["loglik"] = loglik_poisson(pair, fit);
        table = "lambda_hat " + row3(fit.lambda_hat) + "\n" + "delta_hat  "
                + row3(fit.delta_hat) + "\n" + "loglik     "
                + fixed3(loglik_poisson(pair, fit)) + "\n";
    }
    else
    {
        auto fit = fit_negbin(pair);
        doc = fit;
        table = "p1         " + fixed3(fit.p1) + "\n";
        if (fit.degenerate)
        {
            doc["fallback"] = "poisson";
            table += "degenerate: p1 -> 1, the Poisson model applies\n";
        }
        else
        {
            table += "p          " + row3(fit.p) + "\n" + "r_hat      "
                     + row3(fit.r_hat) + "\n" + "loglik     "
                     + fixed3(fit.loglik) + "\n";
        }
        if (joint)
        {
            auto est = joint_mle(pair);
            doc["joint"] = est;
            table += "joint p1   " + fixed3(est.p1) + "\n" + "joint delta "
                     + row3(est.delta_tilde) + "\n" + "joint p    "
                     + row3(est.p) + "\n" + "joint loglik "
                     + fixed3(est.loglik) + "\n";
        }
    }
    emit(opts, doc, table);
    return kExitOk;
}

std::string pmf_csv(PredictiveLaw const& law)
{
    std::string text = "k,pmf\n";
    auto table = pmf_table(law.law);
    char buf[64];
    for (std::size_t k = 0; k < table.size(); ++k)
    {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k, table[k]);
        text += buf;
    }
    return text;
}

int cmd_predict(CommonOptions const& opts, PredictOptions const& popts)
{
    auto pair = load_pair(opts);
    require_admissible(pair);
    int const n = pair.size();
    auto targets = parse_target(popts.target, n);
    auto model = parse_model(popts.model, pair);

    auto poisson = fit_poisson(pair);
    std::optional<NegBinFit> negbin;
    bool fallback = false;
    if (model == Model::NegBin)
    {
        negbin = fit_negbin(pair);
        fallback = negbin->degenerate;
    }

    std::vector<PredictiveLaw> laws;
    for (auto const& t : targets)
    {
        bool use_nb = negbin && !fallback;
        if (t.next_year)
        {
            double e = next_exposure_of(pair, popts.next_exposure);
            laws.push_back(use_nb ? predict_next_year_negbin(*negbin, e)
                                  : predict_next_year_poisson(poisson, e));
        }
        else
        {
            laws.push_back(use_nb ? conditional_law(*negbin, pair, t.origin, t.dev)
                                  : conditional_law(poisson, pair, t.origin, t.dev));
        }
    }

    json doc = {{"requested_model", to_string(model)},
                {"fallback", fallback ? json("poisson") : json(nullptr)},
                {"predictions", laws}};
    std::string table = fallback ? "NB fit degenerate: Poisson model used\n" : "";
    table += "target      model    mean      variance  q50  q95  q99\n";
    for (auto const& law : laws)
    {
        auto m = moments(law.law);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-11s %-8s %-9s %-9s %-4lld %-4lld %lld\n",
                      law.target.label().c_str(), to_string(law.model),
                      fixed3(m.mean).c_str(), fixed3(m.variance).c_str(),
                      static_cast<long long>(quantile(law.law, 0.5)),
                      static_cast<long long>(quantile(law.law, 0.95)),
                      static_cast<long long>(quantile(law.law, 0.99)));
        table += buf;
    }
    if (!popts.pmf_csv.empty())
    {
        if (laws.size() != 1)
            throw InputError("--pmf-csv needs a single-cell target");
        write_file(popts.pmf_csv, pmf_csv(laws.front()));
    }
    emit(opts, doc, table);
    return kExitOk;
}

std::string hist_csv(std::vector<SampleSummary> const& summaries)
{
    bool const labelled = summaries.size() > 1;
    std::string text = labelled ? "target,k,count\n" : "k,count\n";
    for (auto const& s : summaries)
    {
        for (std::size_t b = 0; b < s.hist_counts.size(); ++b)
        {
            auto k = s.hist_min + static_cast<std::int64_t>(b);
            if (labelled)
                text += "\"" + s.target + "\",";
            text += std::to_string(k) + "," + std::to_string(s.hist_counts[b]) + "\n";
        }
    }
    return text;
}

BootstrapResult run_bootstrap(TrianglePair const& pair,
                              BootstrapOptions const& bopts,
                              Model model,
                              std::vector<CellTarget> const& targets,
                              bool& fallback)
{
    if (bopts.sims < 1 || bopts.sims > 10000000)
        throw InputError("--sims must lie in [1, 10^7]");
    BootstrapConfig config;
    config.sims = bopts.sims;
    config.master_seed = bopts.seed;
    config.model = model;
    config.threads = bopts.threads;
    config.nb_delta = bopts.observed_delta ? NbDeltaSource::Observed
                                           : NbDeltaSource::Resampled;
    bool const next_year = targets.front().next_year;
    for (auto const& t : targets)
    {
        if (!t.next_year && t.origin + t.dev <= pair.size() + 1)
        {
            throw Error(ErrorCode::IndexOutsideLowerTriangle,
                        "bootstrap targets must lie strictly below the diagonal");
        }
    }
    bool const ultimates_only = std::all_of(
        targets.begin(), targets.end(),
        [n = pair.size()](CellTarget const& t) { return t.dev == n; });
    config.fast_ultimate = bopts.fast_ultimate && ultimates_only;

    fallback = false;
    std::optional<NegBinFit> negbin;
    if (model == Model::NegBin)
    {
        negbin = fit_negbin(pair);
        fallback = negbin->degenerate;
    }
    auto poisson = fit_poisson(pair);

    BootstrapResult result;
    if (next_year)
    {
        double e = next_exposure_of(pair, bopts.next_exposure);
        result = negbin && !fallback ? simulate_nb(config, *negbin, pair, e)
                                     : simulate_next_year_poisson(config, poisson, pair, e);
    }
    else
    {
        result = negbin && !fallback
                     ? simulate_lower_triangle_nb(config, *negbin, pair)
                     : simulate_lower_triangle_poisson(config, poisson, pair);
        std::vector<SampleSummary> kept;
        for (auto const& t : targets)
            kept.push_back(result.at(t.label()));
        result.targets = std::move(kept);
    }
    return result;
}

int cmd_bootstrap(CommonOptions const& opts, BootstrapOptions const& bopts)
{
    auto pair = load_pair(opts);
    require_admissible(pair);
    auto targets = parse_target(bopts.target, pair.size());
    auto model = parse_model(bopts.model, pair);
    bool fallback = false;
    auto result = run_bootstrap(pair, bopts, model, targets, fallback);

    json doc = result;
    doc["requested_model"] = to_string(model);
    doc["fallback"] = fallback ? json("poisson") : json(nullptr);
    doc["fast_ultimate"] = bopts.fast_ultimate;

    std::string table = fallback ? "NB fit degenerate: Poisson model used\n" : "";
    table += "target      mean      variance  q05  q50  q95\n";
    for (auto const& s : result.targets)
    {
        auto q = [&s](double level) {
            for (auto const& [l, v] : s.quantiles)
            {
                if (std::abs(l - level) < 1e-12)
                    return static_cast<long long>(v);
            }
            return 0LL;
        };
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-11s %-9s %-9s %-4lld %-4lld %lld\n",
                      s.target.c_str(), fixed3(s.mean).c_str(),
                      fixed3(s.variance).c_str(), q(0.05), q(0.5), q(0.95));
        table += buf;
    }
    if (model == Model::NegBin && !fallback)
        table += "NB simulations using Poisson: " + std::to_string(result.nb_fallbacks) + "\n";
    if (!bopts.hist.empty())
        write_file(bopts.hist, hist_csv(result.targets));
    emit(opts, doc, table);
    return kExitOk;
}

int cmd_compare(CommonOptions const& opts)
{
    auto pair = load_pair(opts);
    require_admissible(pair);
    auto cmp = compare(pair);
    std::string table = "model    k  loglik    AIC\n";
    table += "poisson  " + std::to_string(cmp.k_poisson) + "  "
             + fixed3(cmp.loglik_poisson) + "  " + fixed3(cmp.aic_poisson) + "\n";
    if (cmp.aic_negbin)
    {
        table += "negbin   " + std::to_string(cmp.k_negbin) + "  "
                 + fixed3(*cmp.loglik_negbin) + "  " + fixed3(*cmp.aic_negbin) + "\n";
    }
    else
    {
        table += "negbin   " + std::to_string(cmp.k_negbin)
                 + "  unavailable (p1 -> 1)\n";
    }
    table += std::string("selected: ") + to_string(cmp.selected) + "\n";
    emit(opts, json(cmp), table);
    return kExitOk;
}

//---------------------------------------------------------------------------//
// EXAMPLE REPRODUCTION
//---------------------------------------------------------------------------//
struct ReferenceRow
{
    std::string quantity;
    double computed;
    double reference;
};

void append_vector(std::vector<ReferenceRow>& rows,
                   std::string const& name,
                   std::vector<double> const& computed,
                   std::vector<double> const& reference)
{
    for (std::size_t k = 0; k < reference.size() && k < computed.size(); ++k)
        rows.push_back({name + "_" + std::to_string(k + 1), computed[k], reference[k]});
}

int cmd_reproduce(int example, BootstrapOptions const& bopts, bool as_json)
{
    CommonOptions opts;
    opts.example = example;
    auto pair = load_pair(opts);
    require_admissible(pair);
    auto poisson = fit_poisson(pair);
    auto negbin = fit_negbin(pair);
    double const e_next = next_exposure_of(pair, std::nullopt);
    int const n = pair.size();

    std::vector<ReferenceRow> rows;
    std::vector<std::string> notes;
    bool nb_fallback = false;
    auto bootstrap_var = [&](Model model) {
        bool fb = false;
        auto r = run_bootstrap(pair, bopts, model, {CellTarget::next(n)}, fb);
        nb_fallback = fb;
        return r.targets.front().variance;
    };

    if (example == 1)
    {
        append_vector(rows, "lambda_hat", poisson.lambda_hat,
                      {0.327, 0.28, 0.2, 0.117, 0.156, 0});
        append_vector(rows, "delta_hat", poisson.delta_hat,
                      {0.5, 0.346, 0.217, 0, 0.154});
        rows.push_back({"next_year_intensity", lambda_prime(poisson, n) * e_next, 27.752});
        rows.push_back({"bootstrap_var_poisson", bootstrap_var(Model::Poisson), 53.361});
        notes.push_back(negbin.degenerate
                            ? "NB fit degenerate (p1 -> 1): Poisson model retained"
                            : "NB fit NOT degenerate, expected p1 -> 1");
    }
    else
    {
        append_vector(rows, "lambda_hat", poisson.lambda_hat,
                      {0.396, 0.191, 0.252, 0.13, 0.2, 0});
        append_vector(rows, "delta_hat", poisson.delta_hat,
                      {0.591, 0.231, 0.3, 0.091, 0.071});
        rows.push_back({"next_year_intensity", lambda_prime(poisson, n) * e_next, 30.243});
        rows.push_back({"p1", negbin.p1, 0.397});
        append_vector(rows, "p", negbin.p, {0.397, 0.616, 0.676, 0.749, 0.767, 0.78});
        append_vector(rows, "r_hat", negbin.r_hat,
                      {0.263, 0.402, 0.418, 0.448, 0.328, 0.177});
        auto law = predict_next_year_negbin(negbin, e_next);
        auto m = moments(law.law);
        rows.push_back({"nb_mean", m.mean, 30.243});
        rows.push_back({"nb_variance", m.variance, 38.796});
        auto cmp = compare(pair);
        rows.push_back({"loglik_poisson", cmp.loglik_poisson, -53.937});
        rows.push_back({"loglik_negbin", cmp.loglik_negbin.value_or(NAN), -50.793});
        rows.push_back({"aic_poisson", cmp.aic_poisson, 119.875});
        rows.push_back({"aic_negbin", cmp.aic_negbin.value_or(NAN), 115.586});
        auto joint = joint_mle(pair);
        append_vector(rows, "joint_delta", joint.delta_tilde,
                      {0.601, 0.232, 0.305, 0.092, 0.071});
        append_vector(rows, "joint_p", joint.p,
                      {0.393, 0.619, 0.679, 0.753, 0.77, 0.783});
        rows.push_back({"bootstrap_var_poisson", bootstrap_var(Model::Poisson), 62.633});
        rows.push_back({"bootstrap_var_negbin", bootstrap_var(Model::NegBin), 67.658});
        notes.push_back(std::string("selected model: ") + to_string(cmp.selected));
        if (nb_fallback)
            notes.push_back("NB bootstrap fell back to Poisson");
    }

    if (as_json)
    {
        json doc = {{"example", example},
                    {"sims", bopts.sims},
                    {"seed", bopts.seed},
                    {"notes", notes}};
        json list = json::array();
        for (auto const& r : rows)
        {
            list.push_back({{"quantity", r.quantity},
                            {"computed", std::isfinite(r.computed) ? json(r.computed)
                                                                   : json(nullptr)},
                            {"reference", r.reference}});
        }
        doc["rows"] = list;
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
    }

    std::printf("example triangle %d (bootstrap M = %lld, seed = %llu)\n", example,
                static_cast<long long>(bopts.sims),
                static_cast<unsigned long long>(bopts.seed));
    std::printf("%-24s %10s %10s %9s\n", "quantity", "computed", "reference", "diff");
    for (auto const& r : rows)
    {
        std::printf("%-24s %10s %10s %9s\n", r.quantity.c_str(),
                    fixed3(r.computed).c_str(), fixed3(r.reference).c_str(),
                    fixed3(r.computed - r.reference).c_str());
    }
    for (auto const& note : notes)
        std::printf("%s\n", note.c_str());
    return kExitOk;
}

//---------------------------------------------------------------------------//
int exit_code_for(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::DuplicateCell:
        case ErrorCode::MissingCell:
        case ErrorCode::NonInteger:
        case ErrorCode::OutOfTriangle:
        case ErrorCode::MalformedCsv:
            return kExitUsage;
        default:
            return kExitDomain;
    }
}

void add_bootstrap_options(CLI::App* cmd, BootstrapOptions& b)
{
    cmd->add_option("--model", b.model, "poisson, negbin or auto (AIC)")
        ->check(CLI::IsMember({"poisson", "negbin", "auto"}));
    cmd->add_option("--sims", b.sims, "Number of simulations M (at most 10^7)");
    cmd->add_option("--seed", b.seed, "Master seed");
    cmd->add_option("--threads", b.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--next-exposure", b.next_exposure, "Exposure of the next year");
}

}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"Excess-of-loss claim-count reserving and pricing"};
    app.require_subcommand(0, 1);

    int reproduce = 0;
    BootstrapOptions repro_boot;
    bool repro_json = false;
    app.add_option("--reproduce-example", reproduce,
                   "Run the full pipeline on bundled triangle 1 or 2 and print "
                   "computed against reference values")
        ->check(CLI::Range(1, 2));
    app.add_option("--sims", repro_boot.sims, "Bootstrap simulations for --reproduce-example");
    app.add_option("--seed", repro_boot.seed, "Master seed for --reproduce-example");
    app.add_option("--threads", repro_boot.threads, "Worker threads for --reproduce-example")
        ->check(CLI::PositiveNumber);
    app.add_flag("--json", repro_json, "JSON output for --reproduce-example");

    CommonOptions common;

    auto* validate_cmd = app.add_subcommand("validate", "Check admissibility of the inputs");
    add_common(validate_cmd, common);

    auto* estimate_cmd = app.add_subcommand("estimate", "Poisson estimators and lambda'");
    add_common(estimate_cmd, common);

    std::string fit_model = "negbin";
    bool joint = false;
    auto* fit_cmd = app.add_subcommand("fit", "Fit the Poisson or NB model");
    add_common(fit_cmd, common);
    fit_cmd->add_option("--model", fit_model, "poisson or negbin")
        ->check(CLI::IsMember({"poisson", "negbin"}));
    fit_cmd->add_flag("--joint", joint, "Also run the joint (p1, delta) MLE");

    PredictOptions predict;
    auto* predict_cmd = app.add_subcommand("predict", "Exact predictive laws");
    add_common(predict_cmd, common);
    predict_cmd->add_option("--model", predict.model, "poisson, negbin or auto (AIC)")
        ->check(CLI::IsMember({"poisson", "negbin", "auto"}));
    predict_cmd->add_option("--target", predict.target, "next-year | ultimate | cell i j")
        ->expected(1, 3);
    predict_cmd->add_option("--next-exposure", predict.next_exposure,
                            "Exposure of the next year");
    predict_cmd->add_option("--pmf-csv", predict.pmf_csv, "Write the pmf table (k,pmf)");

    BootstrapOptions boot;
    auto* boot_cmd = app.add_subcommand("bootstrap", "Parametric bootstrap");
    add_common(boot_cmd, common);
    add_bootstrap_options(boot_cmd, boot);
    boot_cmd->add_option("--target", boot.target, "next-year | ultimate | cell i j")
        ->expected(1, 3);
    boot_cmd->add_flag("--fast-ultimate", boot.fast_ultimate,
                       "Draw ultimates from their conditional law");
    boot_cmd->add_option("--hist", boot.hist, "Write histogram CSV (k,count)");

    auto* compare_cmd = app.add_subcommand("compare", "AIC comparison of both models");
    add_common(compare_cmd, common);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (reproduce != 0)
            return cmd_reproduce(reproduce, repro_boot, repro_json);
        if (*validate_cmd)
            return cmd_validate(common);
        if (*estimate_cmd)
            return cmd_estimate(common);
        if (*fit_cmd)
            return cmd_fit(common, fit_model, joint);
        if (*predict_cmd)
            return cmd_predict(common, predict);
        if (*boot_cmd)
            return cmd_bootstrap(common, boot);
        if (*compare_cmd)
            return cmd_compare(common);
        std::cerr << app.help();
        return kExitUsage;
    }
    catch (InputError const& e)
    {
        std::cerr << "error: IoError: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (Error const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    catch (std::exception const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}
