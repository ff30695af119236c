//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file json.cpp
//---------------------------------------------------------------------------//
#include "xlcount/json.hpp"

#include <cmath>

namespace xlcount
{
namespace
{
char const* kind_name(Violation::Kind kind)
{
    switch (kind)
    {
        case Violation::Kind::DimensionMismatch:
            return "DimensionMismatch";
        case Violation::Kind::DropFirstColumnNonzero:
            return "DropFirstColumnNonzero";
        case Violation::Kind::DropExceedsStock:
            return "DropExceedsStock";
        case Violation::Kind::NegativeCumulative:
            return "NegativeCumulative";
    }
    return "Unknown";
}

//! JSON has no infinities; impossible likelihoods become null
nlohmann::json finite_or_null(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr;
}

nlohmann::json binomial_json(Binomial const& b)
{
    return {{"kind", "binomial"}, {"trials", b.trials}, {"prob", b.prob}};
}

nlohmann::json other_json(Poisson const& p)
{
    return {{"kind", "poisson"}, {"mean", p.mean}};
}

nlohmann::json other_json(NegBin const& nb)
{
    return {{"kind", "negbin"}, {"r", nb.r}, {"p", nb.p}};
}
}  // namespace

//---------------------------------------------------------------------------//
void to_json(nlohmann::json& j, Violation const& v)
{
    j = {{"kind", kind_name(v.kind)},
         {"origin", v.origin},
         {"dev", v.dev},
         {"message", v.message}};
}

void to_json(nlohmann::json& j, ValidationReport const& report)
{
    j = {{"ok", report.ok()}, {"violations", report.violations}};
}

void to_json(nlohmann::json& j, PoissonFit const& fit)
{
    j = {{"model", "poisson"},
         {"lambda_hat", fit.lambda_hat},
         {"delta_hat", fit.delta_hat},
         {"p", nlohmann::json::array()},
         {"r_hat", nlohmann::json::array()},
         {"p1", 1.0},
         {"degenerate", false}};
}

void to_json(nlohmann::json& j, NegBinFit const& fit)
{
    j = {{"model", "negbin"},
         {"lambda_hat", fit.lambda_hat},
         {"delta_hat", fit.delta_hat},
         {"p", fit.p},
         {"r_hat", fit.r_hat},
         {"p1", fit.p1},
         {"degenerate", fit.degenerate},
         {"loglik", finite_or_null(fit.loglik)}};
}

void to_json(nlohmann::json& j, JointEstimate const& est)
{
    j = {{"p1", est.p1},
         {"delta_tilde", est.delta_tilde},
         {"p", est.p},
         {"loglik", finite_or_null(est.loglik)}};
}

void to_json(nlohmann::json& j, CountDistribution const& dist)
{
    std::visit(
        [&j, &dist](auto const& law) {
            using T = std::decay_t<decltype(law)>;
            if constexpr (std::is_same_v<T, Poisson> || std::is_same_v<T, NegBin>)
            {
                j = other_json(law);
            }
            else if constexpr (std::is_same_v<T, Binomial>)
            {
                j = binomial_json(law);
            }
            else
            {
                j = {{"kind", dist.kind()},
                     {"binomial", binomial_json(law.binomial)},
                     {"other", other_json(law.other)}};
            }
        },
        dist.law());
}

void to_json(nlohmann::json& j, PredictiveLaw const& law)
{
    auto m = moments(law.law);
    nlohmann::json quantiles = nlohmann::json::object();
    for (double level : kPredictiveLevels)
    {
        quantiles[std::to_string(static_cast<int>(std::lround(level * 100)))]
            = quantile(law.law, level);
    }
    j = {{"target", law.target.label()},
         {"origin", law.target.origin},
         {"dev", law.target.dev},
         {"model", to_string(law.model)},
         {"law", law.law},
         {"mean", m.mean},
         {"variance", m.variance},
         {"quantiles", quantiles}};
}

void to_json(nlohmann::json& j, ModelComparison const& cmp)
{
    auto optional_number = [](std::optional<double> v) -> nlohmann::json {
        if (v && std::isfinite(*v))
            return *v;
        return nullptr;
    };
    j = {{"loglik_poisson", finite_or_null(cmp.loglik_poisson)},
         {"k_poisson", cmp.k_poisson},
         {"aic_poisson", finite_or_null(cmp.aic_poisson)},
         {"loglik_negbin", optional_number(cmp.loglik_negbin)},
         {"k_negbin", cmp.k_negbin},
         {"aic_negbin", optional_number(cmp.aic_negbin)},
         {"negbin_available", cmp.aic_negbin.has_value()},
         {"selected", to_string(cmp.selected)}};
}

void to_json(nlohmann::json& j, SampleSummary const& summary)
{
    nlohmann::json quantiles = nlohmann::json::object();
    for (auto const& [level, value] : summary.quantiles)
        quantiles[std::to_string(static_cast<int>(std::lround(level * 100)))] = value;
    j = {{"target", summary.target},
         {"count", summary.count},
         {"mean", summary.mean},
         {"variance", summary.variance},
         {"quantiles", quantiles},
         {"hist_min", summary.hist_min},
         {"hist_counts", summary.hist_counts}};
    if (summary.samples)
        j["samples"] = *summary.samples;
}

void to_json(nlohmann::json& j, BootstrapResult const& result)
{
    j = {{"model", to_string(result.model)},
         {"sims", result.sims},
         {"seed", result.master_seed},
         {"nb_fallbacks", result.nb_fallbacks},
         {"targets", result.targets}};
}

//---------------------------------------------------------------------------//
}  // namespace xlcount
