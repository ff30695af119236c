//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/json.hpp
//! JSON encoders for fits, laws, comparisons and bootstrap summaries.
//---------------------------------------------------------------------------//
#pragma once

#include <json.hpp>

#include "bootstrap.hpp"
#include "distributions.hpp"
#include "estimators.hpp"
#include "model_selection.hpp"
#include "prediction.hpp"
#include "triangle.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
//! Quantile levels reported for predictive laws
inline constexpr double kPredictiveLevels[] = {0.50, 0.75, 0.90, 0.95, 0.99};

void to_json(nlohmann::json& j, Violation const& v);
void to_json(nlohmann::json& j, ValidationReport const& report);

//! Poisson fits carry degenerate = false, p1 = 1 and an empty p/r_hat
void to_json(nlohmann::json& j, PoissonFit const& fit);
void to_json(nlohmann::json& j, NegBinFit const& fit);
void to_json(nlohmann::json& j, JointEstimate const& est);

//! Tagged object, e.g. {"kind":"negbin","r":...,"p":...}
void to_json(nlohmann::json& j, CountDistribution const& dist);
//! Target, model, law, mean, variance and quantiles
void to_json(nlohmann::json& j, PredictiveLaw const& law);

void to_json(nlohmann::json& j, ModelComparison const& cmp);

void to_json(nlohmann::json& j, SampleSummary const& summary);
void to_json(nlohmann::json& j, BootstrapResult const& result);

//---------------------------------------------------------------------------//
}  // namespace xlcount
