//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/bootstrap.hpp
//! Parametric bootstrap of next-year and lower-triangle claim counts.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "estimators.hpp"
#include "prediction.hpp"
#include "rng.hpp"
#include "triangle.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
/*!
 * Drop rates inside the p1 re-estimation of an NB simulation.
 *
 * The predictive p-sequence always uses the simulation's resampled delta^m.
 */
enum class NbDeltaSource
{
    Observed,  //!< plug-in delta_hat for every simulation
    Resampled,  //!< the simulation's own delta^m
};

struct BootstrapConfig
{
    std::int64_t sims = 100000;  //!< M
    std::uint64_t master_seed = 0;
    Model model = Model::Poisson;
    //! Draw C_{i,n} directly from the conditional law instead of paths
    bool fast_ultimate = false;
    //! NB simulations whose re-estimated p1 exceeds this use Poisson
    double nb_degeneracy_threshold = 1 - 1e-4;
    NbDeltaSource nb_delta = NbDeltaSource::Observed;
    //! Off: simulate with the plug-in parameters (process error only)
    bool resample_parameters = true;
    bool retain_samples = false;
    int threads = 1;
};

//---------------------------------------------------------------------------//
/*!
 * Exact integer accumulator of count samples.
 *
 * Moments and histogram merge with integer arithmetic only, so the combined
 * result does not depend on how simulations were split between workers.
 */
class CountHistogram
{
  public:
    void add(std::int64_t value);
    void merge(CountHistogram const& other);

    std::int64_t total() const noexcept { return total_; }
    std::int64_t min() const noexcept { return min_; }
    std::int64_t max() const noexcept
    {
        return min_ + static_cast<std::int64_t>(counts_.size()) - 1;
    }
    //! Unit-width bins from min() to max()
    std::vector<std::int64_t> const& counts() const noexcept { return counts_; }

    __int128 sum() const noexcept { return sum_; }
    __int128 sum_squares() const noexcept { return sum_sq_; }

  private:
    std::int64_t min_ = 0;
    std::vector<std::int64_t> counts_;
    std::int64_t total_ = 0;
    __int128 sum_ = 0;
    __int128 sum_sq_ = 0;
};

struct SampleSummary
{
    std::string target;
    std::int64_t count = 0;
    double mean = 0;
    //! Unbiased; zero for a single sample
    double variance = 0;
    //! (level, value) with value the smallest k whose empirical cdf >= level
    std::vector<std::pair<double, std::int64_t>> quantiles;
    std::int64_t hist_min = 0;
    std::vector<std::int64_t> hist_counts;
    //! Raw draws in simulation order when retention is on
    std::optional<std::vector<std::int64_t>> samples;
};

struct BootstrapResult
{
    Model model = Model::Poisson;
    std::int64_t sims = 0;
    std::uint64_t master_seed = 0;
    std::vector<SampleSummary> targets;
    //! NB simulations that fell back to the Poisson framework
    std::int64_t nb_fallbacks = 0;

    SampleSummary const& at(std::string const& target) const;
};

//! Quantile levels reported by summaries
inline constexpr double kSummaryLevels[]
    = {0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99};

SampleSummary summarize(CountHistogram const& histogram,
                        std::string target = {});
//! Throws EmptySampleSet on an empty span
SampleSummary summarize(std::span<std::int64_t const> samples,
                        std::string target = {});

//---------------------------------------------------------------------------//
// PARAMETER RESAMPLING
//---------------------------------------------------------------------------//
//! Column totals that scale the resampled estimators
struct ResamplingBasis
{
    std::vector<double> exposure_sums;  //!< sum_{i<=n-j+1} E_i
    std::vector<std::int64_t> stock_sums;  //!< sum_{i<=n-j} C_{i,j}

    static ResamplingBasis from(TrianglePair const& pair);
};

//! delta_j^m ~ Binomial(stock_j, delta_j) / stock_j (0 when stock_j = 0)
std::vector<double> resample_delta(std::span<double const> delta,
                                   ResamplingBasis const& basis,
                                   CounterRng& rng);

//! lambda_j^m ~ Poisson(lambda_j volume_j) / volume_j plus resample_delta
PoissonFit resample_params_poisson(PoissonFit const& fit,
                                   ResamplingBasis const& basis,
                                   CounterRng& rng);
PoissonFit resample_params_poisson(PoissonFit const& fit,
                                   TrianglePair const& pair,
                                   CounterRng& rng);

//---------------------------------------------------------------------------//
// SIMULATION
//---------------------------------------------------------------------------//

//! Target "next-year": C^m ~ Poisson(lambda'_n^m E_next)
BootstrapResult simulate_next_year_poisson(BootstrapConfig const& config,
                                           PoissonFit const& fit,
                                           TrianglePair const& pair,
                                           double next_exposure);

/*!
 * Lower-triangle paths C_{i,j+1} = C_{i,j} + Poisson - Binomial started from
 * the latest diagonal. With fast_ultimate only the C(i,n) targets are
 * produced, each drawn from its conditional law at the resampled parameters.
 */
BootstrapResult simulate_lower_triangle_poisson(BootstrapConfig const& config,
                                                PoissonFit const& fit,
                                                TrianglePair const& pair);

/*!
 * NB bootstrap of the next-year count.
 *
 * Per simulation: resample delta, resimulate the N triangle from the fit,
 * re-estimate lambda and p1, then draw from NB(sum r^m E_next, p_n^m), or
 * from the Poisson law when the re-estimated p1 exceeds the degeneracy
 * threshold.
 */
BootstrapResult simulate_nb(BootstrapConfig const& config,
                            NegBinFit const& fit,
                            TrianglePair const& pair,
                            double next_exposure);

//! NB analogue of simulate_lower_triangle_poisson
BootstrapResult simulate_lower_triangle_nb(BootstrapConfig const& config,
                                           NegBinFit const& fit,
                                           TrianglePair const& pair);

//! Labels "C(i,j)" of the lower triangle, ordered by origin then dev
std::vector<CellTarget> lower_triangle_cells(int n);
std::vector<CellTarget> ultimate_cells(int n);

//---------------------------------------------------------------------------//
}  // namespace xlcount
