//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file bootstrap.cpp
//---------------------------------------------------------------------------//
#include "xlcount/bootstrap.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "xlcount/error.hpp"
#include "xlcount/samplers.hpp"

namespace xlcount
{
namespace
{
//---------------------------------------------------------------------------//
/*!
 * Run M simulations, each on its own stream, split into contiguous chunks
 * over worker threads.
 *
 * The kernel writes one value per target and returns true when the
 * simulation fell back to the Poisson framework.
 */
template<class Kernel>
BootstrapResult run_simulations(BootstrapConfig const& config,
                                std::vector<CellTarget> const& targets,
                                Kernel const& kernel)
{
    if (config.sims < 1)
        throw Error(ErrorCode::InvalidParameter, "bootstrap needs sims >= 1");

    std::size_t const width = targets.size();
    std::int64_t const sims = config.sims;
    int const workers = static_cast<int>(
        std::clamp<std::int64_t>(config.threads, 1, sims));

    struct Partial
    {
        std::vector<CountHistogram> histograms;
        std::int64_t fallbacks = 0;
    };
    std::vector<Partial> partials(static_cast<std::size_t>(workers));
    std::vector<std::vector<std::int64_t>> retained;
    if (config.retain_samples)
    {
        retained.assign(width,
                        std::vector<std::int64_t>(static_cast<std::size_t>(sims)));
    }

    auto work = [&](int w) {
        auto& part = partials[static_cast<std::size_t>(w)];
        part.histograms.resize(width);
        std::vector<std::int64_t> out(width);
        std::int64_t const begin = sims * w / workers;
        std::int64_t const end = sims * (w + 1) / workers;
        for (std::int64_t m = begin; m < end; ++m)
        {
            auto rng = stream(config.master_seed, static_cast<std::uint64_t>(m));
            if (kernel(rng, std::span<std::int64_t>(out)))
                ++part.fallbacks;
            for (std::size_t t = 0; t < width; ++t)
            {
                part.histograms[t].add(out[t]);
                if (config.retain_samples)
                    retained[t][static_cast<std::size_t>(m)] = out[t];
            }
        }
    };

    if (workers == 1)
    {
        work(0);
    }
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work, w);
        for (auto& t : pool)
            t.join();
    }

    BootstrapResult result;
    result.model = config.model;
    result.sims = sims;
    result.master_seed = config.master_seed;
    for (std::size_t t = 0; t < width; ++t)
    {
        CountHistogram merged;
        for (auto const& part : partials)
            merged.merge(part.histograms[t]);
        auto summary = summarize(merged, targets[t].label());
        if (config.retain_samples)
            summary.samples = std::move(retained[t]);
        result.targets.push_back(std::move(summary));
    }
    for (auto const& part : partials)
        result.nb_fallbacks += part.fallbacks;
    return result;
}

//---------------------------------------------------------------------------//
double at(std::span<double const> v, int one_based)
{
    return v[static_cast<std::size_t>(one_based - 1)];
}

//! Survival factor delta'_{i,n} and summed NB shape for the fast sampler
double survival_to_ultimate(std::span<double const> delta, int n, int origin)
{
    double survive = 1;
    for (int k = n - origin + 1; k <= n - 1; ++k)
        survive *= 1 - at(delta, k);
    return survive;
}

//! Poisson lower-triangle draw for one simulation's parameters
void draw_poisson_lower(std::span<double const> lambda,
                        std::span<double const> delta,
                        TrianglePair const& pair,
                        bool fast,
                        CounterRng& rng,
                        std::span<std::int64_t> out)
{
    int const n = pair.size();
    std::size_t slot = 0;
    for (int i = 2; i <= n; ++i)
    {
        double const exposure = pair.exposure()[i];
        std::int64_t c = pair.latest(i);
        if (fast)
        {
            auto f = conditional_factors(lambda, delta, i, n);
            out[slot++] = sample_binomial(c, f.delta_prime, rng)
                          + sample_poisson(f.lambda_prime * exposure, rng);
            continue;
        }
        for (int j = n - i + 1; j <= n - 1; ++j)
        {
            auto dropped = sample_binomial(c, at(delta, j), rng);
            auto fresh = sample_poisson(at(lambda, j + 1) * exposure, rng);
            c += fresh - dropped;
            out[slot++] = c;
        }
    }
}

void draw_negbin_lower(std::span<double const> r,
                       std::span<double const> p,
                       std::span<double const> delta,
                       TrianglePair const& pair,
                       bool fast,
                       CounterRng& rng,
                       std::span<std::int64_t> out)
{
    int const n = pair.size();
    std::size_t slot = 0;
    for (int i = 2; i <= n; ++i)
    {
        double const exposure = pair.exposure()[i];
        std::int64_t c = pair.latest(i);
        if (fast)
        {
            double shape = 0;
            for (int k = n - i + 2; k <= n; ++k)
                shape += at(r, k);
            out[slot++] = sample_binomial(c, survival_to_ultimate(delta, n, i), rng)
                          + sample_negbin(shape * exposure, at(p, n), rng);
            continue;
        }
        for (int j = n - i + 1; j <= n - 1; ++j)
        {
            auto dropped = sample_binomial(c, at(delta, j), rng);
            auto fresh = sample_negbin(at(r, j + 1) * exposure, at(p, j + 1), rng);
            c += fresh - dropped;
            out[slot++] = c;
        }
    }
}

//---------------------------------------------------------------------------//
/*!
 * One NB simulation's parameters: either a re-estimated NB fit or, when p1
 * ran into the Poisson limit, a Poisson parameter set.
 */
struct NbDraw
{
    bool fallback = false;
    std::vector<double> lambda;
    std::vector<double> delta;
    std::vector<double> p;
    std::vector<double> r;
};

NbDraw draw_nb_parameters(BootstrapConfig const& config,
                          NegBinFit const& fit,
                          TrianglePair const& pair,
                          ResamplingBasis const& basis,
                          CounterRng& rng)
{
    NbDraw draw;
    if (!config.resample_parameters)
    {
        draw.lambda = fit.lambda_hat;
        draw.delta = fit.delta_hat;
        draw.p = fit.p;
        draw.r = fit.r_hat;
        return draw;
    }

    int const n = pair.size();
    auto const& exposure = pair.exposure();
    draw.delta = resample_delta(fit.delta_hat, basis, rng);

    TriangleBuilder builder(n);
    for (int i = 1; i <= n; ++i)
    {
        for (int j = 1; j <= n - i + 1; ++j)
        {
            builder.set(i, j,
                        sample_negbin(at(fit.r_hat, j) * exposure[i],
                                      at(fit.p, j), rng));
        }
    }
    auto const& simulated = builder.peek();
    draw.lambda = estimate_lambda(simulated, exposure);

    auto const& delta_fit = config.nb_delta == NbDeltaSource::Observed
                                ? fit.delta_hat
                                : draw.delta;
    P1Options options;
    options.degeneracy_threshold = config.nb_degeneracy_threshold;
    auto est = mle_p1(simulated, exposure, draw.lambda, delta_fit, options);
    if (est.p1 > config.nb_degeneracy_threshold)
    {
        draw.fallback = true;
        return draw;
    }
    draw.p = p_sequence(est.p1, draw.delta);
    draw.r = estimate_r(draw.lambda, draw.p);
    return draw;
}

void require_nb_fit(NegBinFit const& fit)
{
    if (fit.degenerate)
    {
        throw Error(ErrorCode::DegenerateFit,
                    "NB fit has p1 -> 1; bootstrap the Poisson model instead");
    }
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
// SUMMARIES
//---------------------------------------------------------------------------//
void CountHistogram::add(std::int64_t value)
{
    if (counts_.empty())
    {
        min_ = value;
        counts_.assign(1, 0);
    }
    else if (value < min_)
    {
        counts_.insert(counts_.begin(), static_cast<std::size_t>(min_ - value), 0);
        min_ = value;
    }
    else if (value > max())
    {
        counts_.resize(static_cast<std::size_t>(value - min_ + 1), 0);
    }
    ++counts_[static_cast<std::size_t>(value - min_)];
    ++total_;
    sum_ += value;
    sum_sq_ += static_cast<__int128>(value) * value;
}

void CountHistogram::merge(CountHistogram const& other)
{
    if (other.total_ == 0)
        return;
    if (total_ == 0)
    {
        *this = other;
        return;
    }
    std::int64_t lo = std::min(min_, other.min_);
    std::int64_t hi = std::max(max(), other.max());
    std::vector<std::int64_t> combined(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t k = 0; k < counts_.size(); ++k)
        combined[static_cast<std::size_t>(min_ - lo) + k] += counts_[k];
    for (std::size_t k = 0; k < other.counts_.size(); ++k)
        combined[static_cast<std::size_t>(other.min_ - lo) + k] += other.counts_[k];
    min_ = lo;
    counts_ = std::move(combined);
    total_ += other.total_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
}

SampleSummary summarize(CountHistogram const& histogram, std::string target)
{
    if (histogram.total() == 0)
        throw Error(ErrorCode::EmptySampleSet, "no samples to summarize");

    SampleSummary s;
    s.target = std::move(target);
    s.count = histogram.total();
    auto const count = static_cast<long double>(s.count);
    s.mean = static_cast<double>(static_cast<long double>(histogram.sum()) / count);
    if (s.count > 1)
    {
        __int128 numerator = static_cast<__int128>(s.count) * histogram.sum_squares()
                             - histogram.sum() * histogram.sum();
        s.variance = static_cast<double>(static_cast<long double>(numerator)
                                         / (count * (count - 1)));
    }

    for (double level : kSummaryLevels)
    {
        long double const threshold = level * count * (1 - 1e-12L);
        std::int64_t cumulative = 0;
        std::int64_t value = histogram.max();
        for (std::size_t k = 0; k < histogram.counts().size(); ++k)
        {
            cumulative += histogram.counts()[k];
            if (static_cast<long double>(cumulative) >= threshold
                && histogram.counts()[k] > 0)
            {
                value = histogram.min() + static_cast<std::int64_t>(k);
                break;
            }
        }
        s.quantiles.emplace_back(level, value);
    }
    s.hist_min = histogram.min();
    s.hist_counts = histogram.counts();
    return s;
}

SampleSummary summarize(std::span<std::int64_t const> samples, std::string target)
{
    CountHistogram histogram;
    for (auto v : samples)
        histogram.add(v);
    return summarize(histogram, std::move(target));
}

SampleSummary const& BootstrapResult::at(std::string const& target) const
{
    for (auto const& s : targets)
    {
        if (s.target == target)
            return s;
    }
    throw Error(ErrorCode::InvalidParameter, "no bootstrap target " + target);
}

//---------------------------------------------------------------------------//
// RESAMPLING
//---------------------------------------------------------------------------//
ResamplingBasis ResamplingBasis::from(TrianglePair const& pair)
{
    int const n = pair.size();
    ResamplingBasis basis;
    for (int j = 1; j <= n; ++j)
        basis.exposure_sums.push_back(pair.exposure().partial_sum(n - j + 1));
    for (int j = 1; j <= n - 1; ++j)
    {
        std::int64_t stock = 0;
        for (int i = 1; i <= n - j; ++i)
            stock += pair.cumulative(i, j);
        basis.stock_sums.push_back(stock);
    }
    return basis;
}

std::vector<double> resample_delta(std::span<double const> delta,
                                   ResamplingBasis const& basis,
                                   CounterRng& rng)
{
    std::vector<double> out(delta.size());
    for (std::size_t j = 0; j < delta.size(); ++j)
    {
        auto stock = basis.stock_sums[j];
        out[j] = stock > 0 ? static_cast<double>(sample_binomial(stock, delta[j], rng))
                                 / static_cast<double>(stock)
                           : 0.0;
    }
    return out;
}

PoissonFit resample_params_poisson(PoissonFit const& fit,
                                   ResamplingBasis const& basis,
                                   CounterRng& rng)
{
    PoissonFit out;
    out.lambda_hat.resize(fit.lambda_hat.size());
    for (std::size_t j = 0; j < fit.lambda_hat.size(); ++j)
    {
        double volume = basis.exposure_sums[j];
        out.lambda_hat[j]
            = static_cast<double>(sample_poisson(fit.lambda_hat[j] * volume, rng))
              / volume;
    }
    out.delta_hat = resample_delta(fit.delta_hat, basis, rng);
    return out;
}

PoissonFit resample_params_poisson(PoissonFit const& fit,
                                   TrianglePair const& pair,
                                   CounterRng& rng)
{
    return resample_params_poisson(fit, ResamplingBasis::from(pair), rng);
}

//---------------------------------------------------------------------------//
// TARGETS
//---------------------------------------------------------------------------//
std::vector<CellTarget> lower_triangle_cells(int n)
{
    std::vector<CellTarget> cells;
    for (int i = 2; i <= n; ++i)
    {
        for (int j = n - i + 2; j <= n; ++j)
            cells.push_back({i, j, false});
    }
    return cells;
}

std::vector<CellTarget> ultimate_cells(int n)
{
    std::vector<CellTarget> cells;
    for (int i = 2; i <= n; ++i)
        cells.push_back({i, n, false});
    return cells;
}

//---------------------------------------------------------------------------//
// POISSON
//---------------------------------------------------------------------------//
BootstrapResult simulate_next_year_poisson(BootstrapConfig const& config,
                                           PoissonFit const& fit,
                                           TrianglePair const& pair,
                                           double next_exposure)
{
    if (!(next_exposure > 0))
        throw Error(ErrorCode::InvalidParameter, "exposure must be positive");
    auto const basis = ResamplingBasis::from(pair);
    int const n = pair.size();
    auto cfg = config;
    cfg.model = Model::Poisson;
    return run_simulations(
        cfg, {CellTarget::next(n)},
        [&](CounterRng& rng, std::span<std::int64_t> out) {
            double intensity
                = config.resample_parameters
                      ? lambda_prime(resample_params_poisson(fit, basis, rng), n)
                      : lambda_prime(fit, n);
            out[0] = sample_poisson(intensity * next_exposure, rng);
            return false;
        });
}

BootstrapResult simulate_lower_triangle_poisson(BootstrapConfig const& config,
                                                PoissonFit const& fit,
                                                TrianglePair const& pair)
{
    auto const basis = ResamplingBasis::from(pair);
    int const n = pair.size();
    auto cfg = config;
    cfg.model = Model::Poisson;
    auto targets = config.fast_ultimate ? ultimate_cells(n) : lower_triangle_cells(n);
    return run_simulations(
        cfg, targets, [&](CounterRng& rng, std::span<std::int64_t> out) {
            if (config.resample_parameters)
            {
                auto params = resample_params_poisson(fit, basis, rng);
                draw_poisson_lower(params.lambda_hat, params.delta_hat, pair,
                                   config.fast_ultimate, rng, out);
            }
            else
            {
                draw_poisson_lower(fit.lambda_hat, fit.delta_hat, pair,
                                   config.fast_ultimate, rng, out);
            }
            return false;
        });
}

//---------------------------------------------------------------------------//
// NEGATIVE BINOMIAL
//---------------------------------------------------------------------------//
BootstrapResult simulate_nb(BootstrapConfig const& config,
                            NegBinFit const& fit,
                            TrianglePair const& pair,
                            double next_exposure)
{
    require_nb_fit(fit);
    if (!(next_exposure > 0))
        throw Error(ErrorCode::InvalidParameter, "exposure must be positive");
    auto const basis = ResamplingBasis::from(pair);
    int const n = pair.size();
    auto cfg = config;
    cfg.model = Model::NegBin;
    return run_simulations(
        cfg, {CellTarget::next(n)},
        [&](CounterRng& rng, std::span<std::int64_t> out) {
            auto draw = draw_nb_parameters(config, fit, pair, basis, rng);
            if (draw.fallback)
            {
                double intensity = lambda_prime(draw.lambda, draw.delta, n);
                out[0] = sample_poisson(intensity * next_exposure, rng);
                return true;
            }
            double shape = std::accumulate(draw.r.begin(), draw.r.end(), 0.0);
            out[0] = sample_negbin(shape * next_exposure, draw.p.back(), rng);
            return false;
        });
}

BootstrapResult simulate_lower_triangle_nb(BootstrapConfig const& config,
                                           NegBinFit const& fit,
                                           TrianglePair const& pair)
{
    require_nb_fit(fit);
    auto const basis = ResamplingBasis::from(pair);
    int const n = pair.size();
    auto cfg = config;
    cfg.model = Model::NegBin;
    auto targets = config.fast_ultimate ? ultimate_cells(n) : lower_triangle_cells(n);
    return run_simulations(
        cfg, targets, [&](CounterRng& rng, std::span<std::int64_t> out) {
            auto draw = draw_nb_parameters(config, fit, pair, basis, rng);
            if (draw.fallback)
            {
                draw_poisson_lower(draw.lambda, draw.delta, pair,
                                   config.fast_ultimate, rng, out);
                return true;
            }
            draw_negbin_lower(draw.r, draw.p, draw.delta, pair,
                              config.fast_ultimate, rng, out);
            return false;
        });
}

//---------------------------------------------------------------------------//
}  // namespace xlcount
