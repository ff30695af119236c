//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file distributions.cpp
//---------------------------------------------------------------------------//
#include "xlcount/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "xlcount/error.hpp"
#include "xlcount/samplers.hpp"

namespace xlcount
{
namespace
{
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};
template<class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

//---------------------------------------------------------------------------//
void check(Poisson const& law)
{
    if (!(law.mean >= 0) || !std::isfinite(law.mean))
        throw Error(ErrorCode::InvalidParameter, "Poisson mean must be >= 0");
}

void check(Binomial const& law)
{
    if (law.trials < 0 || !(law.prob >= 0 && law.prob <= 1))
    {
        throw Error(ErrorCode::InvalidParameter,
                    "binomial requires trials >= 0 and prob in [0,1]");
    }
}

void check(NegBin const& law)
{
    if (!(law.r >= 0) || !std::isfinite(law.r))
        throw Error(ErrorCode::InvalidParameter, "NB shape must be >= 0");
    if (!(law.p > 0 && law.p <= 1))
        throw Error(ErrorCode::InvalidParameter, "NB prob must be in (0,1]");
}

double component_pmf(Poisson const& law, std::int64_t k)
{
    return std::exp(poisson_log_pmf(k, law.mean));
}
double component_pmf(NegBin const& law, std::int64_t k)
{
    return std::exp(negbin_log_pmf(k, law.r, law.p));
}
double component_pmf(Binomial const& law, std::int64_t k)
{
    return std::exp(binomial_log_pmf(k, law.trials, law.prob));
}

template<class Other>
double conv_pmf(Convolution<Other> const& law, std::int64_t k)
{
    if (k < 0)
        return 0;
    double total = 0;
    std::int64_t const top = std::min(k, law.binomial.trials);
    for (std::int64_t d = 0; d <= top; ++d)
    {
        double b = component_pmf(law.binomial, d);
        if (b > 0)
            total += b * component_pmf(law.other, k - d);
    }
    return total;
}

Moments component_moments(Poisson const& law)
{
    return {law.mean, law.mean};
}
Moments component_moments(Binomial const& law)
{
    double n = static_cast<double>(law.trials);
    return {n * law.prob, n * law.prob * (1 - law.prob)};
}
Moments component_moments(NegBin const& law)
{
    double q = 1 - law.p;
    return {law.r * q / law.p, law.r * q / (law.p * law.p)};
}
template<class Other>
Moments component_moments(Convolution<Other> const& law)
{
    auto a = component_moments(law.binomial);
    auto b = component_moments(law.other);
    return {a.mean + b.mean, a.variance + b.variance};
}

//! Point beyond which the accumulation loops give up
std::int64_t scan_limit(CountDistribution const& dist)
{
    auto m = moments(dist);
    return static_cast<std::int64_t>(m.mean + 60 * std::sqrt(m.variance) + 200);
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
// CONSTRUCTION
//---------------------------------------------------------------------------//
CountDistribution::CountDistribution(Poisson law) : law_(law)
{
    check(law);
}
CountDistribution::CountDistribution(Binomial law) : law_(law)
{
    check(law);
}
CountDistribution::CountDistribution(NegBin law) : law_(law)
{
    check(law);
}
CountDistribution::CountDistribution(BinomialPoisson law) : law_(law)
{
    check(law.binomial);
    check(law.other);
}
CountDistribution::CountDistribution(BinomialNegBin law) : law_(law)
{
    check(law.binomial);
    check(law.other);
}

std::string CountDistribution::kind() const
{
    return std::visit(Overloaded{
                          [](Poisson const&) { return "poisson"; },
                          [](Binomial const&) { return "binomial"; },
                          [](NegBin const&) { return "negbin"; },
                          [](BinomialPoisson const&) {
                              return "binomial+poisson";
                          },
                          [](BinomialNegBin const&) {
                              return "binomial+negbin";
                          },
                      },
                      law_);
}

//---------------------------------------------------------------------------//
// LOG-PMF KERNELS
//---------------------------------------------------------------------------//
double log_rising_factorial(double r, std::int64_t k)
{
    if (k > 256)
        return std::lgamma(r + static_cast<double>(k)) - std::lgamma(r);
    double total = 0;
    double product = 1;
    for (std::int64_t t = 0; t < k; ++t)
    {
        product *= r + static_cast<double>(t);
        if (product > 1e250)
        {
            total += std::log(product);
            product = 1;
        }
    }
    return total + std::log(product);
}

double log_factorial(std::int64_t k)
{
    static auto const table = [] {
        std::array<double, 1024> t{};
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = std::lgamma(static_cast<double>(i) + 1);
        return t;
    }();
    if (k < static_cast<std::int64_t>(table.size()))
        return table[static_cast<std::size_t>(k)];
    return std::lgamma(static_cast<double>(k) + 1);
}

double poisson_log_pmf(std::int64_t k, double mean)
{
    if (k < 0)
        return kNegInf;
    if (mean == 0)
        return k == 0 ? 0.0 : kNegInf;
    double kd = static_cast<double>(k);
    return kd * std::log(mean) - mean - std::lgamma(kd + 1);
}

double binomial_log_pmf(std::int64_t k, std::int64_t trials, double prob)
{
    if (k < 0 || k > trials)
        return kNegInf;
    if (prob == 0)
        return k == 0 ? 0.0 : kNegInf;
    if (prob == 1)
        return k == trials ? 0.0 : kNegInf;
    double n = static_cast<double>(trials);
    double kd = static_cast<double>(k);
    return std::lgamma(n + 1) - std::lgamma(kd + 1) - std::lgamma(n - kd + 1)
           + kd * std::log(prob) + (n - kd) * std::log1p(-prob);
}

double negbin_log_pmf(std::int64_t k, double r, double p)
{
    if (!(r >= 0) || !(p > 0 && p <= 1))
    {
        throw Error(ErrorCode::InvalidParameter,
                    "negative binomial requires r >= 0 and p in (0,1]");
    }
    if (k < 0)
        return kNegInf;
    if (r == 0 || p == 1)
        return k == 0 ? 0.0 : kNegInf;
    double kd = static_cast<double>(k);
    return log_rising_factorial(r, k) - log_factorial(k) + r * std::log(p)
           + kd * std::log1p(-p);
}

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//
double pmf(CountDistribution const& dist, std::int64_t k)
{
    return std::visit(
        Overloaded{
            [k](Poisson const& law) { return component_pmf(law, k); },
            [k](Binomial const& law) { return component_pmf(law, k); },
            [k](NegBin const& law) { return component_pmf(law, k); },
            [k](BinomialPoisson const& law) { return conv_pmf(law, k); },
            [k](BinomialNegBin const& law) { return conv_pmf(law, k); },
        },
        dist.law());
}

Moments moments(CountDistribution const& dist)
{
    return std::visit([](auto const& law) { return component_moments(law); },
                      dist.law());
}

double cdf(CountDistribution const& dist, std::int64_t k)
{
    if (k < 0)
        return 0;
    double total = 0;
    for (std::int64_t x = 0; x <= k; ++x)
        total += pmf(dist, x);
    return std::min(total, 1.0);
}

std::int64_t quantile(CountDistribution const& dist, double q)
{
    if (!(q >= 0 && q <= 1))
        throw Error(ErrorCode::InvalidParameter, "quantile level not in [0,1]");
    std::int64_t const limit = scan_limit(dist);
    double const target = std::min(q, 1 - 1e-12);
    double total = 0;
    for (std::int64_t k = 0; k <= limit; ++k)
    {
        double mass = pmf(dist, k);
        total += mass;
        if (q == 0 ? mass > 0 : total >= target)
            return k;
    }
    return limit;
}

std::vector<double> pmf_table(CountDistribution const& dist, double tail)
{
    std::vector<double> table;
    std::int64_t const limit = scan_limit(dist);
    double total = 0;
    for (std::int64_t k = 0; k <= limit; ++k)
    {
        double mass = pmf(dist, k);
        table.push_back(mass);
        total += mass;
        if (total >= 1 - tail)
            break;
    }
    return table;
}

std::int64_t sample(CountDistribution const& dist, CounterRng& rng)
{
    return std::visit(
        Overloaded{
            [&rng](Poisson const& law) {
                return sample_poisson(law.mean, rng);
            },
            [&rng](Binomial const& law) {
                return sample_binomial(law.trials, law.prob, rng);
            },
            [&rng](NegBin const& law) {
                return sample_negbin(law.r, law.p, rng);
            },
            [&rng](BinomialPoisson const& law) {
                auto b = sample_binomial(law.binomial.trials,
                                         law.binomial.prob, rng);
                return b + sample_poisson(law.other.mean, rng);
            },
            [&rng](BinomialNegBin const& law) {
                auto b = sample_binomial(law.binomial.trials,
                                         law.binomial.prob, rng);
                return b + sample_negbin(law.other.r, law.other.p, rng);
            },
        },
        dist.law());
}

//---------------------------------------------------------------------------//
}  // namespace xlcount
