//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file optimize.cpp
//---------------------------------------------------------------------------//
#include "xlcount/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

namespace xlcount
{
namespace
{
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double finite_or_neginf(double v)
{
    return std::isfinite(v) ? v : kNegInf;
}
}  // namespace

//---------------------------------------------------------------------------//
ScalarOptimum maximize_bounded(std::function<double(double)> const& f,
                               double lo,
                               double hi,
                               int grid_points)
{
    grid_points = std::max(grid_points, 3);
    double const step = (hi - lo) / (grid_points - 1);
    int best = 0;
    double best_value = kNegInf;
    for (int k = 0; k < grid_points; ++k)
    {
        double x = (k == grid_points - 1) ? hi : lo + k * step;
        double v = finite_or_neginf(f(x));
        if (v >= best_value)
        {
            best_value = v;
            best = k;
        }
    }
    if (best_value == kNegInf)
        return {lo, kNegInf};

    double a = lo + std::max(best - 1, 0) * step;
    double b = std::min(lo + (best + 1) * step, hi);
    std::uintmax_t iterations = 200;
    auto negated = [&f](double x) {
        double v = finite_or_neginf(f(x));
        return v == kNegInf ? std::numeric_limits<double>::max() : -v;
    };
    auto [x, neg] = boost::math::tools::brent_find_minima(
        negated, a, b, 40, iterations);

    // Brent never evaluates the endpoints; the grid may have found an equal or
    // better boundary value, and ties favour the upper end
    ScalarOptimum result{x, -neg};
    double grid_x = (best == grid_points - 1) ? hi : lo + best * step;
    if (best_value >= result.value)
        result = {grid_x, best_value};
    return result;
}

//---------------------------------------------------------------------------//
SimplexOptimum
maximize_simplex(std::function<double(std::vector<double> const&)> const& f,
                 std::vector<double> start,
                 SimplexOptions const& options)
{
    std::size_t const dim = start.size();
    SimplexOptimum result;
    auto eval = [&](std::vector<double> const& x) {
        ++result.evaluations;
        return finite_or_neginf(f(x));
    };

    std::vector<double> best = std::move(start);
    double best_value = eval(best);

    for (int attempt = 0; attempt <= options.restarts; ++attempt)
    {
        std::vector<std::vector<double>> simplex(dim + 1, best);
        std::vector<double> values(dim + 1, best_value);
        for (std::size_t d = 0; d < dim; ++d)
        {
            simplex[d + 1][d] += options.initial_step;
            values[d + 1] = eval(simplex[d + 1]);
        }

        std::vector<std::size_t> order(dim + 1);
        bool converged = false;
        while (result.evaluations < options.max_evaluations)
        {
            std::iota(order.begin(), order.end(), 0);
            // Descending by value; ties by index keep the run deterministic
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return values[a] > values[b];
                             });
            double spread = values[order.front()] - values[order.back()];
            if (std::isfinite(spread) && spread < options.value_tolerance)
            {
                converged = true;
                break;
            }

            std::size_t const worst = order.back();
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t v = 0; v < dim; ++v)
            {
                for (std::size_t d = 0; d < dim; ++d)
                    centroid[d] += simplex[order[v]][d] / double(dim);
            }
            auto along = [&](double t) {
                std::vector<double> x(dim);
                for (std::size_t d = 0; d < dim; ++d)
                    x[d] = centroid[d] + t * (simplex[worst][d] - centroid[d]);
                return x;
            };

            auto reflected = along(-1.0);
            double fr = eval(reflected);
            double const f_best = values[order.front()];
            double const f_second_worst = values[order[dim - 1]];
            if (fr > f_best)
            {
                auto expanded = along(-2.0);
                double fe = eval(expanded);
                if (fe > fr)
                {
                    simplex[worst] = std::move(expanded);
                    values[worst] = fe;
                }
                else
                {
                    simplex[worst] = std::move(reflected);
                    values[worst] = fr;
                }
                continue;
            }
            if (fr > f_second_worst)
            {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
                continue;
            }
            bool outside = fr > values[worst];
            auto contracted = along(outside ? -0.5 : 0.5);
            double fc = eval(contracted);
            if (fc > std::max(fr, values[worst]))
            {
                simplex[worst] = std::move(contracted);
                values[worst] = fc;
                continue;
            }
            // Shrink toward the best vertex
            auto const& anchor = simplex[order.front()];
            for (std::size_t v = 0; v <= dim; ++v)
            {
                if (v == order.front())
                    continue;
                for (std::size_t d = 0; d < dim; ++d)
                    simplex[v][d] = anchor[d] + 0.5 * (simplex[v][d] - anchor[d]);
                values[v] = eval(simplex[v]);
            }
        }

        auto it = std::max_element(values.begin(), values.end());
        auto idx = static_cast<std::size_t>(it - values.begin());
        double improvement = *it - best_value;
        if (*it >= best_value)
        {
            best = simplex[idx];
            best_value = *it;
        }
        result.converged = converged;
        if (converged && attempt > 0 && improvement < options.value_tolerance)
            break;
    }

    result.x = std::move(best);
    result.value = best_value;
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace xlcount
