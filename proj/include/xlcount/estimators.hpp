//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/estimators.hpp
//! Point estimators for the Poisson and negative binomial claim-count models.
//---------------------------------------------------------------------------//
#pragma once

#include <span>
#include <vector>

#include "triangle.hpp"

namespace xlcount
{
//---------------------------------------------------------------------------//
// FIT RESULTS
//---------------------------------------------------------------------------//
/*!
 * Poisson model parameters.
 *
 * lambda_hat[j-1] is the expected number of new excess claims per unit
 * exposure in development year j; delta_hat[j-1] is the probability that a
 * claim above the priority at year j drops below it by year j+1.
 */
struct PoissonFit
{
    std::vector<double> lambda_hat;  //!< n values
    std::vector<double> delta_hat;  //!< n-1 values

    int size() const noexcept { return static_cast<int>(lambda_hat.size()); }
};

/*!
 * Negative binomial model parameters.
 *
 * The probability sequence p follows p_{j+1} = p_j / (1 - delta_j (1 - p_j))
 * and the shapes are the moment estimates r_j = lambda_j p_j / (1 - p_j), so
 * the NB means equal the Poisson means.
 */
struct NegBinFit
{
    std::vector<double> lambda_hat;
    std::vector<double> delta_hat;
    std::vector<double> p;
    std::vector<double> r_hat;
    double p1 = 1;
    //! MLE of p1 ran into the Poisson limit; predictions must use Poisson
    bool degenerate = false;
    //! N-triangle log-likelihood at the fitted parameters
    double loglik = 0;

    int size() const noexcept { return static_cast<int>(lambda_hat.size()); }
};

//---------------------------------------------------------------------------//
// POISSON ESTIMATORS
//---------------------------------------------------------------------------//

std::vector<double>
estimate_lambda(ClaimTriangle const& new_claims, ExposureVector const& exposure);
std::vector<double> estimate_lambda(TrianglePair const& pair);

//! Zero at-risk stock gives delta = 0
std::vector<double> estimate_delta(TrianglePair const& pair);

PoissonFit fit_poisson(TrianglePair const& pair);

//! Sum_{k<=j} lambda_k prod_{k<=l<j} (1 - delta_l), 1-based j
double lambda_prime(std::span<double const> lambda,
                    std::span<double const> delta,
                    int j);
double lambda_prime(PoissonFit const& fit, int j);

//---------------------------------------------------------------------------//
//! Factors of the conditional law of C_{i,j} given the observed triangle
struct ConditionalFactors
{
    //! Survival probability of the claims on the latest diagonal
    double delta_prime = 1;
    //! Expected new surviving claims per unit exposure
    double lambda_prime = 0;
};

/*!
 * Conditional factors for cell (i, j) with i + j >= n + 1.
 *
 * The diagonal (i + j = n + 1) gives the empty product and sum. Cells in the
 * observed triangle proper throw IndexOutsideLowerTriangle.
 */
ConditionalFactors conditional_factors(std::span<double const> lambda,
                                       std::span<double const> delta,
                                       int origin,
                                       int dev);
ConditionalFactors conditional_factors(PoissonFit const& fit, int origin, int dev);

//! Throws IndexOutsideLowerTriangle unless i + j >= n + 1, 1 <= i, j <= n
void check_lower_cell(int n, int origin, int dev);

//---------------------------------------------------------------------------//
// NEGATIVE BINOMIAL ESTIMATORS
//---------------------------------------------------------------------------//

//! Closed form p_j for j = 1..n, n = delta.size() + 1
std::vector<double> p_sequence(double p1, std::span<double const> delta);

//! r_j = lambda_j p_j / (1 - p_j); throws DegenerateP if some p_j == 1
std::vector<double>
estimate_r(std::span<double const> lambda, std::span<double const> p);

/*!
 * NB log-likelihood of the N triangle as a function of p1.
 *
 * Shapes are re-derived from lambda at each p1 through the moment estimator.
 */
double negbin_profile_loglik(ClaimTriangle const& new_claims,
                             ExposureVector const& exposure,
                             std::span<double const> lambda,
                             std::span<double const> delta,
                             double p1);

struct P1Options
{
    double lower = 1e-6;
    double upper = 1 - 1e-6;
    //! Maximizers above this are reported as degenerate
    double degeneracy_threshold = 1 - 1e-4;
};

struct P1Estimate
{
    double p1 = 1;
    bool degenerate = false;
    double loglik = 0;
};

P1Estimate mle_p1(ClaimTriangle const& new_claims,
                  ExposureVector const& exposure,
                  std::span<double const> lambda,
                  std::span<double const> delta,
                  P1Options const& options = {});
P1Estimate mle_p1(TrianglePair const& pair,
                  std::span<double const> delta_hat,
                  P1Options const& options = {});

NegBinFit fit_negbin(TrianglePair const& pair, P1Options const& options = {});

//---------------------------------------------------------------------------//
// JOINT (p1, delta) ESTIMATION
//---------------------------------------------------------------------------//

//! NB log-likelihood of N plus binomial log-likelihood of D
double joint_loglik(TrianglePair const& pair,
                    double p1,
                    std::span<double const> delta);

struct JointEstimate
{
    double p1 = 1;
    std::vector<double> delta_tilde;
    std::vector<double> p;
    double loglik = 0;
};

/*!
 * Maximize joint_loglik over (p1, delta) with a simplex search in logit
 * coordinates, started at (mle_p1, delta_hat).
 *
 * Drop rates whose plug-in estimate sits on the boundary {0, 1} (including
 * columns with no claims at risk) stay pinned there.
 */
JointEstimate joint_mle(TrianglePair const& pair, P1Options const& options = {});

//---------------------------------------------------------------------------//
}  // namespace xlcount
