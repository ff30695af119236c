//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/triangle.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xlcount
{
//---------------------------------------------------------------------------//
/*!
 * Upper-left run-off triangle of claim counts.
 *
 * Cells are addressed with 1-based (origin, dev) indices; the observed region
 * is 1 <= origin <= n, 1 <= dev <= n - origin + 1. Values are non-negative
 * and immutable after construction.
 */
class ClaimTriangle
{
  public:
    using value_type = std::int64_t;

    //! Empty (n = 0) triangle
    ClaimTriangle() = default;

    //! All-zero triangle with n origin years
    explicit ClaimTriangle(int n);

    //! Build from ragged rows: row i (0-based) must hold n - i values
    static ClaimTriangle from_rows(std::vector<std::vector<value_type>> rows);

    int size() const noexcept { return n_; }

    //! Number of observed cells, n(n+1)/2
    std::size_t cell_count() const noexcept { return cells_.size(); }

    static constexpr bool in_triangle(int n, int origin, int dev) noexcept
    {
        return origin >= 1 && dev >= 1 && origin <= n
               && dev <= n - origin + 1;
    }

    bool contains(int origin, int dev) const noexcept
    {
        return in_triangle(n_, origin, dev);
    }

    //! Checked cell access (throws OutOfTriangle)
    value_type at(int origin, int dev) const;

    //! Unchecked cell access
    value_type operator()(int origin, int dev) const noexcept
    {
        return cells_[offset(origin, dev)];
    }

    //! Last observed value of an origin row (the current diagonal)
    value_type latest(int origin) const { return at(origin, n_ - origin + 1); }

    //! Copy with one cell replaced (throws OutOfTriangle / NegativeCount)
    ClaimTriangle with_cell(int origin, int dev, value_type value) const;

    //! Row-major packed storage (row 1 first)
    std::span<value_type const> cells() const noexcept { return cells_; }

    friend bool operator==(ClaimTriangle const&, ClaimTriangle const&)
        = default;

  private:
    int n_ = 0;
    std::vector<value_type> cells_;

    std::size_t offset(int origin, int dev) const noexcept
    {
        // Rows 1..origin-1 hold n, n-1, ..., n-origin+2 cells
        auto const i = static_cast<std::size_t>(origin - 1);
        auto const nn = static_cast<std::size_t>(n_);
        return i * nn - i * (i - 1) / 2 + static_cast<std::size_t>(dev - 1);
    }

    friend class TriangleBuilder;
};

//---------------------------------------------------------------------------//
/*!
 * Mutable accumulator used while parsing or simulating a triangle.
 */
class TriangleBuilder
{
  public:
    explicit TriangleBuilder(int n) : tri_(n) {}

    void set(int origin, int dev, ClaimTriangle::value_type value)
    {
        tri_.cells_[tri_.offset(origin, dev)] = value;
    }

    ClaimTriangle const& peek() const noexcept { return tri_; }
    ClaimTriangle finish() && { return std::move(tri_); }

  private:
    ClaimTriangle tri_;
};

//---------------------------------------------------------------------------//
/*!
 * Exposure per origin year, optionally with the next (unobserved) year.
 */
class ExposureVector
{
  public:
    ExposureVector() = default;
    //! Throws InvalidParameter unless every entry is finite and positive
    explicit ExposureVector(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }

    //! 1-based exposure of origin year i
    double operator[](int origin) const noexcept
    {
        return values_[static_cast<std::size_t>(origin - 1)];
    }
    double at(int origin) const;

    //! Exposure for origin year n+1 if it was supplied
    std::optional<double> next(int n) const;

    //! Sum of E_1..E_count
    double partial_sum(int count) const noexcept;

    std::span<double const> values() const noexcept { return values_; }

  private:
    std::vector<double> values_;
};

//---------------------------------------------------------------------------//
/*!
 * Canonical model input: new excess claims N, drops D, exposures E and the
 * cumulative triangle C derived from them.
 *
 * Construction only requires the shapes to agree; domain admissibility is
 * reported by \c validate so callers can inspect bad data.
 */
class TrianglePair
{
  public:
    TrianglePair(ClaimTriangle new_claims,
                 ClaimTriangle drops,
                 ExposureVector exposure);

    int size() const noexcept { return new_claims_.size(); }

    ClaimTriangle const& new_claims() const noexcept { return new_claims_; }
    ClaimTriangle const& drops() const noexcept { return drops_; }
    ExposureVector const& exposure() const noexcept { return exposure_; }

    //! Cumulative counts (signed: inadmissible data may go negative)
    std::int64_t cumulative(int origin, int dev) const noexcept
    {
        return cumulative_[cum_offset(origin, dev)];
    }

    //! Latest observed cumulative count C_{i, n-i+1}
    std::int64_t latest(int origin) const noexcept
    {
        return cumulative(origin, size() - origin + 1);
    }

    //! Cumulative triangle (throws NegativeCumulative if data inadmissible)
    ClaimTriangle cumulative_triangle() const;

  private:
    ClaimTriangle new_claims_;
    ClaimTriangle drops_;
    ExposureVector exposure_;
    std::vector<std::int64_t> cumulative_;

    std::size_t cum_offset(int origin, int dev) const noexcept
    {
        auto const i = static_cast<std::size_t>(origin - 1);
        auto const nn = static_cast<std::size_t>(size());
        return i * nn - i * (i - 1) / 2 + static_cast<std::size_t>(dev - 1);
    }
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//

//! Cumulative triangle from new claims and drops, with full checking
ClaimTriangle
build_cumulative(ClaimTriangle const& new_claims, ClaimTriangle const& drops);

//---------------------------------------------------------------------------//
//! One violated admissibility constraint
struct Violation
{
    enum class Kind
    {
        DimensionMismatch,
        DropFirstColumnNonzero,
        DropExceedsStock,
        NegativeCumulative,
    };

    Kind kind;
    int origin = 0;  //!< 1-based, 0 when not cell-specific
    int dev = 0;
    std::string message;
};

struct ValidationReport
{
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(TrianglePair const& pair);

//! Throw NotAdmissible with the first violation if the pair is invalid
void require_admissible(TrianglePair const& pair);

//---------------------------------------------------------------------------//
// CSV I/O
//---------------------------------------------------------------------------//

//! Parse long-format "origin,dev,value"; n inferred when not given
ClaimTriangle
parse_triangle_csv(std::string_view text, std::optional<int> n = {});
std::string serialize_triangle_csv(ClaimTriangle const& tri);

//! Parse "origin,exposure"; rows must cover 1..k contiguously
ExposureVector parse_exposure_csv(std::string_view text);
std::string serialize_exposure_csv(ExposureVector const& exposure);

//! Read a whole file (throws std::runtime_error on I/O failure)
std::string read_text_file(std::string const& path);

//---------------------------------------------------------------------------//
}  // namespace xlcount
