//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xlcount/error.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xlcount
{
//---------------------------------------------------------------------------//
/*!
 * Stable identifiers for every failure the library reports.
 *
 * The CLI prints these names verbatim, so renaming one is a breaking change.
 */
enum class ErrorCode
{
    DimensionMismatch,
    NegativeCumulative,
    DropExceedsStock,
    NegativeCount,
    DuplicateCell,
    MissingCell,
    NonInteger,
    OutOfTriangle,
    MalformedCsv,
    InvalidParameter,
    DegenerateP,
    DegenerateFit,
    OptimizerFailed,
    IndexOutsideLowerTriangle,
    EmptySampleSet,
    NotAdmissible,
};

inline constexpr std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NegativeCumulative: return "NegativeCumulative";
        case ErrorCode::DropExceedsStock: return "DropExceedsStock";
        case ErrorCode::NegativeCount: return "NegativeCount";
        case ErrorCode::DuplicateCell: return "DuplicateCell";
        case ErrorCode::MissingCell: return "MissingCell";
        case ErrorCode::NonInteger: return "NonInteger";
        case ErrorCode::OutOfTriangle: return "OutOfTriangle";
        case ErrorCode::MalformedCsv: return "MalformedCsv";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::DegenerateP: return "DegenerateP";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::OptimizerFailed: return "OptimizerFailed";
        case ErrorCode::IndexOutsideLowerTriangle:
            return "IndexOutsideLowerTriangle";
        case ErrorCode::EmptySampleSet: return "EmptySampleSet";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
    }
    return "Unknown";
}

//---------------------------------------------------------------------------//
//! Exception carrying a stable error code.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what)
        , code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

//---------------------------------------------------------------------------//
}  // namespace xlcount
