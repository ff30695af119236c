//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 xlcount contributors.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file triangle.cpp
//---------------------------------------------------------------------------//
#include "xlcount/triangle.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "xlcount/error.hpp"

namespace xlcount
{
namespace
{
//---------------------------------------------------------------------------//
std::string cell_name(int origin, int dev)
{
    return "(" + std::to_string(origin) + "," + std::to_string(dev) + ")";
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty()
           && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text)
{
    std::vector<std::string_view> lines;
    while (!text.empty())
    {
        auto pos = text.find('\n');
        auto line = text.substr(0, pos);
        lines.push_back(trim(line));
        if (pos == std::string_view::npos)
            break;
        text.remove_prefix(pos + 1);
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    while (true)
    {
        auto pos = line.find(',');
        fields.push_back(trim(line.substr(0, pos)));
        if (pos == std::string_view::npos)
            break;
        line.remove_prefix(pos + 1);
    }
    return fields;
}

template<class T>
std::optional<T> parse_number(std::string_view s)
{
    T value{};
    auto const* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        return std::nullopt;
    return value;
}

int parse_index(std::string_view s, std::size_t line_no)
{
    auto v = parse_number<int>(s);
    if (!v)
    {
        throw Error(ErrorCode::MalformedCsv,
                    "line " + std::to_string(line_no) + ": bad index '"
                        + std::string(s) + "'");
    }
    return *v;
}

void expect_header(std::vector<std::string_view> const& lines,
                   std::string_view header)
{
    if (lines.empty() || lines.front() != header)
    {
        throw Error(ErrorCode::MalformedCsv,
                    "expected header '" + std::string(header) + "'");
    }
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
// CLAIM TRIANGLE
//---------------------------------------------------------------------------//
ClaimTriangle::ClaimTriangle(int n)
    : n_(n), cells_(static_cast<std::size_t>(n) * (n + 1) / 2, 0)
{
    if (n < 0)
        throw Error(ErrorCode::InvalidParameter, "negative triangle size");
}

ClaimTriangle
ClaimTriangle::from_rows(std::vector<std::vector<value_type>> rows)
{
    int const n = static_cast<int>(rows.size());
    TriangleBuilder builder(n);
    for (int i = 1; i <= n; ++i)
    {
        auto const& row = rows[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(row.size()) != n - i + 1)
        {
            throw Error(ErrorCode::DimensionMismatch,
                        "row " + std::to_string(i) + " has "
                            + std::to_string(row.size()) + " cells, expected "
                            + std::to_string(n - i + 1));
        }
        for (int j = 1; j <= n - i + 1; ++j)
        {
            auto v = row[static_cast<std::size_t>(j - 1)];
            if (v < 0)
            {
                throw Error(ErrorCode::NegativeCount,
                            "negative count at " + cell_name(i, j));
            }
            builder.set(i, j, v);
        }
    }
    return std::move(builder).finish();
}

auto ClaimTriangle::at(int origin, int dev) const -> value_type
{
    if (!contains(origin, dev))
    {
        throw Error(ErrorCode::OutOfTriangle,
                    "cell " + cell_name(origin, dev) + " outside triangle n="
                        + std::to_string(n_));
    }
    return (*this)(origin, dev);
}

ClaimTriangle
ClaimTriangle::with_cell(int origin, int dev, value_type value) const
{
    if (!contains(origin, dev))
    {
        throw Error(ErrorCode::OutOfTriangle,
                    "cell " + cell_name(origin, dev) + " outside triangle");
    }
    if (value < 0)
    {
        throw Error(ErrorCode::NegativeCount,
                    "negative count at " + cell_name(origin, dev));
    }
    ClaimTriangle result = *this;
    result.cells_[offset(origin, dev)] = value;
    return result;
}

//---------------------------------------------------------------------------//
// EXPOSURE
//---------------------------------------------------------------------------//
ExposureVector::ExposureVector(std::vector<double> values)
    : values_(std::move(values))
{
    for (std::size_t k = 0; k < values_.size(); ++k)
    {
        if (!std::isfinite(values_[k]) || values_[k] <= 0)
        {
            throw Error(ErrorCode::InvalidParameter,
                        "exposure of origin " + std::to_string(k + 1)
                            + " must be positive");
        }
    }
}

double ExposureVector::at(int origin) const
{
    if (origin < 1 || origin > static_cast<int>(values_.size()))
    {
        throw Error(ErrorCode::DimensionMismatch,
                    "no exposure for origin " + std::to_string(origin));
    }
    return (*this)[origin];
}

std::optional<double> ExposureVector::next(int n) const
{
    if (static_cast<int>(values_.size()) >= n + 1)
        return (*this)[n + 1];
    return std::nullopt;
}

double ExposureVector::partial_sum(int count) const noexcept
{
    double total = 0;
    for (int i = 1; i <= count; ++i)
        total += (*this)[i];
    return total;
}

//---------------------------------------------------------------------------//
// PAIR
//---------------------------------------------------------------------------//
TrianglePair::TrianglePair(ClaimTriangle new_claims,
                           ClaimTriangle drops,
                           ExposureVector exposure)
    : new_claims_(std::move(new_claims))
    , drops_(std::move(drops))
    , exposure_(std::move(exposure))
{
    int const n = new_claims_.size();
    if (drops_.size() != n)
    {
        throw Error(ErrorCode::DimensionMismatch,
                    "N has n=" + std::to_string(n) + " but D has n="
                        + std::to_string(drops_.size()));
    }
    if (static_cast<int>(exposure_.size()) != n
        && static_cast<int>(exposure_.size()) != n + 1)
    {
        throw Error(ErrorCode::DimensionMismatch,
                    "exposure has " + std::to_string(exposure_.size())
                        + " entries, expected " + std::to_string(n) + " or "
                        + std::to_string(n + 1));
    }

    cumulative_.resize(new_claims_.cell_count());
    for (int i = 1; i <= n; ++i)
    {
        std::int64_t c = new_claims_(i, 1);
        cumulative_[cum_offset(i, 1)] = c;
        for (int j = 1; j < n - i + 1; ++j)
        {
            c += new_claims_(i, j + 1) - drops_(i, j + 1);
            cumulative_[cum_offset(i, j + 1)] = c;
        }
    }
}

ClaimTriangle TrianglePair::cumulative_triangle() const
{
    int const n = size();
    TriangleBuilder builder(n);
    for (int i = 1; i <= n; ++i)
    {
        for (int j = 1; j <= n - i + 1; ++j)
        {
            auto c = cumulative(i, j);
            if (c < 0)
            {
                throw Error(ErrorCode::NegativeCumulative,
                            "C" + cell_name(i, j) + " = " + std::to_string(c));
            }
            builder.set(i, j, c);
        }
    }
    return std::move(builder).finish();
}

//---------------------------------------------------------------------------//
ClaimTriangle
build_cumulative(ClaimTriangle const& new_claims, ClaimTriangle const& drops)
{
    int const n = new_claims.size();
    if (drops.size() != n)
    {
        throw Error(ErrorCode::DimensionMismatch,
                    "N has n=" + std::to_string(n) + " but D has n="
                        + std::to_string(drops.size()));
    }
    TriangleBuilder builder(n);
    for (int i = 1; i <= n; ++i)
    {
        if (drops(i, 1) != 0)
        {
            throw Error(ErrorCode::InvalidParameter,
                        "D first column nonzero at i=" + std::to_string(i));
        }
        std::int64_t c = new_claims(i, 1);
        builder.set(i, 1, c);
        for (int j = 1; j < n - i + 1; ++j)
        {
            if (drops(i, j + 1) > c)
            {
                throw Error(ErrorCode::DropExceedsStock,
                            "D" + cell_name(i, j + 1) + " = "
                                + std::to_string(drops(i, j + 1)) + " > C"
                                + cell_name(i, j) + " = " + std::to_string(c));
            }
            c += new_claims(i, j + 1) - drops(i, j + 1);
            if (c < 0)
            {
                throw Error(ErrorCode::NegativeCumulative,
                            "C" + cell_name(i, j + 1) + " < 0");
            }
            builder.set(i, j + 1, c);
        }
    }
    return std::move(builder).finish();
}

//---------------------------------------------------------------------------//
ValidationReport validate(TrianglePair const& pair)
{
    using Kind = Violation::Kind;
    ValidationReport report;
    auto& out = report.violations;
    int const n = pair.size();

    for (int i = 1; i <= n; ++i)
    {
        if (pair.drops()(i, 1) != 0)
        {
            out.push_back({Kind::DropFirstColumnNonzero, i, 1,
                           "D first column nonzero at i=" + std::to_string(i)});
        }
        for (int j = 1; j < n - i + 1; ++j)
        {
            auto stock = pair.cumulative(i, j);
            auto drop = pair.drops()(i, j + 1);
            if (drop > stock)
            {
                out.push_back({Kind::DropExceedsStock, i, j + 1,
                               "drop exceeds stock at " + cell_name(i, j + 1)
                                   + ": D=" + std::to_string(drop)
                                   + " > C" + cell_name(i, j) + "="
                                   + std::to_string(stock)});
            }
            if (pair.cumulative(i, j + 1) < 0)
            {
                out.push_back({Kind::NegativeCumulative, i, j + 1,
                               "negative cumulative at " + cell_name(i, j + 1)});
            }
        }
    }
    return report;
}

void require_admissible(TrianglePair const& pair)
{
    auto report = validate(pair);
    if (!report.ok())
    {
        throw Error(ErrorCode::NotAdmissible,
                    report.violations.front().message);
    }
}

//---------------------------------------------------------------------------//
// CSV
//---------------------------------------------------------------------------//
ClaimTriangle parse_triangle_csv(std::string_view text, std::optional<int> n)
{
    auto lines = split_lines(text);
    expect_header(lines, "origin,dev,value");

    struct Row
    {
        int origin;
        int dev;
        std::int64_t value;
    };
    std::vector<Row> rows;
    std::map<std::pair<int, int>, std::size_t> seen;
    int max_index = 0;

    for (std::size_t k = 1; k < lines.size(); ++k)
    {
        if (lines[k].empty())
            continue;
        auto fields = split_fields(lines[k]);
        if (fields.size() != 3)
        {
            throw Error(ErrorCode::MalformedCsv,
                        "line " + std::to_string(k + 1) + ": expected 3 fields");
        }
        int origin = parse_index(fields[0], k + 1);
        int dev = parse_index(fields[1], k + 1);
        auto value = parse_number<std::int64_t>(fields[2]);
        if (!value)
        {
            throw Error(ErrorCode::NonInteger,
                        "value '" + std::string(fields[2]) + "' at "
                            + cell_name(origin, dev));
        }
        if (*value < 0)
        {
            throw Error(ErrorCode::NegativeCount,
                        "negative count at " + cell_name(origin, dev));
        }
        if (!seen.emplace(std::pair{origin, dev}, k).second)
        {
            throw Error(ErrorCode::DuplicateCell,
                        "duplicate cell " + cell_name(origin, dev));
        }
        rows.push_back({origin, dev, *value});
        max_index = std::max({max_index, origin, dev});
    }

    int const size = n.value_or(max_index);
    TriangleBuilder builder(size);
    for (auto const& row : rows)
    {
        if (!ClaimTriangle::in_triangle(size, row.origin, row.dev))
        {
            throw Error(ErrorCode::OutOfTriangle,
                        "cell " + cell_name(row.origin, row.dev)
                            + " outside triangle n=" + std::to_string(size));
        }
        builder.set(row.origin, row.dev, row.value);
    }
    for (int i = 1; i <= size; ++i)
    {
        for (int j = 1; j <= size - i + 1; ++j)
        {
            if (!seen.count({i, j}))
            {
                throw Error(ErrorCode::MissingCell,
                            "missing cell " + cell_name(i, j));
            }
        }
    }
    return std::move(builder).finish();
}

std::string serialize_triangle_csv(ClaimTriangle const& tri)
{
    std::ostringstream os;
    os << "origin,dev,value\n";
    for (int i = 1; i <= tri.size(); ++i)
    {
        for (int j = 1; j <= tri.size() - i + 1; ++j)
            os << i << ',' << j << ',' << tri(i, j) << '\n';
    }
    return os.str();
}

ExposureVector parse_exposure_csv(std::string_view text)
{
    auto lines = split_lines(text);
    expect_header(lines, "origin,exposure");

    std::map<int, double> rows;
    for (std::size_t k = 1; k < lines.size(); ++k)
    {
        if (lines[k].empty())
            continue;
        auto fields = split_fields(lines[k]);
        if (fields.size() != 2)
        {
            throw Error(ErrorCode::MalformedCsv,
                        "line " + std::to_string(k + 1) + ": expected 2 fields");
        }
        int origin = parse_index(fields[0], k + 1);
        auto value = parse_number<double>(fields[1]);
        if (!value)
        {
            throw Error(ErrorCode::MalformedCsv,
                        "bad exposure '" + std::string(fields[1]) + "'");
        }
        if (!rows.emplace(origin, *value).second)
        {
            throw Error(ErrorCode::DuplicateCell,
                        "duplicate exposure for origin "
                            + std::to_string(origin));
        }
    }

    std::vector<double> values;
    int expected = 1;
    for (auto const& [origin, value] : rows)
    {
        if (origin != expected)
        {
            throw Error(ErrorCode::MissingCell,
                        "missing exposure for origin "
                            + std::to_string(expected));
        }
        values.push_back(value);
        ++expected;
    }
    return ExposureVector(std::move(values));
}

std::string serialize_exposure_csv(ExposureVector const& exposure)
{
    std::ostringstream os;
    os.precision(17);
    os << "origin,exposure\n";
    for (int i = 1; i <= static_cast<int>(exposure.size()); ++i)
        os << i << ',' << exposure[i] << '\n';
    return os.str();
}

std::string read_text_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

//---------------------------------------------------------------------------//
}  // namespace xlcount
