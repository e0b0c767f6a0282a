/*
 * Copyright (C) 2026 urbanpath contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "upath/domain.hpp"
#include "upath/energy.hpp"
#include "upath/grid.hpp"
#include "upath/redevelopment.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace upath
{

/// Header-indexed comma-separated table. Fields are not quoted.
class CsvTable
{
public:
    /// Throws ValidationError on a missing header or a row of the wrong width.
    CsvTable(std::istream& in, std::string source);

    static CsvTable read(const std::filesystem::path& path);

    std::size_t rows() const
    {
        return rows_.size();
    }
    /// Throws ValidationError if the column is absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;

    const std::string& text(std::size_t row, std::size_t col) const
    {
        return rows_[row][col];
    }
    double number(std::size_t row, std::size_t col) const;
    long integer(std::size_t row, std::size_t col) const;
    template <class E>
    E enumeration(std::size_t row, std::size_t col) const
    {
        const auto v = parse_enum<E>(text(row, col));
        if (!v) {
            fail(row, col, "unknown value '" + text(row, col) + "'");
        }
        return *v;
    }

    /// Throws ValidationError with source, line and column context.
    [[noreturn]] void fail(std::size_t row, std::size_t col, const std::string& what) const;
    [[noreturn]] void fail(std::size_t row, const std::string& what) const;

private:
    std::string source_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> lines_;
};

inline constexpr std::string_view parcel_header =
    "parcel_id,neighborhood,land_use_class,location_class,lot_area_m2,ilr,year_built,archetype_id,buildings,x_m,y_m";
inline constexpr std::string_view catalog_header =
    "archetype_id,dwelling_class,units_per_building,unit_floor_area_m2,stories,footprint_m2,base_intensity_kwh_m2_yr";
inline constexpr std::string_view schedule_header = "neighborhood,decade,fraction";
inline constexpr std::string_view rules_header =
    "scenario,land_use_class,location_class,lot_area_min_m2,lot_area_max_m2,target_archetype_id,subdivision_count";
inline constexpr std::string_view demand_header  = "archetype_id,decade,climate,kwh_per_unit_yr";
inline constexpr std::string_view climate_header = "climate,decade,multiplier";
inline constexpr std::string_view grid_header    = "pathway_id,year,g_per_kwh";

/// Parcels in file order. Missing ILR (empty field) is kept as absent;
/// non-numeric ILR is an error.
std::vector<Parcel> parse_parcels(std::istream& in, const std::string& source);
std::vector<Parcel> load_parcels(const std::filesystem::path& path);
void write_parcels(std::ostream& out, std::span<const Parcel> parcels);

std::vector<Archetype> load_catalog(const std::filesystem::path& path);
void write_catalog(std::ostream& out, std::span<const Archetype> catalog);

RedevelopmentSchedule load_schedule(const std::filesystem::path& path);
void write_schedule(std::ostream& out, const RedevelopmentSchedule& schedule);

/// lot_area_max_m2 may be empty or "inf" for an open band.
std::vector<AssignmentRule> load_rules(const std::filesystem::path& path);
void write_rules(std::ostream& out, std::span<const AssignmentRule> rules);

DemandTable load_demand(const std::filesystem::path& path);
ClimateCurve load_climate_curve(const std::filesystem::path& path);
GridPathways load_grid(const std::filesystem::path& path);

/// Six significant digits, shortest form.
std::string format_number(double value);

} // namespace upath
