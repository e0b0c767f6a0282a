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

#include "upath/simulation.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace upath
{

inline constexpr std::string_view pathways_header =
    "neighborhood,climate,grid,development,adoption,decade,total_kwh,total_tco2e,units,floor_area_m2,"
    "tco2e_per_unit,tco2e_per_m2";
inline constexpr std::string_view parcel_output_header =
    "parcel_id,neighborhood,decade,archetype_id,buildings,units,floor_area_m2,total_kwh,total_tco2e";
inline constexpr std::string_view premium_header =
    "neighborhood,climate,grid,adoption,decade,units_low,units_high,tco2e_low,tco2e_high,premium_tco2e";
inline constexpr std::string_view adoption_header =
    "neighborhood,climate,grid,development,adoption,decade,technology,cumulative_chosen,cumulative_mandated,"
    "installed";

struct RunManifest {
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string software_version;
    struct Entry {
        std::string label;
        std::vector<std::string> files;
        std::string error;
    };
    std::vector<Entry> scenarios;
    double wall_clock_seconds = 0.0;
};

struct WriteOptions {
    bool parcel_csv = true;
    std::string config_digest;
    std::uint64_t seed = 0;
    double wall_clock_seconds = 0.0;
};

void write_pathways_csv(std::ostream& out, std::span<const PathwayPoint> points, bool header = true);
void write_parcel_csv(std::ostream& out, const RunOutput& run);
void write_premium_csv(std::ostream& out, std::span<const PremiumSeries> premiums);
void write_adoption_csv(std::ostream& out, const RunOutput& run, bool header = true);
void write_manifest(std::ostream& out, const RunManifest& manifest);

/// Writes parcels/<label>.csv under `dir`; returns the relative path.
std::filesystem::path write_parcel_file(const std::filesystem::path& dir, const RunOutput& run);

/// Relative path of a run's per-parcel CSV.
std::filesystem::path parcel_file(const ScenarioSpec& spec);

/**
 * Writes the combined pathways and adoption CSVs, the premium CSV when both
 * density scenarios are present, optional per-parcel CSVs and the manifest.
 * Runs whose parcel records were dropped are listed with the per-parcel file
 * a sink already wrote.
 * Failed runs appear only in the manifest. Returns the paths written.
 */
std::vector<std::filesystem::path> write_outputs(std::span<const MatrixRun> runs, const std::filesystem::path& dir,
                                                 const WriteOptions& options);

/// Reads a pathways long CSV back into points.
std::vector<PathwayPoint> load_pathways(const std::filesystem::path& path);

} // namespace upath
