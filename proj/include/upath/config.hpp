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

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace upath
{

/// Input files. Relative paths resolve against the config file's directory;
/// absent optional tables fall back to the shipped curves.
struct DataPaths {
    std::string catalog;
    std::string schedule;
    std::string rules;
    std::optional<std::string> demand;
    std::optional<std::string> climate_curve;
    std::optional<std::string> grid;
    std::vector<std::string> parcels;
};

struct OutputOptions {
    std::string dir = "out";
    /// Per-parcel CSVs for single runs and for matrix runs.
    bool parcels_run    = true;
    bool parcels_matrix = false;
};

struct RunConfig {
    std::filesystem::path base_dir;
    DataPaths data;
    ScenarioSpec scenario;
    MatrixAxes matrix = MatrixAxes::full();
    EnergyParams energy;
    AbmParams abm;
    EconomicContext economy;
    OutputOptions output;

    std::filesystem::path resolve(const std::string& path) const;
};

/// Throws ValidationError on unknown keys, wrong types or bad enum names.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Every setting, defaults included, in a fixed key order.
nlohmann::json to_json(const RunConfig& config);

/// Hex FNV-1a of the canonical serialization, output directory excluded.
std::string config_digest(const RunConfig& config);

/// Reads and validates every referenced table. Throws ValidationError listing all problems.
ModelInputs load_inputs(const RunConfig& config);

/// Parses "climate=A1B,grid=moderate,dev=low,adopt=neutral" over `base`.
ScenarioSpec parse_scenario(std::string_view text, ScenarioSpec base);

} // namespace upath
