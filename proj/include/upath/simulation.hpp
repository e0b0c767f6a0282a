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

#include "upath/adoption.hpp"
#include "upath/domain.hpp"
#include "upath/energy.hpp"
#include "upath/grid.hpp"
#include "upath/pathways.hpp"
#include "upath/redevelopment.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace upath
{

struct NeighborhoodInput {
    std::string name;
    std::vector<Parcel> parcels;
};

/// Everything a run reads; immutable while runs execute.
struct ModelInputs {
    Catalog catalog;
    RedevelopmentSchedule schedule;
    std::vector<AssignmentRule> rules;
    DemandTable demand;
    GridPathways grid;
    std::vector<NeighborhoodInput> neighborhoods;
    EnergyParams energy;
    AbmParams abm;
    /// Price trajectories; the seed is taken from the scenario.
    EconomicContext economy;

    /// Empty iff the inputs are mutually consistent.
    std::vector<std::string> validate() const;
};

struct AdoptionCount {
    std::string neighborhood;
    int decade      = 0;
    Technology tech = Technology::high_eff_hvac;
    long chosen     = 0;
    long mandated   = 0;
    long installed  = 0;
};

/// Technologies in place in one residence unit at an accounting decade.
struct UnitTech {
    std::int16_t hvac_year = 0;
    bool thermostat        = false;
    bool storage           = false;
    float pv_kw            = 0.0f;
};

/// One neighborhood at one decade, before climate and grid are applied.
struct DecadeSnapshot {
    std::vector<Parcel> parcels;
    /// Per unit in parcel order; empty when adoption is disabled.
    std::vector<UnitTech> techs;
    std::array<long, technology_count> chosen{};
    std::array<long, technology_count> mandated{};
    std::array<long, technology_count> installed{};
};

/// Redevelopment and adoption history of one neighborhood. It depends on
/// development, adoption policy and seed only, so runs that differ in
/// climate or grid share it.
struct Trajectory {
    std::string neighborhood;
    std::vector<DecadeSnapshot> decades;
};

std::vector<Trajectory> simulate_trajectories(const ModelInputs& inputs, Development development,
                                              AdoptionPolicy adoption, std::uint64_t seed);

struct RunOutput {
    ScenarioSpec spec;
    std::vector<PathwayPoint> pathways;
    std::vector<ParcelRecord> parcels;
    std::vector<AdoptionCount> adoption;
};

/// Energy, emissions and aggregation for `spec` over precomputed trajectories.
RunOutput account(const ModelInputs& inputs, const ScenarioSpec& spec, std::span<const Trajectory> trajectories);

/// Decade loop: redevelopment, population sync and mandates, accounting,
/// then the yearly adoption ticks leading to the next decade. Errors are
/// rethrown as ModelError naming module, neighborhood and decade.
RunOutput run_scenario(const ModelInputs& inputs, const ScenarioSpec& spec);

struct MatrixAxes {
    std::vector<Climate> climates;
    std::vector<GridPathwayId> grids;
    std::vector<Development> developments;
    std::vector<AdoptionPolicy> adoptions;

    static MatrixAxes full();
    std::vector<ScenarioSpec> combinations(std::uint64_t seed) const;
};

struct MatrixRun {
    ScenarioSpec spec;
    std::optional<RunOutput> output;
    std::string error;
};

struct MatrixOptions {
    unsigned jobs = 1;
    /// Called from worker threads once per successful run, before its parcel records may be dropped.
    std::function<void(const RunOutput&)> on_run;
    bool keep_parcels = true;
};

/// All combinations, at most `options.jobs` at a time. Trajectories are simulated
/// once per (development, adoption) and shared. A failed combination records
/// its error and the others carry on. Results follow combinations() order.
std::vector<MatrixRun> run_matrix(const ModelInputs& inputs, const MatrixAxes& axes, std::uint64_t seed,
                                  const MatrixOptions& options);

/// Premium series for every (climate, grid, adoption, neighborhood) that has
/// both a low- and a high-density run.
std::vector<PremiumSeries> premiums(std::span<const PathwayPoint> points);

} // namespace upath
