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
#include "upath/energy.hpp"
#include "upath/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace upath
{

namespace
{

std::size_t decade_index(int decade)
{
    const auto idx = Timeline::index(decade);
    if (!idx) {
        throw ValidationError("decade " + std::to_string(decade) + " is not on the 2020-2100 timeline");
    }
    return *idx;
}

double interpolate(std::span<const std::pair<int, double>> anchors, int year)
{
    if (year <= anchors.front().first) {
        return anchors.front().second;
    }
    for (std::size_t i = 1; i < anchors.size(); ++i) {
        if (year <= anchors[i].first) {
            const auto [y0, v0] = anchors[i - 1];
            const auto [y1, v1] = anchors[i];
            return v0 + (v1 - v0) * static_cast<double>(year - y0) / static_cast<double>(y1 - y0);
        }
    }
    return anchors.back().second;
}

} // namespace

ClimateCurve::ClimateCurve()
{
    for (auto& row : values_) {
        row.fill(1.0);
    }
}

double ClimateCurve::multiplier(Climate climate, int decade) const
{
    return values_[static_cast<std::size_t>(climate)][decade_index(decade)];
}

void ClimateCurve::set(Climate climate, int decade, double value)
{
    values_[static_cast<std::size_t>(climate)][decade_index(decade)] = value;
}

std::vector<std::string> ClimateCurve::validate() const
{
    std::vector<std::string> problems;
    for (auto c : all_values<Climate>()) {
        const auto& row = values_[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (c == Climate::TMY && row[i] != 1.0) {
                problems.push_back("TMY multiplier must be 1 in " + std::to_string(Timeline::year(i)));
            }
            if (!(row[i] >= 1.0)) {
                problems.push_back(std::string(to_string(c)) + " multiplier below 1 in " +
                                   std::to_string(Timeline::year(i)));
            }
            if ((c == Climate::A1B || c == Climate::A2) && i > 0 && row[i] < row[i - 1]) {
                problems.push_back(std::string(to_string(c)) + " multiplier decreases in " +
                                   std::to_string(Timeline::year(i)));
            }
        }
    }
    for (std::size_t i = *Timeline::index(2050); i < Timeline::size; ++i) {
        for (std::size_t c = 1; c < enum_count<Climate>(); ++c) {
            if (values_[c][i] < values_[c - 1][i]) {
                problems.push_back("climate ordering TMY <= B1 <= A1B <= A2 violated in " +
                                   std::to_string(Timeline::year(i)));
                break;
            }
        }
    }
    return problems;
}

ClimateCurve ClimateCurve::shipped()
{
    const std::array<std::pair<int, double>, 4> b1{{{2020, 1.00}, {2050, 1.10}, {2080, 1.15}, {2100, 1.15}}};
    const std::array<std::pair<int, double>, 3> a1b{{{2020, 1.00}, {2050, 1.10}, {2100, 1.22}}};
    const std::array<std::pair<int, double>, 3> a2{{{2020, 1.00}, {2050, 1.10}, {2100, 1.25}}};
    ClimateCurve curve;
    for (int year : Timeline::decades()) {
        curve.set(Climate::B1, year, interpolate(b1, year));
        curve.set(Climate::A1B, year, interpolate(a1b, year));
        curve.set(Climate::A2, year, interpolate(a2, year));
    }
    return curve;
}

double climate_multiplier(Climate climate, int decade)
{
    static const ClimateCurve curve = ClimateCurve::shipped();
    return curve.multiplier(climate, decade);
}

void DemandTable::set(const std::string& archetype_id, int decade, Climate climate, double kwh)
{
    rows_[archetype_id][decade_index(decade)][static_cast<std::size_t>(climate)] = kwh;
}

bool DemandTable::contains(std::string_view archetype_id) const
{
    return rows_.count(std::string(archetype_id)) > 0;
}

double DemandTable::at(std::string_view archetype_id, int decade, Climate climate) const
{
    auto missing = [&] {
        return ValidationError("demand table has no cell (" + std::string(archetype_id) + ", " +
                               std::to_string(decade) + ", " + std::string(to_string(climate)) + ")");
    };
    auto it = rows_.find(std::string(archetype_id));
    const auto idx = Timeline::index(decade);
    if (it == rows_.end() || !idx) {
        throw missing();
    }
    const auto& cell = it->second[*idx][static_cast<std::size_t>(climate)];
    if (!cell) {
        throw missing();
    }
    return *cell;
}

std::vector<std::string> DemandTable::validate(const Catalog& catalog) const
{
    std::vector<std::string> problems;
    for (const auto& a : catalog.all()) {
        auto it = rows_.find(a.id);
        if (it == rows_.end()) {
            problems.push_back("demand table lacks archetype " + a.id);
            continue;
        }
        for (std::size_t i = 0; i < Timeline::size; ++i) {
            const auto& row = it->second[i];
            for (auto c : all_values<Climate>()) {
                const auto& cell = row[static_cast<std::size_t>(c)];
                if (!cell) {
                    problems.push_back("demand table lacks (" + a.id + ", " + std::to_string(Timeline::year(i)) +
                                       ", " + std::string(to_string(c)) + ")");
                }
                else if (!(*cell > 0.0)) {
                    problems.push_back("non-positive demand for " + a.id);
                }
            }
            if (Timeline::year(i) >= 2050 && row[0] && row[1] && row[2] && row[3] &&
                !(*row[0] <= *row[1] && *row[1] <= *row[2] && *row[2] <= *row[3])) {
                problems.push_back("climate ordering violated for " + a.id + " in " +
                                   std::to_string(Timeline::year(i)));
            }
        }
    }
    return problems;
}

DemandTable DemandTable::synthesize(const Catalog& catalog, const ClimateCurve& curve)
{
    DemandTable table;
    for (const auto& a : catalog.all()) {
        for (int year : Timeline::decades()) {
            for (auto c : all_values<Climate>()) {
                table.set(a.id, year, c, a.base_intensity * a.unit_floor_area * curve.multiplier(c, year));
            }
        }
    }
    return table;
}

double base_demand(const Archetype& archetype, int decade, Climate climate, const DemandTable& table)
{
    return table.at(archetype.id, decade, climate);
}

double hvac_vintage_multiplier(int year)
{
    const int improving_years = std::clamp(year - 2020, 0, 20);
    return std::pow(0.98, improving_years);
}

double high_efficiency_multiplier(int adoption_year)
{
    return hvac_vintage_multiplier(adoption_year);
}

double hvac_lifecycle_multiplier(std::optional<int> install_year, int year)
{
    if (!install_year || *install_year < Timeline::first_year || year < *install_year) {
        return 1.0;
    }
    constexpr int lifetime = 20;
    const int replaced     = *install_year + lifetime * ((year - *install_year) / lifetime);
    return hvac_vintage_multiplier(replaced);
}

double pv_annual_generation(double kw, double sun_hours, double days_constant)
{
    if (kw < 0.0) {
        throw ValidationError("PV capacity must be non-negative");
    }
    return days_constant * sun_hours * kw;
}

double roof_capacity(double footprint, const EnergyParams& params)
{
    return footprint * params.usable_fraction * params.power_density;
}

double net_grid_demand(double gross, const TechSet& techs, double pv_generation, const EnergyParams& params)
{
    double d = gross;
    if (techs.high_eff_hvac) {
        d *= techs.hvac_multiplier;
    }
    if (techs.smart_thermostat) {
        d *= params.thermostat_multiplier;
    }
    double net = std::max(0.0, d - pv_generation);
    if (techs.storage) {
        net = std::min(net, (1.0 - params.storage_self_sufficiency) * d);
    }
    return std::max(0.0, net);
}

} // namespace upath
