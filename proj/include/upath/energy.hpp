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

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace upath
{

struct EnergyParams {
    /// Days factor of the sun-hours PV yield formula. Defaults to 356; set
    /// 365 for a calendar year.
    double days_constant = 356.0;
    /// Average daily sun hours (Austin, TX).
    double sun_hours = 5.0;
    double thermostat_multiplier = 0.95;
    /// Share of the roof footprint usable for PV.
    double usable_fraction = 0.40;
    /// kW per m2 of usable roof.
    double power_density = 0.2;
    /// Array size an adopting household asks for, before the roof cap.
    double pv_target_kw = 5.0;
    /// Annual self-sufficiency reached with a battery.
    double storage_self_sufficiency = 0.40;
};

/// Demand multiplier relative to TMY weather, per climate and decade.
class ClimateCurve
{
public:
    ClimateCurve();

    double multiplier(Climate climate, int decade) const;
    void set(Climate climate, int decade, double value);
    /// Empty iff TMY is 1, all values >= 1, A1B and A2 are non-decreasing and
    /// TMY <= B1 <= A1B <= A2 from 2050 on.
    std::vector<std::string> validate() const;

    /// Anchors: 1.00 in 2020 and 1.10 in 2050 for every future climate; B1
    /// levels off at 1.15 from 2080; A1B reaches 1.22 and A2 1.25 in 2100.
    /// Linear between anchors.
    static ClimateCurve shipped();

private:
    std::array<std::array<double, Timeline::size>, enum_count<Climate>()> values_{};
};

/// Shipped climate curve lookup.
double climate_multiplier(Climate climate, int decade);

/// Annual demand per demand block (residential unit, or whole non-residential
/// building) by archetype, decade and climate, in kWh.
class DemandTable
{
public:
    void set(const std::string& archetype_id, int decade, Climate climate, double kwh);
    /// Throws ValidationError naming the missing triple.
    double at(std::string_view archetype_id, int decade, Climate climate) const;
    bool contains(std::string_view archetype_id) const;
    /// Completeness against `catalog`, positivity and climate ordering from 2050.
    std::vector<std::string> validate(const Catalog& catalog) const;

    /// base_intensity * unit_floor_area * climate multiplier for every cell.
    static DemandTable synthesize(const Catalog& catalog, const ClimateCurve& curve);

private:
    using Row = std::array<std::array<std::optional<double>, enum_count<Climate>()>, Timeline::size>;
    std::unordered_map<std::string, Row> rows_;
};

double base_demand(const Archetype& archetype, int decade, Climate climate, const DemandTable& table);

/// Standard HVAC efficiency relative to 2020 equipment: 2 % per year for at
/// most 20 years.
double hvac_vintage_multiplier(int year);

/// Multiplier of a high-efficiency system bought in `adoption_year`.
double high_efficiency_multiplier(int adoption_year);

/**
 * Efficiency of a system first installed in `install_year` and replaced every
 * 20 years with then-current equipment, as seen in `year`. Buildings from
 * before 2020 (no install year inside the horizon) keep the 2020 baseline.
 */
double hvac_lifecycle_multiplier(std::optional<int> install_year, int year);

/// Annual PV yield in kWh: days_constant * sun_hours * kw.
double pv_annual_generation(double kw, double sun_hours, double days_constant = 356.0);

/// Roof-limited PV capacity in kW.
double roof_capacity(double footprint, const EnergyParams& params);

enum class Technology
{
    high_eff_hvac,
    solar_pv,
    storage,
    smart_thermostat
};

template <>
struct EnumNames<Technology> {
    static constexpr std::array<std::string_view, 4> names{"high_eff_hvac", "solar_pv", "storage",
                                                           "smart_thermostat"};
};

/// Technologies in effect for one demand block in one accounting year.
struct TechSet {
    bool high_eff_hvac = false;
    /// Relative demand factor of the high-efficiency system against the
    /// standard system already reflected in gross demand; in (0, 1].
    double hvac_multiplier = 1.0;
    bool smart_thermostat  = false;
    bool solar_pv          = false;
    double pv_kw           = 0.0;
    bool storage           = false;

    bool empty() const
    {
        return !high_eff_hvac && !smart_thermostat && !solar_pv && !storage;
    }
    /// storage requires PV.
    bool consistent() const
    {
        return !storage || solar_pv;
    }
};

/**
 * Grid demand after technologies: HVAC and thermostat multipliers, then
 * annual PV netting. A battery caps grid demand at (1 - self-sufficiency) of
 * the post-multiplier demand.
 */
double net_grid_demand(double gross, const TechSet& techs, double pv_generation, const EnergyParams& params);

} // namespace upath
