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
// Brute-force recomputation of a micro neighborhood without the ABM. It reads
// the same tables as the engine but shares none of its arithmetic.
#pragma once

#include "upath/simulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace upath::oracle
{

inline const std::string micro_name = "Micro";

inline constexpr std::array<double, 9> micro_fractions{0.15, 0.15, 0.05, 0.05, 0.1, 0.1, 0.1, 0.1, 0.2};

/// Ten interior lots with mixed stock; one location stratum keeps ranking plain.
inline std::vector<Parcel> micro_fixture()
{
    struct Row {
        const char* id;
        LandUseClass use;
        double area;
        double ilr;
        const char* arch;
        int buildings;
    };
    using L = LandUseClass;
    const Row rows[] = {
        {"M01", L::small_residential, 650.0, 0.42, "SF_COTTAGE", 1},
        {"M02", L::small_residential, 1800.0, 1.75, "SF_TWO_STORY", 1},
        {"M03", L::small_residential, 900.0, 0.61, "SF_RANCH", 1},
        {"M04", L::large_residential, 3400.0, 1.10, "MF_GARDEN", 1},
        {"M05", L::large_residential, 1500.0, 0.95, "MF_FOURPLEX", 2},
        {"M06", L::commercial_mixed, 5200.0, 0.30, "COM_STRIP", 1},
        {"M07", L::small_residential, 7000.0, 0.88, "SF_ESTATE", 1},
        {"M08", L::large_residential, 2600.0, 1.30, "MF_EIGHTPLEX", 1},
        {"M09", L::commercial_mixed, 1200.0, 0.35, "COM_OFFICE", 1},
        {"M10", L::small_residential, 3100.0, 0.61, "SF_RANCH", 1},
    };
    std::vector<Parcel> out;
    double x = 0.0;
    for (const auto& r : rows) {
        Parcel p;
        p.id           = r.id;
        p.neighborhood = micro_name;
        p.land_use     = r.use;
        p.location     = LocationClass::interior;
        p.lot_area     = r.area;
        p.ilr          = r.ilr;
        p.year_built   = 1975;
        p.archetype_id = r.arch;
        p.buildings    = r.buildings;
        p.x            = x;
        x += 40.0;
        out.push_back(p);
    }
    return out;
}

inline ModelInputs micro_inputs(const std::vector<Parcel>& parcels)
{
    ModelInputs in;
    in.catalog = Catalog(default_archetypes());
    for (std::size_t i = 0; i < micro_fractions.size(); ++i) {
        in.schedule.set(micro_name, 2020 + 10 * static_cast<int>(i), micro_fractions[i]);
    }
    in.rules  = default_rules();
    in.demand = DemandTable::synthesize(in.catalog, ClimateCurve::shipped());
    in.grid   = GridPathways::shipped();
    in.neighborhoods.push_back({micro_name, parcels});
    return in;
}

struct FlatTotals {
    double kwh   = 0.0;
    double tco2e = 0.0;
    double units = 0.0;
};

/// Climate multiplier from the documented anchor points, linear between them.
inline double flat_climate(Climate c, int year)
{
    std::vector<std::pair<double, double>> pts;
    switch (c) {
    case Climate::TMY:
        return 1.0;
    case Climate::B1:
        pts = {{2020, 1.0}, {2050, 1.10}, {2080, 1.15}, {2100, 1.15}};
        break;
    case Climate::A1B:
        pts = {{2020, 1.0}, {2050, 1.10}, {2100, 1.22}};
        break;
    case Climate::A2:
        pts = {{2020, 1.0}, {2050, 1.10}, {2100, 1.25}};
        break;
    }
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (year <= pts[k].first) {
            const double w = (year - pts[k - 1].first) / (pts[k].first - pts[k - 1].first);
            return pts[k - 1].second + w * (pts[k].second - pts[k - 1].second);
        }
    }
    return pts.back().second;
}

inline double flat_grid(GridPathwayId g, int year)
{
    const double none  = 430.0;
    const double rapid = std::max(48.0, 430.0 - 10.0 * (year - 2020));
    switch (g) {
    case GridPathwayId::none:
        return none;
    case GridPathwayId::rapid:
        return rapid;
    case GridPathwayId::moderate:
        return 0.5 * (none + rapid);
    }
    return none;
}

/// Standard equipment bought in `built`, renewed every 20 years, seen in `year`.
inline double flat_hvac(int built, int year)
{
    if (built < 2020) {
        return 1.0;
    }
    int bought = built;
    while (bought + 20 <= year) {
        bought += 20;
    }
    double m = 1.0;
    for (int y = 2020; y < std::min(bought, 2040); ++y) {
        m *= 0.98;
    }
    return m;
}

inline std::array<FlatTotals, 9> brute_force(std::vector<Parcel> parcels, Climate climate, GridPathwayId grid,
                                             Development development)
{
    const auto archetypes = default_archetypes();
    const auto rules      = default_rules();
    auto arch             = [&](const std::string& id) -> const Archetype& {
        return *std::find_if(archetypes.begin(), archetypes.end(), [&](const Archetype& a) { return a.id == id; });
    };

    std::vector<std::size_t> order(parcels.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (*parcels[a].ilr != *parcels[b].ilr) {
            return *parcels[a].ilr < *parcels[b].ilr;
        }
        return parcels[a].id < parcels[b].id;
    });
    std::vector<int> rebuilt(parcels.size(), 0);

    std::array<FlatTotals, 9> out{};
    std::size_t next = 0;
    for (int i = 0; i < 9; ++i) {
        const int year = 2020 + 10 * i;
        if (development != Development::reference) {
            const std::size_t left = parcels.size() - next;
            std::size_t take       = static_cast<std::size_t>(micro_fractions[i] * parcels.size() + 0.5 + 1e-9);
            take                   = i == 8 ? left : std::min(take, left);
            for (std::size_t k = 0; k < take; ++k, ++next) {
                auto& p = parcels[order[next]];
                for (const auto& r : rules) {
                    if (r.development == development && r.land_use == p.land_use && r.location == p.location &&
                        p.lot_area >= r.lot_area_min && p.lot_area < r.lot_area_max) {
                        p.archetype_id = r.target_archetype;
                        p.buildings    = r.subdivision;
                        break;
                    }
                }
                rebuilt[order[next]] = year;
            }
        }
        for (std::size_t k = 0; k < parcels.size(); ++k) {
            const auto& p   = parcels[k];
            const auto& a   = arch(p.archetype_id);
            const int built = rebuilt[k] ? rebuilt[k] : p.year_built;
            const double per_block =
                a.base_intensity * a.unit_floor_area * flat_climate(climate, year) * flat_hvac(built, year);
            const int blocks = (a.units_per_building > 0 ? a.units_per_building : 1) * p.buildings;
            const double kwh = per_block * blocks;
            out[i].kwh += kwh;
            out[i].tco2e += kwh * flat_grid(grid, year) / 1e6;
            out[i].units += a.units_per_building * p.buildings;
        }
    }
    return out;
}

} // namespace upath::oracle
