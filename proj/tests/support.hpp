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

#include <array>
#include <string>
#include <vector>

namespace upath::test
{

inline Parcel make_parcel(std::string id, double ilr, std::string archetype = "SF_RANCH", double lot_area = 800.0,
                          LocationClass location = LocationClass::interior,
                          LandUseClass land_use = LandUseClass::small_residential, int year_built = 1965)
{
    Parcel p;
    p.id           = std::move(id);
    p.neighborhood = "Toy";
    p.land_use     = land_use;
    p.location     = location;
    p.lot_area     = lot_area;
    p.ilr          = ilr;
    p.year_built   = year_built;
    p.archetype_id = std::move(archetype);
    return p;
}

inline RedevelopmentSchedule toy_schedule(const std::array<double, Timeline::size>& fractions,
                                          const std::string& name = "Toy")
{
    RedevelopmentSchedule s;
    for (std::size_t i = 0; i < Timeline::size; ++i) {
        s.set(name, Timeline::year(i), fractions[i]);
    }
    return s;
}

/// Shipped catalog, rules, demand and grid around hand-made parcels.
inline ModelInputs toy_inputs(std::vector<Parcel> parcels, RedevelopmentSchedule schedule,
                              const std::string& name = "Toy")
{
    ModelInputs in;
    in.catalog  = Catalog(default_archetypes());
    in.schedule = std::move(schedule);
    in.rules    = default_rules();
    in.demand   = DemandTable::synthesize(in.catalog, ClimateCurve::shipped());
    in.grid     = GridPathways::shipped();
    for (auto& p : parcels) {
        p.neighborhood = name;
    }
    in.neighborhoods.push_back({name, std::move(parcels)});
    return in;
}

/// Ten interior small-residential ranch lots, ILR 1..10, spread 30 m apart.
inline std::vector<Parcel> ten_lots()
{
    std::vector<Parcel> out;
    for (int k = 1; k <= 10; ++k) {
        auto p = make_parcel("T" + std::to_string(k < 10 ? 0 : 1) + std::to_string(k % 10), k);
        p.x    = 30.0 * k;
        out.push_back(p);
    }
    return out;
}

} // namespace upath::test
