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
#include "upath/domain.hpp"
#include "upath/error.hpp"

#include <set>
#include <sstream>

namespace upath
{

std::vector<CatalogViolation> validate_catalog(std::span<const Archetype> catalog)
{
    std::vector<CatalogViolation> out;
    std::set<std::string> seen;
    for (const auto& a : catalog) {
        if (!seen.insert(a.id).second) {
            out.push_back({a.id, CatalogViolation::Kind::duplicate_id, "duplicate archetype id"});
        }
        if (!(a.unit_floor_area > 0.0) || !(a.footprint > 0.0) || !(a.base_intensity > 0.0) || a.stories < 1 ||
            a.units_per_building < 0) {
            out.push_back({a.id, CatalogViolation::Kind::non_positive_value,
                           "floor area, footprint and intensity must be > 0, stories >= 1, units >= 0"});
        }
        const bool residential_class =
            a.dwelling_class == DwellingClass::single_family || a.dwelling_class == DwellingClass::multi_family;
        if ((a.dwelling_class == DwellingClass::single_family && a.units_per_building != 1) ||
            (residential_class && a.units_per_building < 1)) {
            out.push_back({a.id, CatalogViolation::Kind::class_inconsistent,
                           "units_per_building inconsistent with dwelling class"});
        }
    }
    return out;
}

Catalog::Catalog(std::vector<Archetype> archetypes)
    : archetypes_(std::move(archetypes))
{
    const auto violations = validate_catalog(archetypes_);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "invalid archetype catalog:";
        for (const auto& v : violations) {
            msg << "\n  " << v.archetype_id << ": " << v.message;
        }
        throw ValidationError(msg.str());
    }
    for (std::size_t i = 0; i < archetypes_.size(); ++i) {
        index_.emplace(archetypes_[i].id, i);
    }
}

const Archetype* Catalog::find(std::string_view id) const
{
    auto it = index_.find(std::string(id));
    return it == index_.end() ? nullptr : &archetypes_[it->second];
}

const Archetype& Catalog::at(std::string_view id) const
{
    if (const auto* a = find(id)) {
        return *a;
    }
    throw ValidationError("unknown archetype id '" + std::string(id) + "'");
}

std::vector<Archetype> default_archetypes()
{
    // Detached homes: 7.6 m wide plans. Multi-family and mixed-use: two 7.6 m
    // unit bays on a 2.4 m double-loaded corridor (17.6 m building depth).
    using DC = DwellingClass;
    return {
        {"SF_COTTAGE", DC::single_family, 1, 95.0, 1, 95.0, 125.0},
        {"SF_RANCH", DC::single_family, 1, 140.0, 1, 140.0, 112.0},
        {"SF_TWO_STORY", DC::single_family, 1, 230.0, 2, 115.0, 82.0},
        {"SF_ESTATE", DC::single_family, 1, 320.0, 2, 160.0, 78.0},
        {"MF_FOURPLEX", DC::multi_family, 4, 85.0, 2, 193.6, 98.0},
        {"MF_EIGHTPLEX", DC::multi_family, 8, 75.0, 3, 228.8, 95.0},
        {"MF_GARDEN", DC::multi_family, 24, 72.0, 3, 633.6, 118.0},
        {"MF_MIDRISE", DC::multi_family, 40, 68.0, 4, 739.2, 92.0},
        {"MU_LOWRISE", DC::mixed_use, 16, 70.0, 3, 422.4, 120.0},
        {"MU_MIDRISE", DC::mixed_use, 72, 66.0, 6, 880.0, 112.0},
        {"COM_STRIP", DC::commercial, 0, 1200.0, 1, 1200.0, 230.0},
        {"COM_OFFICE", DC::commercial, 0, 3000.0, 3, 1000.0, 205.0},
    };
}

std::vector<ResidenceUnit> make_units(const Parcel& parcel, const Catalog& catalog)
{
    const auto& arch = catalog.at(parcel.archetype_id);
    std::vector<ResidenceUnit> units;
    const int count = arch.units_per_building * parcel.buildings;
    units.reserve(static_cast<std::size_t>(count));
    const int vintage = parcel.vintage();
    for (int k = 0; k < count; ++k) {
        units.push_back({parcel.id + "@" + std::to_string(vintage) + "#" + std::to_string(k), parcel.id, arch.id,
                         arch.dwelling_class, vintage});
    }
    return units;
}

std::string scenario_label(const ScenarioSpec& spec)
{
    std::string out;
    out += to_string(spec.climate);
    out += '_';
    out += to_string(spec.grid);
    out += '_';
    out += to_string(spec.development);
    out += '_';
    out += to_string(spec.adoption);
    return out;
}

} // namespace upath
