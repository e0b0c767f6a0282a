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
#include <cstdint>
#include <string>
#include <vector>

namespace upath
{

/// Targets and layout knobs of one synthetic neighborhood.
struct FixtureProfile {
    std::string name;
    std::string id_prefix;
    std::size_t lots        = 0;
    double lot_area_total   = 0.0;
    long units              = 0;
    /// Residential floor area to approach, m2.
    double housing_area = 0.0;
    /// Share of lots per location class.
    std::array<double, 3> location_share{0.8, 0.15, 0.05};
    /// Per location class: share of large-residential and of commercial lots.
    std::array<double, 3> large_share{0.04, 0.25, 0.25};
    std::array<double, 3> commercial_share{0.02, 0.30, 0.40};
    /// Lognormal lot-size medians by land-use class before rescaling to the total, m2.
    std::array<double, 3> lot_median{800.0, 2500.0, 3000.0};
    std::array<double, 3> lot_sigma{0.45, 0.5, 0.5};
    std::uint64_t seed = 1;
};

/// Brentwood, SouthMenchaca and Montopolis, sized to their recorded lot and unit counts.
std::vector<FixtureProfile> shipped_profiles();

/**
 * Parcels with exactly `lots` lots, `units` units and `lot_area_total` lot
 * area. Housing area lands within one archetype step of the target. ILRs
 * are lognormal with medians that rise from commercial lots to newer
 * residential stock.
 */
std::vector<Parcel> synthesize_fixture(const FixtureProfile& profile, const Catalog& catalog);

/// Residential floor area of the parcels as built.
double housing_area(const std::vector<Parcel>& parcels, const Catalog& catalog);

} // namespace upath
