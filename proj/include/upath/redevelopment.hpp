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
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace upath
{

/// Per-neighborhood fraction of lots redeveloped in each decade.
class RedevelopmentSchedule
{
public:
    void set(const std::string& neighborhood, int decade, double fraction);
    bool has(std::string_view neighborhood) const;
    /// Throws ValidationError for an unknown neighborhood, decade or missing entry.
    double fraction(std::string_view neighborhood, int decade) const;
    std::vector<std::string> neighborhoods() const;
    /// Empty iff every neighborhood has all decades and its fractions sum to 1.
    std::vector<std::string> validate() const;

    /// Shipped rows for Brentwood, SouthMenchaca and Montopolis.
    static RedevelopmentSchedule shipped();

private:
    std::map<std::string, std::array<std::optional<double>, Timeline::size>, std::less<>> rows_;
};

double schedule_fraction(const RedevelopmentSchedule& schedule, std::string_view neighborhood, int decade);

struct AssignmentRule {
    Development development = Development::low_density;
    LandUseClass land_use   = LandUseClass::small_residential;
    LocationClass location  = LocationClass::interior;
    /// Lot area band [min, max).
    double lot_area_min = 0.0;
    double lot_area_max = std::numeric_limits<double>::infinity();
    std::string target_archetype;
    int subdivision = 1;

    bool matches(Development dev, const Parcel& p) const
    {
        return dev == development && p.land_use == land_use && p.location == location &&
               p.lot_area >= lot_area_min && p.lot_area < lot_area_max;
    }
};

/// Coverage and reference checks; empty iff every non-reference
/// (class, location) combination is partitioned by lot-area bands over
/// [0, inf) and every target exists in the catalog.
std::vector<std::string> validate_rules(std::span<const AssignmentRule> rules, const Catalog& catalog);

std::vector<AssignmentRule> default_rules();

struct Assignment {
    std::string archetype_id;
    int subdivision = 1;
};

/// Reference development keeps the parcel as it is.
Assignment assign_archetype(const Parcel& parcel, Development development, std::span<const AssignmentRule> rules);

struct NeighborhoodState {
    std::string neighborhood;
    int decade = Timeline::initial_state;
    std::vector<Parcel> parcels;
    std::vector<ResidenceUnit> units;
};

NeighborhoodState initial_state(std::string neighborhood, std::vector<Parcel> parcels, const Catalog& catalog);

inline constexpr std::size_t stratum_count = enum_count<LocationClass>();

/// Parcel indices per location stratum, ascending ILR, ties by parcel id.
std::array<std::vector<std::size_t>, stratum_count> rank_parcels(std::span<const Parcel> parcels);

/// floor(x + 1/2), tolerant to representation error just below a half.
long round_half_up(double x);

/// Lots to redevelop this decade: round_half_up(fraction * total_lots), capped
/// by what remains; the final decade takes everything that remains.
std::size_t decade_quota(double fraction, std::size_t total_lots, std::size_t remaining, bool final_decade);

/**
 * Largest-remainder apportionment of `count` across strata in proportion to
 * `weights`, never exceeding `capacity` per stratum. Ties in the remainder go
 * to the lower stratum index. Capacity overflow is re-apportioned over the
 * strata that still have room.
 */
std::vector<std::size_t> apportion(std::size_t count, std::span<const std::size_t> weights,
                                   std::span<const std::size_t> capacity);

/// Ids of the parcels redeveloping in `decade`, stratum by stratum in rank order.
std::vector<std::string> select_for_decade(const NeighborhoodState& state, int decade,
                                           const RedevelopmentSchedule& schedule);

struct ParcelChange {
    std::string parcel_id;
    std::string old_archetype;
    int old_buildings = 1;
    std::string new_archetype;
    int new_buildings = 1;
};

struct DecadeTransition {
    NeighborhoodState state;
    std::vector<ParcelChange> changes;
};

/// Advances `state` by one decade. Throws ValidationError if `decade` was already applied
/// or does not follow `state.decade`.
DecadeTransition apply_decade(const NeighborhoodState& state, int decade, Development development,
                              const RedevelopmentSchedule& schedule, std::span<const AssignmentRule> rules,
                              const Catalog& catalog);

} // namespace upath
