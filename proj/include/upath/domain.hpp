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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace upath
{

enum class DwellingClass
{
    single_family,
    multi_family,
    mixed_use,
    commercial
};

enum class LandUseClass
{
    small_residential,
    large_residential,
    commercial_mixed
};

enum class LocationClass
{
    interior,
    corridor,
    tod
};

enum class Climate
{
    TMY,
    B1,
    A1B,
    A2
};

enum class GridPathwayId
{
    none,
    moderate,
    rapid
};

enum class Development
{
    reference,
    low_density,
    high_density
};

enum class AdoptionPolicy
{
    no_adoption,
    neutral,
    supportive
};

template <class E>
struct EnumNames;

template <>
struct EnumNames<DwellingClass> {
    static constexpr std::array<std::string_view, 4> names{"single_family", "multi_family", "mixed_use",
                                                           "commercial"};
};
template <>
struct EnumNames<LandUseClass> {
    static constexpr std::array<std::string_view, 3> names{"small_residential", "large_residential",
                                                           "commercial_mixed"};
};
template <>
struct EnumNames<LocationClass> {
    static constexpr std::array<std::string_view, 3> names{"interior", "corridor", "tod"};
};
template <>
struct EnumNames<Climate> {
    static constexpr std::array<std::string_view, 4> names{"TMY", "B1", "A1B", "A2"};
};
template <>
struct EnumNames<GridPathwayId> {
    static constexpr std::array<std::string_view, 3> names{"none", "moderate", "rapid"};
};
template <>
struct EnumNames<Development> {
    static constexpr std::array<std::string_view, 3> names{"reference", "low_density", "high_density"};
};
template <>
struct EnumNames<AdoptionPolicy> {
    static constexpr std::array<std::string_view, 3> names{"no_adoption", "neutral", "supportive"};
};

template <class E>
constexpr std::size_t enum_count()
{
    return EnumNames<E>::names.size();
}

template <class E>
constexpr std::string_view to_string(E e)
{
    return EnumNames<E>::names[static_cast<std::size_t>(e)];
}

template <class E>
constexpr std::optional<E> parse_enum(std::string_view s)
{
    for (std::size_t i = 0; i < EnumNames<E>::names.size(); ++i) {
        if (EnumNames<E>::names[i] == s) {
            return static_cast<E>(i);
        }
    }
    return std::nullopt;
}

template <class E>
constexpr std::array<E, enum_count<E>()> all_values()
{
    std::array<E, enum_count<E>()> out{};
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<E>(i);
    }
    return out;
}

/// The decade grid 2020, 2030, ..., 2100.
struct Timeline {
    static constexpr int first_year    = 2020;
    static constexpr int step          = 10;
    static constexpr std::size_t size  = 9;
    static constexpr int last_year     = first_year + step * static_cast<int>(size - 1);
    /// Marker decade of the state before the first scheduled redevelopment.
    static constexpr int initial_state = first_year - step;

    static constexpr int year(std::size_t index)
    {
        return first_year + step * static_cast<int>(index);
    }

    static constexpr std::optional<std::size_t> index(int year)
    {
        if (year < first_year || year > last_year || (year - first_year) % step != 0) {
            return std::nullopt;
        }
        return static_cast<std::size_t>((year - first_year) / step);
    }

    static constexpr std::array<int, size> decades()
    {
        std::array<int, size> out{};
        for (std::size_t i = 0; i < size; ++i) {
            out[i] = year(i);
        }
        return out;
    }
};

/// Occupants per residential dwelling unit.
inline constexpr double occupants_per_unit = 2.5;

/// Number of people housed by `units` dwelling units. Fractional results are kept.
constexpr double occupants(double units)
{
    return units * occupants_per_unit;
}

struct Archetype {
    std::string id;
    DwellingClass dwelling_class = DwellingClass::single_family;
    int units_per_building       = 1;
    /// Per residential unit; for archetypes without residential units this is
    /// the conditioned floor area of the whole building.
    double unit_floor_area = 0.0;
    int stories            = 1;
    double footprint       = 0.0;
    /// kWh per m2 per year.
    double base_intensity = 0.0;

    bool is_residential() const
    {
        return units_per_building > 0;
    }
    /// Demand-bearing blocks per building: residential units, or one block for
    /// a building without units.
    int blocks_per_building() const
    {
        return units_per_building > 0 ? units_per_building : 1;
    }
    double building_floor_area() const
    {
        return unit_floor_area * blocks_per_building();
    }
};

struct CatalogViolation {
    enum class Kind
    {
        duplicate_id,
        non_positive_value,
        class_inconsistent
    };
    std::string archetype_id;
    Kind kind;
    std::string message;
};

std::vector<CatalogViolation> validate_catalog(std::span<const Archetype> catalog);

/// Validated, id-indexed archetype list.
class Catalog
{
public:
    Catalog() = default;
    /// Throws ValidationError listing every violation.
    explicit Catalog(std::vector<Archetype> archetypes);

    const Archetype& at(std::string_view id) const;
    const Archetype* find(std::string_view id) const;
    std::span<const Archetype> all() const
    {
        return archetypes_;
    }
    std::size_t size() const
    {
        return archetypes_.size();
    }

private:
    std::vector<Archetype> archetypes_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Twelve representative archetypes shipped as replaceable defaults.
std::vector<Archetype> default_archetypes();

struct Parcel {
    std::string id;
    std::string neighborhood;
    LandUseClass land_use   = LandUseClass::small_residential;
    LocationClass location  = LocationClass::interior;
    double lot_area         = 0.0;
    std::optional<double> ilr;
    int year_built = 1960;
    std::string archetype_id;
    /// Buildings on the lot; greater than one after a subdivision.
    int buildings = 1;
    /// Lot centroid, planar metres.
    double x = 0.0;
    double y = 0.0;
    std::optional<int> redeveloped_in;

    int vintage() const
    {
        return redeveloped_in.value_or(year_built);
    }
};

struct ResidenceUnit {
    std::string id;
    std::string parcel_id;
    std::string archetype_id;
    DwellingClass dwelling_class = DwellingClass::single_family;
    int vintage                  = 0;
};

/// Residential units standing on a parcel in its current configuration.
std::vector<ResidenceUnit> make_units(const Parcel& parcel, const Catalog& catalog);

struct ScenarioSpec {
    Climate climate            = Climate::TMY;
    GridPathwayId grid         = GridPathwayId::none;
    Development development    = Development::reference;
    AdoptionPolicy adoption    = AdoptionPolicy::no_adoption;
    std::uint64_t seed         = 0;
    Timeline timeline{};

    friend bool operator==(const ScenarioSpec& a, const ScenarioSpec& b)
    {
        return a.climate == b.climate && a.grid == b.grid && a.development == b.development &&
               a.adoption == b.adoption && a.seed == b.seed;
    }
};

/// Compact tag such as "A1B_moderate_low_density_neutral", used in file names and messages.
std::string scenario_label(const ScenarioSpec& spec);

} // namespace upath
