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

#include <Eigen/Core>

#include <span>
#include <string>
#include <vector>

namespace upath
{

/// One value per timeline decade.
using DecadeSeries = Eigen::Array<double, Timeline::size, 1>;

/// Label of the all-neighborhood aggregate.
inline const std::string all_neighborhoods = "ALL";

/// tCO2eq per year from kWh per year and gCO2eq per kWh.
constexpr double emissions(double kwh, double g_per_kwh)
{
    return kwh * g_per_kwh * 1e-6;
}

/// Decade accounting for one parcel.
struct ParcelRecord {
    std::string neighborhood;
    std::string parcel_id;
    int decade = 0;
    std::string archetype_id;
    int buildings     = 1;
    int units         = 0;
    double floor_area = 0.0;
    double kwh        = 0.0;
    double tco2e      = 0.0;
};

struct PathwayPoint {
    ScenarioSpec scenario;
    std::string neighborhood;
    int decade         = 0;
    double total_kwh   = 0.0;
    double total_tco2e = 0.0;
    double units       = 0.0;
    double floor_area  = 0.0;
    double per_unit    = 0.0;
    double per_m2      = 0.0;
};

/// Points of one (scenario, neighborhood) in decade order.
using PathwaySeries = std::vector<PathwayPoint>;

/// Builds a point from exact sums, deriving the relative metrics.
PathwayPoint make_point(const ScenarioSpec& spec, std::string neighborhood, int decade, double kwh, double tco2e,
                        double units, double floor_area);

/**
 * Sums parcel records per (neighborhood, decade) in record order and adds
 * the all-neighborhood aggregate as the sum of the neighborhood totals.
 * Output is sorted by neighborhood name with the aggregate last, then decade.
 */
std::vector<PathwayPoint> aggregate(std::span<const ParcelRecord> records, const ScenarioSpec& spec,
                                    bool include_total = true);

/// Points of one neighborhood, decade ordered; throws if any decade is missing.
PathwaySeries select_series(std::span<const PathwayPoint> points, std::string_view neighborhood);

enum class Quantity
{
    total_kwh,
    total_tco2e,
    units,
    floor_area,
    per_unit,
    per_m2
};

DecadeSeries to_series(const PathwaySeries& series, Quantity quantity);

struct PremiumSeries {
    std::string neighborhood;
    Climate climate      = Climate::TMY;
    GridPathwayId grid   = GridPathwayId::none;
    AdoptionPolicy adoption = AdoptionPolicy::no_adoption;
    DecadeSeries units_low  = DecadeSeries::Zero();
    DecadeSeries units_high = DecadeSeries::Zero();
    DecadeSeries total_low  = DecadeSeries::Zero();
    DecadeSeries total_high = DecadeSeries::Zero();
    /// tCO2eq per year.
    DecadeSeries premium = DecadeSeries::Zero();
};

/// Emissions of the low-density series scaled to the high-density unit count,
/// minus the high-density emissions.
DecadeSeries premium_for_sprawl(const DecadeSeries& total_low, const DecadeSeries& units_low,
                                const DecadeSeries& total_high, const DecadeSeries& units_high);

/// Checks that both series describe the same setting, apart from development.
PremiumSeries premium_for_sprawl(const PathwaySeries& low, const PathwaySeries& high);

/// value / reference per decade; throws on a zero reference.
DecadeSeries baseline_delta(const DecadeSeries& value, const DecadeSeries& reference);

struct ReboundResult {
    std::size_t min_index = 0;
    bool rebound          = false;
    /// last / minimum - 1
    double magnitude = 0.0;
};

ReboundResult rebound_detector(std::span<const double> series, double tolerance = 0.01);

inline ReboundResult rebound_detector(const DecadeSeries& series, double tolerance = 0.01)
{
    return rebound_detector(std::span<const double>(series.data(), static_cast<std::size_t>(series.size())),
                            tolerance);
}

} // namespace upath
