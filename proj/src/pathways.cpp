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
#include "upath/pathways.hpp"
#include "upath/error.hpp"

#include <algorithm>
#include <map>

namespace upath
{

PathwayPoint make_point(const ScenarioSpec& spec, std::string neighborhood, int decade, double kwh, double tco2e,
                        double units, double floor_area)
{
    PathwayPoint p;
    p.scenario     = spec;
    p.neighborhood = std::move(neighborhood);
    p.decade       = decade;
    p.total_kwh    = kwh;
    p.total_tco2e  = tco2e;
    p.units        = units;
    p.floor_area   = floor_area;
    p.per_unit     = units > 0.0 ? tco2e / units : 0.0;
    p.per_m2       = floor_area > 0.0 ? tco2e / floor_area : 0.0;
    return p;
}

std::vector<PathwayPoint> aggregate(std::span<const ParcelRecord> records, const ScenarioSpec& spec,
                                    bool include_total)
{
    struct Sums {
        double kwh = 0.0, tco2e = 0.0, units = 0.0, area = 0.0;
    };
    std::map<std::string, std::array<Sums, Timeline::size>> groups;
    for (const auto& r : records) {
        const auto i = Timeline::index(r.decade);
        if (!i) {
            throw ModelError("parcel record for " + r.parcel_id + " has off-timeline decade " +
                             std::to_string(r.decade));
        }
        auto& s = groups[r.neighborhood][*i];
        s.kwh += r.kwh;
        s.tco2e += r.tco2e;
        s.units += r.units;
        s.area += r.floor_area;
    }

    std::vector<PathwayPoint> out;
    std::array<Sums, Timeline::size> total{};
    for (const auto& [name, row] : groups) {
        for (std::size_t i = 0; i < Timeline::size; ++i) {
            const auto& s = row[i];
            out.push_back(make_point(spec, name, Timeline::year(i), s.kwh, s.tco2e, s.units, s.area));
            total[i].kwh += s.kwh;
            total[i].tco2e += s.tco2e;
            total[i].units += s.units;
            total[i].area += s.area;
        }
    }
    if (include_total && !groups.empty()) {
        for (std::size_t i = 0; i < Timeline::size; ++i) {
            const auto& s = total[i];
            out.push_back(make_point(spec, all_neighborhoods, Timeline::year(i), s.kwh, s.tco2e, s.units, s.area));
        }
    }
    return out;
}

PathwaySeries select_series(std::span<const PathwayPoint> points, std::string_view neighborhood)
{
    PathwaySeries series;
    for (const auto& p : points) {
        if (p.neighborhood == neighborhood) {
            series.push_back(p);
        }
    }
    std::sort(series.begin(), series.end(), [](const auto& a, const auto& b) { return a.decade < b.decade; });
    if (series.size() != Timeline::size) {
        throw ModelError("series for '" + std::string(neighborhood) + "' does not cover the timeline");
    }
    for (std::size_t i = 0; i < Timeline::size; ++i) {
        if (series[i].decade != Timeline::year(i)) {
            throw ModelError("series for '" + std::string(neighborhood) + "' does not cover the timeline");
        }
    }
    return series;
}

DecadeSeries to_series(const PathwaySeries& series, Quantity quantity)
{
    if (series.size() != Timeline::size) {
        throw ModelError("series does not cover the timeline");
    }
    DecadeSeries out;
    for (std::size_t i = 0; i < Timeline::size; ++i) {
        const auto& p = series[i];
        double v      = 0.0;
        switch (quantity) {
        case Quantity::total_kwh:
            v = p.total_kwh;
            break;
        case Quantity::total_tco2e:
            v = p.total_tco2e;
            break;
        case Quantity::units:
            v = p.units;
            break;
        case Quantity::floor_area:
            v = p.floor_area;
            break;
        case Quantity::per_unit:
            v = p.per_unit;
            break;
        case Quantity::per_m2:
            v = p.per_m2;
            break;
        }
        out(static_cast<Eigen::Index>(i)) = v;
    }
    return out;
}

DecadeSeries premium_for_sprawl(const DecadeSeries& total_low, const DecadeSeries& units_low,
                                const DecadeSeries& total_high, const DecadeSeries& units_high)
{
    if ((units_low <= 0.0).any()) {
        throw ModelError("premium for sprawl needs low-density units in every decade");
    }
    return total_low * (units_high / units_low) - total_high;
}

PremiumSeries premium_for_sprawl(const PathwaySeries& low, const PathwaySeries& high)
{
    if (low.size() != Timeline::size || high.size() != Timeline::size) {
        throw ModelError("premium for sprawl needs full-timeline series");
    }
    const auto& a = low.front();
    const auto& b = high.front();
    if (a.neighborhood != b.neighborhood || a.scenario.climate != b.scenario.climate ||
        a.scenario.grid != b.scenario.grid || a.scenario.adoption != b.scenario.adoption) {
        throw ModelError("premium for sprawl compares series from different settings");
    }
    if (a.scenario.development != Development::low_density || b.scenario.development != Development::high_density) {
        throw ModelError("premium for sprawl expects a low-density and a high-density series");
    }
    PremiumSeries out;
    out.neighborhood = a.neighborhood;
    out.climate      = a.scenario.climate;
    out.grid         = a.scenario.grid;
    out.adoption     = a.scenario.adoption;
    out.units_low    = to_series(low, Quantity::units);
    out.units_high   = to_series(high, Quantity::units);
    out.total_low    = to_series(low, Quantity::total_tco2e);
    out.total_high   = to_series(high, Quantity::total_tco2e);
    out.premium      = premium_for_sprawl(out.total_low, out.units_low, out.total_high, out.units_high);
    return out;
}

DecadeSeries baseline_delta(const DecadeSeries& value, const DecadeSeries& reference)
{
    if ((reference == 0.0).any()) {
        throw ModelError("baseline reference is zero in some decade");
    }
    return value / reference;
}

ReboundResult rebound_detector(std::span<const double> series, double tolerance)
{
    ReboundResult r;
    if (series.empty()) {
        return r;
    }
    r.min_index = static_cast<std::size_t>(std::min_element(series.begin(), series.end()) - series.begin());
    const double lowest = series[r.min_index];
    if (lowest > 0.0) {
        r.magnitude = series.back() / lowest - 1.0;
    }
    r.rebound = series.back() > lowest * (1.0 + tolerance);
    return r;
}

} // namespace upath
