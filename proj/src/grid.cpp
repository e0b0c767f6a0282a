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
#include "upath/grid.hpp"
#include "upath/error.hpp"

#include <algorithm>

namespace upath
{

GridPathway::GridPathway(std::map<int, double> points)
    : points_(std::move(points))
{
    if (points_.empty()) {
        throw ValidationError("grid pathway needs at least one point");
    }
}

double GridPathway::intensity(int year) const
{
    auto hi = points_.lower_bound(year);
    if (hi == points_.end()) {
        return std::prev(hi)->second;
    }
    if (hi->first == year || hi == points_.begin()) {
        return hi->second;
    }
    auto lo = std::prev(hi);
    const double t = static_cast<double>(year - lo->first) / static_cast<double>(hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

GridPathways GridPathways::shipped()
{
    std::map<int, double> rapid;
    for (int year = Timeline::first_year; year <= Timeline::last_year; ++year) {
        rapid[year] = std::max(rapid_floor_intensity, no_decarbonization_intensity - 10.0 * (year - 2020));
    }
    GridPathways g;
    g.none_  = GridPathway({{Timeline::first_year, no_decarbonization_intensity},
                           {Timeline::last_year, no_decarbonization_intensity}});
    g.rapid_ = GridPathway(std::move(rapid));
    return g;
}

GridPathways GridPathways::from_points(const std::map<GridPathwayId, std::map<int, double>>& points)
{
    GridPathways g = shipped();
    if (auto it = points.find(GridPathwayId::none); it != points.end()) {
        g.none_ = GridPathway(it->second);
    }
    if (auto it = points.find(GridPathwayId::rapid); it != points.end()) {
        g.rapid_ = GridPathway(it->second);
    }
    if (auto it = points.find(GridPathwayId::moderate); it != points.end()) {
        g.moderate_ = GridPathway(it->second);
    }
    return g;
}

double GridPathways::intensity(GridPathwayId id, int year) const
{
    if (year < Timeline::first_year || year > Timeline::last_year) {
        throw ValidationError("grid intensity requested for year " + std::to_string(year) +
                              " outside 2020-2100");
    }
    switch (id) {
    case GridPathwayId::none:
        return none_.intensity(year);
    case GridPathwayId::rapid:
        return rapid_.intensity(year);
    case GridPathwayId::moderate:
        if (moderate_) {
            return moderate_->intensity(year);
        }
        return (none_.intensity(year) + rapid_.intensity(year)) / 2.0;
    }
    throw ValidationError("unknown grid pathway");
}

std::vector<std::string> GridPathways::validate() const
{
    std::vector<std::string> problems;
    for (int year = Timeline::first_year; year <= Timeline::last_year; ++year) {
        const double n = intensity(GridPathwayId::none, year);
        const double m = intensity(GridPathwayId::moderate, year);
        const double r = intensity(GridPathwayId::rapid, year);
        if (r < 0.0 || !(r <= m && m <= n)) {
            problems.push_back("grid ordering rapid <= moderate <= none violated in " + std::to_string(year));
            break;
        }
    }
    return problems;
}

double carbon_intensity(GridPathwayId pathway, int year)
{
    static const GridPathways shipped = GridPathways::shipped();
    return shipped.intensity(pathway, year);
}

} // namespace upath
