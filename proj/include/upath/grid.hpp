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
#include <map>
#include <string>
#include <vector>

namespace upath
{

/// Annual-average grid carbon intensity, gCO2eq/kWh.
class GridPathway
{
public:
    GridPathway() = default;
    /// Piecewise-linear curve through (year, g/kWh) points; held flat outside them.
    explicit GridPathway(std::map<int, double> points);

    double intensity(int year) const;
    const std::map<int, double>& points() const
    {
        return points_;
    }

private:
    std::map<int, double> points_;
};

/// The three pathways used by scenarios. Moderate is the pointwise mean of
/// none and rapid unless it was supplied explicitly.
class GridPathways
{
public:
    /// 430 flat; rapid -100 per decade from 430 down to a 48 floor.
    static GridPathways shipped();
    /// Pathways from (id, year, value) rows, falling back to the shipped curves.
    static GridPathways from_points(const std::map<GridPathwayId, std::map<int, double>>& points);

    /// Throws ValidationError outside 2020-2100.
    double intensity(GridPathwayId id, int year) const;
    std::vector<std::string> validate() const;

private:
    GridPathway none_;
    GridPathway rapid_;
    std::optional<GridPathway> moderate_;
};

/// Shipped pathways.
double carbon_intensity(GridPathwayId pathway, int year);

inline constexpr double no_decarbonization_intensity = 430.0;
inline constexpr double rapid_floor_intensity        = 48.0;

} // namespace upath
