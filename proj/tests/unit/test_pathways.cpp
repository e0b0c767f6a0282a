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
#include "upath/error.hpp"
#include "upath/pathways.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace upath;

namespace
{

DecadeSeries constant(double v)
{
    return DecadeSeries::Constant(v);
}

} // namespace

TEST(Emissions, UnitConversion)
{
    EXPECT_DOUBLE_EQ(emissions(10000, 430), 4.3);
    EXPECT_DOUBLE_EQ(emissions(12345, 0), 0.0);
}

TEST(Aggregate, SingleUnitPoint)
{
    ScenarioSpec spec;
    ParcelRecord r{"N", "P1", 2020, "SF_RANCH", 1, 1, 140.0, 10000.0, 4.3};
    const auto pts = aggregate(std::vector<ParcelRecord>{r}, spec);
    ASSERT_EQ(pts.size(), 2u * Timeline::size);
    EXPECT_EQ(pts[0].neighborhood, "N");
    EXPECT_DOUBLE_EQ(pts[0].total_kwh, 10000.0);
    EXPECT_DOUBLE_EQ(pts[0].per_unit, 4.3);
    EXPECT_DOUBLE_EQ(pts[0].per_m2, 4.3 / 140.0);
    EXPECT_EQ(pts[Timeline::size].neighborhood, all_neighborhoods);
    EXPECT_DOUBLE_EQ(pts[Timeline::size].total_tco2e, 4.3);
}

TEST(Aggregate, TotalIsSumOfNeighborhoods)
{
    ScenarioSpec spec;
    std::vector<ParcelRecord> rs;
    for (int k = 0; k < 30; ++k) {
        rs.push_back({k % 2 ? "B" : "A", "P" + std::to_string(k), 2020 + 10 * (k % 9), "X", 1, k % 3, 100.0 + k,
                      1000.0 * k, 0.43 * k});
    }
    const auto pts = aggregate(rs, spec);
    for (int d : Timeline::decades()) {
        double kwh = 0.0, all = 0.0;
        for (const auto& p : pts) {
            if (p.decade != d) {
                continue;
            }
            (p.neighborhood == all_neighborhoods ? all : kwh) += p.total_kwh;
        }
        EXPECT_EQ(kwh, all);
    }
}

TEST(Premium, Formula)
{
    const auto p = premium_for_sprawl(constant(100), constant(1000), constant(150), constant(2000));
    EXPECT_TRUE((p == 50.0).all());
    const auto zero = premium_for_sprawl(constant(100), constant(1000), constant(100), constant(1000));
    EXPECT_TRUE((zero == 0.0).all());
    EXPECT_THROW(premium_for_sprawl(constant(1), constant(0), constant(1), constant(1)), ModelError);
}

TEST(Premium, SeriesMustShareSetting)
{
    ScenarioSpec low{Climate::TMY, GridPathwayId::none, Development::low_density, AdoptionPolicy::neutral};
    ScenarioSpec high = low;
    high.development  = Development::high_density;
    PathwaySeries a, b;
    for (int d : Timeline::decades()) {
        a.push_back(make_point(low, "N", d, 1, 100, 1000, 1));
        b.push_back(make_point(high, "N", d, 1, 150, 2000, 1));
    }
    EXPECT_TRUE((premium_for_sprawl(a, b).premium == 50.0).all());
    for (auto& p : b) {
        p.scenario.grid = GridPathwayId::rapid;
    }
    EXPECT_THROW(premium_for_sprawl(a, b), ModelError);
}

TEST(BaselineDelta, Ratios)
{
    DecadeSeries s;
    s << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    EXPECT_TRUE((baseline_delta(s, s) == 1.0).all());
    EXPECT_TRUE(baseline_delta(2 * s, s).isApproxToConstant(2.0));
    EXPECT_THROW(baseline_delta(s, DecadeSeries::Zero()), ModelError);
}

TEST(Rebound, Detector)
{
    const std::vector<double> dec{100, 90, 80, 70};
    EXPECT_FALSE(rebound_detector(dec).rebound);
    const std::vector<double> v{100, 80, 70, 75, 85};
    const auto r = rebound_detector(v);
    EXPECT_EQ(r.min_index, 2u);
    EXPECT_TRUE(r.rebound);
    EXPECT_NEAR(r.magnitude, 85.0 / 70.0 - 1.0, 1e-12);
    EXPECT_NEAR(r.magnitude, 0.214, 1e-3);
    const std::vector<double> flat{100, 80, 70, 70.5};
    EXPECT_FALSE(rebound_detector(flat).rebound);
    EXPECT_TRUE(rebound_detector(flat, 0.001).rebound);
}

TEST(Series, SelectAndConvert)
{
    ScenarioSpec spec;
    std::vector<PathwayPoint> pts;
    for (int d : Timeline::decades()) {
        pts.push_back(make_point(spec, "N", d, d, 2.0 * d, 10, 5));
    }
    const auto s = select_series(pts, "N");
    EXPECT_EQ(to_series(s, Quantity::total_tco2e)(0), 4040.0);
    EXPECT_EQ(to_series(s, Quantity::per_unit)(8), 420.0);
    pts.pop_back();
    EXPECT_THROW(select_series(pts, "N"), ModelError);
}
