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
#include "upath/output.hpp"
#include "upath/simulation.hpp"

#include "../support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace upath;
namespace fs = std::filesystem;

namespace
{

ModelInputs toy()
{
    // Mixed stock so that both density scenarios change units.
    auto lots = test::ten_lots();
    lots[2]   = test::make_parcel("T03", 3, "MF_FOURPLEX", 1200);
    lots[5] =
        test::make_parcel("T06", 6, "COM_STRIP", 3500, LocationClass::corridor, LandUseClass::commercial_mixed);
    lots[7] = test::make_parcel("T08", 8, "MF_GARDEN", 4200, LocationClass::tod, LandUseClass::large_residential);
    for (std::size_t k = 0; k < lots.size(); ++k) {
        lots[k].x = 25.0 * static_cast<double>(k);
    }
    return test::toy_inputs(lots, test::toy_schedule({0.2, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1, 0.1}));
}

ScenarioSpec spec(Climate c, GridPathwayId g, Development d, AdoptionPolicy a, std::uint64_t seed = 42)
{
    ScenarioSpec s;
    s.climate     = c;
    s.grid        = g;
    s.development = d;
    s.adoption    = a;
    s.seed        = seed;
    return s;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("upath_test_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST(Run, ReferenceIsFlat)
{
    const auto in  = toy();
    const auto out = run_scenario(
        in, spec(Climate::TMY, GridPathwayId::none, Development::reference, AdoptionPolicy::no_adoption));
    const auto s = to_series(select_series(out.pathways, all_neighborhoods), Quantity::total_tco2e);
    EXPECT_TRUE(s.isApproxToConstant(s(0), 1e-12)) << s.transpose();
}

TEST(Run, ClimateRaisesReferenceDemand)
{
    const auto in  = toy();
    const auto tmy = run_scenario(
        in, spec(Climate::TMY, GridPathwayId::none, Development::reference, AdoptionPolicy::no_adoption));
    const auto a1b = run_scenario(
        in, spec(Climate::A1B, GridPathwayId::none, Development::reference, AdoptionPolicy::no_adoption));
    const auto r = baseline_delta(to_series(select_series(a1b.pathways, "Toy"), Quantity::total_kwh),
                                  to_series(select_series(tmy.pathways, "Toy"), Quantity::total_kwh));
    EXPECT_NEAR(r(3), 1.10, 1e-9);
    for (Eigen::Index i = 1; i < r.size(); ++i) {
        EXPECT_GE(r(i), r(i - 1));
    }
}

TEST(Run, ConservationAcrossLevels)
{
    const auto in  = toy();
    const auto out = run_scenario(
        in, spec(Climate::A2, GridPathwayId::moderate, Development::high_density, AdoptionPolicy::supportive));
    std::map<int, double> kwh, t;
    for (const auto& r : out.parcels) {
        kwh[r.decade] += r.kwh;
        t[r.decade] += r.tco2e;
    }
    for (const auto& p : select_series(out.pathways, "Toy")) {
        EXPECT_EQ(p.total_kwh, kwh[p.decade]);
        EXPECT_EQ(p.total_tco2e, t[p.decade]);
    }
}

TEST(Run, OneRecordPerParcelPerDecade)
{
    const auto in  = toy();
    const auto out = run_scenario(
        in, spec(Climate::TMY, GridPathwayId::none, Development::low_density, AdoptionPolicy::neutral));
    std::map<int, int> rows;
    for (const auto& r : out.parcels) {
        ++rows[r.decade];
    }
    for (int d : Timeline::decades()) {
        EXPECT_EQ(rows[d], 10);
    }
}

TEST(Run, NoAdoptionHasNoCounts)
{
    const auto in  = toy();
    const auto out = run_scenario(
        in, spec(Climate::TMY, GridPathwayId::none, Development::low_density, AdoptionPolicy::no_adoption));
    for (const auto& c : out.adoption) {
        EXPECT_EQ(c.chosen + c.mandated + c.installed, 0);
    }
}

TEST(Run, GridOrderingOnToy)
{
    const auto in = toy();
    std::vector<DecadeSeries> totals;
    for (auto g : {GridPathwayId::rapid, GridPathwayId::moderate, GridPathwayId::none}) {
        const auto out = run_scenario(in, spec(Climate::A1B, g, Development::low_density, AdoptionPolicy::neutral));
        totals.push_back(to_series(select_series(out.pathways, "Toy"), Quantity::total_tco2e));
    }
    EXPECT_TRUE((totals[0] <= totals[1]).all());
    EXPECT_TRUE((totals[1] <= totals[2]).all());
}

TEST(Run, ErrorsNameModuleAndDecade)
{
    auto in = toy();
    in.demand = DemandTable{};
    try {
        run_scenario(in, spec(Climate::TMY, GridPathwayId::none, Development::reference, AdoptionPolicy::neutral));
        FAIL();
    }
    catch (const ModelError& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("Toy"), std::string::npos) << what;
        EXPECT_NE(what.find("2020"), std::string::npos) << what;
    }
}

TEST(Matrix, SingleCellMatchesRun)
{
    const auto in = toy();
    MatrixAxes axes{{Climate::B1}, {GridPathwayId::rapid}, {Development::high_density}, {AdoptionPolicy::neutral}};
    const auto runs = run_matrix(in, axes, 9, MatrixOptions{});
    ASSERT_EQ(runs.size(), 1u);
    ASSERT_TRUE(runs[0].output);
    const auto direct = run_scenario(
        in, spec(Climate::B1, GridPathwayId::rapid, Development::high_density, AdoptionPolicy::neutral, 9));
    ASSERT_EQ(runs[0].output->pathways.size(), direct.pathways.size());
    for (std::size_t i = 0; i < direct.pathways.size(); ++i) {
        EXPECT_EQ(runs[0].output->pathways[i].total_tco2e, direct.pathways[i].total_tco2e);
    }
}

TEST(Matrix, FullAxesCount)
{
    EXPECT_EQ(MatrixAxes::full().combinations(1).size(), 4u * 3u * 3u * 3u);
}

TEST(Matrix, FailureIsIsolated)
{
    auto in = toy();
    // Demand cells for A2 go missing; every other climate still has its table.
    DemandTable partial;
    for (const auto& a : in.catalog.all()) {
        for (int d : Timeline::decades()) {
            for (auto c : {Climate::TMY, Climate::B1, Climate::A1B}) {
                partial.set(a.id, d, c, in.demand.at(a.id, d, c));
            }
        }
    }
    in.demand = partial;
    MatrixAxes axes{{Climate::TMY, Climate::A2}, {GridPathwayId::none}, {Development::low_density},
                    {AdoptionPolicy::no_adoption}};
    MatrixOptions options;
    options.jobs    = 2;
    const auto runs = run_matrix(in, axes, 1, options);
    ASSERT_EQ(runs.size(), 2u);
    EXPECT_TRUE(runs[0].output.has_value());
    EXPECT_FALSE(runs[1].output.has_value());
    EXPECT_NE(runs[1].error.find("A2"), std::string::npos) << runs[1].error;
}

TEST(Output, DeterministicFilesAndPremiumPresence)
{
    const auto in = toy();
    MatrixAxes both{{Climate::TMY}, {GridPathwayId::none}, {Development::low_density, Development::high_density},
                    {AdoptionPolicy::neutral}};
    WriteOptions w;
    w.config_digest = "abc";
    w.seed          = 5;
    const auto a    = scratch("a");
    const auto b    = scratch("b");
    const auto files_a = write_outputs(run_matrix(in, both, 5, MatrixOptions{}), a, w);
    const auto files_b = write_outputs(run_matrix(in, both, 5, MatrixOptions{}), b, w);
    ASSERT_EQ(files_a.size(), files_b.size());
    for (std::size_t i = 0; i < files_a.size(); ++i) {
        EXPECT_EQ(fs::relative(files_a[i], a), fs::relative(files_b[i], b));
        EXPECT_EQ(slurp(files_a[i]), slurp(files_b[i])) << files_a[i];
    }
    EXPECT_TRUE(fs::exists(a / "premium.csv"));

    MatrixAxes one = both;
    one.developments = {Development::low_density};
    const auto c     = scratch("c");
    write_outputs(run_matrix(in, one, 5, MatrixOptions{}), c, w);
    EXPECT_FALSE(fs::exists(c / "premium.csv"));
    EXPECT_TRUE(fs::exists(c / "pathways.csv"));
    EXPECT_EQ(slurp(c / "pathways.csv").substr(0, pathways_header.size()), pathways_header);
}

TEST(Output, ParcelCsvMatchesPathways)
{
    const auto in  = toy();
    const auto out = run_scenario(
        in, spec(Climate::A1B, GridPathwayId::rapid, Development::low_density, AdoptionPolicy::supportive));
    std::ostringstream s;
    write_parcel_csv(s, out);
    std::istringstream lines(s.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, parcel_output_header);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 10 * static_cast<int>(Timeline::size));
}

TEST(Output, PathwaysRoundTrip)
{
    const auto in = toy();
    MatrixAxes axes{{Climate::TMY}, {GridPathwayId::none}, {Development::low_density}, {AdoptionPolicy::neutral}};
    const auto dir = scratch("rt");
    write_outputs(run_matrix(in, axes, 5, MatrixOptions{}), dir, WriteOptions{});
    const auto pts = load_pathways(dir / "pathways.csv");
    EXPECT_EQ(pts.size(), 2u * Timeline::size);
    EXPECT_EQ(pts.front().scenario.development, Development::low_density);
}
