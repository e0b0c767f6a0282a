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
#include "upath/adoption.hpp"
#include "upath/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace upath;

namespace
{

struct Population {
    std::vector<ResidenceUnit> units;
    std::vector<UnitSite> sites;
};

Population grid_population(std::size_t n, DwellingClass cls = DwellingClass::single_family)
{
    Population p;
    for (std::size_t k = 0; k < n; ++k) {
        p.units.push_back({"U" + std::to_string(k), "P" + std::to_string(k), "SF_RANCH", cls, 1970});
        UnitSite s;
        s.centroid   = {20.0 * static_cast<double>(k % 40), 20.0 * static_cast<double>(k / 40)};
        s.pv_size_kw = 5.0;
        s.annual_kwh = 12000.0;
        p.sites.push_back(s);
    }
    return p;
}

Agent line_agent(AgentId id, double x, double financial = 0.5)
{
    Agent a;
    a.id              = id;
    a.location        = {x, 0.0};
    a.financial_index = financial;
    return a;
}

bool same_agents(const std::vector<Agent>& a, const std::vector<Agent>& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].id != b[i].id || a[i].financial_index != b[i].financial_index || a[i].tenure != b[i].tenure ||
            a[i].location != b[i].location || a[i].plan != b[i].plan || a[i].installed.year != b[i].installed.year) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST(Population, Deterministic)
{
    const auto p = grid_population(1000);
    const AbmParams params;
    EXPECT_TRUE(same_agents(init_population(p.units, p.sites, 42, params),
                            init_population(p.units, p.sites, 42, params)));
    EXPECT_FALSE(same_agents(init_population(p.units, p.sites, 42, params),
                             init_population(p.units, p.sites, 43, params)));
}

TEST(Population, MultiFamilyNeverPlansSolar)
{
    const auto p = grid_population(2000, DwellingClass::multi_family);
    AbmParams params;
    params.seed_adopter_fraction = 1.0;
    for (const auto& a : init_population(p.units, p.sites, 7, params)) {
        EXPECT_EQ(a.plan, std::vector<Technology>{Technology::smart_thermostat});
        EXPECT_FALSE(a.installed.has(Technology::solar_pv));
    }
}

TEST(Population, FinancialIndexIsBetaTwoTwo)
{
    Engine rng = make_stream(42, "test");
    double sum = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        sum += draw_beta(rng, 2.0, 2.0);
    }
    EXPECT_NEAR(sum / n, 0.5, 0.01);
}

TEST(Population, LengthMismatchThrows)
{
    auto p = grid_population(3);
    p.sites.pop_back();
    EXPECT_THROW(init_population(p.units, p.sites, 1, AbmParams{}), ModelError);
}

TEST(Network, UnconstrainedIsComplete)
{
    std::vector<Agent> agents;
    for (AgentId i = 1; i <= 12; ++i) {
        agents.push_back(line_agent(i, 1000.0 * static_cast<double>(i), 0.05 * static_cast<double>(i)));
    }
    NetworkParams p;
    p.phi       = std::numeric_limits<double>::infinity();
    p.rho       = 1.0;
    p.lambda    = 0.0;
    p.max_links = 1000;
    const auto net = build_network(agents, p, 1);
    EXPECT_EQ(net.edge_count(), 12u * 11u / 2u);
}

TEST(Network, FourAgentsOnALine)
{
    std::vector<Agent> agents{line_agent(0, 0), line_agent(1, 100), line_agent(2, 200), line_agent(3, 1000)};
    NetworkParams p;
    p.phi    = 250;
    p.rho    = 1.0;
    p.lambda = 0.0;
    const auto net = build_network(agents, p, 1);
    EXPECT_EQ(net.edges(), (std::vector<std::pair<AgentId, AgentId>>{{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_EQ(net.degree(3), 0u);
}

TEST(Network, RemoveAgentDropsEdges)
{
    Network n;
    n.add_edge(1, 2);
    n.add_edge(2, 3);
    n.add_edge(1, 2);
    EXPECT_EQ(n.edge_count(), 2u);
    n.remove_agent(2);
    EXPECT_EQ(n.edge_count(), 0u);
    EXPECT_FALSE(n.has_edge(1, 2));
}

TEST(Policy, TaxCredit)
{
    const PolicyContext supportive{AdoptionPolicy::supportive};
    const PolicyContext neutral{AdoptionPolicy::neutral};
    EXPECT_DOUBLE_EQ(fitc_rate(2021, supportive), 0.26);
    EXPECT_DOUBLE_EQ(fitc_rate(2023, supportive), 0.22);
    EXPECT_DOUBLE_EQ(fitc_rate(2030, supportive), 0.0);
    EXPECT_DOUBLE_EQ(fitc_rate(2030, neutral), 0.0);
    EXPECT_DOUBLE_EQ(fitc_rate(2021, neutral), 0.0);
}

TEST(Policy, Rebates)
{
    const PolicyContext supportive{AdoptionPolicy::supportive};
    EXPECT_DOUBLE_EQ(rebate(Technology::solar_pv, 2021, 2.0, supportive), 0.0);
    EXPECT_DOUBLE_EQ(rebate(Technology::solar_pv, 2022, 1.5, supportive), 2500.0);
    EXPECT_DOUBLE_EQ(rebate(Technology::smart_thermostat, 2050, 0.0, supportive), 110.0);
    EXPECT_DOUBLE_EQ(rebate(Technology::smart_thermostat, 2050, 0.0, PolicyContext{AdoptionPolicy::neutral}), 0.0);
}

TEST(Policy, SupportiveNeverCostsMore)
{
    const EconomicContext economy;
    for (int year = 2020; year <= 2100; year += 5) {
        for (std::size_t t = 0; t < technology_count; ++t) {
            const auto tech = static_cast<Technology>(t);
            EXPECT_LE(net_cost(tech, year, 5.0, PolicyContext{AdoptionPolicy::supportive}, economy),
                      net_cost(tech, year, 5.0, PolicyContext{AdoptionPolicy::neutral}, economy));
        }
    }
}

TEST(Plan, RenterGetsThermostatOnly)
{
    Agent a;
    a.tenure         = Tenure::renter;
    a.dwelling_class = DwellingClass::single_family;
    Engine rng       = make_stream(1, "plans");
    for (int k = 0; k < 100; ++k) {
        EXPECT_EQ(sample_plan(a, default_gateway_distribution, rng),
                  std::vector<Technology>{Technology::smart_thermostat});
    }
}

TEST(Plan, DegenerateGateway)
{
    Agent a;
    a.tenure   = Tenure::owner;
    Engine rng = make_stream(1, "plans");
    for (int k = 0; k < 100; ++k) {
        EXPECT_EQ(sample_plan(a, {1.0, 0.0, 0.0, 0.0}, rng).front(), Technology::high_eff_hvac);
    }
}

TEST(Plan, GatewayFrequenciesAndStorageAfterPv)
{
    Agent a;
    a.tenure   = Tenure::owner;
    Engine rng = make_stream(3, "plans");
    std::array<int, technology_count> first{};
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        const auto plan = sample_plan(a, default_gateway_distribution, rng);
        ASSERT_EQ(plan.size(), technology_count);
        const auto pv      = std::find(plan.begin(), plan.end(), Technology::solar_pv);
        const auto storage = std::find(plan.begin(), plan.end(), Technology::storage);
        EXPECT_LT(pv, storage);
        ++first[static_cast<std::size_t>(plan.front())];
    }
    // A storage gateway brings PV in ahead of it, so storage never leads.
    EXPECT_EQ(first[2], 0);
    const double pv_share = (default_gateway_distribution[1] + default_gateway_distribution[2]);
    EXPECT_NEAR(first[0] / double(n), default_gateway_distribution[0], 0.02);
    EXPECT_NEAR(first[1] / double(n), pv_share, 0.02);
    EXPECT_NEAR(first[3] / double(n), default_gateway_distribution[3], 0.02);
}

TEST(Benefit, TariffDependsOnPv)
{
    EnergyParams energy;
    Tariffs tariffs;
    Agent a;
    a.annual_kwh = 10000.0;
    a.installed.year[static_cast<std::size_t>(Technology::solar_pv)] = 2030;
    EXPECT_NEAR(evaluate_benefit(a, Technology::smart_thermostat, tariffs, energy, 2030), 48.50, 1e-9);
    a.installed = {};
    EXPECT_NEAR(evaluate_benefit(a, Technology::smart_thermostat, tariffs, energy, 2030), 60.00, 1e-9);
    a.annual_kwh = 0.0;
    EXPECT_DOUBLE_EQ(evaluate_benefit(a, Technology::smart_thermostat, tariffs, energy, 2030), 0.0);
}

TEST(Tick, NoAdoptersNoInformation)
{
    const auto p = grid_population(200);
    AbmParams params;
    params.seed_adopter_fraction = 0.0;
    params.network.lambda        = 0.0;
    auto agents                  = init_population(p.units, p.sites, 5, params);
    const auto graph = compile_graph(build_network(agents, params.network, 5), agents);
    tick(agents, graph, 2021, PolicyContext{AdoptionPolicy::neutral}, EconomicContext{}, params, EnergyParams{}, 5);
    for (const auto& a : agents) {
        EXPECT_EQ(a.info_index, 0.0);
        EXPECT_FALSE(a.activated);
    }
}

TEST(Tick, InformedRichOwnerAdoptsGateway)
{
    Agent a;
    a.id              = 9;
    a.tenure          = Tenure::owner;
    a.financial_index = 1.0;
    a.info_index      = 1.0;
    a.annual_kwh      = 12000.0;
    a.pv_size_kw      = 5.0;
    std::vector<Agent> agents{a};
    AbmParams params;
    params.gateway = {1.0, 0.0, 0.0, 0.0};
    DiffusionGraph graph;
    graph.offsets = {0, 0};
    const auto r = tick(agents, graph, 2021, PolicyContext{AdoptionPolicy::neutral}, EconomicContext{}, params,
                        EnergyParams{}, 1);
    EXPECT_EQ(r.adoptions[0], 1);
    EXPECT_TRUE(agents[0].installed.has(Technology::high_eff_hvac));
    EXPECT_EQ(*agents[0].installed.year[0], 2021);
}

TEST(Tick, GraphMismatchThrows)
{
    std::vector<Agent> agents(2);
    DiffusionGraph graph;
    graph.offsets = {0};
    EXPECT_THROW(tick(agents, graph, 2021, PolicyContext{}, EconomicContext{}, AbmParams{}, EnergyParams{}, 1),
                 ModelError);
}

TEST(Mandates, SupportiveOnly)
{
    std::vector<Agent> fresh(50);
    for (std::size_t k = 0; k < fresh.size(); ++k) {
        fresh[k].id = k + 1;
    }
    auto copy = fresh;
    EXPECT_EQ(apply_mandates(fresh, PolicyContext{AdoptionPolicy::supportive}, 2030, EnergyParams{}).size(), 50u);
    for (const auto& a : fresh) {
        EXPECT_TRUE(a.installed.has(Technology::high_eff_hvac));
        EXPECT_TRUE(a.installed.mandated[0]);
        EXPECT_FALSE(a.installed.has_chosen());
    }
    EXPECT_TRUE(apply_mandates(copy, PolicyContext{AdoptionPolicy::neutral}, 2030, EnergyParams{}).empty());
}

TEST(Sync, NoChangesIsIdentity)
{
    const auto p = grid_population(50);
    const AbmParams params;
    auto agents  = init_population(p.units, p.sites, 3, params);
    auto network = build_network(agents, params.network, 3);
    const auto edges  = network.edges();
    const auto before = agents;
    EXPECT_TRUE(sync_population(agents, network, {}, {}, {}, 3, params, 2030).empty());
    EXPECT_TRUE(same_agents(agents, before));
    EXPECT_EQ(network.edges(), edges);
}

TEST(Sync, SingleFamilyToFourplex)
{
    const auto p = grid_population(20);
    AbmParams params;
    params.seed_adopter_fraction = 1.0;
    auto agents  = init_population(p.units, p.sites, 3, params);
    auto network = build_network(agents, params.network, 3);

    std::vector<ResidenceUnit> units;
    std::vector<UnitSite> sites;
    for (int k = 0; k < 4; ++k) {
        units.push_back({"P0@2030#" + std::to_string(k), "P0", "MF_FOURPLEX", DwellingClass::multi_family, 2030});
        sites.push_back(p.sites[0]);
    }
    const auto fresh = sync_population(agents, network, {"P0"}, units, sites, 3, params, 2030);
    EXPECT_EQ(fresh.size(), 4u);
    EXPECT_EQ(agents.size(), 23u);
    EXPECT_EQ(std::count_if(agents.begin(), agents.end(), [](const Agent& a) { return a.unit_id == "U0"; }), 0);
    for (auto i : fresh) {
        const auto& a = agents[i];
        EXPECT_EQ(a.parcel_id, "P0");
        EXPECT_EQ(std::count(a.plan.begin(), a.plan.end(), Technology::solar_pv), 0);
        EXPECT_FALSE(a.full_menu());
    }
    for (const auto& [x, y] : network.edges()) {
        const bool known = std::any_of(agents.begin(), agents.end(), [&](const Agent& a) { return a.id == x; });
        EXPECT_TRUE(known);
        (void)y;
    }
}

TEST(Network, ClusteringAboveRandomGraph)
{
    const auto p = grid_population(1000);
    const AbmParams params;
    const auto agents = init_population(p.units, p.sites, 11, params);
    const auto net    = build_network(agents, params.network, 11);
    EXPECT_GT(clustering_coefficient(net, agents), 0.2);
}
