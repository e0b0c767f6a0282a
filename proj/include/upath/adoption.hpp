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
#include "upath/energy.hpp"
#include "upath/rng.hpp"

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace upath
{

using AgentId = std::uint64_t;

enum class Tenure
{
    owner,
    renter
};

inline constexpr std::size_t technology_count = enum_count<Technology>();

/// What a household has installed, with install years.
struct Installed {
    std::array<std::optional<int>, technology_count> year{};
    std::array<bool, technology_count> mandated{};
    double pv_kw = 0.0;

    bool has(Technology t) const
    {
        return year[static_cast<std::size_t>(t)].has_value();
    }
    bool any() const
    {
        for (const auto& y : year) {
            if (y) {
                return true;
            }
        }
        return false;
    }
    /// True once any technology was installed by the household's own decision.
    bool has_chosen() const
    {
        for (std::size_t i = 0; i < technology_count; ++i) {
            if (year[i] && !mandated[i]) {
                return true;
            }
        }
        return false;
    }
};

struct Agent {
    AgentId id = 0;
    std::string unit_id;
    std::string parcel_id;
    Eigen::Vector2d location = Eigen::Vector2d::Zero();
    double financial_index   = 0.0;
    double info_index        = 0.0;
    Tenure tenure            = Tenure::renter;
    DwellingClass dwelling_class = DwellingClass::single_family;
    /// Typical annual demand of the unit, used to value savings.
    double annual_kwh = 0.0;
    /// PV array the household would install, already limited by its roof.
    double pv_size_kw = 0.0;
    Installed installed;
    std::vector<Technology> plan;
    std::size_t plan_position = 0;
    bool activated            = false;

    /// Owners of single-family homes may adopt every technology; everybody
    /// else only smart thermostats.
    bool full_menu() const
    {
        return tenure == Tenure::owner && dwelling_class == DwellingClass::single_family;
    }
};

struct NetworkParams {
    /// Geographic candidate radius, metres.
    double phi = 200.0;
    /// Share of the most financially similar candidates that get linked.
    double rho = 0.10;
    /// Extra random links, as a share of the degree after the homophily step.
    double lambda = 0.10;
    /// Upper bound on homophily links per ego, so degree does not grow with density.
    std::size_t max_links = 30;
};

/// Gateway probabilities indexed by Technology.
using GatewayDistribution = std::array<double, technology_count>;

inline constexpr GatewayDistribution default_gateway_distribution{0.35, 0.35, 0.05, 0.25};

struct Tariffs {
    /// $/kWh
    double retail    = 0.12;
    double feed_in   = 0.097;
};

struct AbmParams {
    NetworkParams network;
    /// Information gained per year at a 100 % adopter share among neighbours.
    double sigma      = 0.3;
    double theta_info = 1.0;
    GatewayDistribution gateway = default_gateway_distribution;
    double owner_prob_sf = 0.55;
    double owner_prob_mf = 0.10;
    double beta_a        = 2.0;
    double beta_b        = 2.0;
    /// Uniform jitter of agent positions around the lot centroid, metres.
    double jitter = 10.0;
    /// Households that already own their gateway technology when they enter.
    double seed_adopter_fraction = 0.08;
    Tariffs tariffs;
    std::vector<Technology> mandate_set{Technology::high_eff_hvac};
    /// Bids within this relative shortfall of the budget are decided on benefit.
    double marginal_band = 0.05;
    /// Years of benefit weighed against the shortfall of a marginal bid.
    double benefit_horizon = 10.0;
};

/// Where and what a residence unit is, as needed to create its agent.
struct UnitSite {
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    /// min(requested array size, roof capacity share of the unit).
    double pv_size_kw = 0.0;
    double annual_kwh = 0.0;
};

/// Stable agent id of a residence unit.
AgentId agent_id(const ResidenceUnit& unit);

/// One agent per unit; `sites` is parallel to `units`. `year` stamps the
/// installations of seeded households.
std::vector<Agent> init_population(std::span<const ResidenceUnit> units, std::span<const UnitSite> sites,
                                   std::uint64_t seed, const AbmParams& params, int year = Timeline::first_year);

/// Gateway drawn from `gateway`, the other feasible technologies appended in
/// random order; storage always follows PV, and a storage gateway brings PV
/// in ahead of it.
std::vector<Technology> sample_plan(const Agent& agent, const GatewayDistribution& gateway, Engine& rng);

/// Undirected social graph keyed by agent id.
class Network
{
public:
    void add_edge(AgentId a, AgentId b);
    bool has_edge(AgentId a, AgentId b) const;
    void remove_agent(AgentId a);
    std::span<const AgentId> neighbors(AgentId a) const;
    std::size_t degree(AgentId a) const
    {
        return neighbors(a).size();
    }
    std::size_t edge_count() const
    {
        return edges_;
    }
    /// Sorted (low id, high id) pairs.
    std::vector<std::pair<AgentId, AgentId>> edges() const;

private:
    std::unordered_map<AgentId, std::vector<AgentId>> adjacency_;
    std::size_t edges_ = 0;
};

/**
 * Three-step construction: geographic candidates within phi, the top rho
 * share of them by financial similarity, then floor(lambda * degree) random
 * links from the whole pool.
 */
Network build_network(std::span<const Agent> agents, const NetworkParams& params, std::uint64_t seed);

/// Wires only `egos` (indices into `agents`) into an existing network with the same three steps.
void connect_agents(Network& network, std::span<const Agent> agents, std::span<const std::size_t> egos,
                    const NetworkParams& params, std::uint64_t seed);

/// Average local clustering coefficient over the agents (degree < 2 counts as 0).
double clustering_coefficient(const Network& network, std::span<const Agent> agents);

/// Incentive schedules and mandates for one adoption policy.
struct PolicyContext {
    AdoptionPolicy scenario = AdoptionPolicy::neutral;
    std::vector<Technology> mandate_set{Technology::high_eff_hvac};
};

/// Federal tax-credit share of the PV purchase price.
double fitc_rate(int year, const PolicyContext& policy);

/// Local rebate in dollars.
double rebate(Technology tech, int year, double system_size_kw, const PolicyContext& policy);

/// Technology price trajectories: steady decline with year-to-year noise
/// shared by every household.
struct EconomicContext {
    /// 2020 prices: HVAC and storage per system, PV per kW, thermostat per unit.
    std::array<double, technology_count> base_price{7500.0, 2800.0, 11000.0, 250.0};
    std::array<double, technology_count> annual_decline{0.005, 0.03, 0.04, 0.01};
    double variability = 0.05;
    std::uint64_t seed  = 0;

    double trend(Technology tech, int year, double pv_kw) const;
    /// Multiplicative noise on the trend, max(0.5, 1 + variability * z).
    double noise(Technology tech, int year) const;
    double price(Technology tech, int year, double pv_kw) const;
    /// Normalizes financial indices: the costliest 2020 trend price.
    double affordability_scale(double pv_target_kw) const;
};

double net_cost(Technology tech, int year, double pv_kw, const PolicyContext& policy,
                const EconomicContext& economy);

/// Purchase price less rebate and, for PV, the tax credit; never negative.
double net_cost_at_price(Technology tech, int year, double pv_kw, double price, const PolicyContext& policy);

/// Dollar value of annual savings: feed-in rate once PV is installed, retail otherwise.
double benefit_value(double saved_kwh, bool has_pv, const Tariffs& tariffs);

/// Annual dollar benefit of adding `tech` to what the agent already has.
double evaluate_benefit(const Agent& agent, Technology tech, const Tariffs& tariffs, const EnergyParams& energy,
                        int year);

/// Social graph flattened over population indices for the yearly loop.
struct DiffusionGraph {
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> targets;
};

DiffusionGraph compile_graph(const Network& network, std::span<const Agent> agents);

struct TickReport {
    std::array<int, technology_count> adoptions{};
    int activations = 0;
};

/**
 * One year: information diffusion from neighbours that own any technology, activation past
 * theta_info with plan sampling, one bid per activated household on its next
 * plan item.
 */
TickReport tick(std::vector<Agent>& agents, const DiffusionGraph& graph, int year, const PolicyContext& policy,
                const EconomicContext& economy, const AbmParams& params, const EnergyParams& energy,
                std::uint64_t seed);

struct MandateRecord {
    AgentId agent = 0;
    Technology tech = Technology::high_eff_hvac;
};

/// Supportive policy installs the mandate set on new construction; other policies do nothing.
std::vector<MandateRecord> apply_mandates(std::span<Agent> new_agents, const PolicyContext& policy, int year,
                                          const EnergyParams& energy);

/// Replaces the agents of redeveloped parcels with agents for their new units
/// and wires the newcomers in. Returns the indices of the new agents.
std::vector<std::size_t> sync_population(std::vector<Agent>& agents, Network& network,
                                         const std::unordered_set<std::string>& changed_parcels,
                                         std::span<const ResidenceUnit> new_units, std::span<const UnitSite> sites,
                                         std::uint64_t seed, const AbmParams& params, int year);

} // namespace upath
