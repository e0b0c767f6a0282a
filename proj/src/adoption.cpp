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
#include "upath/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace upath
{

namespace
{

constexpr std::size_t idx(Technology t)
{
    return static_cast<std::size_t>(t);
}

void install(Agent& agent, Technology tech, int year, bool mandated)
{
    agent.installed.year[idx(tech)]     = year;
    agent.installed.mandated[idx(tech)] = mandated;
    if (tech == Technology::solar_pv) {
        agent.installed.pv_kw = agent.pv_size_kw;
    }
}

/// Whether `tech` can physically be installed right now.
bool installable(const Agent& agent, Technology tech)
{
    switch (tech) {
    case Technology::solar_pv:
        return agent.pv_size_kw > 0.0;
    case Technology::storage:
        return agent.installed.has(Technology::solar_pv);
    default:
        return true;
    }
}

/// What candidate screening needs to know about an agent, stored contiguously.
struct Site {
    double x;
    double y;
    double financial_index;
    AgentId id;
    std::size_t index;
};

/// Spatial hash with square cells of side `cell`.
class CellIndex
{
public:
    CellIndex(std::span<const Agent> agents, double cell)
        : cell_(cell)
    {
        for (std::size_t i = 0; i < agents.size(); ++i) {
            const auto& a = agents[i];
            cells_[key(a.location)].push_back({a.location.x(), a.location.y(), a.financial_index, a.id, i});
        }
    }

    template <class F>
    void for_each_near(const Eigen::Vector2d& p, F&& f) const
    {
        const auto cx = coord(p.x());
        const auto cy = coord(p.y());
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(pack(cx + dx, cy + dy));
                if (it != cells_.end()) {
                    for (const auto& site : it->second) {
                        f(site);
                    }
                }
            }
        }
    }

private:
    std::int64_t coord(double v) const
    {
        return static_cast<std::int64_t>(std::floor(v / cell_));
    }
    static std::uint64_t pack(std::int64_t x, std::int64_t y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ (static_cast<std::uint64_t>(y) & 0xffffffffULL);
    }
    std::uint64_t key(const Eigen::Vector2d& p) const
    {
        return pack(coord(p.x()), coord(p.y()));
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<Site>> cells_;
};

/// Steps one and two for a single ego: similar agents within reach, most similar first.
std::vector<std::size_t> homophilous_candidates(std::span<const Agent> agents, std::size_t ego,
                                                const NetworkParams& params, const CellIndex* cells)
{
    const Agent& a = agents[ego];
    struct Ranked {
        double gap;
        AgentId id;
        std::size_t index;
        bool operator<(const Ranked& o) const
        {
            return gap != o.gap ? gap < o.gap : id < o.id;
        }
    };
    std::vector<Ranked> ranked;
    const double phi2 = params.phi * params.phi;
    auto consider     = [&](const Site& s) {
        const double dx = s.x - a.location.x();
        const double dy = s.y - a.location.y();
        if (s.index != ego && dx * dx + dy * dy <= phi2) {
            ranked.push_back({std::abs(s.financial_index - a.financial_index), s.id, s.index});
        }
    };
    if (cells) {
        cells->for_each_near(a.location, consider);
    }
    else {
        for (std::size_t j = 0; j < agents.size(); ++j) {
            const auto& b = agents[j];
            consider({b.location.x(), b.location.y(), b.financial_index, b.id, j});
        }
    }
    const auto keep = std::min(params.max_links, static_cast<std::size_t>(std::ceil(
                                                     params.rho * static_cast<double>(ranked.size()) - 1e-9)));
    if (keep < ranked.size()) {
        std::nth_element(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
        ranked.resize(keep);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::size_t> out;
    out.reserve(ranked.size());
    for (const auto& r : ranked) {
        out.push_back(r.index);
    }
    return out;
}

void random_links(Network& network, std::span<const Agent> agents, std::size_t ego, std::size_t count,
                  std::uint64_t seed)
{
    if (count == 0 || agents.size() < 2) {
        return;
    }
    auto rng = make_stream(seed, "network", agents[ego].id);
    std::uniform_int_distribution<std::size_t> pick(0, agents.size() - 1);
    std::size_t added          = 0;
    const std::size_t attempts = 50 * count + 100;
    for (std::size_t t = 0; t < attempts && added < count; ++t) {
        const std::size_t j = pick(rng);
        if (j == ego || network.has_edge(agents[ego].id, agents[j].id)) {
            continue;
        }
        network.add_edge(agents[ego].id, agents[j].id);
        ++added;
    }
}

} // namespace

AgentId agent_id(const ResidenceUnit& unit)
{
    return splitmix64(hash_string(unit.id));
}

std::vector<Technology> sample_plan(const Agent& agent, const GatewayDistribution& gateway, Engine& rng)
{
    std::discrete_distribution<std::size_t> draw(gateway.begin(), gateway.end());
    const auto first = static_cast<Technology>(draw(rng));
    std::vector<Technology> rest;
    for (std::size_t t = 0; t < technology_count; ++t) {
        if (static_cast<Technology>(t) != first) {
            rest.push_back(static_cast<Technology>(t));
        }
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    if (!agent.full_menu()) {
        return {Technology::smart_thermostat};
    }

    std::vector<Technology> plan{first};
    plan.insert(plan.end(), rest.begin(), rest.end());
    if (first == Technology::storage) {
        // A battery-first household buys it together with the array.
        plan.erase(std::find(plan.begin() + 1, plan.end(), Technology::solar_pv));
        plan.insert(plan.begin(), Technology::solar_pv);
    }
    auto pv      = std::find(plan.begin(), plan.end(), Technology::solar_pv);
    auto storage = std::find(plan.begin(), plan.end(), Technology::storage);
    if (storage < pv) {
        plan.erase(storage);
        pv = std::find(plan.begin(), plan.end(), Technology::solar_pv);
        plan.insert(pv + 1, Technology::storage);
    }
    return plan;
}

std::vector<Agent> init_population(std::span<const ResidenceUnit> units, std::span<const UnitSite> sites,
                                   std::uint64_t seed, const AbmParams& params, int year)
{
    if (units.size() != sites.size()) {
        throw ModelError("init_population: units and sites differ in length");
    }
    std::vector<Agent> agents;
    agents.reserve(units.size());
    for (std::size_t k = 0; k < units.size(); ++k) {
        const auto& unit = units[k];
        Agent a;
        a.id             = agent_id(unit);
        a.unit_id        = unit.id;
        a.parcel_id      = unit.parcel_id;
        a.dwelling_class = unit.dwelling_class;
        a.annual_kwh     = sites[k].annual_kwh;
        a.pv_size_kw     = sites[k].pv_size_kw;

        auto rng = make_stream(seed, "population", a.id);
        std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
        std::uniform_real_distribution<double> jitter(-params.jitter, params.jitter);
        a.financial_index  = draw_beta(rng, params.beta_a, params.beta_b);
        const double owner = unit.dwelling_class == DwellingClass::single_family ? params.owner_prob_sf
                                                                                 : params.owner_prob_mf;
        a.tenure     = unit_interval(rng) < owner ? Tenure::owner : Tenure::renter;
        a.location   = sites[k].centroid;
        a.location.x() += jitter(rng);
        a.location.y() += jitter(rng);
        const bool seeded = unit_interval(rng) < params.seed_adopter_fraction;
        if (seeded) {
            auto plan_rng = make_stream(seed, "plans", a.id);
            a.plan        = sample_plan(a, params.gateway, plan_rng);
            a.activated   = true;
            if (installable(a, a.plan.front())) {
                install(a, a.plan.front(), year, false);
            }
            a.plan_position = 1;
        }
        agents.push_back(std::move(a));
    }
    return agents;
}

void Network::add_edge(AgentId a, AgentId b)
{
    if (a == b) {
        return;
    }
    auto& na = adjacency_[a];
    auto it  = std::lower_bound(na.begin(), na.end(), b);
    if (it != na.end() && *it == b) {
        return;
    }
    na.insert(it, b);
    auto& nb = adjacency_[b];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    ++edges_;
}

bool Network::has_edge(AgentId a, AgentId b) const
{
    auto it = adjacency_.find(a);
    return it != adjacency_.end() && std::binary_search(it->second.begin(), it->second.end(), b);
}

void Network::remove_agent(AgentId a)
{
    auto it = adjacency_.find(a);
    if (it == adjacency_.end()) {
        return;
    }
    for (AgentId b : it->second) {
        auto& nb = adjacency_[b];
        nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
        --edges_;
    }
    adjacency_.erase(it);
}

std::span<const AgentId> Network::neighbors(AgentId a) const
{
    auto it = adjacency_.find(a);
    if (it == adjacency_.end()) {
        return {};
    }
    return it->second;
}

std::vector<std::pair<AgentId, AgentId>> Network::edges() const
{
    std::vector<std::pair<AgentId, AgentId>> out;
    out.reserve(edges_);
    for (const auto& [a, list] : adjacency_) {
        for (AgentId b : list) {
            if (a < b) {
                out.emplace_back(a, b);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void connect_agents(Network& network, std::span<const Agent> agents, std::span<const std::size_t> egos,
                    const NetworkParams& params, std::uint64_t seed)
{
    std::optional<CellIndex> cells;
    if (std::isfinite(params.phi) && params.phi > 0.0) {
        cells.emplace(agents, params.phi);
    }
    for (auto ego : egos) {
        for (auto j : homophilous_candidates(agents, ego, params, cells ? &*cells : nullptr)) {
            network.add_edge(agents[ego].id, agents[j].id);
        }
    }
    std::vector<std::size_t> extra(egos.size());
    for (std::size_t k = 0; k < egos.size(); ++k) {
        extra[k] = static_cast<std::size_t>(
            std::floor(params.lambda * static_cast<double>(network.degree(agents[egos[k]].id)) + 1e-9));
    }
    for (std::size_t k = 0; k < egos.size(); ++k) {
        random_links(network, agents, egos[k], extra[k], seed);
    }
}

Network build_network(std::span<const Agent> agents, const NetworkParams& params, std::uint64_t seed)
{
    Network network;
    std::vector<std::size_t> egos(agents.size());
    std::iota(egos.begin(), egos.end(), std::size_t{0});
    connect_agents(network, agents, egos, params, seed);
    return network;
}

double clustering_coefficient(const Network& network, std::span<const Agent> agents)
{
    if (agents.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto& a : agents) {
        const auto nb = network.neighbors(a.id);
        const std::size_t k = nb.size();
        if (k < 2) {
            continue;
        }
        std::size_t links = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const auto ni = network.neighbors(nb[i]);
            for (std::size_t j = i + 1; j < k; ++j) {
                if (std::binary_search(ni.begin(), ni.end(), nb[j])) {
                    ++links;
                }
            }
        }
        total += 2.0 * static_cast<double>(links) / static_cast<double>(k * (k - 1));
    }
    return total / static_cast<double>(agents.size());
}

double fitc_rate(int year, const PolicyContext& policy)
{
    if (policy.scenario != AdoptionPolicy::supportive) {
        return 0.0;
    }
    if (year <= 2022) {
        return 0.26;
    }
    if (year == 2023) {
        return 0.22;
    }
    return 0.0;
}

double rebate(Technology tech, int year, double system_size_kw, const PolicyContext& policy)
{
    if (policy.scenario != AdoptionPolicy::supportive) {
        return 0.0;
    }
    switch (tech) {
    case Technology::solar_pv: {
        const double threshold = year <= 2021 ? 2.5 : 1.2;
        return system_size_kw >= threshold ? 2500.0 : 0.0;
    }
    case Technology::high_eff_hvac:
        return 2550.0;
    case Technology::smart_thermostat:
        return 110.0;
    case Technology::storage:
        return 0.0;
    }
    return 0.0;
}

double EconomicContext::trend(Technology tech, int year, double pv_kw) const
{
    const double years = static_cast<double>(std::max(0, year - Timeline::first_year));
    const double p     = base_price[idx(tech)] * std::pow(1.0 - annual_decline[idx(tech)], years);
    return tech == Technology::solar_pv ? p * pv_kw : p;
}

double EconomicContext::noise(Technology tech, int year) const
{
    auto rng = make_stream(seed, "economy", static_cast<std::uint64_t>(year) * 16 + idx(tech));
    std::normal_distribution<double> z(0.0, 1.0);
    return std::max(0.5, 1.0 + variability * z(rng));
}

double EconomicContext::price(Technology tech, int year, double pv_kw) const
{
    return trend(tech, year, pv_kw) * noise(tech, year);
}

double EconomicContext::affordability_scale(double pv_target_kw) const
{
    double scale = 0.0;
    for (std::size_t t = 0; t < technology_count; ++t) {
        scale = std::max(scale, trend(static_cast<Technology>(t), Timeline::first_year, pv_target_kw));
    }
    return scale;
}

double net_cost(Technology tech, int year, double pv_kw, const PolicyContext& policy,
                const EconomicContext& economy)
{
    return net_cost_at_price(tech, year, pv_kw, economy.price(tech, year, pv_kw), policy);
}

double net_cost_at_price(Technology tech, int year, double pv_kw, double price, const PolicyContext& policy)
{
    double cost = price - rebate(tech, year, pv_kw, policy);
    if (tech == Technology::solar_pv) {
        cost -= fitc_rate(year, policy) * price;
    }
    return std::max(0.0, cost);
}

double benefit_value(double saved_kwh, bool has_pv, const Tariffs& tariffs)
{
    return saved_kwh * (has_pv ? tariffs.feed_in : tariffs.retail);
}

double evaluate_benefit(const Agent& agent, Technology tech, const Tariffs& tariffs, const EnergyParams& energy,
                        int year)
{
    double saved = 0.0;
    switch (tech) {
    case Technology::smart_thermostat:
        saved = (1.0 - energy.thermostat_multiplier) * agent.annual_kwh;
        break;
    case Technology::high_eff_hvac:
        saved = (1.0 - high_efficiency_multiplier(year)) * agent.annual_kwh;
        break;
    case Technology::solar_pv:
        saved = pv_annual_generation(agent.pv_size_kw, energy.sun_hours, energy.days_constant);
        break;
    case Technology::storage:
        if (agent.installed.has(Technology::solar_pv)) {
            const double d   = agent.annual_kwh;
            const double pv  = pv_annual_generation(agent.installed.pv_kw, energy.sun_hours, energy.days_constant);
            const double off = std::max(0.0, d - pv);
            saved            = off - std::min(off, (1.0 - energy.storage_self_sufficiency) * d);
        }
        break;
    }
    return benefit_value(saved, agent.installed.has(Technology::solar_pv), tariffs);
}

DiffusionGraph compile_graph(const Network& network, std::span<const Agent> agents)
{
    std::unordered_map<AgentId, std::uint32_t> position;
    position.reserve(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        position.emplace(agents[i].id, static_cast<std::uint32_t>(i));
    }
    DiffusionGraph g;
    g.offsets.reserve(agents.size() + 1);
    g.offsets.push_back(0);
    for (const auto& a : agents) {
        for (AgentId b : network.neighbors(a.id)) {
            if (auto it = position.find(b); it != position.end()) {
                g.targets.push_back(it->second);
            }
        }
        g.offsets.push_back(g.targets.size());
    }
    return g;
}

TickReport tick(std::vector<Agent>& agents, const DiffusionGraph& graph, int year, const PolicyContext& policy,
                const EconomicContext& economy, const AbmParams& params, const EnergyParams& energy,
                std::uint64_t seed)
{
    TickReport report;
    const std::size_t n = agents.size();
    if (graph.offsets.size() != n + 1) {
        throw ModelError("tick: diffusion graph does not match the population");
    }

    std::vector<char> adopter(n);
    for (std::size_t i = 0; i < n; ++i) {
        adopter[i] = agents[i].installed.any() ? 1 : 0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t begin = graph.offsets[i];
        const std::size_t end   = graph.offsets[i + 1];
        if (end == begin) {
            continue;
        }
        std::size_t adopters = 0;
        for (std::size_t e = begin; e < end; ++e) {
            adopters += static_cast<std::size_t>(adopter[graph.targets[e]]);
        }
        agents[i].info_index += params.sigma * static_cast<double>(adopters) / static_cast<double>(end - begin);
    }

    for (auto& a : agents) {
        if (!a.activated && a.info_index >= params.theta_info) {
            auto plan_rng   = make_stream(seed, "plans", a.id);
            a.plan          = sample_plan(a, params.gateway, plan_rng);
            a.plan_position = 0;
            a.activated     = true;
            ++report.activations;
        }
    }

    const double scale = economy.affordability_scale(energy.pv_target_kw);
    std::array<double, technology_count> noise{};
    for (std::size_t t = 0; t < technology_count; ++t) {
        noise[t] = economy.noise(static_cast<Technology>(t), year);
    }
    for (auto& a : agents) {
        if (!a.activated) {
            continue;
        }
        // Items already present (mandated) or physically impossible are passed over for free.
        while (a.plan_position < a.plan.size() &&
               (a.installed.has(a.plan[a.plan_position]) || !installable(a, a.plan[a.plan_position]))) {
            ++a.plan_position;
        }
        if (a.plan_position >= a.plan.size()) {
            continue;
        }
        const Technology tech  = a.plan[a.plan_position];
        const double price     = economy.trend(tech, year, a.pv_size_kw) * noise[idx(tech)];
        const double cost      = net_cost_at_price(tech, year, a.pv_size_kw, price, policy);
        const double threshold = cost / scale;
        bool adopt             = a.financial_index >= threshold;
        if (!adopt && a.financial_index >= (1.0 - params.marginal_band) * threshold) {
            const double shortfall = cost - a.financial_index * scale;
            adopt = evaluate_benefit(a, tech, params.tariffs, energy, year) * params.benefit_horizon >= shortfall;
        }
        if (adopt) {
            install(a, tech, year, false);
            ++a.plan_position;
            ++report.adoptions[idx(tech)];
        }
    }
    return report;
}

std::vector<MandateRecord> apply_mandates(std::span<Agent> new_agents, const PolicyContext& policy, int year,
                                          const EnergyParams& energy)
{
    (void)energy;
    std::vector<MandateRecord> out;
    if (policy.scenario != AdoptionPolicy::supportive) {
        return out;
    }
    for (auto& a : new_agents) {
        for (Technology t : policy.mandate_set) {
            if (!a.installed.has(t) && installable(a, t)) {
                install(a, t, year, true);
                out.push_back({a.id, t});
            }
        }
    }
    return out;
}

std::vector<std::size_t> sync_population(std::vector<Agent>& agents, Network& network,
                                         const std::unordered_set<std::string>& changed_parcels,
                                         std::span<const ResidenceUnit> new_units, std::span<const UnitSite> sites,
                                         std::uint64_t seed, const AbmParams& params, int year)
{
    if (changed_parcels.empty() && new_units.empty()) {
        return {};
    }
    for (const auto& a : agents) {
        if (changed_parcels.count(a.parcel_id)) {
            network.remove_agent(a.id);
        }
    }
    std::erase_if(agents, [&](const Agent& a) { return changed_parcels.count(a.parcel_id) > 0; });

    auto fresh              = init_population(new_units, sites, seed, params, year);
    const std::size_t first = agents.size();
    agents.insert(agents.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
    std::vector<std::size_t> egos(agents.size() - first);
    std::iota(egos.begin(), egos.end(), first);
    connect_agents(network, agents, egos, params.network, seed);
    return egos;
}

} // namespace upath
