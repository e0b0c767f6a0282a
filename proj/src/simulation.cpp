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
#include "upath/simulation.hpp"
#include "upath/error.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace upath
{

namespace
{

constexpr std::size_t idx(Technology t)
{
    return static_cast<std::size_t>(t);
}

/// Runs `f`, turning any failure into a ModelError with context.
template <class F>
auto in_stage(std::string_view module, const std::string& neighborhood, int year, F&& f)
{
    try {
        return f();
    }
    catch (const std::exception& e) {
        throw ModelError(std::string(module) + " failed for " + neighborhood + " in " + std::to_string(year) +
                         ": " + e.what());
    }
}

std::vector<UnitSite> unit_sites(std::span<const ResidenceUnit> units, const NeighborhoodState& state,
                                 const ModelInputs& in)
{
    std::unordered_map<std::string_view, const Parcel*> parcels;
    for (const auto& p : state.parcels) {
        parcels.emplace(p.id, &p);
    }
    std::vector<UnitSite> sites;
    sites.reserve(units.size());
    for (const auto& u : units) {
        const Parcel& p    = *parcels.at(u.parcel_id);
        const Archetype& a = in.catalog.at(u.archetype_id);
        UnitSite s;
        s.centroid   = Eigen::Vector2d(p.x, p.y);
        s.pv_size_kw = std::min(in.energy.pv_target_kw, roof_capacity(a.footprint, in.energy) / a.blocks_per_building());
        s.annual_kwh = in.demand.at(a.id, Timeline::first_year, Climate::TMY);
        sites.push_back(s);
    }
    return sites;
}

/// Simulates one neighborhood's redevelopment and adoption, decade by decade.
class TrajectoryBuilder
{
public:
    TrajectoryBuilder(const ModelInputs& in, const NeighborhoodInput& nb, Development development,
                      AdoptionPolicy adoption, std::uint64_t seed)
        : in_(in), development_(development), seed_(seed), name_(nb.name),
          state_(in_stage("redevelopment", nb.name, Timeline::initial_state,
                          [&] { return initial_state(nb.name, nb.parcels, in.catalog); })),
          abm_(adoption != AdoptionPolicy::no_adoption)
    {
        policy_.scenario    = adoption;
        policy_.mandate_set = in.abm.mandate_set;
        economy_            = in.economy;
        economy_.seed       = seed;
    }

    Trajectory run()
    {
        Trajectory out;
        out.neighborhood = name_;
        for (const int decade : Timeline::decades()) {
            const auto transition = in_stage("redevelopment", name_, decade, [&] {
                return apply_decade(state_, decade, development_, in_.schedule, in_.rules, in_.catalog);
            });
            state_ = transition.state;
            if (abm_) {
                in_stage("adoption", name_, decade, [&] { sync(transition, decade); });
            }
            out.decades.push_back(snapshot());
            if (abm_ && decade < Timeline::last_year) {
                in_stage("adoption", name_, decade, [&] {
                    for (int year = decade; year < decade + Timeline::step; ++year) {
                        const auto report =
                            tick(agents_, graph_, year, policy_, economy_, in_.abm, in_.energy, seed_);
                        for (std::size_t t = 0; t < technology_count; ++t) {
                            chosen_[t] += report.adoptions[t];
                        }
                    }
                });
            }
        }
        return out;
    }

private:
    void sync(const DecadeTransition& transition, int decade)
    {
        std::vector<std::size_t> fresh;
        if (!started_) {
            const auto sites = unit_sites(state_.units, state_, in_);
            agents_  = init_population(state_.units, sites, seed_, in_.abm, decade);
            network_ = build_network(agents_, in_.abm.network, seed_);
            fresh.resize(agents_.size());
            std::iota(fresh.begin(), fresh.end(), std::size_t{0});
            started_ = true;
        }
        else if (!transition.changes.empty()) {
            std::unordered_set<std::string> changed;
            for (const auto& c : transition.changes) {
                changed.insert(c.parcel_id);
            }
            std::vector<ResidenceUnit> units;
            for (const auto& u : state_.units) {
                if (changed.count(u.parcel_id)) {
                    units.push_back(u);
                }
            }
            const auto sites = unit_sites(units, state_, in_);
            fresh = sync_population(agents_, network_, changed, units, sites, seed_, in_.abm, decade);
        }
        // Mandates reach units built this decade.
        std::unordered_map<std::string_view, int> vintage;
        for (const auto& p : state_.parcels) {
            vintage.emplace(p.id, p.vintage());
        }
        for (auto i : fresh) {
            auto& a = agents_[i];
            if (vintage.at(a.parcel_id) == decade) {
                apply_mandates(std::span<Agent>(&a, 1), policy_, decade, in_.energy);
            }
            for (std::size_t t = 0; t < technology_count; ++t) {
                if (a.installed.year[t]) {
                    ++(a.installed.mandated[t] ? mandated_[t] : chosen_[t]);
                }
            }
        }
        graph_ = compile_graph(network_, agents_);
    }

    DecadeSnapshot snapshot() const
    {
        DecadeSnapshot s;
        s.parcels  = state_.parcels;
        s.chosen   = chosen_;
        s.mandated = mandated_;
        if (!abm_) {
            return s;
        }
        std::unordered_map<std::string_view, const Agent*> by_unit;
        by_unit.reserve(agents_.size());
        for (const auto& a : agents_) {
            by_unit.emplace(a.unit_id, &a);
            for (std::size_t t = 0; t < technology_count; ++t) {
                s.installed[t] += a.installed.year[t] ? 1 : 0;
            }
        }
        s.techs.reserve(state_.units.size());
        for (const auto& u : state_.units) {
            UnitTech tech;
            if (const auto it = by_unit.find(u.id); it != by_unit.end()) {
                const auto& inst = it->second->installed;
                if (const auto& y = inst.year[idx(Technology::high_eff_hvac)]) {
                    tech.hvac_year = static_cast<std::int16_t>(*y);
                }
                tech.thermostat = inst.has(Technology::smart_thermostat);
                tech.storage    = inst.has(Technology::storage);
                tech.pv_kw      = inst.has(Technology::solar_pv) ? static_cast<float>(inst.pv_kw) : 0.0f;
            }
            s.techs.push_back(tech);
        }
        return s;
    }

    const ModelInputs& in_;
    Development development_;
    std::uint64_t seed_;
    std::string name_;
    NeighborhoodState state_;
    bool abm_;
    bool started_ = false;
    PolicyContext policy_;
    EconomicContext economy_;
    std::vector<Agent> agents_;
    Network network_;
    DiffusionGraph graph_{{0}, {}};
    std::array<long, technology_count> chosen_{};
    std::array<long, technology_count> mandated_{};
};

TechSet tech_set(const UnitTech& u, double lifecycle, int decade)
{
    TechSet s;
    if (u.hvac_year != 0) {
        s.high_eff_hvac   = true;
        const double high = hvac_lifecycle_multiplier(static_cast<int>(u.hvac_year), decade);
        s.hvac_multiplier = std::min(1.0, high / lifecycle);
    }
    s.smart_thermostat = u.thermostat;
    s.solar_pv         = u.pv_kw > 0.0f;
    s.pv_kw            = static_cast<double>(u.pv_kw);
    s.storage          = u.storage;
    return s;
}

void account_decade(const ModelInputs& in, const ScenarioSpec& spec, const std::string& name, int decade,
                    const DecadeSnapshot& snap, RunOutput& out)
{
    const double g    = in.grid.intensity(spec.grid, decade);
    std::size_t cursor = 0;
    for (const auto& p : snap.parcels) {
        const Archetype& a = in.catalog.at(p.archetype_id);
        const std::optional<int> install =
            p.vintage() >= Timeline::first_year ? std::optional<int>(p.vintage()) : std::nullopt;
        const double lifecycle = hvac_lifecycle_multiplier(install, decade);
        const double gross     = in.demand.at(a.id, decade, spec.climate) * lifecycle;

        ParcelRecord r;
        r.neighborhood = name;
        r.parcel_id    = p.id;
        r.decade       = decade;
        r.archetype_id = a.id;
        r.buildings    = p.buildings;
        r.floor_area   = a.building_floor_area() * p.buildings;
        if (a.is_residential()) {
            r.units = a.units_per_building * p.buildings;
            for (int k = 0; k < r.units; ++k) {
                if (snap.techs.empty()) {
                    r.kwh += gross;
                    continue;
                }
                if (cursor >= snap.techs.size()) {
                    throw ModelError("unit technologies out of step with parcels");
                }
                const UnitTech& u = snap.techs[cursor++];
                const double pv   = pv_annual_generation(static_cast<double>(u.pv_kw), in.energy.sun_hours,
                                                         in.energy.days_constant);
                r.kwh += net_grid_demand(gross, tech_set(u, lifecycle, decade), pv, in.energy);
            }
        }
        else {
            r.kwh = gross * p.buildings;
        }
        r.tco2e = emissions(r.kwh, g);
        out.parcels.push_back(std::move(r));
    }

    for (std::size_t t = 0; t < technology_count; ++t) {
        AdoptionCount c;
        c.neighborhood = name;
        c.decade       = decade;
        c.tech         = static_cast<Technology>(t);
        c.chosen       = snap.chosen[t];
        c.mandated     = snap.mandated[t];
        c.installed    = snap.installed[t];
        out.adoption.push_back(c);
    }
}

void add_totals(std::vector<AdoptionCount>& counts)
{
    std::map<std::pair<int, std::size_t>, AdoptionCount> total;
    for (const auto& c : counts) {
        auto& t        = total[{c.decade, idx(c.tech)}];
        t.neighborhood = all_neighborhoods;
        t.decade       = c.decade;
        t.tech         = c.tech;
        t.chosen += c.chosen;
        t.mandated += c.mandated;
        t.installed += c.installed;
    }
    std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        return std::tie(a.neighborhood, a.decade, a.tech) < std::tie(b.neighborhood, b.decade, b.tech);
    });
    for (auto& [key, c] : total) {
        counts.push_back(c);
    }
}

} // namespace

std::vector<std::string> ModelInputs::validate() const
{
    std::vector<std::string> issues;
    auto append = [&](std::vector<std::string> more) { issues.insert(issues.end(), more.begin(), more.end()); };
    append(schedule.validate());
    append(validate_rules(rules, catalog));
    append(demand.validate(catalog));
    append(grid.validate());
    std::unordered_set<std::string> ids;
    for (const auto& nb : neighborhoods) {
        if (!schedule.has(nb.name)) {
            issues.push_back("no redevelopment schedule for neighborhood " + nb.name);
        }
        for (const auto& p : nb.parcels) {
            if (p.neighborhood != nb.name) {
                issues.push_back("parcel " + p.id + " belongs to " + p.neighborhood + ", not " + nb.name);
            }
            if (!ids.insert(p.id).second) {
                issues.push_back("duplicate parcel id " + p.id);
            }
            if (!catalog.find(p.archetype_id)) {
                issues.push_back("parcel " + p.id + " has unknown archetype " + p.archetype_id);
            }
            if (!p.ilr) {
                issues.push_back("parcel " + p.id + " has no ILR");
            }
            else if (*p.ilr < 0.0) {
                issues.push_back("parcel " + p.id + " has a negative ILR");
            }
        }
    }
    return issues;
}

std::vector<Trajectory> simulate_trajectories(const ModelInputs& inputs, Development development,
                                              AdoptionPolicy adoption, std::uint64_t seed)
{
    std::vector<Trajectory> out;
    out.reserve(inputs.neighborhoods.size());
    for (const auto& nb : inputs.neighborhoods) {
        out.push_back(TrajectoryBuilder(inputs, nb, development, adoption, seed).run());
    }
    return out;
}

RunOutput account(const ModelInputs& inputs, const ScenarioSpec& spec, std::span<const Trajectory> trajectories)
{
    RunOutput out;
    out.spec = spec;
    for (const auto& tr : trajectories) {
        for (std::size_t i = 0; i < tr.decades.size(); ++i) {
            const int decade = Timeline::year(i);
            in_stage("energy", tr.neighborhood, decade,
                     [&] { account_decade(inputs, spec, tr.neighborhood, decade, tr.decades[i], out); });
        }
    }
    out.pathways = aggregate(out.parcels, spec);
    add_totals(out.adoption);
    return out;
}

RunOutput run_scenario(const ModelInputs& inputs, const ScenarioSpec& spec)
{
    return account(inputs, spec, simulate_trajectories(inputs, spec.development, spec.adoption, spec.seed));
}

MatrixAxes MatrixAxes::full()
{
    MatrixAxes axes;
    for (auto c : all_values<Climate>()) {
        axes.climates.push_back(c);
    }
    for (auto g : all_values<GridPathwayId>()) {
        axes.grids.push_back(g);
    }
    for (auto d : all_values<Development>()) {
        axes.developments.push_back(d);
    }
    for (auto a : all_values<AdoptionPolicy>()) {
        axes.adoptions.push_back(a);
    }
    return axes;
}

std::vector<ScenarioSpec> MatrixAxes::combinations(std::uint64_t seed) const
{
    std::vector<ScenarioSpec> out;
    for (auto c : climates) {
        for (auto g : grids) {
            for (auto d : developments) {
                for (auto a : adoptions) {
                    ScenarioSpec s;
                    s.climate     = c;
                    s.grid        = g;
                    s.development = d;
                    s.adoption    = a;
                    s.seed        = seed;
                    out.push_back(s);
                }
            }
        }
    }
    return out;
}

std::vector<MatrixRun> run_matrix(const ModelInputs& inputs, const MatrixAxes& axes, std::uint64_t seed,
                                  const MatrixOptions& options)
{
    const auto specs = axes.combinations(seed);
    const unsigned n = std::max(1u, options.jobs);
    auto parallel    = [n](std::size_t count, auto&& body) {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < count; i = next++) {
                body(i);
            }
        };
        std::vector<std::jthread> pool;
        for (unsigned k = 1; k < std::min<std::size_t>(n, count); ++k) {
            pool.emplace_back(worker);
        }
        worker();
    };

    // Trajectories do not depend on climate or grid.
    using Key = std::pair<Development, AdoptionPolicy>;
    std::map<Key, std::size_t> slot;
    std::vector<Key> keys;
    for (const auto& s : specs) {
        if (slot.emplace(Key{s.development, s.adoption}, keys.size()).second) {
            keys.push_back({s.development, s.adoption});
        }
    }
    std::vector<std::vector<Trajectory>> trajectories(keys.size());
    std::vector<std::string> failures(keys.size());
    parallel(keys.size(), [&](std::size_t i) {
        try {
            trajectories[i] = simulate_trajectories(inputs, keys[i].first, keys[i].second, seed);
        }
        catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    std::vector<MatrixRun> runs(specs.size());
    parallel(specs.size(), [&](std::size_t i) {
        runs[i].spec   = specs[i];
        const auto k   = slot.at(Key{specs[i].development, specs[i].adoption});
        const auto tag = scenario_label(specs[i]) + ": ";
        if (!failures[k].empty()) {
            runs[i].error = tag + failures[k];
            return;
        }
        try {
            auto output = account(inputs, specs[i], trajectories[k]);
            if (options.on_run) {
                options.on_run(output);
            }
            if (!options.keep_parcels) {
                output.parcels = {};
            }
            runs[i].output = std::move(output);
        }
        catch (const std::exception& e) {
            runs[i].error = tag + e.what();
        }
    });
    return runs;
}

std::vector<PremiumSeries> premiums(std::span<const PathwayPoint> points)
{
    using Key = std::tuple<Climate, GridPathwayId, AdoptionPolicy, std::string>;
    std::map<Key, std::pair<PathwaySeries, PathwaySeries>> groups;
    for (const auto& p : points) {
        const Key key{p.scenario.climate, p.scenario.grid, p.scenario.adoption, p.neighborhood};
        if (p.scenario.development == Development::low_density) {
            groups[key].first.push_back(p);
        }
        else if (p.scenario.development == Development::high_density) {
            groups[key].second.push_back(p);
        }
    }
    std::vector<PremiumSeries> out;
    for (auto& [key, pair] : groups) {
        auto& [low, high] = pair;
        if (low.empty() || high.empty()) {
            continue;
        }
        auto by_decade = [](const auto& a, const auto& b) { return a.decade < b.decade; };
        std::sort(low.begin(), low.end(), by_decade);
        std::sort(high.begin(), high.end(), by_decade);
        out.push_back(premium_for_sprawl(low, high));
    }
    return out;
}

} // namespace upath
