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
#include "upath/redevelopment.hpp"
#include "upath/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace upath
{

namespace
{

std::size_t decade_index_or_throw(int decade)
{
    const auto idx = Timeline::index(decade);
    if (!idx) {
        throw ValidationError("decade " + std::to_string(decade) + " is not on the 2020-2100 timeline");
    }
    return *idx;
}

} // namespace

void RedevelopmentSchedule::set(const std::string& neighborhood, int decade, double fraction)
{
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw ValidationError("schedule fraction for " + neighborhood + " " + std::to_string(decade) +
                              " must lie in [0, 1]");
    }
    rows_[neighborhood][decade_index_or_throw(decade)] = fraction;
}

bool RedevelopmentSchedule::has(std::string_view neighborhood) const
{
    return rows_.find(neighborhood) != rows_.end();
}

double RedevelopmentSchedule::fraction(std::string_view neighborhood, int decade) const
{
    auto it = rows_.find(neighborhood);
    if (it == rows_.end()) {
        throw ValidationError("no redevelopment schedule for neighborhood '" + std::string(neighborhood) + "'");
    }
    const auto& cell = it->second[decade_index_or_throw(decade)];
    if (!cell) {
        throw ValidationError("schedule for '" + std::string(neighborhood) + "' lacks decade " +
                              std::to_string(decade));
    }
    return *cell;
}

std::vector<std::string> RedevelopmentSchedule::neighborhoods() const
{
    std::vector<std::string> out;
    for (const auto& [name, row] : rows_) {
        out.push_back(name);
    }
    return out;
}

std::vector<std::string> RedevelopmentSchedule::validate() const
{
    std::vector<std::string> problems;
    for (const auto& [name, row] : rows_) {
        double sum = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!row[i]) {
                problems.push_back(name + ": missing decade " + std::to_string(Timeline::year(i)));
            }
            else {
                sum += *row[i];
            }
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << name << ": fractions sum to " << sum << ", expected 1";
            problems.push_back(msg.str());
        }
    }
    return problems;
}

RedevelopmentSchedule RedevelopmentSchedule::shipped()
{
    const std::array<std::pair<const char*, std::array<int, Timeline::size>>, 3> percent{{
        {"Montopolis", {15, 15, 6, 6, 9, 9, 10, 15, 15}},
        {"Brentwood", {6, 6, 6, 9, 9, 12, 12, 20, 20}},
        {"SouthMenchaca", {6, 6, 6, 9, 9, 12, 12, 20, 20}},
    }};
    RedevelopmentSchedule s;
    for (const auto& [name, row] : percent) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            s.set(name, Timeline::year(i), row[i] / 100.0);
        }
    }
    return s;
}

double schedule_fraction(const RedevelopmentSchedule& schedule, std::string_view neighborhood, int decade)
{
    return schedule.fraction(neighborhood, decade);
}

std::vector<std::string> validate_rules(std::span<const AssignmentRule> rules, const Catalog& catalog)
{
    std::vector<std::string> problems;
    for (const auto& r : rules) {
        if (!catalog.find(r.target_archetype)) {
            problems.push_back("rule targets unknown archetype '" + r.target_archetype + "'");
        }
        if (r.subdivision < 1) {
            problems.push_back("rule for '" + r.target_archetype + "' has subdivision < 1");
        }
        if (!(r.lot_area_min < r.lot_area_max) || r.lot_area_min < 0.0) {
            problems.push_back("rule for '" + r.target_archetype + "' has an empty lot-area band");
        }
    }
    for (auto dev : {Development::low_density, Development::high_density}) {
        for (auto cls : all_values<LandUseClass>()) {
            for (auto loc : all_values<LocationClass>()) {
                std::vector<std::pair<double, double>> bands;
                for (const auto& r : rules) {
                    if (r.development == dev && r.land_use == cls && r.location == loc) {
                        bands.emplace_back(r.lot_area_min, r.lot_area_max);
                    }
                }
                std::sort(bands.begin(), bands.end());
                const std::string where = std::string(to_string(dev)) + "/" + std::string(to_string(cls)) + "/" +
                                          std::string(to_string(loc));
                if (bands.empty()) {
                    problems.push_back(where + ": no rule");
                    continue;
                }
                double covered = 0.0;
                for (const auto& [lo, hi] : bands) {
                    if (lo != covered) {
                        problems.push_back(where + (lo < covered ? ": overlapping bands" : ": gap in bands"));
                        break;
                    }
                    covered = hi;
                }
                if (!std::isinf(covered)) {
                    problems.push_back(where + ": bands do not extend to infinity");
                }
            }
        }
    }
    return problems;
}

std::vector<AssignmentRule> default_rules()
{
    using D             = Development;
    using L             = LandUseClass;
    using C             = LocationClass;
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<AssignmentRule> rules;
    auto add = [&](D d, L l, C c, double lo, double hi, const char* target, int sub) {
        rules.push_back({d, l, c, lo, hi, target, sub});
    };

    // Low density: larger detached homes everywhere except commercial
    // frontage, which stays single-story retail. Large greenfield lots are
    // subdivided.
    for (auto l : {L::small_residential, L::large_residential, L::commercial_mixed}) {
        for (auto c : {C::interior, C::corridor, C::tod}) {
            if (l == L::commercial_mixed && c != C::interior) {
                add(D::low_density, l, c, 0.0, inf, "COM_STRIP", 1);
                continue;
            }
            add(D::low_density, l, c, 0.0, 1500.0, "SF_TWO_STORY", 1);
            add(D::low_density, l, c, 1500.0, 3000.0, "SF_ESTATE", 1);
            add(D::low_density, l, c, 3000.0, 6000.0, "SF_TWO_STORY", 2);
            add(D::low_density, l, c, 6000.0, inf, "SF_TWO_STORY", 4);
        }
    }

    // High density: mid-rise along corridors and in TOD areas, missing-middle
    // multi-family in the interior.
    add(D::high_density, L::small_residential, C::interior, 0.0, 1000.0, "MF_FOURPLEX", 1);
    add(D::high_density, L::small_residential, C::interior, 1000.0, 3000.0, "MF_EIGHTPLEX", 1);
    add(D::high_density, L::small_residential, C::interior, 3000.0, inf, "MF_EIGHTPLEX", 3);
    add(D::high_density, L::small_residential, C::corridor, 0.0, inf, "MF_MIDRISE", 1);
    add(D::high_density, L::small_residential, C::tod, 0.0, inf, "MU_LOWRISE", 1);

    add(D::high_density, L::large_residential, C::interior, 0.0, 2000.0, "MF_EIGHTPLEX", 1);
    add(D::high_density, L::large_residential, C::interior, 2000.0, inf, "MF_GARDEN", 1);
    add(D::high_density, L::large_residential, C::corridor, 0.0, inf, "MF_MIDRISE", 1);
    add(D::high_density, L::large_residential, C::tod, 0.0, inf, "MU_MIDRISE", 1);

    add(D::high_density, L::commercial_mixed, C::interior, 0.0, inf, "MU_LOWRISE", 1);
    add(D::high_density, L::commercial_mixed, C::corridor, 0.0, 2000.0, "MU_LOWRISE", 1);
    add(D::high_density, L::commercial_mixed, C::corridor, 2000.0, inf, "MU_MIDRISE", 1);
    add(D::high_density, L::commercial_mixed, C::tod, 0.0, inf, "MU_MIDRISE", 1);
    return rules;
}

Assignment assign_archetype(const Parcel& parcel, Development development, std::span<const AssignmentRule> rules)
{
    if (development == Development::reference) {
        return {parcel.archetype_id, parcel.buildings};
    }
    for (const auto& r : rules) {
        if (r.matches(development, parcel)) {
            return {r.target_archetype, r.subdivision};
        }
    }
    std::ostringstream msg;
    msg << "no assignment rule for parcel " << parcel.id << " (" << to_string(parcel.land_use) << ", "
        << to_string(parcel.location) << ", " << parcel.lot_area << " m2) under " << to_string(development);
    throw ValidationError(msg.str());
}

NeighborhoodState initial_state(std::string neighborhood, std::vector<Parcel> parcels, const Catalog& catalog)
{
    NeighborhoodState state;
    state.neighborhood = std::move(neighborhood);
    state.decade       = Timeline::initial_state;
    state.parcels      = std::move(parcels);
    for (const auto& p : state.parcels) {
        auto u = make_units(p, catalog);
        state.units.insert(state.units.end(), std::make_move_iterator(u.begin()), std::make_move_iterator(u.end()));
    }
    return state;
}

std::array<std::vector<std::size_t>, stratum_count> rank_parcels(std::span<const Parcel> parcels)
{
    std::array<std::vector<std::size_t>, stratum_count> strata;
    for (std::size_t i = 0; i < parcels.size(); ++i) {
        if (!parcels[i].ilr) {
            throw ValidationError("parcel " + parcels[i].id + " has no ILR");
        }
        if (!(*parcels[i].ilr >= 0.0)) {
            throw ValidationError("parcel " + parcels[i].id + " has a negative ILR");
        }
        strata[static_cast<std::size_t>(parcels[i].location)].push_back(i);
    }
    for (auto& s : strata) {
        std::sort(s.begin(), s.end(), [&](std::size_t a, std::size_t b) {
            return std::tie(*parcels[a].ilr, parcels[a].id) < std::tie(*parcels[b].ilr, parcels[b].id);
        });
    }
    return strata;
}

long round_half_up(double x)
{
    return static_cast<long>(std::floor(x + 0.5 + 1e-9));
}

std::size_t decade_quota(double fraction, std::size_t total_lots, std::size_t remaining, bool final_decade)
{
    if (final_decade) {
        return remaining;
    }
    const long wanted = round_half_up(fraction * static_cast<double>(total_lots));
    return std::min(remaining, static_cast<std::size_t>(std::max(0L, wanted)));
}

std::vector<std::size_t> apportion(std::size_t count, std::span<const std::size_t> weights,
                                   std::span<const std::size_t> capacity)
{
    const std::size_t n = weights.size();
    std::vector<std::size_t> alloc(n, 0);
    const std::size_t room_total = std::accumulate(capacity.begin(), capacity.end(), std::size_t{0});
    std::size_t left             = std::min(count, room_total);

    std::vector<bool> open(n);
    for (std::size_t i = 0; i < n; ++i) {
        open[i] = capacity[i] > 0 && weights[i] > 0;
    }
    while (left > 0) {
        std::size_t weight_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (open[i]) {
                weight_sum += weights[i];
            }
        }
        if (weight_sum == 0) {
            // Only zero-weight strata have room left; fill them in order.
            for (std::size_t i = 0; i < n && left > 0; ++i) {
                const std::size_t take = std::min(left, capacity[i] - alloc[i]);
                alloc[i] += take;
                left -= take;
            }
            break;
        }
        std::vector<std::size_t> share(n, 0);
        std::vector<std::pair<double, std::size_t>> remainders;
        std::size_t given = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!open[i]) {
                continue;
            }
            // Exact integer quotient and remainder, so equal fractions compare equal.
            const std::size_t num = left * weights[i];
            share[i]              = num / weight_sum;
            given += share[i];
            remainders.emplace_back(static_cast<double>(num % weight_sum) / static_cast<double>(weight_sum), i);
        }
        std::stable_sort(remainders.begin(), remainders.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t k = 0; k < left - given; ++k) {
            ++share[remainders[k].second];
        }
        std::size_t placed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!open[i]) {
                continue;
            }
            const std::size_t room = capacity[i] - alloc[i];
            const std::size_t take = std::min(room, share[i]);
            alloc[i] += take;
            placed += take;
            if (alloc[i] == capacity[i]) {
                open[i] = false;
            }
        }
        left -= placed;
    }
    return alloc;
}

std::vector<std::string> select_for_decade(const NeighborhoodState& state, int decade,
                                           const RedevelopmentSchedule& schedule)
{
    const double fraction = schedule_fraction(schedule, state.neighborhood, decade);
    const auto ranked     = rank_parcels(state.parcels);

    std::array<std::size_t, stratum_count> weights{};
    std::array<std::size_t, stratum_count> capacity{};
    std::size_t remaining = 0;
    for (std::size_t s = 0; s < stratum_count; ++s) {
        weights[s] = ranked[s].size();
        for (auto i : ranked[s]) {
            if (!state.parcels[i].redeveloped_in) {
                ++capacity[s];
            }
        }
        remaining += capacity[s];
    }
    const std::size_t quota =
        decade_quota(fraction, state.parcels.size(), remaining, decade == Timeline::last_year);
    const auto alloc = apportion(quota, weights, capacity);

    std::vector<std::string> selected;
    selected.reserve(quota);
    for (std::size_t s = 0; s < stratum_count; ++s) {
        std::size_t taken = 0;
        for (auto i : ranked[s]) {
            if (taken == alloc[s]) {
                break;
            }
            if (!state.parcels[i].redeveloped_in) {
                selected.push_back(state.parcels[i].id);
                ++taken;
            }
        }
    }
    return selected;
}

DecadeTransition apply_decade(const NeighborhoodState& state, int decade, Development development,
                              const RedevelopmentSchedule& schedule, std::span<const AssignmentRule> rules,
                              const Catalog& catalog)
{
    if (decade <= state.decade) {
        throw ValidationError("decade " + std::to_string(decade) + " already applied to " + state.neighborhood);
    }
    if (decade != state.decade + Timeline::step || !Timeline::index(decade)) {
        throw ValidationError("decade " + std::to_string(decade) + " does not follow " +
                              std::to_string(state.decade) + " for " + state.neighborhood);
    }

    DecadeTransition out;
    out.state        = state;
    out.state.decade = decade;
    if (development == Development::reference) {
        return out;
    }

    const auto ids = select_for_decade(state, decade, schedule);
    const std::unordered_set<std::string> chosen(ids.begin(), ids.end());
    out.changes.reserve(ids.size());
    for (auto& p : out.state.parcels) {
        if (!chosen.count(p.id)) {
            continue;
        }
        const auto target = assign_archetype(p, development, rules);
        catalog.at(target.archetype_id);
        out.changes.push_back({p.id, p.archetype_id, p.buildings, target.archetype_id, target.subdivision});
        p.archetype_id   = target.archetype_id;
        p.buildings      = target.subdivision;
        p.redeveloped_in = decade;
    }

    out.state.units.clear();
    for (const auto& p : out.state.parcels) {
        auto u = make_units(p, catalog);
        out.state.units.insert(out.state.units.end(), std::make_move_iterator(u.begin()),
                               std::make_move_iterator(u.end()));
    }
    return out;
}

} // namespace upath
