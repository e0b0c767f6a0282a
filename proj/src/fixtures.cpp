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
#include "upath/fixtures.hpp"
#include "upath/error.hpp"
#include "upath/redevelopment.hpp"
#include "upath/rng.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

namespace upath
{

namespace
{

struct StockType {
    const char* archetype;
    double ilr_median;
    int built_from;
    int built_to;
};

// Commercial lots carry the lowest ILRs and newer or denser stock the highest.
constexpr StockType cottage{"SF_COTTAGE", 0.55, 1940, 1962};
constexpr StockType ranch{"SF_RANCH", 0.85, 1955, 1980};
constexpr StockType two_story{"SF_TWO_STORY", 1.5, 1982, 2015};
constexpr StockType estate{"SF_ESTATE", 1.9, 1990, 2016};
constexpr StockType fourplex{"MF_FOURPLEX", 0.9, 1962, 1988};
constexpr StockType eightplex{"MF_EIGHTPLEX", 1.0, 1968, 1995};
constexpr StockType garden{"MF_GARDEN", 1.1, 1975, 2010};
constexpr StockType strip{"COM_STRIP", 0.3, 1958, 1995};
constexpr StockType office{"COM_OFFICE", 0.4, 1970, 2005};

constexpr double ilr_sigma = 0.45;

double round_to(double v, double step)
{
    return std::round(v / step) * step;
}

struct Draft {
    LandUseClass land_use;
    LocationClass location;
    double lot_area = 0.0;
    const StockType* stock = nullptr;
};

void assign_stock(std::vector<Draft*>& lots, const StockType& type, std::size_t count, std::size_t& next)
{
    for (std::size_t k = 0; k < count; ++k) {
        lots[next++]->stock = &type;
    }
}

} // namespace

std::vector<FixtureProfile> shipped_profiles()
{
    FixtureProfile brentwood;
    brentwood.name           = "Brentwood";
    brentwood.id_prefix      = "BRW";
    brentwood.lots           = 2580;
    brentwood.lot_area_total = 3'340'000.0;
    brentwood.units          = 4790;
    brentwood.housing_area   = 606'240.0;
    brentwood.location_share = {0.78, 0.16, 0.06};
    brentwood.seed           = 101;

    FixtureProfile south;
    south.name           = "SouthMenchaca";
    south.id_prefix      = "SMN";
    south.lots           = 2378;
    south.lot_area_total = 2'831'000.0;
    south.units          = 3099;
    south.housing_area   = 441'520.0;
    south.location_share = {0.84, 0.13, 0.03};
    south.large_share    = {0.02, 0.22, 0.25};
    south.seed           = 202;

    FixtureProfile montopolis;
    montopolis.name           = "Montopolis";
    montopolis.id_prefix      = "MTP";
    montopolis.lots           = 2143;
    montopolis.lot_area_total = 4'744'000.0;
    montopolis.units          = 3619;
    montopolis.housing_area   = 494'530.0;
    montopolis.location_share = {0.76, 0.17, 0.07};
    montopolis.lot_median     = {1400.0, 3000.0, 3500.0};
    montopolis.lot_sigma      = {0.7, 0.6, 0.6};
    montopolis.seed           = 303;

    return {brentwood, south, montopolis};
}

std::vector<Parcel> synthesize_fixture(const FixtureProfile& profile, const Catalog& catalog)
{
    auto rng = make_stream(profile.seed, "fixture", hash_string(profile.name));
    auto fail = [&](const std::string& what) { throw ModelError("fixture " + profile.name + ": " + what); };

    // Lots per location, then per land-use class.
    std::vector<std::size_t> weights;
    for (double s : profile.location_share) {
        weights.push_back(static_cast<std::size_t>(std::llround(s * 1e6)));
    }
    const std::vector<std::size_t> capacity(weights.size(), profile.lots);
    const auto per_location = apportion(profile.lots, weights, capacity);

    std::array<std::array<std::size_t, 3>, 3> counts{};
    for (std::size_t l = 0; l < 3; ++l) {
        const auto n = static_cast<double>(per_location[l]);
        counts[l][1] = static_cast<std::size_t>(round_half_up(profile.large_share[l] * n));
        counts[l][2] = static_cast<std::size_t>(round_half_up(profile.commercial_share[l] * n));
        if (counts[l][1] + counts[l][2] > per_location[l]) {
            fail("class shares exceed 1");
        }
        counts[l][0] = per_location[l] - counts[l][1] - counts[l][2];
    }
    auto total_of = [&](std::size_t cls) { return counts[0][cls] + counts[1][cls] + counts[2][cls]; };

    // Multifamily buildings come in multiples of four units.
    while ((profile.units - static_cast<long>(total_of(0))) % 4 != 0) {
        if (counts[0][0] == 0) {
            fail("cannot balance unit counts");
        }
        --counts[0][0];
        ++counts[0][2];
    }
    const long small     = static_cast<long>(total_of(0));
    const long large     = static_cast<long>(total_of(1));
    const long mf_units  = profile.units - small;
    if (mf_units < 4 * large || mf_units > 24 * large) {
        fail("unit target out of reach of the multifamily lots");
    }
    const long q   = (mf_units - 4 * large) / 4;
    long n_garden  = static_cast<long>(std::floor(0.6 * static_cast<double>(q) / 5.0));
    long n_eight   = q - 5 * n_garden;
    while (n_eight + n_garden > large) {
        ++n_garden;
        n_eight -= 5;
    }
    if (n_eight < 0) {
        fail("no multifamily mix matches the unit target");
    }
    const long n_four = large - n_eight - n_garden;

    std::vector<Draft> drafts;
    drafts.reserve(profile.lots);
    for (std::size_t l = 0; l < 3; ++l) {
        for (std::size_t c = 0; c < 3; ++c) {
            for (std::size_t k = 0; k < counts[l][c]; ++k) {
                Draft d;
                d.land_use = static_cast<LandUseClass>(c);
                d.location = static_cast<LocationClass>(l);
                std::lognormal_distribution<double> size(std::log(profile.lot_median[c]), profile.lot_sigma[c]);
                d.lot_area = size(rng);
                drafts.push_back(d);
            }
        }
    }

    // Scale to the lot-area total in whole cents, the remainder on the largest lot.
    const double raw = std::accumulate(drafts.begin(), drafts.end(), 0.0,
                                       [](double s, const Draft& d) { return s + d.lot_area; });
    const auto target_cents = std::llround(profile.lot_area_total * 100.0);
    long long cents         = 0;
    std::size_t largest     = 0;
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        const auto c      = std::llround(drafts[i].lot_area / raw * profile.lot_area_total * 100.0);
        drafts[i].lot_area = static_cast<double>(c);
        cents += c;
        if (drafts[i].lot_area > drafts[largest].lot_area) {
            largest = i;
        }
    }
    drafts[largest].lot_area += static_cast<double>(target_cents - cents);
    for (auto& d : drafts) {
        d.lot_area /= 100.0;
    }

    // Bigger lots hold bigger buildings.
    auto by_class = [&](LandUseClass cls) {
        std::vector<Draft*> out;
        for (auto& d : drafts) {
            if (d.land_use == cls) {
                out.push_back(&d);
            }
        }
        std::sort(out.begin(), out.end(), [](const Draft* a, const Draft* b) { return a->lot_area > b->lot_area; });
        return out;
    };
    auto mf = by_class(LandUseClass::large_residential);
    std::size_t next = 0;
    assign_stock(mf, garden, static_cast<std::size_t>(n_garden), next);
    assign_stock(mf, eightplex, static_cast<std::size_t>(n_eight), next);
    assign_stock(mf, fourplex, static_cast<std::size_t>(n_four), next);

    auto com = by_class(LandUseClass::commercial_mixed);
    for (auto* d : com) {
        d->stock = d->location != LocationClass::interior && d->lot_area > 4000.0 ? &office : &strip;
    }

    double mf_area = 0.0;
    for (const auto* d : mf) {
        const auto& a = catalog.at(d->stock->archetype);
        mf_area += a.unit_floor_area * a.units_per_building;
    }
    const std::array<const StockType*, 4> sf_types{&cottage, &ranch, &two_story, &estate};
    const double needed = profile.housing_area - mf_area;
    const double avg    = needed / static_cast<double>(small);
    std::size_t lo      = 0;
    while (lo + 2 < sf_types.size() && catalog.at(sf_types[lo + 1]->archetype).unit_floor_area < avg) {
        ++lo;
    }
    const double a_lo = catalog.at(sf_types[lo]->archetype).unit_floor_area;
    const double a_hi = catalog.at(sf_types[lo + 1]->archetype).unit_floor_area;
    const long n_hi   = std::clamp<long>(std::lround((needed - a_lo * static_cast<double>(small)) / (a_hi - a_lo)), 0,
                                         small);
    auto sf = by_class(LandUseClass::small_residential);
    next    = 0;
    assign_stock(sf, *sf_types[lo + 1], static_cast<std::size_t>(n_hi), next);
    assign_stock(sf, *sf_types[lo], static_cast<std::size_t>(small - n_hi), next);

    // Lay the neighborhood out on a square with a corridor through the middle and a transit node on it.
    const double side = std::sqrt(profile.lot_area_total * 1.35);
    const Eigen::Vector2d node(side / 2.0, side / 2.0);
    std::uniform_real_distribution<double> along(0.0, side);
    std::uniform_real_distribution<double> across(-60.0, 60.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> year_pick(0, 1'000'000);

    std::shuffle(drafts.begin(), drafts.end(), rng);
    std::vector<Parcel> parcels;
    parcels.reserve(drafts.size());
    for (std::size_t i = 0; i < drafts.size(); ++i) {
        const Draft& d = drafts[i];
        Parcel p;
        char id[32];
        std::snprintf(id, sizeof id, "%s-%05zu", profile.id_prefix.c_str(), i + 1);
        p.id           = id;
        p.neighborhood = profile.name;
        p.land_use     = d.land_use;
        p.location     = d.location;
        p.lot_area     = d.lot_area;
        p.archetype_id = d.stock->archetype;
        std::lognormal_distribution<double> ilr(std::log(d.stock->ilr_median), ilr_sigma);
        p.ilr        = round_to(ilr(rng), 1e-4);
        p.year_built = d.stock->built_from + year_pick(rng) % (d.stock->built_to - d.stock->built_from + 1);

        Eigen::Vector2d at = node;
        switch (d.location) {
        case LocationClass::corridor:
            at = Eigen::Vector2d(along(rng), side / 2.0 + across(rng));
            break;
        case LocationClass::tod: {
            const double r = 250.0 * std::sqrt(unit(rng));
            const double t = 2.0 * 3.14159265358979323846 * unit(rng);
            at             = node + r * Eigen::Vector2d(std::cos(t), std::sin(t));
            break;
        }
        case LocationClass::interior:
            do {
                at = Eigen::Vector2d(along(rng), along(rng));
            } while (std::abs(at.y() - side / 2.0) < 80.0 || (at - node).norm() < 270.0);
            break;
        }
        p.x = round_to(at.x(), 0.1);
        p.y = round_to(at.y(), 0.1);
        parcels.push_back(std::move(p));
    }
    return parcels;
}

double housing_area(const std::vector<Parcel>& parcels, const Catalog& catalog)
{
    double total = 0.0;
    for (const auto& p : parcels) {
        const auto& a = catalog.at(p.archetype_id);
        if (a.is_residential()) {
            total += a.unit_floor_area * a.units_per_building * p.buildings;
        }
    }
    return total;
}

} // namespace upath
