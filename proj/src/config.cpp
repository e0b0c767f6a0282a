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
#include "upath/config.hpp"
#include "upath/error.hpp"
#include "upath/io.hpp"
#include "upath/rng.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace upath
{

using nlohmann::json;

namespace
{

/// Walks one JSON object, rejecting keys nobody asked for.
class Reader
{
public:
    Reader(const json& obj, std::string where) : obj_(obj), where_(std::move(where))
    {
        if (!obj_.is_object()) {
            throw ValidationError(where_ + ": expected an object");
        }
    }

    template <class T>
    void get(const char* key, T& out)
    {
        seen_.insert(key);
        if (auto it = obj_.find(key); it != obj_.end()) {
            try {
                out = it->template get<T>();
            }
            catch (const json::exception&) {
                throw ValidationError(where_ + "." + key + ": wrong type");
            }
        }
    }

    template <class E>
    void get_enum(const char* key, E& out)
    {
        std::string s;
        get(key, s);
        if (!s.empty()) {
            out = enum_value<E>(s, where_ + "." + key);
        }
    }

    template <class E>
    void get_enum_list(const char* key, std::vector<E>& out)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        if (it == obj_.end()) {
            return;
        }
        if (!it->is_array() || it->empty()) {
            throw ValidationError(where_ + "." + key + ": expected a non-empty list");
        }
        out.clear();
        for (const auto& v : *it) {
            if (!v.is_string()) {
                throw ValidationError(where_ + "." + key + ": expected names");
            }
            out.push_back(enum_value<E>(v.get<std::string>(), where_ + "." + key));
        }
    }

    const json* child(const char* key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const std::string& where() const
    {
        return where_;
    }

    void finish() const
    {
        for (const auto& [key, value] : obj_.items()) {
            if (!seen_.count(key)) {
                throw ValidationError(where_ + ": unknown key '" + key + "'");
            }
        }
    }

    template <class E>
    static E enum_value(const std::string& s, const std::string& where)
    {
        if (auto v = parse_enum<E>(s)) {
            return *v;
        }
        throw ValidationError(where + ": unknown value '" + s + "'");
    }

private:
    const json& obj_;
    std::string where_;
    std::set<std::string> seen_;
};

template <class E>
json enum_list(const std::vector<E>& values)
{
    json out = json::array();
    for (auto v : values) {
        out.push_back(std::string(to_string(v)));
    }
    return out;
}

template <class E, std::size_t N>
json technology_map(const std::array<E, N>& values)
{
    json out = json::object();
    for (std::size_t t = 0; t < N; ++t) {
        out[std::string(to_string(static_cast<Technology>(t)))] = values[t];
    }
    return out;
}

void read_technology_map(const json* node, const std::string& where, std::array<double, technology_count>& out)
{
    if (!node) {
        return;
    }
    Reader r(*node, where);
    for (std::size_t t = 0; t < technology_count; ++t) {
        r.get(std::string(to_string(static_cast<Technology>(t))).c_str(), out[t]);
    }
    r.finish();
}

} // namespace

std::filesystem::path RunConfig::resolve(const std::string& path) const
{
    const std::filesystem::path p(path);
    return p.is_absolute() ? p : base_dir / p;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir)
{
    RunConfig c;
    c.base_dir = base_dir;
    Reader top(doc, "config");

    if (const json* node = top.child("data")) {
        Reader r(*node, "config.data");
        r.get("catalog", c.data.catalog);
        r.get("schedule", c.data.schedule);
        r.get("rules", c.data.rules);
        r.get("demand", c.data.demand);
        r.get("climate_curve", c.data.climate_curve);
        r.get("grid", c.data.grid);
        r.get("parcels", c.data.parcels);
        r.finish();
    }
    if (const json* node = top.child("scenario")) {
        Reader r(*node, "config.scenario");
        r.get_enum("climate", c.scenario.climate);
        r.get_enum("grid", c.scenario.grid);
        r.get_enum("development", c.scenario.development);
        r.get_enum("adoption", c.scenario.adoption);
        r.finish();
    }
    top.get("seed", c.scenario.seed);
    if (const json* node = top.child("matrix")) {
        Reader r(*node, "config.matrix");
        r.get_enum_list("climate", c.matrix.climates);
        r.get_enum_list("grid", c.matrix.grids);
        r.get_enum_list("development", c.matrix.developments);
        r.get_enum_list("adoption", c.matrix.adoptions);
        r.finish();
    }
    if (const json* node = top.child("energy")) {
        Reader r(*node, "config.energy");
        auto& e = c.energy;
        r.get("days_constant", e.days_constant);
        r.get("sun_hours", e.sun_hours);
        r.get("thermostat_multiplier", e.thermostat_multiplier);
        r.get("usable_roof_fraction", e.usable_fraction);
        r.get("pv_power_density_kw_m2", e.power_density);
        r.get("pv_target_kw", e.pv_target_kw);
        r.get("storage_self_sufficiency", e.storage_self_sufficiency);
        r.finish();
    }
    if (const json* node = top.child("abm")) {
        Reader r(*node, "config.abm");
        auto& a = c.abm;
        if (const json* net = r.child("network")) {
            Reader n(*net, "config.abm.network");
            n.get("phi_m", a.network.phi);
            n.get("rho", a.network.rho);
            n.get("lambda", a.network.lambda);
            n.get("max_links", a.network.max_links);
            n.finish();
        }
        r.get("sigma", a.sigma);
        r.get("theta_info", a.theta_info);
        read_technology_map(r.child("gateway"), "config.abm.gateway", a.gateway);
        r.get("owner_probability_sf", a.owner_prob_sf);
        r.get("owner_probability_mf", a.owner_prob_mf);
        r.get("financial_beta_a", a.beta_a);
        r.get("financial_beta_b", a.beta_b);
        r.get("location_jitter_m", a.jitter);
        r.get("seed_adopter_fraction", a.seed_adopter_fraction);
        if (const json* t = r.child("tariffs")) {
            Reader tr(*t, "config.abm.tariffs");
            tr.get("retail_usd_kwh", a.tariffs.retail);
            tr.get("feed_in_usd_kwh", a.tariffs.feed_in);
            tr.finish();
        }
        std::vector<Technology> mandates = a.mandate_set;
        r.get_enum_list("mandates", mandates);
        a.mandate_set = mandates;
        r.get("marginal_band", a.marginal_band);
        r.get("benefit_horizon_yr", a.benefit_horizon);
        r.finish();
    }
    if (const json* node = top.child("economy")) {
        Reader r(*node, "config.economy");
        read_technology_map(r.child("base_price_usd"), "config.economy.base_price_usd", c.economy.base_price);
        read_technology_map(r.child("annual_decline"), "config.economy.annual_decline", c.economy.annual_decline);
        r.get("price_variability", c.economy.variability);
        r.finish();
    }
    if (const json* node = top.child("output")) {
        Reader r(*node, "config.output");
        r.get("dir", c.output.dir);
        r.get("parcel_csv_run", c.output.parcels_run);
        r.get("parcel_csv_matrix", c.output.parcels_matrix);
        r.finish();
    }
    top.finish();

    if (c.data.catalog.empty() || c.data.schedule.empty() || c.data.rules.empty()) {
        throw ValidationError("config.data: catalog, schedule and rules are required");
    }
    if (c.data.parcels.empty()) {
        throw ValidationError("config.data.parcels: at least one parcel file is required");
    }
    double gateway_sum = 0.0;
    for (double g : c.abm.gateway) {
        if (g < 0.0) {
            throw ValidationError("config.abm.gateway: probabilities must be non-negative");
        }
        gateway_sum += g;
    }
    if (std::abs(gateway_sum - 1.0) > 1e-9) {
        throw ValidationError("config.abm.gateway: probabilities must sum to 1");
    }
    auto in_unit = [](double v, const char* what) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError(std::string("config: ") + what + " must lie in [0, 1]");
        }
    };
    in_unit(c.abm.network.rho, "abm.network.rho");
    in_unit(c.abm.seed_adopter_fraction, "abm.seed_adopter_fraction");
    in_unit(c.abm.owner_prob_sf, "abm.owner_probability_sf");
    in_unit(c.abm.owner_prob_mf, "abm.owner_probability_mf");
    in_unit(c.energy.thermostat_multiplier, "energy.thermostat_multiplier");
    in_unit(c.energy.storage_self_sufficiency, "energy.storage_self_sufficiency");
    if (!(c.abm.network.phi > 0.0) || c.abm.network.lambda < 0.0 || c.abm.sigma < 0.0 || c.abm.beta_a <= 0.0 ||
        c.abm.beta_b <= 0.0 || c.energy.sun_hours < 0.0 || c.energy.days_constant <= 0.0) {
        throw ValidationError("config: ABM or energy parameter out of range");
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    }
    catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
    auto base = path.parent_path();
    if (base.empty()) {
        base = ".";
    }
    return parse_config(doc, base);
}

json to_json(const RunConfig& c)
{
    json data = {{"catalog", c.data.catalog}, {"schedule", c.data.schedule}, {"rules", c.data.rules},
                 {"parcels", c.data.parcels}};
    if (c.data.demand) {
        data["demand"] = *c.data.demand;
    }
    if (c.data.climate_curve) {
        data["climate_curve"] = *c.data.climate_curve;
    }
    if (c.data.grid) {
        data["grid"] = *c.data.grid;
    }
    const auto& a = c.abm;
    return json{
        {"data", data},
        {"scenario",
         {{"climate", to_string(c.scenario.climate)},
          {"grid", to_string(c.scenario.grid)},
          {"development", to_string(c.scenario.development)},
          {"adoption", to_string(c.scenario.adoption)}}},
        {"seed", c.scenario.seed},
        {"matrix",
         {{"climate", enum_list(c.matrix.climates)},
          {"grid", enum_list(c.matrix.grids)},
          {"development", enum_list(c.matrix.developments)},
          {"adoption", enum_list(c.matrix.adoptions)}}},
        {"energy",
         {{"days_constant", c.energy.days_constant},
          {"sun_hours", c.energy.sun_hours},
          {"thermostat_multiplier", c.energy.thermostat_multiplier},
          {"usable_roof_fraction", c.energy.usable_fraction},
          {"pv_power_density_kw_m2", c.energy.power_density},
          {"pv_target_kw", c.energy.pv_target_kw},
          {"storage_self_sufficiency", c.energy.storage_self_sufficiency}}},
        {"abm",
         {{"network", {{"phi_m", a.network.phi}, {"rho", a.network.rho}, {"lambda", a.network.lambda}, {"max_links", a.network.max_links}}},
          {"sigma", a.sigma},
          {"theta_info", a.theta_info},
          {"gateway", technology_map(a.gateway)},
          {"owner_probability_sf", a.owner_prob_sf},
          {"owner_probability_mf", a.owner_prob_mf},
          {"financial_beta_a", a.beta_a},
          {"financial_beta_b", a.beta_b},
          {"location_jitter_m", a.jitter},
          {"seed_adopter_fraction", a.seed_adopter_fraction},
          {"tariffs", {{"retail_usd_kwh", a.tariffs.retail}, {"feed_in_usd_kwh", a.tariffs.feed_in}}},
          {"mandates", enum_list(a.mandate_set)},
          {"marginal_band", a.marginal_band},
          {"benefit_horizon_yr", a.benefit_horizon}}},
        {"economy",
         {{"base_price_usd", technology_map(c.economy.base_price)},
          {"annual_decline", technology_map(c.economy.annual_decline)},
          {"price_variability", c.economy.variability}}},
        {"output",
         {{"dir", c.output.dir},
          {"parcel_csv_run", c.output.parcels_run},
          {"parcel_csv_matrix", c.output.parcels_matrix}}},
    };
}

std::string config_digest(const RunConfig& config)
{
    // Where results land does not change them.
    auto doc = to_json(config);
    doc["output"].erase("dir");
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_string(doc.dump())));
    return buf;
}

ModelInputs load_inputs(const RunConfig& c)
{
    ModelInputs in;
    in.catalog  = Catalog(load_catalog(c.resolve(c.data.catalog)));
    in.schedule = load_schedule(c.resolve(c.data.schedule));
    in.rules    = load_rules(c.resolve(c.data.rules));
    const ClimateCurve curve =
        c.data.climate_curve ? load_climate_curve(c.resolve(*c.data.climate_curve)) : ClimateCurve::shipped();
    if (auto issues = curve.validate(); !issues.empty()) {
        throw ValidationError("climate curve: " + issues.front());
    }
    in.demand = c.data.demand ? load_demand(c.resolve(*c.data.demand)) : DemandTable::synthesize(in.catalog, curve);
    in.grid   = c.data.grid ? load_grid(c.resolve(*c.data.grid)) : GridPathways::shipped();

    std::map<std::string, std::size_t> slot;
    for (const auto& file : c.data.parcels) {
        for (auto& p : load_parcels(c.resolve(file))) {
            auto [it, fresh] = slot.emplace(p.neighborhood, in.neighborhoods.size());
            if (fresh) {
                in.neighborhoods.push_back({p.neighborhood, {}});
            }
            in.neighborhoods[it->second].parcels.push_back(std::move(p));
        }
    }
    in.energy  = c.energy;
    in.abm     = c.abm;
    in.economy = c.economy;

    if (auto issues = in.validate(); !issues.empty()) {
        std::string msg = "input validation failed:";
        const std::size_t shown = std::min<std::size_t>(issues.size(), 20);
        for (std::size_t i = 0; i < shown; ++i) {
            msg += "\n  " + issues[i];
        }
        if (issues.size() > shown) {
            msg += "\n  ... " + std::to_string(issues.size() - shown) + " more";
        }
        throw ValidationError(msg);
    }
    return in;
}

ScenarioSpec parse_scenario(std::string_view text, ScenarioSpec base)
{
    auto alias = [](std::string_view v, std::initializer_list<std::pair<std::string_view, std::string_view>> map) {
        for (const auto& [from, to] : map) {
            if (v == from) {
                return std::string(to);
            }
        }
        return std::string(v);
    };
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end   = std::min(text.find(',', start), text.size());
        const auto field = text.substr(start, end - start);
        start            = end + 1;
        if (field.empty()) {
            continue;
        }
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("scenario: expected key=value, got '" + std::string(field) + "'");
        }
        const auto key   = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        const std::string where = "scenario." + std::string(key);
        if (key == "climate") {
            base.climate = Reader::enum_value<Climate>(std::string(value), where);
        }
        else if (key == "grid") {
            base.grid = Reader::enum_value<GridPathwayId>(std::string(value), where);
        }
        else if (key == "dev" || key == "development") {
            base.development = Reader::enum_value<Development>(
                alias(value, {{"low", "low_density"}, {"high", "high_density"}, {"ref", "reference"}}), where);
        }
        else if (key == "adopt" || key == "adoption") {
            base.adoption = Reader::enum_value<AdoptionPolicy>(
                alias(value, {{"none", "no_adoption"}, {"no", "no_adoption"}}), where);
        }
        else {
            throw ValidationError("scenario: unknown key '" + std::string(key) + "'");
        }
    }
    return base;
}

} // namespace upath
