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

#include <gtest/gtest.h>

using namespace upath;
using nlohmann::json;

namespace
{

const std::filesystem::path config_dir = UPATH_SOURCE_DIR "/config";

json minimal()
{
    return json::parse(R"({
        "data": {"catalog": "c.csv", "schedule": "s.csv", "rules": "r.csv", "parcels": ["p.csv"]},
        "scenario": {"climate": "B1", "grid": "rapid", "development": "high_density", "adoption": "supportive"},
        "seed": 7
    })");
}

} // namespace

TEST(Config, ParsesMinimal)
{
    const auto c = parse_config(minimal(), "/base");
    EXPECT_EQ(c.scenario.climate, Climate::B1);
    EXPECT_EQ(c.scenario.seed, 7u);
    EXPECT_EQ(c.resolve(c.data.catalog), std::filesystem::path("/base/c.csv"));
    EXPECT_EQ(c.matrix.climates.size(), 4u);
}

TEST(Config, RoundTripKeepsDigest)
{
    const auto a = parse_config(minimal(), "/base");
    const auto b = parse_config(to_json(a), "/base");
    EXPECT_EQ(config_digest(a), config_digest(b));
    EXPECT_EQ(to_json(a), to_json(b));
}

TEST(Config, KeyOrderDoesNotMatter)
{
    auto doc = minimal();
    json reordered;
    reordered["seed"]     = doc["seed"];
    reordered["scenario"] = doc["scenario"];
    reordered["data"]     = doc["data"];
    EXPECT_EQ(config_digest(parse_config(doc, "/b")), config_digest(parse_config(reordered, "/b")));
}

TEST(Config, DigestTracksSettings)
{
    auto doc = minimal();
    const auto a = config_digest(parse_config(doc, "/b"));
    doc["abm"]["sigma"] = 0.25;
    EXPECT_NE(a, config_digest(parse_config(doc, "/b")));
}

TEST(Config, DigestIgnoresOutputDirectory)
{
    auto a       = parse_config(minimal(), "/b");
    auto b       = a;
    b.output.dir = "elsewhere";
    EXPECT_EQ(config_digest(a), config_digest(b));
}

TEST(Config, RejectsUnknownKey)
{
    auto doc        = minimal();
    doc["colour"]   = "blue";
    EXPECT_THROW(parse_config(doc, "/b"), ValidationError);
}

TEST(Config, RejectsBadEnumAndRange)
{
    auto doc                    = minimal();
    doc["scenario"]["climate"]  = "RCP85";
    EXPECT_THROW(parse_config(doc, "/b"), ValidationError);
    doc                         = minimal();
    doc["abm"]["network"]["rho"] = 1.5;
    EXPECT_THROW(parse_config(doc, "/b"), ValidationError);
    doc                         = minimal();
    doc["abm"]["gateway"]       = {{"high_eff_hvac", 0.5}, {"solar_pv", 0.1}, {"storage", 0.1},
                                   {"smart_thermostat", 0.1}};
    EXPECT_THROW(parse_config(doc, "/b"), ValidationError);
}

TEST(Config, ScenarioOverride)
{
    const auto s = parse_scenario("climate=A1B,grid=moderate,dev=low,adopt=neutral", ScenarioSpec{});
    EXPECT_EQ(s.climate, Climate::A1B);
    EXPECT_EQ(s.grid, GridPathwayId::moderate);
    EXPECT_EQ(s.development, Development::low_density);
    EXPECT_EQ(s.adoption, AdoptionPolicy::neutral);
    EXPECT_EQ(parse_scenario("adopt=none", s).adoption, AdoptionPolicy::no_adoption);
    EXPECT_EQ(parse_scenario("", s), s);
    EXPECT_THROW(parse_scenario("speed=fast", s), ValidationError);
    EXPECT_THROW(parse_scenario("climate", s), ValidationError);
}

TEST(Config, ShippedConfigLoads)
{
    const auto c  = load_config(config_dir / "default.json");
    const auto in = load_inputs(c);
    EXPECT_EQ(in.neighborhoods.size(), 3u);
    EXPECT_TRUE(in.validate().empty());
}

TEST(Config, MissingFileIsValidationError)
{
    auto doc                   = minimal();
    const auto c               = parse_config(doc, "/nonexistent");
    EXPECT_THROW(load_inputs(c), ValidationError);
    EXPECT_THROW(load_config("/nonexistent/x.json"), ValidationError);
}
