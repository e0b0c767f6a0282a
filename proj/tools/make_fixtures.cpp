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
// Regenerates the shipped data tables and synthetic neighborhood fixtures.

#include "upath/error.hpp"
#include "upath/fixtures.hpp"
#include "upath/io.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>

namespace
{

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw upath::ModelError("cannot write " + path.string());
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Write the shipped data tables and synthetic parcel fixtures"};
    std::string dir = "data";
    app.add_option("--out", dir, "Output directory");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::filesystem::path out(dir);
        std::filesystem::create_directories(out);
        const upath::Catalog catalog(upath::default_archetypes());
        {
            auto f = open_out(out / "catalog.csv");
            upath::write_catalog(f, catalog.all());
        }
        {
            auto f = open_out(out / "schedule.csv");
            upath::write_schedule(f, upath::RedevelopmentSchedule::shipped());
        }
        {
            auto f = open_out(out / "rules.csv");
            upath::write_rules(f, upath::default_rules());
        }
        for (const auto& profile : upath::shipped_profiles()) {
            const auto parcels = upath::synthesize_fixture(profile, catalog);
            std::string name   = profile.name;
            for (auto& c : name) {
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            auto f = open_out(out / ("parcels_" + name + ".csv"));
            upath::write_parcels(f, parcels);

            long units  = 0;
            double area = 0.0;
            for (const auto& p : parcels) {
                units += static_cast<long>(upath::make_units(p, catalog).size());
                area += p.lot_area;
            }
            std::cout << profile.name << ": " << parcels.size() << " lots, " << units << " units, lot area " << area
                      << " m2, housing area " << upath::housing_area(parcels, catalog) << " m2\n";
        }
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
