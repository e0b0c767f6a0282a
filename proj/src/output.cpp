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
#include "upath/output.hpp"
#include "upath/error.hpp"
#include "upath/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace upath
{

namespace
{

class OutputFile
{
public:
    explicit OutputFile(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary)
    {
        if (!out_) {
            throw ModelError("cannot write " + path.string());
        }
    }
    std::ostream& stream()
    {
        return out_;
    }
    void close()
    {
        out_.close();
        if (!out_) {
            throw ModelError("failed writing " + path_.string());
        }
    }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

std::string scenario_columns(const ScenarioSpec& s)
{
    std::string out;
    out.append(to_string(s.climate)).append(",");
    out.append(to_string(s.grid)).append(",");
    out.append(to_string(s.development)).append(",");
    out.append(to_string(s.adoption));
    return out;
}

} // namespace

void write_pathways_csv(std::ostream& out, std::span<const PathwayPoint> points, bool header)
{
    if (header) {
        out << pathways_header << '\n';
    }
    for (const auto& p : points) {
        out << p.neighborhood << ',' << scenario_columns(p.scenario) << ',' << p.decade << ','
            << format_number(p.total_kwh) << ',' << format_number(p.total_tco2e) << ',' << format_number(p.units)
            << ',' << format_number(p.floor_area) << ',' << format_number(p.per_unit) << ','
            << format_number(p.per_m2) << '\n';
    }
}

void write_parcel_csv(std::ostream& out, const RunOutput& run)
{
    std::vector<const ParcelRecord*> rows;
    rows.reserve(run.parcels.size());
    for (const auto& r : run.parcels) {
        rows.push_back(&r);
    }
    std::sort(rows.begin(), rows.end(), [](const ParcelRecord* a, const ParcelRecord* b) {
        return a->parcel_id != b->parcel_id ? a->parcel_id < b->parcel_id : a->decade < b->decade;
    });
    out << parcel_output_header << '\n';
    for (const auto* r : rows) {
        out << r->parcel_id << ',' << r->neighborhood << ',' << r->decade << ',' << r->archetype_id << ','
            << r->buildings << ',' << r->units << ',' << format_number(r->floor_area) << ','
            << format_number(r->kwh) << ',' << format_number(r->tco2e) << '\n';
    }
}

void write_premium_csv(std::ostream& out, std::span<const PremiumSeries> premiums)
{
    out << premium_header << '\n';
    for (const auto& p : premiums) {
        for (std::size_t i = 0; i < Timeline::size; ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            out << p.neighborhood << ',' << to_string(p.climate) << ',' << to_string(p.grid) << ','
                << to_string(p.adoption) << ',' << Timeline::year(i) << ',' << format_number(p.units_low(k)) << ','
                << format_number(p.units_high(k)) << ',' << format_number(p.total_low(k)) << ','
                << format_number(p.total_high(k)) << ',' << format_number(p.premium(k)) << '\n';
        }
    }
}

void write_adoption_csv(std::ostream& out, const RunOutput& run, bool header)
{
    if (header) {
        out << adoption_header << '\n';
    }
    const auto cols = scenario_columns(run.spec);
    for (const auto& c : run.adoption) {
        out << c.neighborhood << ',' << cols << ',' << c.decade << ',' << to_string(c.tech) << ',' << c.chosen << ','
            << c.mandated << ',' << c.installed << '\n';
    }
}

void write_manifest(std::ostream& out, const RunManifest& m)
{
    nlohmann::json scenarios = nlohmann::json::array();
    for (const auto& e : m.scenarios) {
        nlohmann::json entry = {{"label", e.label}, {"files", e.files}};
        if (!e.error.empty()) {
            entry["error"] = e.error;
        }
        scenarios.push_back(entry);
    }
    nlohmann::json doc = {{"config_digest", m.config_digest},
                          {"seed", m.seed},
                          {"software_version", m.software_version},
                          {"scenarios", scenarios},
                          {"wall_clock_seconds", m.wall_clock_seconds}};
    out << doc.dump(2) << '\n';
}

std::filesystem::path parcel_file(const ScenarioSpec& spec)
{
    return std::filesystem::path("parcels") / (scenario_label(spec) + ".csv");
}

std::filesystem::path write_parcel_file(const std::filesystem::path& dir, const RunOutput& run)
{
    const auto rel = parcel_file(run.spec);
    std::error_code ec;
    std::filesystem::create_directories(dir / "parcels", ec);
    if (ec) {
        throw ModelError("cannot create " + (dir / "parcels").string() + ": " + ec.message());
    }
    OutputFile f(dir / rel);
    write_parcel_csv(f.stream(), run);
    f.close();
    return rel;
}

std::vector<std::filesystem::path> write_outputs(std::span<const MatrixRun> runs, const std::filesystem::path& dir,
                                                 const WriteOptions& options)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ModelError("cannot create " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    RunManifest manifest;
    manifest.config_digest      = options.config_digest;
    manifest.seed               = options.seed;
    manifest.software_version   = UPATH_VERSION;
    manifest.wall_clock_seconds = options.wall_clock_seconds;

    OutputFile pathways(dir / "pathways.csv");
    OutputFile adoption(dir / "adoption.csv");
    pathways.stream() << pathways_header << '\n';
    adoption.stream() << adoption_header << '\n';
    std::vector<PathwayPoint> all_points;
    for (const auto& run : runs) {
        RunManifest::Entry entry;
        entry.label = scenario_label(run.spec);
        if (!run.output) {
            entry.error = run.error;
            manifest.scenarios.push_back(std::move(entry));
            continue;
        }
        write_pathways_csv(pathways.stream(), run.output->pathways, false);
        write_adoption_csv(adoption.stream(), *run.output, false);
        all_points.insert(all_points.end(), run.output->pathways.begin(), run.output->pathways.end());
        entry.files = {"pathways.csv", "adoption.csv"};
        if (options.parcel_csv) {
            const auto rel = run.output->parcels.empty() ? parcel_file(run.spec) : write_parcel_file(dir, *run.output);
            written.push_back(dir / rel);
            entry.files.push_back(rel.generic_string());
        }
        manifest.scenarios.push_back(std::move(entry));
    }
    pathways.close();
    adoption.close();
    written.push_back(dir / "pathways.csv");
    written.push_back(dir / "adoption.csv");

    const auto prem = premiums(all_points);
    if (!prem.empty()) {
        OutputFile f(dir / "premium.csv");
        write_premium_csv(f.stream(), prem);
        f.close();
        written.push_back(dir / "premium.csv");
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (runs[i].output && runs[i].spec.development != Development::reference) {
                manifest.scenarios[i].files.push_back("premium.csv");
            }
        }
    }
    else {
        std::filesystem::remove(dir / "premium.csv", ec);
    }

    OutputFile m(dir / "manifest.json");
    write_manifest(m.stream(), manifest);
    m.close();
    written.push_back(dir / "manifest.json");
    return written;
}

std::vector<PathwayPoint> load_pathways(const std::filesystem::path& path)
{
    const auto t    = CsvTable::read(path);
    const auto c_nb = t.column("neighborhood"), c_cl = t.column("climate"), c_g = t.column("grid"),
               c_dev = t.column("development"), c_ad = t.column("adoption"), c_dec = t.column("decade"),
               c_kwh = t.column("total_kwh"), c_t = t.column("total_tco2e"), c_u = t.column("units"),
               c_a = t.column("floor_area_m2");
    std::vector<PathwayPoint> out;
    out.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        ScenarioSpec s;
        s.climate     = t.enumeration<Climate>(r, c_cl);
        s.grid        = t.enumeration<GridPathwayId>(r, c_g);
        s.development = t.enumeration<Development>(r, c_dev);
        s.adoption    = t.enumeration<AdoptionPolicy>(r, c_ad);
        const auto decade = static_cast<int>(t.integer(r, c_dec));
        if (!Timeline::index(decade)) {
            t.fail(r, c_dec, "decade off the timeline");
        }
        out.push_back(make_point(s, t.text(r, c_nb), decade, t.number(r, c_kwh), t.number(r, c_t),
                                 t.number(r, c_u), t.number(r, c_a)));
    }
    return out;
}

} // namespace upath
