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
// Command-line front end: validate, run, matrix, premium.

#include "upath/config.hpp"
#include "upath/error.hpp"
#include "upath/output.hpp"
#include "upath/simulation.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

namespace
{

using namespace upath;

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string scenario;
    unsigned jobs = 0;
    std::optional<bool> parcels;
};

RunConfig prepare(const Common& opt)
{
    auto cfg = load_config(opt.config);
    if (opt.seed) {
        cfg.scenario.seed = *opt.seed;
    }
    if (!opt.scenario.empty()) {
        cfg.scenario = parse_scenario(opt.scenario, cfg.scenario);
    }
    if (!opt.out.empty()) {
        cfg.output.dir = opt.out;
    }
    return cfg;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int cmd_validate(const Common& opt)
{
    const auto cfg = prepare(opt);
    const auto in  = load_inputs(cfg);
    std::size_t parcels = 0;
    for (const auto& nb : in.neighborhoods) {
        parcels += nb.parcels.size();
    }
    std::cout << "ok: " << in.neighborhoods.size() << " neighborhoods, " << parcels << " parcels, "
              << in.catalog.size() << " archetypes, digest " << config_digest(cfg) << '\n';
    return 0;
}

int cmd_run(const Common& opt)
{
    const auto start = std::chrono::steady_clock::now();
    const auto cfg   = prepare(opt);
    const auto in    = load_inputs(cfg);

    std::vector<MatrixRun> runs(1);
    runs[0].spec   = cfg.scenario;
    runs[0].output = run_scenario(in, cfg.scenario);

    WriteOptions w;
    w.parcel_csv         = opt.parcels.value_or(cfg.output.parcels_run);
    w.config_digest      = config_digest(cfg);
    w.seed               = cfg.scenario.seed;
    w.wall_clock_seconds = seconds_since(start);
    write_outputs(runs, cfg.output.dir, w);
    std::cout << scenario_label(cfg.scenario) << " -> " << cfg.output.dir << '\n';
    return 0;
}

int cmd_matrix(const Common& opt)
{
    const auto start = std::chrono::steady_clock::now();
    const auto cfg   = prepare(opt);
    const auto in    = load_inputs(cfg);
    const unsigned jobs = opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());

    const bool parcels = opt.parcels.value_or(cfg.output.parcels_matrix);
    MatrixOptions m;
    m.jobs         = jobs;
    m.keep_parcels = false;
    if (parcels) {
        m.on_run = [&](const RunOutput& run) { write_parcel_file(cfg.output.dir, run); };
    }
    const auto runs = run_matrix(in, cfg.matrix, cfg.scenario.seed, m);
    WriteOptions w;
    w.parcel_csv         = parcels;
    w.config_digest      = config_digest(cfg);
    w.seed               = cfg.scenario.seed;
    w.wall_clock_seconds = seconds_since(start);
    write_outputs(runs, cfg.output.dir, w);

    std::size_t failed = 0;
    for (const auto& r : runs) {
        if (!r.output) {
            ++failed;
            std::cerr << "failed: " << r.error << '\n';
        }
    }
    std::cout << runs.size() - failed << " of " << runs.size() << " runs -> " << cfg.output.dir << " in "
              << seconds_since(start) << " s\n";
    return failed == 0 ? 0 : 3;
}

int cmd_premium(const std::vector<std::string>& inputs, const std::string& out_dir)
{
    std::vector<PathwayPoint> points;
    for (const auto& path : inputs) {
        auto more = load_pathways(path);
        points.insert(points.end(), more.begin(), more.end());
    }
    const auto series = premiums(points);
    if (series.empty()) {
        throw ValidationError("premium needs low- and high-density pathways for the same setting");
    }
    std::filesystem::create_directories(out_dir);
    const auto path = std::filesystem::path(out_dir) / "premium.csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ModelError("cannot write " + path.string());
    }
    write_premium_csv(out, series);
    std::cout << series.size() << " premium series -> " << path.string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Neighborhood emission pathway simulator"};
    app.require_subcommand(1);

    Common opt;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    };
    auto add_run_options = [&](CLI::App* sub) {
        add_config(sub);
        sub->add_option("--out", opt.out, "Output directory (overrides the config)");
        sub->add_option("--seed", opt.seed, "Random seed (overrides the config)");
        sub->add_option("--parcels", opt.parcels, "Write per-parcel CSVs (true/false)");
    };

    auto* validate = app.add_subcommand("validate", "Check the configuration and every input table");
    add_config(validate);
    validate->add_option("--scenario", opt.scenario, "climate=..,grid=..,dev=..,adopt=..");

    auto* run = app.add_subcommand("run", "Run a single scenario");
    add_run_options(run);
    run->add_option("--scenario", opt.scenario, "climate=..,grid=..,dev=..,adopt=..");

    auto* matrix = app.add_subcommand("matrix", "Run every combination of the configured axes");
    add_run_options(matrix);
    matrix->add_option("--jobs", opt.jobs, "Concurrent runs (default: hardware threads)");

    std::vector<std::string> premium_inputs;
    std::string premium_out = ".";
    auto* premium = app.add_subcommand("premium", "Premium for Sprawl from existing pathway CSVs");
    premium->add_option("--input", premium_inputs, "pathways.csv files holding low- and high-density runs")
        ->required()
        ->check(CLI::ExistingFile);
    premium->add_option("--out", premium_out, "Output directory");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*validate) {
            return cmd_validate(opt);
        }
        if (*run) {
            return cmd_run(opt);
        }
        if (*matrix) {
            return cmd_matrix(opt);
        }
        return cmd_premium(premium_inputs, premium_out);
    }
    catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
