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
#include "upath/io.hpp"
#include "upath/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace upath
{

namespace
{

std::vector<std::string> split(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        auto field     = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
            field.remove_prefix(1);
        }
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) {
            field.remove_suffix(1);
        }
        out.emplace_back(field);
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::ifstream open_input(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    return in;
}

} // namespace

CsvTable::CsvTable(std::istream& in, std::string source) : source_(std::move(source))
{
    std::string line;
    std::size_t line_no = 0;
    bool have_header    = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split(line);
        if (!have_header) {
            header_     = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != header_.size()) {
            throw ValidationError(source_ + ": line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header_.size()) + " fields, found " +
                                  std::to_string(fields.size()));
        }
        rows_.push_back(std::move(fields));
        lines_.push_back(line_no);
    }
    if (!have_header) {
        throw ValidationError(source_ + ": missing header");
    }
}

CsvTable CsvTable::read(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return CsvTable(in, path.string());
}

bool CsvTable::has_column(std::string_view name) const
{
    for (const auto& h : header_) {
        if (h == name) {
            return true;
        }
    }
    return false;
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) {
            return i;
        }
    }
    throw ValidationError(source_ + ": missing column '" + std::string(name) + "'");
}

void CsvTable::fail(std::size_t row, std::size_t col, const std::string& what) const
{
    throw ValidationError(source_ + ": line " + std::to_string(lines_[row]) + ", column '" + header_[col] +
                          "': " + what);
}

void CsvTable::fail(std::size_t row, const std::string& what) const
{
    throw ValidationError(source_ + ": line " + std::to_string(lines_[row]) + ": " + what);
}

double CsvTable::number(std::size_t row, std::size_t col) const
{
    const auto& s = text(row, col);
    if (s == "inf" || s == "Inf" || s == "INF") {
        return std::numeric_limits<double>::infinity();
    }
    double v        = 0.0;
    const auto* end = s.data() + s.size();
    const auto res  = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end || std::isnan(v)) {
        fail(row, col, "not a number: '" + s + "'");
    }
    return v;
}

long CsvTable::integer(std::size_t row, std::size_t col) const
{
    const auto& s   = text(row, col);
    long v          = 0;
    const auto* end = s.data() + s.size();
    const auto res  = std::from_chars(s.data(), end, v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != end) {
        fail(row, col, "not an integer: '" + s + "'");
    }
    return v;
}

std::string format_number(double value)
{
    if (value == 0.0) {
        return "0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::vector<Parcel> parse_parcels(std::istream& in, const std::string& source)
{
    const CsvTable t(in, source);
    const auto c_id = t.column("parcel_id"), c_nb = t.column("neighborhood"), c_lu = t.column("land_use_class"),
               c_loc = t.column("location_class"), c_area = t.column("lot_area_m2"), c_ilr = t.column("ilr"),
               c_year = t.column("year_built"), c_arch = t.column("archetype_id");
    const bool has_b  = t.has_column("buildings");
    const bool has_xy = t.has_column("x_m") && t.has_column("y_m");

    std::vector<Parcel> out;
    out.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        Parcel p;
        p.id = t.text(r, c_id);
        if (p.id.empty()) {
            t.fail(r, c_id, "empty parcel id");
        }
        p.neighborhood = t.text(r, c_nb);
        p.land_use     = t.enumeration<LandUseClass>(r, c_lu);
        p.location     = t.enumeration<LocationClass>(r, c_loc);
        p.lot_area     = t.number(r, c_area);
        if (!(p.lot_area > 0.0) || std::isinf(p.lot_area)) {
            t.fail(r, c_area, "lot area must be positive");
        }
        if (!t.text(r, c_ilr).empty()) {
            p.ilr = t.number(r, c_ilr);
        }
        p.year_built   = static_cast<int>(t.integer(r, c_year));
        p.archetype_id = t.text(r, c_arch);
        if (has_b) {
            p.buildings = static_cast<int>(t.integer(r, t.column("buildings")));
            if (p.buildings < 1) {
                t.fail(r, t.column("buildings"), "needs at least one building");
            }
        }
        if (has_xy) {
            p.x = t.number(r, t.column("x_m"));
            p.y = t.number(r, t.column("y_m"));
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Parcel> load_parcels(const std::filesystem::path& path)
{
    auto in = open_input(path);
    return parse_parcels(in, path.string());
}

void write_parcels(std::ostream& out, std::span<const Parcel> parcels)
{
    out << parcel_header << '\n';
    char buf[64];
    for (const auto& p : parcels) {
        out << p.id << ',' << p.neighborhood << ',' << to_string(p.land_use) << ',' << to_string(p.location) << ',';
        std::snprintf(buf, sizeof buf, "%.2f", p.lot_area);
        out << buf << ',';
        if (p.ilr) {
            std::snprintf(buf, sizeof buf, "%.4f", *p.ilr);
            out << buf;
        }
        out << ',' << p.year_built << ',' << p.archetype_id << ',' << p.buildings << ',';
        std::snprintf(buf, sizeof buf, "%.1f,%.1f", p.x, p.y);
        out << buf << '\n';
    }
}

std::vector<Archetype> load_catalog(const std::filesystem::path& path)
{
    const auto t    = CsvTable::read(path);
    const auto c_id = t.column("archetype_id"), c_cls = t.column("dwelling_class"),
               c_units = t.column("units_per_building"), c_area = t.column("unit_floor_area_m2"),
               c_st = t.column("stories"), c_fp = t.column("footprint_m2"),
               c_int = t.column("base_intensity_kwh_m2_yr");
    std::vector<Archetype> out;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        Archetype a;
        a.id                 = t.text(r, c_id);
        a.dwelling_class     = t.enumeration<DwellingClass>(r, c_cls);
        a.units_per_building = static_cast<int>(t.integer(r, c_units));
        a.unit_floor_area    = t.number(r, c_area);
        a.stories            = static_cast<int>(t.integer(r, c_st));
        a.footprint          = t.number(r, c_fp);
        a.base_intensity     = t.number(r, c_int);
        out.push_back(std::move(a));
    }
    return out;
}

void write_catalog(std::ostream& out, std::span<const Archetype> catalog)
{
    out << catalog_header << '\n';
    for (const auto& a : catalog) {
        out << a.id << ',' << to_string(a.dwelling_class) << ',' << a.units_per_building << ','
            << format_number(a.unit_floor_area) << ',' << a.stories << ',' << format_number(a.footprint) << ','
            << format_number(a.base_intensity) << '\n';
    }
}

RedevelopmentSchedule load_schedule(const std::filesystem::path& path)
{
    const auto t    = CsvTable::read(path);
    const auto c_nb = t.column("neighborhood"), c_dec = t.column("decade"), c_fr = t.column("fraction");
    RedevelopmentSchedule s;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto decade = static_cast<int>(t.integer(r, c_dec));
        if (!Timeline::index(decade)) {
            t.fail(r, c_dec, "decade off the timeline");
        }
        const double f = t.number(r, c_fr);
        if (f < 0.0 || f > 1.0) {
            t.fail(r, c_fr, "fraction outside [0, 1]");
        }
        s.set(t.text(r, c_nb), decade, f);
    }
    return s;
}

void write_schedule(std::ostream& out, const RedevelopmentSchedule& schedule)
{
    out << schedule_header << '\n';
    for (const auto& nb : schedule.neighborhoods()) {
        for (const int d : Timeline::decades()) {
            out << nb << ',' << d << ',' << format_number(schedule.fraction(nb, d)) << '\n';
        }
    }
}

std::vector<AssignmentRule> load_rules(const std::filesystem::path& path)
{
    const auto t     = CsvTable::read(path);
    const auto c_dev = t.column("scenario"), c_lu = t.column("land_use_class"), c_loc = t.column("location_class"),
               c_min = t.column("lot_area_min_m2"), c_max = t.column("lot_area_max_m2"),
               c_arch = t.column("target_archetype_id"), c_sub = t.column("subdivision_count");
    std::vector<AssignmentRule> out;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        AssignmentRule rule;
        rule.development = t.enumeration<Development>(r, c_dev);
        if (rule.development == Development::reference) {
            t.fail(r, c_dev, "reference development takes no rules");
        }
        rule.land_use     = t.enumeration<LandUseClass>(r, c_lu);
        rule.location     = t.enumeration<LocationClass>(r, c_loc);
        rule.lot_area_min = t.number(r, c_min);
        if (!t.text(r, c_max).empty()) {
            rule.lot_area_max = t.number(r, c_max);
        }
        if (!(rule.lot_area_max > rule.lot_area_min)) {
            t.fail(r, "empty lot area band");
        }
        rule.target_archetype = t.text(r, c_arch);
        rule.subdivision      = static_cast<int>(t.integer(r, c_sub));
        if (rule.subdivision < 1) {
            t.fail(r, c_sub, "subdivision count must be at least 1");
        }
        out.push_back(std::move(rule));
    }
    return out;
}

void write_rules(std::ostream& out, std::span<const AssignmentRule> rules)
{
    out << rules_header << '\n';
    for (const auto& r : rules) {
        out << to_string(r.development) << ',' << to_string(r.land_use) << ',' << to_string(r.location) << ','
            << format_number(r.lot_area_min) << ',' << (std::isinf(r.lot_area_max) ? "inf" : format_number(r.lot_area_max))
            << ',' << r.target_archetype << ',' << r.subdivision << '\n';
    }
}

DemandTable load_demand(const std::filesystem::path& path)
{
    const auto t      = CsvTable::read(path);
    const auto c_arch = t.column("archetype_id"), c_dec = t.column("decade"), c_cl = t.column("climate"),
               c_kwh = t.column("kwh_per_unit_yr");
    DemandTable table;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto decade = static_cast<int>(t.integer(r, c_dec));
        if (!Timeline::index(decade)) {
            t.fail(r, c_dec, "decade off the timeline");
        }
        const double kwh = t.number(r, c_kwh);
        if (!(kwh > 0.0)) {
            t.fail(r, c_kwh, "demand must be positive");
        }
        table.set(t.text(r, c_arch), decade, t.enumeration<Climate>(r, c_cl), kwh);
    }
    return table;
}

ClimateCurve load_climate_curve(const std::filesystem::path& path)
{
    const auto t    = CsvTable::read(path);
    const auto c_cl = t.column("climate"), c_dec = t.column("decade"), c_m = t.column("multiplier");
    ClimateCurve curve;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto decade = static_cast<int>(t.integer(r, c_dec));
        if (!Timeline::index(decade)) {
            t.fail(r, c_dec, "decade off the timeline");
        }
        curve.set(t.enumeration<Climate>(r, c_cl), decade, t.number(r, c_m));
    }
    return curve;
}

GridPathways load_grid(const std::filesystem::path& path)
{
    const auto t    = CsvTable::read(path);
    const auto c_id = t.column("pathway_id"), c_y = t.column("year"), c_g = t.column("g_per_kwh");
    std::map<GridPathwayId, std::map<int, double>> points;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const double g = t.number(r, c_g);
        if (g < 0.0 || std::isinf(g)) {
            t.fail(r, c_g, "intensity must be finite and non-negative");
        }
        points[t.enumeration<GridPathwayId>(r, c_id)][static_cast<int>(t.integer(r, c_y))] = g;
    }
    return GridPathways::from_points(points);
}

} // namespace upath
