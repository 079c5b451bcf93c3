#include "csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace trajscan::io {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view field, const char* what, std::size_t line) {
    field = trim(field);
    T value{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
        throw CsvError("line " + std::to_string(line) + ": bad " + what + " '" + std::string(field) + "'", line);
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value))
            throw CsvError("line " + std::to_string(line) + ": non-finite " + what, line);
    }
    return value;
}

}  // namespace

TrajectoryDataset read_waypoint_csv(std::istream& in, IngestReport* report) {
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) throw CsvError("empty input: missing header traj_id,x,y,label", 0);
    ++lineno;
    {
        const auto cols = split(trim(line));
        if (cols.size() != 4 || trim(cols[0]) != "traj_id" || trim(cols[1]) != "x" || trim(cols[2]) != "y" ||
            trim(cols[3]) != "label")
            throw CsvError("line 1: expected header traj_id,x,y,label", 1);
    }

    TrajectoryDataset ds;
    std::unordered_set<TrajId> closed;
    IngestReport rep;
    rep.lo = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    rep.hi = {-rep.lo.x, -rep.lo.y};
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto cols = split(row);
        if (cols.size() != 4)
            throw CsvError("line " + std::to_string(lineno) + ": expected 4 fields, got " + std::to_string(cols.size()),
                           lineno);
        const auto id = parse_number<TrajId>(cols[0], "traj_id", lineno);
        const Point p{parse_number<double>(cols[1], "x", lineno), parse_number<double>(cols[2], "y", lineno)};
        const std::string_view label = trim(cols[3]);
        if (label != "r" && label != "b")
            throw CsvError("line " + std::to_string(lineno) + ": label must be r or b, got '" + std::string(label) + "'",
                           lineno);
        const double recorded = label == "r" ? 1.0 : 0.0;

        if (ds.trajectories.empty() || ds.trajectories.back().id != id) {
            if (!ds.trajectories.empty()) closed.insert(ds.trajectories.back().id);
            if (closed.count(id))
                throw CsvError("line " + std::to_string(lineno) + ": rows of traj_id " + std::to_string(id) +
                                   " are not contiguous",
                               lineno);
            ds.trajectories.push_back({id, {}, recorded, 1.0});
        } else if (ds.trajectories.back().recorded != recorded) {
            throw CsvError("line " + std::to_string(lineno) + ": label conflict within traj_id " + std::to_string(id),
                           lineno);
        }
        ds.trajectories.back().waypoints.push_back(p);
        rep.lo = {std::min(rep.lo.x, p.x), std::min(rep.lo.y, p.y)};
        rep.hi = {std::max(rep.hi.x, p.x), std::max(rep.hi.y, p.y)};
        ++rep.waypoints;
    }
    if (ds.trajectories.empty()) throw CsvError("no trajectories in input", lineno);
    rep.trajectories = ds.size();
    if (report) *report = rep;
    return ds;
}

TrajectoryDataset read_waypoint_csv_file(const std::string& path, IngestReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_waypoint_csv(in, report);
}

namespace {

void write_point(std::ostream& out, Point p) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, p.x);
    out.write(buf, res.ptr - buf);
    out.put(',');
    res = std::to_chars(buf, buf + sizeof buf, p.y);
    out.write(buf, res.ptr - buf);
}

}  // namespace

void write_waypoint_csv(std::ostream& out, const TrajectoryDataset& dataset) {
    out << "traj_id,x,y,label\n";
    for (const auto& t : dataset.trajectories) {
        const char label = t.recorded > 0.0 ? 'r' : 'b';
        for (Point p : t.waypoints) {
            out << t.id << ',';
            write_point(out, dataset.transform.inverse(p));
            out << ',' << label << '\n';
        }
    }
}

void write_coreset_csv(std::ostream& out, const TrajectoryDataset& dataset, const CoresetMethod& method) {
    out << "traj_id,x,y\n";
    for (const auto& t : dataset.trajectories) {
        for (Point p : simplify(t, method)) {
            out << t.id << ',';
            write_point(out, dataset.transform.inverse(p));
            out << '\n';
        }
    }
}

}  // namespace trajscan::io
