#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "trajscan/coreset.hpp"
#include "trajscan/trajectory.hpp"

namespace trajscan::io {

/// Malformed input; `line` is 1-based (0 when not tied to a line).
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct IngestReport {
    std::size_t trajectories = 0;
    std::size_t waypoints = 0;
    Point lo{0.0, 0.0};
    Point hi{0.0, 0.0};
};

/// Reads `traj_id,x,y,label` rows (label r or b). Coordinates stay as given;
/// call normalize() afterwards.
TrajectoryDataset read_waypoint_csv(std::istream& in, IngestReport* report = nullptr);
TrajectoryDataset read_waypoint_csv_file(const std::string& path, IngestReport* report = nullptr);

/// Writes the dataset in original coordinates (the inverse of its transform).
void write_waypoint_csv(std::ostream& out, const TrajectoryDataset& dataset);

/// `traj_id,x,y` rows of per-trajectory coresets, in original coordinates.
void write_coreset_csv(std::ostream& out, const TrajectoryDataset& dataset, const CoresetMethod& method);

}  // namespace trajscan::io
