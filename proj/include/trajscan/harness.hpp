#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trajscan/scan_full.hpp"

namespace trajscan {

enum class Generator { RandomWalk, SegmentBundle };
std::string to_string(Generator g);
Generator parse_generator(const std::string& name);

struct SyntheticConfig {
    std::size_t n_traj = 100;
    std::size_t wp_min = 5;
    std::size_t wp_max = 20;
    double step_scale = 0.02;
    Generator generator = Generator::RandomWalk;
    std::uint64_t seed = 0;
    void validate() const;
};

/// Seeded trajectories inside [0,1]^2; all unlabeled (r = 0, b = 1).
TrajectoryDataset generate_synthetic(const SyntheticConfig& cfg);

/// How a trajectory meets a shape when evaluated on the raw data.
enum class Membership { Segments, Waypoints };

/// Exact (r(C), b(C), Phi) on the whole dataset under the model's semantics:
/// full = intersects (segments or waypoints), partial = arclength fraction,
/// flux = signed begin/end counts.
RegionStats evaluate_dataset(const TrajectoryDataset& dataset, const Shape& shape, Model model,
                             const DiscrepancyFn& fn, Membership membership = Membership::Segments);

/// Model-specific baseline mass fraction b(C)/b(T).
double baseline_fraction(const TrajectoryDataset& dataset, const Shape& shape, Model model);

struct PlantConfig {
    ShapeFamily family = ShapeFamily::Disk;
    Model model = Model::Full;
    double p = 0.5;
    double q = 0.8;
    double f = 0.05;
    std::uint64_t seed = 0;
    void validate() const;
};

struct Planted {
    TrajectoryDataset dataset;
    Shape shape;
    RegionStats stats;
    double realized_f = 0.0;
};

/// Picks a shape with baseline fraction within 10% of f (binary search on size
/// around random centers), then draws labels: rate q inside, p outside.
Planted plant(const TrajectoryDataset& dataset, const PlantConfig& cfg, const DiscrepancyFn& fn);

struct ExactOptions {
    Membership membership = Membership::Segments;
    bool enforce_guard = true;
    RadiusWindow window{};
    std::size_t max_trajectories = 200;
    std::size_t max_waypoints = 2000;
};

/// Brute-force oracle: halfplanes through point pairs (and their infinitesimal
/// rotations), disks through point triples and diametral pairs, rectangles on
/// all coordinate pairs. Candidate points are the waypoints (endpoints for flux).
ScanResult exact_scan(const TrajectoryDataset& dataset, ShapeFamily family, Model model, const DiscrepancyFn& fn,
                      const ExactOptions& options = {});

struct ScanSettings {
    Model model = Model::Full;
    ShapeFamily family = ShapeFamily::Disk;
    DiscrepancyFn fn{};
    double eps = 0.1;
    double delta = 0.1;
    double c_net = 1.0;
    double c_sample = 0.25;
    std::size_t net_override = 0;            // fixed n / s instead of the size formulas
    std::size_t sample_override = 0;
    double alpha = 0.01;
    double r_min = 1.0 / 6000.0;
    double r_max = 1.0 / 300.0;
    int z = 0;                               // multiscale subranges; 0: log2(r_max / r_min)
    bool naive_disk = false;                 // full disks: all-pivot scan instead of multiscale
    bool hull_trick = false;
    bool exact_eval = false;
    std::optional<CoresetTag> coreset;       // per-model default when unset
    CoresetTag partial_method = CoresetTag::Even;
    double max_side = std::numeric_limits<double>::infinity();
    double mass_cap = 0.0;
    std::uint64_t seed = 0;
    void validate() const;
};

struct ScanRun {
    ScanResult result;           // shape in normalized coordinates, stats on the sample
    RegionStats full_stats;      // the shape re-evaluated on the whole dataset
    std::size_t n = 0;
    std::size_t s = 0;
    std::size_t n_k = 0;
    std::size_t s_k = 0;
    double runtime_ms = 0.0;
};

/// Sample, simplify and scan one (normalized) dataset.
ScanRun run_scan(const TrajectoryDataset& dataset, const ScanSettings& settings);

struct TrialRecord {
    std::uint64_t seed = 0;
    double planted_phi = 0.0;
    double found_phi = 0.0;
    Shape found_shape;
    double runtime_ms = 0.0;
};

struct PowerReport {
    std::vector<TrialRecord> trials;
    double threshold = 0.9;
    double eps = 0.0;
    double alpha = 0.0;
    double recovery_rate = 0.0;

    /// seed,eps,alpha,planted_phi,found_phi,runtime_ms
    [[nodiscard]] std::string to_csv(bool with_timing = true) const;
};

PowerReport power_experiment(const SyntheticConfig& data, const PlantConfig& plant_cfg, const ScanSettings& scan,
                             std::size_t trials, double threshold = 0.9);

}  // namespace trajscan
