#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trajscan/trajectory.hpp"

namespace trajscan {

/// Clamp applied to both Kulldorff arguments.
inline constexpr double kKulldorffClamp = 1e-7;

enum class DiscrepancyKind { Kulldorff, Linear };

enum class Model { Flux, Partial, Full };

std::string to_string(DiscrepancyKind kind);
std::string to_string(Model model);
DiscrepancyKind parse_discrepancy(const std::string& name);
Model parse_model(const std::string& name);

/// Bernoulli KL divergence of r from b after clamping into [1e-7, 1 - 1e-7].
double kulldorff(double r, double b);
double linear(double r, double b);

struct DiscrepancyFn {
    DiscrepancyKind kind = DiscrepancyKind::Kulldorff;
    bool one_sided = false;  // Kulldorff only: score 0 unless r > b

    double operator()(double r, double b) const {
        if (kind == DiscrepancyKind::Linear) return linear(r, b);
        if (one_sided && !(r > b)) return 0.0;
        return kulldorff(r, b);
    }
};

/// Flux scanning is defined for the linear function only.
void check_model_fn(Model model, const DiscrepancyFn& fn);

struct RegionStats {
    double r_frac = 0.0;
    double b_frac = 0.0;
    double phi = 0.0;
};

/// Phi of one shape over a labeled sample. Point-style models (flux, partial)
/// sum weights inside the shape and divide by the positive mass; the full model
/// counts each trajectory once when any of its points is inside.
RegionStats evaluate_region(const Shape& shape, const LabeledPointSet& sample, Model model,
                            const DiscrepancyFn& fn);

/// A sample prepared for incremental scanning: per-point normalized weights
/// for point models, per-trajectory normalized weights for the full model.
struct PreparedSample {
    Model model = Model::Partial;
    std::vector<Point> location;
    std::vector<std::uint32_t> traj;   // dense trajectory slot per point
    std::vector<double> r;             // per point (point models)
    std::vector<double> b;
    std::vector<double> traj_r;        // per slot (full model)
    std::vector<double> traj_b;
    std::vector<TrajId> slot_id;

    [[nodiscard]] std::size_t size() const { return location.size(); }
    [[nodiscard]] std::size_t trajectory_count() const { return traj_r.size(); }
};

PreparedSample prepare_sample(const LabeledPointSet& sample, Model model);

/// Stats for the subset of prepared points flagged in `inside`.
RegionStats evaluate_subset(const PreparedSample& sample, const std::vector<char>& inside,
                            const DiscrepancyFn& fn);

}  // namespace trajscan
