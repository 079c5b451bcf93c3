#include "trajscan/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace trajscan {

std::string to_string(DiscrepancyKind kind) {
    return kind == DiscrepancyKind::Linear ? "linear" : "kulldorff";
}

std::string to_string(Model model) {
    switch (model) {
        case Model::Flux: return "flux";
        case Model::Partial: return "partial";
        case Model::Full: return "full";
    }
    return "unknown";
}

DiscrepancyKind parse_discrepancy(const std::string& name) {
    if (name == "kulldorff") return DiscrepancyKind::Kulldorff;
    if (name == "linear") return DiscrepancyKind::Linear;
    throw std::invalid_argument("unknown discrepancy function: " + name);
}

Model parse_model(const std::string& name) {
    if (name == "flux") return Model::Flux;
    if (name == "partial") return Model::Partial;
    if (name == "full") return Model::Full;
    throw std::invalid_argument("unknown model: " + name);
}

double kulldorff(double r, double b) {
    r = std::clamp(r, kKulldorffClamp, 1.0 - kKulldorffClamp);
    b = std::clamp(b, kKulldorffClamp, 1.0 - kKulldorffClamp);
    const double v = r * std::log(r / b) + (1.0 - r) * std::log((1.0 - r) / (1.0 - b));
    return std::max(v, 0.0);
}

double linear(double r, double b) { return std::abs(r - b); }

void check_model_fn(Model model, const DiscrepancyFn& fn) {
    if (model == Model::Flux && fn.kind != DiscrepancyKind::Linear)
        throw std::invalid_argument("flux model supports only the linear discrepancy function");
}

PreparedSample prepare_sample(const LabeledPointSet& sample, Model model) {
    if (sample.empty()) throw std::invalid_argument("empty sample");
    PreparedSample out;
    out.model = model;
    const std::size_t n = sample.size();
    out.location.reserve(n);
    out.traj.reserve(n);

    std::unordered_map<TrajId, std::uint32_t> slots;
    for (const auto& p : sample.points) {
        auto [it, inserted] = slots.try_emplace(p.traj_id, static_cast<std::uint32_t>(out.slot_id.size()));
        if (inserted) {
            out.slot_id.push_back(p.traj_id);
            out.traj_r.push_back(p.r_weight);
            out.traj_b.push_back(p.b_weight);
        }
        out.location.push_back(p.location);
        out.traj.push_back(it->second);
    }

    if (model == Model::Full) {
        double rt = 0.0;
        double bt = 0.0;
        for (std::size_t s = 0; s < out.traj_r.size(); ++s) {
            rt += out.traj_r[s];
            bt += out.traj_b[s];
        }
        for (std::size_t s = 0; s < out.traj_r.size(); ++s) {
            out.traj_r[s] = rt > 0.0 ? out.traj_r[s] / rt : 0.0;
            out.traj_b[s] = bt > 0.0 ? out.traj_b[s] / bt : 0.0;
        }
    } else {
        double rt = 0.0;
        double bt = 0.0;
        for (const auto& p : sample.points) {
            rt += std::max(p.r_weight, 0.0);
            bt += std::max(p.b_weight, 0.0);
        }
        out.r.reserve(n);
        out.b.reserve(n);
        for (const auto& p : sample.points) {
            out.r.push_back(rt > 0.0 ? p.r_weight / rt : 0.0);
            out.b.push_back(bt > 0.0 ? p.b_weight / bt : 0.0);
        }
    }
    return out;
}

RegionStats evaluate_subset(const PreparedSample& sample, const std::vector<char>& inside,
                            const DiscrepancyFn& fn) {
    RegionStats st;
    if (sample.model == Model::Full) {
        std::vector<char> hit(sample.trajectory_count(), 0);
        for (std::size_t i = 0; i < sample.size(); ++i) {
            if (inside[i]) hit[sample.traj[i]] = 1;
        }
        for (std::size_t s = 0; s < hit.size(); ++s) {
            if (hit[s]) {
                st.r_frac += sample.traj_r[s];
                st.b_frac += sample.traj_b[s];
            }
        }
    } else {
        for (std::size_t i = 0; i < sample.size(); ++i) {
            if (inside[i]) {
                st.r_frac += sample.r[i];
                st.b_frac += sample.b[i];
            }
        }
    }
    st.phi = fn(st.r_frac, st.b_frac);
    return st;
}

RegionStats evaluate_region(const Shape& shape, const LabeledPointSet& sample, Model model,
                            const DiscrepancyFn& fn) {
    check_model_fn(model, fn);
    const PreparedSample prepared = prepare_sample(sample, model);
    std::vector<char> inside(prepared.size());
    for (std::size_t i = 0; i < prepared.size(); ++i) inside[i] = shape_contains(shape, prepared.location[i]) ? 1 : 0;
    return evaluate_subset(prepared, inside, fn);
}

}  // namespace trajscan
