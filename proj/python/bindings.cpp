#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trajscan/harness.hpp"

namespace py = pybind11;
using namespace trajscan;

namespace {

// Waypoints as a list of (x, y) tuples.
std::vector<Point> to_points(const std::vector<std::pair<double, double>>& xy) {
    std::vector<Point> out;
    out.reserve(xy.size());
    for (const auto& [x, y] : xy) out.push_back({x, y});
    return out;
}

std::vector<std::pair<double, double>> from_points(const std::vector<Point>& pts) {
    std::vector<std::pair<double, double>> out;
    out.reserve(pts.size());
    for (const Point& p : pts) out.emplace_back(p.x, p.y);
    return out;
}

std::string repr_shape(const Shape& s) {
    std::ostringstream os;
    if (const auto* h = std::get_if<Halfplane>(&s))
        os << "Halfplane(normal=(" << h->normal.x << ", " << h->normal.y << "), offset=" << h->offset << ")";
    else if (const auto* d = std::get_if<Disk>(&s))
        os << "Disk(center=(" << d->center.x << ", " << d->center.y << "), radius=" << d->radius << ")";
    else {
        const auto& r = std::get<Rect>(s);
        os << "Rect(x=[" << r.x_lo << ", " << r.x_hi << "], y=[" << r.y_lo << ", " << r.y_hi << "])";
    }
    return os.str();
}

}  // namespace

PYBIND11_MODULE(_trajscan, m) {
    m.doc() = "Spatial scan statistics over trajectories";

    py::register_exception<std::invalid_argument>(m, "ConfigError", PyExc_ValueError);

    py::enum_<ShapeFamily>(m, "ShapeFamily")
        .value("HALFPLANE", ShapeFamily::Halfplane)
        .value("DISK", ShapeFamily::Disk)
        .value("RECT", ShapeFamily::Rect);
    py::enum_<Model>(m, "Model").value("FLUX", Model::Flux).value("PARTIAL", Model::Partial).value("FULL", Model::Full);
    py::enum_<DiscrepancyKind>(m, "DiscrepancyKind")
        .value("KULLDORFF", DiscrepancyKind::Kulldorff)
        .value("LINEAR", DiscrepancyKind::Linear);
    py::enum_<CoresetTag>(m, "CoresetTag")
        .value("ALL_WAYPOINTS", CoresetTag::AllWaypoints)
        .value("RANDOM_SAMPLE", CoresetTag::RandomSample)
        .value("EVEN", CoresetTag::Even)
        .value("DOUGLAS_PEUCKER", CoresetTag::DouglasPeucker)
        .value("CONVEX_HULL", CoresetTag::ConvexHull)
        .value("APPROX_HULL", CoresetTag::ApproxHull)
        .value("LIFTED_HULL", CoresetTag::LiftedHull)
        .value("GRID_KERNEL", CoresetTag::GridKernel)
        .value("GRIDDING", CoresetTag::Gridding);
    py::enum_<Generator>(m, "Generator")
        .value("RANDOM_WALK", Generator::RandomWalk)
        .value("SEGMENT_BUNDLE", Generator::SegmentBundle);
    py::enum_<Membership>(m, "Membership")
        .value("SEGMENTS", Membership::Segments)
        .value("WAYPOINTS", Membership::Waypoints);

    py::class_<Halfplane>(m, "Halfplane")
        .def(py::init([](std::pair<double, double> n, double off) { return Halfplane{{n.first, n.second}, off}; }),
             py::arg("normal"), py::arg("offset"))
        .def_property_readonly("normal", [](const Halfplane& h) { return std::pair{h.normal.x, h.normal.y}; })
        .def_readonly("offset", &Halfplane::offset)
        .def("__repr__", [](const Halfplane& h) { return repr_shape(h); });
    py::class_<Disk>(m, "Disk")
        .def(py::init([](std::pair<double, double> c, double r) { return Disk{{c.first, c.second}, r}; }),
             py::arg("center"), py::arg("radius"))
        .def_property_readonly("center", [](const Disk& d) { return std::pair{d.center.x, d.center.y}; })
        .def_readonly("radius", &Disk::radius)
        .def("__repr__", [](const Disk& d) { return repr_shape(d); });
    py::class_<Rect>(m, "Rect")
        .def(py::init<double, double, double, double>(), py::arg("x_lo"), py::arg("x_hi"), py::arg("y_lo"),
             py::arg("y_hi"))
        .def_readonly("x_lo", &Rect::x_lo)
        .def_readonly("x_hi", &Rect::x_hi)
        .def_readonly("y_lo", &Rect::y_lo)
        .def_readonly("y_hi", &Rect::y_hi)
        .def("__repr__", [](const Rect& r) { return repr_shape(r); });

    py::class_<DiscrepancyFn>(m, "DiscrepancyFn")
        .def(py::init<DiscrepancyKind, bool>(), py::arg("kind") = DiscrepancyKind::Kulldorff,
             py::arg("one_sided") = false)
        .def_readwrite("kind", &DiscrepancyFn::kind)
        .def_readwrite("one_sided", &DiscrepancyFn::one_sided)
        .def("__call__", &DiscrepancyFn::operator(), py::arg("r"), py::arg("b"));
    m.def("kulldorff", &kulldorff, py::arg("r"), py::arg("b"));
    m.def("linear", &linear, py::arg("r"), py::arg("b"));

    py::class_<RegionStats>(m, "RegionStats")
        .def_readonly("r_frac", &RegionStats::r_frac)
        .def_readonly("b_frac", &RegionStats::b_frac)
        .def_readonly("phi", &RegionStats::phi)
        .def("__repr__", [](const RegionStats& s) {
            std::ostringstream os;
            os << "RegionStats(r_frac=" << s.r_frac << ", b_frac=" << s.b_frac << ", phi=" << s.phi << ")";
            return os.str();
        });

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init([](TrajId id, const std::vector<std::pair<double, double>>& wp, double recorded, double baseline) {
                 return Trajectory{id, to_points(wp), recorded, baseline};
             }),
             py::arg("id"), py::arg("waypoints"), py::arg("recorded") = 0.0, py::arg("baseline") = 1.0)
        .def_readwrite("id", &Trajectory::id)
        .def_property(
            "waypoints", [](const Trajectory& t) { return from_points(t.waypoints); },
            [](Trajectory& t, const std::vector<std::pair<double, double>>& wp) { t.waypoints = to_points(wp); })
        .def_readwrite("recorded", &Trajectory::recorded)
        .def_readwrite("baseline", &Trajectory::baseline)
        .def("arclength", [](const Trajectory& t) { return arclength(t); });

    py::class_<TrajectoryDataset>(m, "TrajectoryDataset")
        .def(py::init([](const std::vector<Trajectory>& ts) {
                 TrajectoryDataset ds;
                 ds.trajectories = ts;
                 return ds;
             }),
             py::arg("trajectories"))
        .def_readwrite("trajectories", &TrajectoryDataset::trajectories)
        .def("__len__", &TrajectoryDataset::size)
        .def("recorded_count", &TrajectoryDataset::recorded_count)
        .def("waypoint_count", &TrajectoryDataset::waypoint_count);
    m.def("normalize", &normalize, py::arg("dataset"));

    py::class_<CoresetMethod>(m, "CoresetMethod")
        .def(py::init([](CoresetTag tag, double alpha, double r, std::uint64_t seed) {
                 CoresetMethod cm;
                 cm.tag = tag;
                 cm.alpha = alpha;
                 cm.r = r;
                 cm.seed = seed;
                 return cm;
             }),
             py::arg("tag"), py::arg("alpha") = 0.01, py::arg("r") = 0.0, py::arg("seed") = 0)
        .def_readwrite("tag", &CoresetMethod::tag)
        .def_readwrite("alpha", &CoresetMethod::alpha)
        .def_readwrite("r", &CoresetMethod::r)
        .def_readwrite("seed", &CoresetMethod::seed);
    m.def(
        "simplify", [](const Trajectory& t, const CoresetMethod& cm) { return from_points(simplify(t, cm)); },
        py::arg("trajectory"), py::arg("method"));

    py::class_<SyntheticConfig>(m, "SyntheticConfig")
        .def(py::init([](std::size_t n_traj, std::size_t wp_min, std::size_t wp_max, double step, Generator g,
                         std::uint64_t seed) { return SyntheticConfig{n_traj, wp_min, wp_max, step, g, seed}; }),
             py::arg("n_traj") = 100, py::arg("wp_min") = 5, py::arg("wp_max") = 20, py::arg("step_scale") = 0.02,
             py::arg("generator") = Generator::RandomWalk, py::arg("seed") = 0)
        .def_readwrite("n_traj", &SyntheticConfig::n_traj)
        .def_readwrite("wp_min", &SyntheticConfig::wp_min)
        .def_readwrite("wp_max", &SyntheticConfig::wp_max)
        .def_readwrite("step_scale", &SyntheticConfig::step_scale)
        .def_readwrite("generator", &SyntheticConfig::generator)
        .def_readwrite("seed", &SyntheticConfig::seed);
    m.def("generate_synthetic", &generate_synthetic, py::arg("config"));

    py::class_<PlantConfig>(m, "PlantConfig")
        .def(py::init([](ShapeFamily fam, Model model, double p, double q, double f, std::uint64_t seed) {
                 return PlantConfig{fam, model, p, q, f, seed};
             }),
             py::arg("family") = ShapeFamily::Disk, py::arg("model") = Model::Full, py::arg("p") = 0.5,
             py::arg("q") = 0.8, py::arg("f") = 0.05, py::arg("seed") = 0)
        .def_readwrite("family", &PlantConfig::family)
        .def_readwrite("model", &PlantConfig::model)
        .def_readwrite("p", &PlantConfig::p)
        .def_readwrite("q", &PlantConfig::q)
        .def_readwrite("f", &PlantConfig::f)
        .def_readwrite("seed", &PlantConfig::seed);
    py::class_<Planted>(m, "Planted")
        .def_readonly("dataset", &Planted::dataset)
        .def_readonly("shape", &Planted::shape)
        .def_readonly("stats", &Planted::stats)
        .def_readonly("realized_f", &Planted::realized_f);
    m.def("plant", &plant, py::arg("dataset"), py::arg("config"), py::arg("fn"));

    m.def("evaluate_dataset", &evaluate_dataset, py::arg("dataset"), py::arg("shape"), py::arg("model"),
          py::arg("fn"), py::arg("membership") = Membership::Segments);

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("shape", &ScanResult::shape)
        .def_readonly("stats", &ScanResult::stats)
        .def_readonly("found", &ScanResult::found)
        .def_readonly("candidates", &ScanResult::candidates);

    m.def(
        "exact_scan",
        [](const TrajectoryDataset& ds, ShapeFamily fam, Model model, const DiscrepancyFn& fn, Membership membership,
           bool enforce_guard, double r_min, double r_max) {
            ExactOptions o;
            o.membership = membership;
            o.enforce_guard = enforce_guard;
            o.window = {r_min, r_max};
            return exact_scan(ds, fam, model, fn, o);
        },
        py::arg("dataset"), py::arg("family"), py::arg("model"), py::arg("fn"),
        py::arg("membership") = Membership::Segments, py::arg("enforce_guard") = true, py::arg("r_min") = 0.0,
        py::arg("r_max") = std::numeric_limits<double>::infinity());

    py::class_<ScanSettings>(m, "ScanSettings")
        .def(py::init<>())
        .def_readwrite("model", &ScanSettings::model)
        .def_readwrite("family", &ScanSettings::family)
        .def_readwrite("fn", &ScanSettings::fn)
        .def_readwrite("eps", &ScanSettings::eps)
        .def_readwrite("delta", &ScanSettings::delta)
        .def_readwrite("c_net", &ScanSettings::c_net)
        .def_readwrite("c_sample", &ScanSettings::c_sample)
        .def_readwrite("net_size", &ScanSettings::net_override)
        .def_readwrite("sample_size", &ScanSettings::sample_override)
        .def_readwrite("alpha", &ScanSettings::alpha)
        .def_readwrite("r_min", &ScanSettings::r_min)
        .def_readwrite("r_max", &ScanSettings::r_max)
        .def_readwrite("z", &ScanSettings::z)
        .def_readwrite("naive_disk", &ScanSettings::naive_disk)
        .def_readwrite("hull_trick", &ScanSettings::hull_trick)
        .def_readwrite("exact_eval", &ScanSettings::exact_eval)
        .def_readwrite("coreset", &ScanSettings::coreset)
        .def_readwrite("partial_method", &ScanSettings::partial_method)
        .def_readwrite("max_side", &ScanSettings::max_side)
        .def_readwrite("mass_cap", &ScanSettings::mass_cap)
        .def_readwrite("seed", &ScanSettings::seed)
        .def("validate", &ScanSettings::validate);

    py::class_<ScanRun>(m, "ScanRun")
        .def_readonly("result", &ScanRun::result)
        .def_readonly("full_stats", &ScanRun::full_stats)
        .def_readonly("n", &ScanRun::n)
        .def_readonly("s", &ScanRun::s)
        .def_readonly("n_k", &ScanRun::n_k)
        .def_readonly("s_k", &ScanRun::s_k)
        .def_readonly("runtime_ms", &ScanRun::runtime_ms);
    m.def("run_scan", &run_scan, py::arg("dataset"), py::arg("settings"), py::call_guard<py::gil_scoped_release>());

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("seed", &TrialRecord::seed)
        .def_readonly("planted_phi", &TrialRecord::planted_phi)
        .def_readonly("found_phi", &TrialRecord::found_phi)
        .def_readonly("found_shape", &TrialRecord::found_shape)
        .def_readonly("runtime_ms", &TrialRecord::runtime_ms);
    py::class_<PowerReport>(m, "PowerReport")
        .def_readonly("trials", &PowerReport::trials)
        .def_readonly("recovery_rate", &PowerReport::recovery_rate)
        .def_readonly("threshold", &PowerReport::threshold)
        .def("to_csv", &PowerReport::to_csv, py::arg("with_timing") = true);
    m.def("power_experiment", &power_experiment, py::arg("data"), py::arg("plant"), py::arg("scan"),
          py::arg("trials"), py::arg("threshold") = 0.9, py::call_guard<py::gil_scoped_release>());

    m.def("set_thread_count", &set_thread_count, py::arg("threads"));
}
