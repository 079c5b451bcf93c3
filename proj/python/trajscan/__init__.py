"""Spatial scan statistics over trajectory data (flux, partial and full models)."""

from ._trajscan import (
    ConfigError,
    CoresetMethod,
    CoresetTag,
    DiscrepancyFn,
    DiscrepancyKind,
    Disk,
    Generator,
    Halfplane,
    Membership,
    Model,
    PlantConfig,
    Rect,
    ScanSettings,
    ShapeFamily,
    SyntheticConfig,
    Trajectory,
    TrajectoryDataset,
    evaluate_dataset,
    exact_scan,
    generate_synthetic,
    kulldorff,
    linear,
    normalize,
    plant,
    power_experiment,
    run_scan,
    set_thread_count,
    simplify,
)

__all__ = [name for name in dir() if not name.startswith("_")]


def dataset(trajectories):
    """Build a TrajectoryDataset from (waypoints, recorded) pairs or Trajectory objects."""
    out = []
    for i, t in enumerate(trajectories):
        if isinstance(t, Trajectory):
            out.append(t)
        else:
            waypoints, recorded = t
            out.append(Trajectory(i, list(waypoints), float(recorded)))
    return TrajectoryDataset(out)
