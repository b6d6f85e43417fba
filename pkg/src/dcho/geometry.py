"""Positions, the UE's straight-line trajectory, and box obstacles."""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels

KMH_TO_MS = 1.0 / 3.6


class Point3(NamedTuple):
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=np.float64)


@dataclass(frozen=True)
class Trajectory:
    """Straight-line motion: start point, unit direction, speed in km/h."""

    start: Point3
    direction: Point3
    speed_kmh: float

    def __post_init__(self):
        norm = math.sqrt(sum(c * c for c in self.direction))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"direction must be a unit vector, |v| = {norm}")
        if self.speed_kmh < 0:
            raise ValueError("speed must be non-negative")


@dataclass(frozen=True)
class Obstacle:
    """Axis-aligned box given by its min and max corners."""

    min_corner: Point3
    max_corner: Point3

    def __post_init__(self):
        for lo, hi in zip(self.min_corner, self.max_corner):
            if lo > hi:
                raise ValueError("obstacle min corner must be <= max corner")

    def as_bounds(self) -> np.ndarray:
        return np.concatenate([self.min_corner, self.max_corner]).astype(np.float64)


def position_at(traj: Trajectory, t_s: float) -> Point3:
    """UE position after ``t_s`` seconds along the trajectory."""
    step = traj.speed_kmh * KMH_TO_MS * t_s
    return Point3(
        traj.start.x + traj.direction.x * step,
        traj.start.y + traj.direction.y * step,
        traj.start.z + traj.direction.z * step,
    )


def positions_over(traj: Trajectory, times_s: np.ndarray) -> np.ndarray:
    """Positions for a whole tick grid, shape (T, 3)."""
    step = traj.speed_kmh * KMH_TO_MS * np.asarray(times_s, dtype=np.float64)
    return traj.start.as_array()[None, :] + step[:, None] * traj.direction.as_array()[None, :]


def distance_3d(a: Point3, b: Point3) -> float:
    """Euclidean distance, summed in axis order.

    Deliberately the naive form rather than math.dist: its rounding then
    matches the engine's vectorised sqrt((dp*dp).sum(axis=1)) bit-for-bit,
    and coordinates are meters-scale so overflow is not a concern.
    """
    dx = b.x - a.x
    dy = b.y - a.y
    dz = b.z - a.z
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def obstacle_bounds(obstacles: list[Obstacle]) -> np.ndarray:
    """Stack obstacles into the (B, 6) bounds array the kernels consume."""
    if not obstacles:
        return np.zeros((0, 6), dtype=np.float64)
    return np.stack([o.as_bounds() for o in obstacles])


def blockage_count(a: Point3, b: Point3, obstacles: list[Obstacle]) -> int:
    """Obstacles whose interior the open segment (a, b) passes through.

    Boundary contact (grazing a face, corner, or an endpoint resting on a
    face) does not count.
    """
    boxes = obstacle_bounds(obstacles)
    counts = kernels.blockage_counts(
        a.as_array()[None, :], b.as_array()[None, :], boxes
    )
    return int(counts[0, 0])
