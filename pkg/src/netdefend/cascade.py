"""Capacity assignment and overload-cascade propagation.

Every node gets a fixed capacity proportional to its initial load. After
an attack removes a set of nodes, loads are recomputed on the survivors;
any survivor whose load strictly exceeds its capacity fails, all such
failures in a round are removed together, and the process repeats until a
round produces no new failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, largest_component_size
from .load import compute_load

__all__ = [
    "CapacityProfile",
    "CascadeResult",
    "assign_capacity",
    "run_cascade",
    "intact_result",
    "largest_component_damage",
    "removed_capacity_damage",
]


@dataclass(frozen=True)
class CapacityProfile:
    """Frozen per-node capacities: (1 + tolerance) x initial load."""

    capacity: np.ndarray
    tolerance: float
    initial_load: np.ndarray
    load_convention: str = "count"

    @property
    def total(self) -> float:
        return float(self.capacity.sum())


@dataclass(frozen=True)
class CascadeResult:
    """Outcome of one attack: who fell, and the two damage readings."""

    attacked: np.ndarray
    overloaded: np.ndarray
    rounds: int
    largest_component: int
    removed_capacity: float

    @property
    def removed_count(self) -> int:
        return int(self.attacked.size + self.overloaded.size)


def assign_capacity(g: Graph, alpha: float, convention: str = "count") -> CapacityProfile:
    """Capacity vector (1+alpha) x load over the fully-alive graph."""
    if alpha <= 0:
        raise ValueError(f"tolerance alpha must be positive, got {alpha}")
    initial = compute_load(g, convention=convention)
    return CapacityProfile(
        capacity=(1.0 + alpha) * initial,
        tolerance=float(alpha),
        initial_load=initial,
        load_convention=convention,
    )


def run_cascade(g: Graph, cap: CapacityProfile, attacked: np.ndarray) -> CascadeResult:
    """Remove the attacked nodes and propagate overloads to a fixed point.

    Overload is strict: a recomputed load exactly at capacity survives. A
    small absolute guard (1e-9 scaled by capacity) keeps float rounding in
    the capacity product from producing spurious failures; loads
    themselves are integer-valued.
    """
    attacked = np.unique(np.asarray(attacked, dtype=np.int64))
    if attacked.size == 0:
        raise ValueError("attacked set must be non-empty")
    if attacked.min() < 0 or attacked.max() >= g.n:
        raise ValueError("attacked node id out of range")

    capacity = cap.capacity
    guard = capacity + 1e-9 * np.maximum(1.0, capacity)
    alive = np.ones(g.n, dtype=bool)
    alive[attacked] = False
    overloaded: list[np.ndarray] = []
    rounds = 0
    while alive.any():
        loads = compute_load(g, alive, convention=cap.load_convention)
        failed = alive & (loads > guard)
        if not failed.any():
            break
        ids = np.flatnonzero(failed)
        overloaded.append(ids)
        alive[ids] = False
        rounds += 1

    all_overloaded = (
        np.concatenate(overloaded) if overloaded else np.empty(0, dtype=np.int64)
    )
    all_overloaded.sort()
    removed = np.concatenate([attacked, all_overloaded])
    return CascadeResult(
        attacked=attacked,
        overloaded=all_overloaded,
        rounds=rounds,
        largest_component=largest_component_size(g, alive),
        removed_capacity=float(capacity[removed].sum()),
    )


def intact_result(g: Graph) -> CascadeResult:
    """Result of an empty attack: nothing removed, the network as it stands."""
    return CascadeResult(
        attacked=np.empty(0, dtype=np.int64),
        overloaded=np.empty(0, dtype=np.int64),
        rounds=0,
        largest_component=largest_component_size(g),
        removed_capacity=0.0,
    )


def largest_component_damage(result: CascadeResult) -> int:
    """Damage reading 1: size of the largest surviving component."""
    return result.largest_component


def removed_capacity_damage(result: CascadeResult) -> float:
    """Damage reading 2: total capacity of all removed nodes."""
    return result.removed_capacity
