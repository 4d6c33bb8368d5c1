"""Capacity-graded defense allocation and the two representative attacks.

The defender splits a total budget equal to the network's total capacity
across nodes in proportion to capacity raised to an exponent beta. Beta is
the single control knob: zero protects every node equally, large values
concentrate protection on the biggest nodes. Removing a node costs the
attacker exactly its protection level.

Two attacker archetypes are built against a common budget:

* CA (concentrated attack): take the k largest-capacity nodes outright.
* DA (distributed attack): walk nodes in ascending capacity order and buy
  greedily until the next node would exceed the CA budget.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .cascade import CapacityProfile

__all__ = [
    "CA",
    "DA",
    "DefenseAllocation",
    "AttackPlan",
    "allocate_defense",
    "tie_permutation",
    "build_concentrated",
    "build_distributed",
]

CA = "CA"
DA = "DA"

# Relative slack when testing a candidate against the budget, so a node
# that is exactly affordable is not excluded by float rounding.
BUDGET_SLACK = 1e-12


@dataclass(frozen=True)
class DefenseAllocation:
    """Per-node protection levels summing to the total defense budget."""

    protection: np.ndarray
    beta: float
    budget: float

    @property
    def attack_cost(self) -> np.ndarray:
        """Removing node i costs the attacker exactly protection[i]."""
        return self.protection


@dataclass(frozen=True)
class AttackPlan:
    """A target list in selection order, with per-target and total costs."""

    strategy: str
    targets: np.ndarray
    cost_per_target: np.ndarray
    total_cost: float

    @property
    def size(self) -> int:
        return int(self.targets.size)

    def to_json(self) -> str:
        return json.dumps(
            {
                "strategy": self.strategy,
                "targets": [int(v) for v in self.targets],
                "cost_per_target": [float(c) for c in self.cost_per_target],
                "total_cost": self.total_cost,
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "AttackPlan":
        obj = json.loads(text)
        return cls(
            strategy=str(obj["strategy"]),
            targets=np.asarray(obj["targets"], dtype=np.int64),
            cost_per_target=np.asarray(obj["cost_per_target"], dtype=np.float64),
            total_cost=float(obj["total_cost"]),
        )


def allocate_defense(
    cap: CapacityProfile, beta: float, capacity_floor: float = 0.0
) -> DefenseAllocation:
    """Split the budget R = sum(C_i) as p_i = R * C_i^beta / sum_j C_j^beta.

    beta = 1 reproduces the capacities exactly (enforced as an identity,
    not left to rounding). beta = 0 is uniform, with 0^0 taken as 1 so
    zero-capacity nodes still get their equal share. For beta > 0 a zero
    capacity earns zero protection. Negative beta would hand zero-capacity
    nodes a divide-by-zero, so it is rejected unless capacity_floor lifts
    every node off zero first (or none sit at zero to begin with).
    """
    capacity = cap.capacity
    if capacity_floor < 0:
        raise ValueError(f"capacity_floor must be non-negative, got {capacity_floor}")
    if capacity_floor > 0:
        capacity = np.maximum(capacity, capacity_floor)
    budget = float(capacity.sum())
    if budget <= 0:
        raise ValueError("total capacity is zero; nothing to allocate")
    if beta < 0 and (capacity == 0).any():
        raise ValueError(
            "beta < 0 is undefined on zero-capacity nodes; "
            "set capacity_floor > 0 to make it usable"
        )

    if beta == 1.0:
        protection = capacity.copy()
    elif beta == 0.0:
        protection = np.full(capacity.size, budget / capacity.size)
    else:
        # Divide by the max before exponentiating so large beta cannot
        # overflow; the normalization cancels the rescaling.
        scale = capacity.max()
        weights = np.zeros(capacity.size)
        positive = capacity > 0
        weights[positive] = (capacity[positive] / scale) ** beta
        protection = budget * weights / weights.sum()
    return DefenseAllocation(protection=protection, beta=float(beta), budget=budget)


def tie_permutation(n: int, seed: int | None) -> np.ndarray:
    """Tie-break priorities: a seeded shuffle, or node-id order if unseeded.

    Nodes with exactly equal capacity are ordered by ascending priority.
    A fixed seed makes tied choices reproducible while spreading them
    uniformly; without a seed, lower ids win.
    """
    if seed is None:
        return np.arange(n, dtype=np.int64)
    return np.random.default_rng(seed).permutation(n).astype(np.int64)


def build_concentrated(
    cap: CapacityProfile,
    defense: DefenseAllocation,
    k: int = 1,
    tie_order: np.ndarray | None = None,
) -> AttackPlan:
    """Target the k largest-capacity nodes; cost is their total protection."""
    n = cap.capacity.size
    if k < 1 or k > n:
        raise ValueError(f"attack size k={k} outside [1, {n}]")
    if tie_order is None:
        tie_order = np.arange(n, dtype=np.int64)
    order = np.lexsort((tie_order, -cap.capacity))
    targets = order[:k].astype(np.int64)
    costs = defense.attack_cost[targets]
    return AttackPlan(
        strategy=CA,
        targets=targets,
        cost_per_target=costs,
        total_cost=float(costs.sum()),
    )


def build_distributed(
    cap: CapacityProfile,
    defense: DefenseAllocation,
    budget: float,
    tie_order: np.ndarray | None = None,
) -> AttackPlan:
    """Buy nodes in ascending capacity order until the budget runs out.

    The walk stops at the first node whose cost would push the total past
    the budget; zero-cost nodes all precede any paid one. The plan may be
    empty when even the cheapest node is unaffordable.
    """
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    n = cap.capacity.size
    if tie_order is None:
        tie_order = np.arange(n, dtype=np.int64)
    order = np.lexsort((tie_order, cap.capacity))
    ordered_cost = defense.attack_cost[order]
    # The greedy prefix is the longest run of the cumulative cost that
    # stays affordable; costs are non-negative, so the running total is
    # non-decreasing and the cut point is a single search.
    running = np.cumsum(ordered_cost)
    limit = budget * (1.0 + BUDGET_SLACK)
    n_affordable = int(np.searchsorted(running, limit, side="right"))
    targets = order[:n_affordable].astype(np.int64)
    costs = ordered_cost[:n_affordable]
    return AttackPlan(
        strategy=DA,
        targets=targets,
        cost_per_target=costs,
        total_cost=float(costs.sum()),
    )
