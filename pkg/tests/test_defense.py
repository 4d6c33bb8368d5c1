"""Defense allocation and the two budget-matched attack builders."""

import numpy as np
import pytest

from netdefend import (
    CA,
    DA,
    AttackPlan,
    CapacityProfile,
    GeneratorConfig,
    allocate_defense,
    assign_capacity,
    build_concentrated,
    build_distributed,
    generate,
    tie_permutation,
)


def profile_from_capacities(values):
    values = np.asarray(values, dtype=np.float64)
    return CapacityProfile(
        capacity=values, tolerance=0.3, initial_load=values / 1.3
    )


@pytest.fixture
def fixture_profiles(star5, path4, cycle5, two_hub):
    profs = [assign_capacity(g, 0.3) for g in (star5, path4, cycle5, two_hub)]
    profs.append(
        assign_capacity(
            generate(GeneratorConfig(model="ba", n=100, mean_degree=4.0, seed=6)), 0.3
        )
    )
    return profs


class TestAllocateDefense:
    def test_budget_conservation(self, fixture_profiles):
        for cap in fixture_profiles:
            total = cap.capacity.sum()
            for beta in (0.0, 0.5, 1.0, 2.0):
                alloc = allocate_defense(cap, beta)
                assert alloc.protection.sum() == pytest.approx(total, rel=1e-9)
                assert alloc.budget == pytest.approx(total, rel=1e-12)

    def test_beta_one_returns_capacities_exactly(self, fixture_profiles):
        for cap in fixture_profiles:
            alloc = allocate_defense(cap, 1.0)
            assert np.array_equal(alloc.protection, cap.capacity)

    def test_beta_zero_is_uniform_including_zero_capacity(self, star5):
        cap = assign_capacity(star5, 0.3)
        alloc = allocate_defense(cap, 0.0)
        np.testing.assert_allclose(alloc.protection, [7.8 / 5] * 5, rtol=1e-12)

    def test_positive_beta_gives_zero_capacity_nothing(self, star5):
        cap = assign_capacity(star5, 0.3)
        for beta in (0.5, 2.0):
            alloc = allocate_defense(cap, beta)
            assert np.all(alloc.protection[1:] == 0.0)
            assert alloc.protection[0] == pytest.approx(7.8, rel=1e-12)

    def test_scale_covariance(self):
        base = profile_from_capacities([1.0, 2.0, 5.0, 9.0])
        scaled = profile_from_capacities([3.0, 6.0, 15.0, 27.0])
        for beta in (0.0, 0.7, 1.0, 2.5):
            a = allocate_defense(base, beta).protection
            b = allocate_defense(scaled, beta).protection
            np.testing.assert_allclose(b, 3.0 * a, rtol=1e-12)

    def test_negative_beta_rejected_on_zero_capacity(self, star5):
        cap = assign_capacity(star5, 0.3)
        with pytest.raises(ValueError):
            allocate_defense(cap, -0.5)

    def test_negative_beta_with_floor(self, star5):
        cap = assign_capacity(star5, 0.3)
        alloc = allocate_defense(cap, -0.5, capacity_floor=0.1)
        # floor lifts the budget too: R = sum(max(C, floor))
        assert alloc.budget == pytest.approx(7.8 + 4 * 0.1, rel=1e-12)
        # cheap nodes now get the most protection
        assert np.all(alloc.protection[1:] > alloc.protection[0])
        assert alloc.protection.sum() == pytest.approx(alloc.budget, rel=1e-9)

    def test_floor_applies_before_weighting(self):
        cap = profile_from_capacities([0.0, 4.0])
        alloc = allocate_defense(cap, 1.0, capacity_floor=1.0)
        np.testing.assert_allclose(alloc.protection, [1.0, 4.0])

    def test_large_beta_does_not_overflow(self):
        cap = profile_from_capacities([1e3, 2e3, 4e3])
        alloc = allocate_defense(cap, 200.0)
        assert np.isfinite(alloc.protection).all()
        assert alloc.protection[2] == pytest.approx(7e3, rel=1e-9)

    def test_all_zero_capacity_rejected(self):
        cap = profile_from_capacities([0.0, 0.0])
        with pytest.raises(ValueError):
            allocate_defense(cap, 1.0)


class TestConcentratedAttack:
    def test_targets_largest_capacity(self):
        cap = profile_from_capacities([3.0, 9.0, 1.0, 5.0])
        alloc = allocate_defense(cap, 1.0)
        plan = build_concentrated(cap, alloc, k=2)
        assert plan.strategy == CA
        assert list(plan.targets) == [1, 3]
        assert plan.total_cost == pytest.approx(14.0)
        np.testing.assert_allclose(plan.cost_per_target, [9.0, 5.0])

    def test_cost_strictly_increasing_in_beta(self):
        # with a unique maximum, the top node's share grows with beta
        rng = np.random.default_rng(19)
        for _ in range(50):
            values = rng.uniform(0.5, 10.0, size=int(rng.integers(3, 30)))
            values[int(rng.integers(0, values.size))] = 12.0  # unique max
            cap = profile_from_capacities(values)
            costs = []
            for beta in (0.0, 0.5, 1.0, 2.0):
                alloc = allocate_defense(cap, beta)
                costs.append(build_concentrated(cap, alloc, k=1).total_cost)
            assert all(b > a for a, b in zip(costs, costs[1:]))

    def test_tie_break_follows_permutation(self):
        cap = profile_from_capacities([4.0, 4.0, 4.0, 1.0])
        alloc = allocate_defense(cap, 1.0)
        by_id = build_concentrated(cap, alloc, k=1)
        assert list(by_id.targets) == [0]
        tie = np.array([2, 1, 0, 3])  # node 2 now has top priority
        shuffled = build_concentrated(cap, alloc, k=1, tie_order=tie)
        assert list(shuffled.targets) == [2]

    def test_k_validation(self):
        cap = profile_from_capacities([1.0, 2.0])
        alloc = allocate_defense(cap, 1.0)
        for k in (0, 3):
            with pytest.raises(ValueError):
                build_concentrated(cap, alloc, k=k)

    def test_plan_json_roundtrip(self):
        cap = profile_from_capacities([3.0, 9.0, 1.0])
        alloc = allocate_defense(cap, 0.5)
        plan = build_concentrated(cap, alloc, k=2)
        back = AttackPlan.from_json(plan.to_json())
        assert back.strategy == plan.strategy
        assert np.array_equal(back.targets, plan.targets)
        np.testing.assert_array_equal(back.cost_per_target, plan.cost_per_target)
        assert back.total_cost == plan.total_cost


class TestDistributedAttack:
    def test_walks_ascending_capacity(self):
        cap = profile_from_capacities([5.0, 1.0, 3.0, 2.0])
        alloc = allocate_defense(cap, 1.0)
        plan = build_distributed(cap, alloc, budget=6.0)
        assert plan.strategy == DA
        assert list(plan.targets) == [1, 3, 2]
        assert plan.total_cost == pytest.approx(6.0)

    def test_budget_boundary_is_inclusive(self):
        cap = profile_from_capacities([2.0, 2.0, 2.0])
        alloc = allocate_defense(cap, 1.0)
        plan = build_distributed(cap, alloc, budget=4.0)
        assert plan.size == 2  # exactly affordable pair, third would exceed

    def test_next_node_would_exceed_budget(self):
        rng = np.random.default_rng(29)
        for _ in range(25):
            values = rng.uniform(0.2, 5.0, size=20)
            cap = profile_from_capacities(values)
            alloc = allocate_defense(cap, float(rng.uniform(0.2, 2.5)))
            budget = float(
                build_concentrated(cap, alloc, k=1).total_cost
            )
            plan = build_distributed(cap, alloc, budget)
            assert plan.total_cost <= budget * (1 + 1e-12)
            order = np.lexsort((np.arange(20), cap.capacity))
            if plan.size < 20:
                next_cost = alloc.protection[order[plan.size]]
                assert plan.total_cost + next_cost > budget

    def test_zero_cost_nodes_all_taken_first(self, star5):
        cap = assign_capacity(star5, 0.3)
        alloc = allocate_defense(cap, 2.0)  # leaves cost 0, hub costs 7.8
        plan = build_distributed(cap, alloc, budget=7.8)
        assert sorted(plan.targets[:4]) == [1, 2, 3, 4]
        assert plan.size == 5  # hub exactly affordable after free leaves

    def test_empty_plan_when_nothing_affordable(self):
        cap = profile_from_capacities([4.0, 6.0])
        alloc = allocate_defense(cap, 1.0)
        plan = build_distributed(cap, alloc, budget=1.0)
        assert plan.size == 0
        assert plan.total_cost == 0.0

    def test_budget_must_be_positive(self):
        cap = profile_from_capacities([1.0, 2.0])
        alloc = allocate_defense(cap, 1.0)
        with pytest.raises(ValueError):
            build_distributed(cap, alloc, budget=0.0)

    def test_shared_tie_order_with_concentrated(self):
        # equal capacities: the same permutation drives both builders
        cap = profile_from_capacities([2.0, 2.0, 2.0, 2.0])
        alloc = allocate_defense(cap, 1.0)
        tie = tie_permutation(4, seed=99)
        ca_plan = build_concentrated(cap, alloc, k=1, tie_order=tie)
        da_plan = build_distributed(cap, alloc, budget=2.0, tie_order=tie)
        # all costs equal, so DA affords exactly one node and both picked
        # the minimum-priority node first
        assert ca_plan.targets[0] == da_plan.targets[0]
        assert da_plan.size == 1


class TestTiePermutation:
    def test_unseeded_is_identity(self):
        assert list(tie_permutation(5, None)) == [0, 1, 2, 3, 4]

    def test_seeded_is_deterministic_permutation(self):
        a = tie_permutation(12, seed=5)
        b = tie_permutation(12, seed=5)
        c = tie_permutation(12, seed=6)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)
        assert sorted(a) == list(range(12))
