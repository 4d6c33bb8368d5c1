"""How the defense exponent beta reshapes protection and attack costs.

One scale-free network, one fixed budget R = sum of capacities. For a
range of beta values the script prints how much protection the biggest
node gets, what share the bottom half of the network keeps, and what the
two representative attacks would cost. The concentrated attack's price
rises monotonically with beta; the distributed attack's target count
shrinks as the cheap tail gets more protection.

Run:  python3 demos/defense_allocation_profiles.py
"""

import numpy as np

from netdefend import (
    GeneratorConfig,
    allocate_defense,
    assign_capacity,
    build_concentrated,
    build_distributed,
    generate,
)


def main():
    g = generate(GeneratorConfig(model="ba", n=1000, mean_degree=4.0, seed=7))
    cap = assign_capacity(g, alpha=0.3, convention="endpoint")
    total = cap.total
    half = g.n // 2
    cheap_half = np.argsort(cap.capacity)[:half]

    print(f"network: n={g.n} edges={g.num_edges} budget R={total:.1f}")
    print(f"{'beta':>5} {'p_max':>12} {'bottom-half share':>18} "
          f"{'E_CA':>12} {'DA targets':>11}")
    for beta in (0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5):
        alloc = allocate_defense(cap, beta)
        ca = build_concentrated(cap, alloc, k=1)
        da = build_distributed(cap, alloc, budget=ca.total_cost)
        p_max = float(alloc.protection.max())
        share = float(alloc.protection[cheap_half].sum()) / total
        print(f"{beta:5.2f} {p_max:12.1f} {share:18.4f} "
              f"{ca.total_cost:12.1f} {da.size:11d}")

    print(
        "\nreading: at beta=0 protection is uniform, so the top node is cheap"
        "\nto remove but the cheap half holds half the budget; as beta grows"
        "\nthe top node's removal price approaches the entire budget while the"
        "\ncheap tail goes unprotected, letting the distributed attack sweep"
        "\nup ever more of the network."
    )


if __name__ == "__main__":
    main()
