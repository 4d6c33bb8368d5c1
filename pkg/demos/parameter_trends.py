"""How the optimal defense exponent moves with network parameters.

Runs the crossover search while varying one structural knob at a time
(size, tolerance, mean degree, degree heterogeneity) and reports the
measured direction of each series. More tolerant, denser, or more
homogeneous networks all pull the crossover down. So does size at the
scales probed here: the single-hub cascade destroys a shrinking fraction
of a growing network while the matched budget keeps roughly the same
relative purchasing power, so the distributed attack catches the
concentrated one at a smaller beta on larger networks. Each point is a
full bisection over freshly generated network realizations, so this
takes a minute or two.

Run:  python3 demos/parameter_trends.py
"""

from netdefend import GeneratorConfig, SweepSettings, parameter_study


def direction(points):
    stars = [pt.beta_star for pt in points if pt.beta_star is not None]
    if len(stars) < 2:
        return "series incomplete"
    if all(a < b for a, b in zip(stars, stars[1:])):
        return "rising"
    if all(a > b for a, b in zip(stars, stars[1:])):
        return "falling"
    return "not monotone"


def main():
    base = SweepSettings(
        network=GeneratorConfig(model="ba", n=400, mean_degree=4.0, seed=0),
        alpha=0.3,
        k_ca=1,
        network_realizations=8,
        attack_realizations=1,
        master_seed=32,
        load_convention="endpoint",
        workers=1,
    )
    studies = [
        ("N", [200, 400, 800]),
        ("alpha", [0.2, 0.4]),
        ("mean_degree", [4.0, 6.0]),
        ("gamma_proxy", ["ba", "er"]),
    ]
    for axis, values in studies:
        points = parameter_study(
            base, axis=axis, values=values, measure="B",
            bracket=(0.0, 3.0), tol=0.05,
        )
        print(f"\n{axis}: beta_b {direction(points)} across the series")
        for pt in points:
            star = "no crossover" if pt.beta_star is None else f"{pt.beta_star:.3f}"
            err = "" if pt.stderr is None else f" +/- {pt.stderr:.3f}"
            print(f"  {axis}={pt.value}: beta_b={star}{err}")


if __name__ == "__main__":
    main()
