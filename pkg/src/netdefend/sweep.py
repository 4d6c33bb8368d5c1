"""Beta sweeps, damage crossovers, and parameter trend studies.

A sweep runs the two representative attacks over a grid of defense
exponents, a set of network realizations, and a set of attack (tie-break)
realizations, and emits one record per (beta, strategy, network, attack)
cell. All randomness derives from one master seed, so a sweep is a pure
function of its settings; the same fixed seed set is reused at every beta
probe, which makes the empirical mean damage curve a deterministic
function of beta and lets a bisection pin down where the concentrated and
distributed curves cross.

Execution is organized per network realization: the concentrated attack's
cascade does not depend on beta and is computed once, and distributed
cascades are cached by target-set size (the target list at any beta is a
prefix of one fixed capacity-ascending order). Worker processes hold these
caches; results are reduced by sorting, so output is identical for any
worker count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .cascade import (
    CapacityProfile,
    CascadeResult,
    assign_capacity,
    intact_result,
    run_cascade,
)
from .defense import (
    CA,
    DA,
    allocate_defense,
    build_concentrated,
    build_distributed,
    tie_permutation,
)
from .graph import GeneratorConfig, Graph, generate, load_edge_list
from .load import CONVENTIONS

__all__ = [
    "CSV_COLUMNS",
    "SweepRecord",
    "SweepSettings",
    "SweepEngine",
    "CrossoverResult",
    "NoCrossoverError",
    "StudyPoint",
    "evaluate_pair",
    "find_crossover",
    "efficiency_argmin",
    "parameter_study",
    "records_csv_text",
    "write_records_csv",
    "read_records_csv",
]

CSV_COLUMNS = (
    "beta",
    "strategy",
    "network_seed",
    "attack_seed",
    "G",
    "B",
    "E",
    "rho_g",
    "rho_b",
)

STUDY_AXES = ("N", "alpha", "mean_degree", "gamma_proxy")


@dataclass(frozen=True)
class SweepRecord:
    """One attack evaluation. G is the largest surviving component, B the
    total capacity removed, E the plan's own cost; the efficiency fields
    divide the worse damage of the paired records by the concentrated
    attack's cost."""

    beta: float
    strategy: str
    network_seed: int
    attack_seed: int
    G: int
    B: float
    E: float
    rho_g: float
    rho_b: float

    @property
    def sort_key(self) -> tuple:
        return (self.beta, self.strategy, self.network_seed, self.attack_seed)


@dataclass(frozen=True)
class SweepSettings:
    """Everything a sweep depends on, minus the beta grid.

    network is either a generator template (its seed field is ignored;
    per-realization seeds are derived from master_seed) or a path to an
    edge-list file, in which case network_realizations must be 1 and the
    records carry network_seed 0.
    """

    network: GeneratorConfig | str
    alpha: float
    k_ca: int = 1
    network_realizations: int = 1
    attack_realizations: int = 1
    master_seed: int = 0
    load_convention: str = "count"
    capacity_floor: float = 0.0
    workers: int = 1

    def validate(self) -> None:
        if isinstance(self.network, GeneratorConfig):
            self.network.validate()
        elif not isinstance(self.network, str):
            raise ValueError("network must be a GeneratorConfig or a file path")
        elif self.network_realizations != 1:
            raise ValueError(
                "network_realizations must be 1 for a fixed edge-list network"
            )
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.k_ca < 1:
            raise ValueError(f"k_ca must be at least 1, got {self.k_ca}")
        if self.network_realizations < 1 or self.attack_realizations < 1:
            raise ValueError("realizations must be at least 1")
        if self.capacity_floor < 0:
            raise ValueError("capacity_floor must be non-negative")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")

    def network_seeds(self) -> list[int]:
        if isinstance(self.network, str):
            return [0]
        states = np.random.SeedSequence(self.master_seed).generate_state(
            self.network_realizations
        )
        return [int(s) for s in states]

    def attack_seeds(self) -> list[int]:
        return [self.master_seed ^ j for j in range(self.attack_realizations)]


def _pair_records(
    n: int,
    beta: float,
    network_seed: int,
    attack_seed: int,
    ca_cost: float,
    ca_result: CascadeResult,
    da_cost: float,
    da_result: CascadeResult,
) -> tuple[SweepRecord, SweepRecord]:
    g_worst = min(ca_result.largest_component, da_result.largest_component)
    b_worst = max(ca_result.removed_capacity, da_result.removed_capacity)
    rho_g = (n - g_worst) / ca_cost
    rho_b = b_worst / ca_cost
    common = dict(
        beta=beta,
        network_seed=network_seed,
        attack_seed=attack_seed,
        rho_g=rho_g,
        rho_b=rho_b,
    )
    rec_ca = SweepRecord(
        strategy=CA,
        G=ca_result.largest_component,
        B=ca_result.removed_capacity,
        E=ca_cost,
        **common,
    )
    rec_da = SweepRecord(
        strategy=DA,
        G=da_result.largest_component,
        B=da_result.removed_capacity,
        E=da_cost,
        **common,
    )
    return rec_ca, rec_da


def evaluate_pair(
    g: Graph,
    cap: CapacityProfile,
    beta: float,
    k_ca: int,
    attack_seed: int,
    network_seed: int = 0,
    capacity_floor: float = 0.0,
) -> tuple[SweepRecord, SweepRecord]:
    """Run both representative attacks at one beta and record the damages.

    The distributed attack gets exactly the concentrated attack's cost as
    its budget. Efficiency fields take the worse damage across the two
    plans per unit of that common budget.
    """
    tie = tie_permutation(g.n, attack_seed)
    alloc = allocate_defense(cap, beta, capacity_floor)
    ca_plan = build_concentrated(cap, alloc, k_ca, tie)
    da_plan = build_distributed(cap, alloc, ca_plan.total_cost, tie)
    ca_result = run_cascade(g, cap, ca_plan.targets)
    if da_plan.size:
        da_result = run_cascade(g, cap, da_plan.targets)
    else:
        da_result = intact_result(g)
    return _pair_records(
        g.n,
        beta,
        network_seed,
        attack_seed,
        ca_plan.total_cost,
        ca_result,
        da_plan.total_cost,
        da_result,
    )


class _AttackState:
    """Cascade caches for one (network, tie seed) pair."""

    __slots__ = ("tie", "ca_result", "da_cache")

    def __init__(self, g: Graph, cap: CapacityProfile, k_ca: int, attack_seed: int):
        self.tie = tie_permutation(g.n, attack_seed)
        alloc = allocate_defense(cap, 1.0)
        plan = build_concentrated(cap, alloc, k_ca, self.tie)
        self.ca_result = run_cascade(g, cap, plan.targets)
        self.da_cache: dict[int, CascadeResult] = {}


class _NetworkState:
    """One realized network with its capacity profile and attack caches."""

    __slots__ = ("graph", "cap", "attacks")

    def __init__(self, settings: SweepSettings, network_seed: int):
        if isinstance(settings.network, str):
            self.graph = load_edge_list(settings.network)
        else:
            self.graph = generate(replace(settings.network, seed=network_seed))
        self.cap = assign_capacity(
            self.graph, settings.alpha, convention=settings.load_convention
        )
        self.attacks: dict[int, _AttackState] = {}

    def attack_state(self, k_ca: int, attack_seed: int) -> _AttackState:
        state = self.attacks.get(attack_seed)
        if state is None:
            state = _AttackState(self.graph, self.cap, k_ca, attack_seed)
            self.attacks[attack_seed] = state
        return state


# Worker-process cache of prepared networks, so bisection probes pay only
# for new distributed target sets, not regeneration or the concentrated
# cascade. Bounded to keep memory flat on very long parameter studies.
_STATE_CACHE: dict[tuple, _NetworkState] = {}
_STATE_CACHE_LIMIT = 128


def _network_state(settings: SweepSettings, network_seed: int) -> _NetworkState:
    key = (
        settings.network,
        settings.alpha,
        settings.k_ca,
        settings.load_convention,
        settings.capacity_floor,
        network_seed,
    )
    state = _STATE_CACHE.get(key)
    if state is None:
        while len(_STATE_CACHE) >= _STATE_CACHE_LIMIT:
            _STATE_CACHE.pop(next(iter(_STATE_CACHE)))
        state = _NetworkState(settings, network_seed)
        _STATE_CACHE[key] = state
    return state


def _network_records(
    args: tuple[SweepSettings, int, tuple[float, ...]]
) -> list[SweepRecord]:
    settings, network_seed, betas = args
    state = _network_state(settings, network_seed)
    g, cap = state.graph, state.cap
    records: list[SweepRecord] = []
    for attack_seed in settings.attack_seeds():
        attack = state.attack_state(settings.k_ca, attack_seed)
        for beta in betas:
            alloc = allocate_defense(cap, beta, settings.capacity_floor)
            ca_plan = build_concentrated(cap, alloc, settings.k_ca, attack.tie)
            da_plan = build_distributed(cap, alloc, ca_plan.total_cost, attack.tie)
            da_result = attack.da_cache.get(da_plan.size)
            if da_result is None:
                if da_plan.size:
                    da_result = run_cascade(g, cap, da_plan.targets)
                else:
                    da_result = intact_result(g)
                attack.da_cache[da_plan.size] = da_result
            records.extend(
                _pair_records(
                    g.n,
                    beta,
                    network_seed,
                    attack_seed,
                    ca_plan.total_cost,
                    attack.ca_result,
                    da_plan.total_cost,
                    da_result,
                )
            )
    return records


class NoCrossoverError(RuntimeError):
    """The two damage curves do not change order inside the bracket.

    Carries the sampled curve so the caller can widen the bracket or
    report the absence; each sample is (beta, concentrated mean,
    distributed mean).
    """

    def __init__(self, message: str, curve: list[tuple[float, float, float]]):
        super().__init__(message)
        self.curve = curve


@dataclass(frozen=True)
class CrossoverResult:
    """Located equal-damage point. bracket is the final bisection interval
    (its width certifies the precision); curve holds every probed beta with
    both mean damages, ascending."""

    beta_star: float
    measure: str
    bracket: tuple[float, float]
    curve: tuple[tuple[float, float, float], ...]

    def to_json_dict(self) -> dict:
        return {
            "measure": self.measure,
            "beta_star": self.beta_star,
            "bracket": list(self.bracket),
            "curve": [
                {"beta": b, "ca": ca, "da": da} for b, ca, da in self.curve
            ],
        }


def find_crossover(
    curve_ca,
    curve_da,
    bracket: tuple[float, float] = (0.0, 3.0),
    tol: float = 0.01,
    measure: str = "B",
) -> CrossoverResult:
    """Bisect for the beta where the two mean damage curves meet.

    Both arguments are callables beta -> mean damage over a fixed
    realization set. The difference must change sign across the bracket;
    the returned beta is the midpoint of the final interval of width at
    most tol.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError(f"bracket must be increasing, got {bracket}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    samples: dict[float, tuple[float, float]] = {}

    def delta(beta: float) -> float:
        ca, da = curve_ca(beta), curve_da(beta)
        samples[beta] = (ca, da)
        return da - ca

    d_lo, d_hi = delta(lo), delta(hi)
    if d_lo == 0.0:
        return _crossover_result(lo, (lo, lo), measure, samples)
    if d_hi == 0.0:
        return _crossover_result(hi, (hi, hi), measure, samples)
    if (d_lo > 0) == (d_hi > 0):
        for beta in np.linspace(lo, hi, 5)[1:-1]:
            delta(float(beta))
        raise NoCrossoverError(
            f"no {measure} crossover in [{lo}, {hi}]: "
            f"difference is {d_lo:+.4g} at {lo} and {d_hi:+.4g} at {hi}",
            _sorted_curve(samples),
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        d_mid = delta(mid)
        if d_mid == 0.0:
            return _crossover_result(mid, (mid, mid), measure, samples)
        if (d_mid > 0) == (d_lo > 0):
            lo, d_lo = mid, d_mid
        else:
            hi, d_hi = mid, d_mid
    return _crossover_result(0.5 * (lo + hi), (lo, hi), measure, samples)


def _sorted_curve(samples: dict) -> list[tuple[float, float, float]]:
    return [(b, ca, da) for b, (ca, da) in sorted(samples.items())]


def _crossover_result(
    beta_star: float, bracket: tuple[float, float], measure: str, samples: dict
) -> CrossoverResult:
    return CrossoverResult(
        beta_star=beta_star,
        measure=measure,
        bracket=bracket,
        curve=tuple(_sorted_curve(samples)),
    )


class SweepEngine:
    """Runs sweep cells against a fixed seed set and caches per-beta records.

    The cache is what makes crossover bisection affordable: every probe
    reuses the realized networks, the concentrated cascades, and any
    distributed cascade whose target set was seen at another beta.
    """

    def __init__(self, settings: SweepSettings, progress=None):
        settings.validate()
        if settings.load_convention not in CONVENTIONS:
            raise ValueError(
                f"unknown load_convention {settings.load_convention!r}"
            )
        self.settings = settings
        self.progress = progress
        self._beta_records: dict[float, list[SweepRecord]] = {}

    def _report(self, message: str) -> None:
        if self.progress is not None:
            self.progress(message)

    def records(self, betas) -> list[SweepRecord]:
        """Records for every requested beta, sorted canonically."""
        wanted = [float(b) for b in betas]
        missing = sorted({b for b in wanted if b not in self._beta_records})
        if missing:
            self._run(tuple(missing))
        out: list[SweepRecord] = []
        for b in sorted(set(wanted)):
            out.extend(self._beta_records[b])
        out.sort(key=lambda r: r.sort_key)
        return out

    def _run(self, betas: tuple[float, ...]) -> None:
        settings = self.settings
        seeds = settings.network_seeds()
        tasks = [(settings, seed, betas) for seed in seeds]
        self._report(
            f"running {len(betas)} beta value(s) x {len(seeds)} network(s) "
            f"x {settings.attack_realizations} attack seed(s)"
        )
        if settings.workers == 1 or len(tasks) == 1:
            chunks = map(_network_records, tasks)
            collected = list(chunks)
        else:
            with ProcessPoolExecutor(max_workers=settings.workers) as pool:
                collected = list(pool.map(_network_records, tasks))
        fresh: dict[float, list[SweepRecord]] = {b: [] for b in betas}
        for chunk in collected:
            for rec in chunk:
                fresh[rec.beta].append(rec)
        for b, recs in fresh.items():
            recs.sort(key=lambda r: r.sort_key)
            self._beta_records[b] = recs

    def _values(self, beta: float, measure: str, strategy: str) -> np.ndarray:
        recs = self.records([beta])
        field = "G" if measure == "G" else "B"
        return np.array(
            [getattr(r, field) for r in recs if r.strategy == strategy],
            dtype=np.float64,
        )

    def mean_damage(self, beta: float, measure: str, strategy: str) -> float:
        return float(self._values(beta, measure, strategy).mean())

    def delta_stats(self, beta: float, measure: str) -> tuple[float, float]:
        """Mean and standard error of (distributed - concentrated) damage
        over the paired realizations at one beta."""
        diff = self._values(beta, measure, DA) - self._values(beta, measure, CA)
        se = float(diff.std(ddof=1) / np.sqrt(diff.size)) if diff.size > 1 else 0.0
        return float(diff.mean()), se

    def crossover(
        self,
        measure: str,
        bracket: tuple[float, float] = (0.0, 3.0),
        tol: float = 0.01,
    ) -> CrossoverResult:
        if measure not in ("G", "B"):
            raise ValueError(f"measure must be 'G' or 'B', got {measure!r}")

        def ca_curve(beta: float) -> float:
            return self.mean_damage(beta, measure, CA)

        def da_curve(beta: float) -> float:
            self._report(f"crossover probe: measure {measure}, beta {beta:.6g}")
            return self.mean_damage(beta, measure, DA)

        return find_crossover(ca_curve, da_curve, bracket, tol, measure)

    def crossover_stderr(self, result: CrossoverResult, measure: str) -> float | None:
        """Standard error of the crossover location by the delta method:
        the sampling error of the mean difference at the root, divided by
        the local slope of the difference curve."""
        lo, hi = result.bracket
        if hi <= lo:
            return None
        d_lo, se_lo = self.delta_stats(lo, measure)
        d_hi, se_hi = self.delta_stats(hi, measure)
        slope = (d_hi - d_lo) / (hi - lo)
        if slope == 0.0:
            return None
        return abs(0.5 * (se_lo + se_hi) / slope)


def efficiency_argmin(records: list[SweepRecord], measure: str) -> float:
    """The grid beta whose mean damage-per-cost is smallest."""
    if not records:
        raise ValueError("no records to aggregate")
    if measure not in ("G", "B"):
        raise ValueError(f"measure must be 'G' or 'B', got {measure!r}")
    field = "rho_g" if measure == "G" else "rho_b"
    sums: dict[float, list[float]] = {}
    for rec in sorted(records, key=lambda r: r.sort_key):
        sums.setdefault(rec.beta, []).append(getattr(rec, field))
    best_beta, best_mean = None, None
    for beta in sorted(sums):
        mean = float(np.mean(sums[beta]))
        if best_mean is None or mean < best_mean:
            best_beta, best_mean = beta, mean
    return best_beta


@dataclass(frozen=True)
class StudyPoint:
    """One trend-series entry; beta_star is None when no crossover exists
    in the bracket for this parameter value."""

    axis: str
    value: float | str
    beta_star: float | None
    stderr: float | None


def _apply_axis(settings: SweepSettings, axis: str, value) -> SweepSettings:
    if axis in ("N", "mean_degree", "gamma_proxy") and not isinstance(
        settings.network, GeneratorConfig
    ):
        raise ValueError(f"axis {axis} requires a generated network, not a file")
    if axis == "N":
        return replace(settings, network=replace(settings.network, n=int(value)))
    if axis == "alpha":
        return replace(settings, alpha=float(value))
    if axis == "mean_degree":
        return replace(
            settings, network=replace(settings.network, mean_degree=float(value))
        )
    if axis == "gamma_proxy":
        return replace(settings, network=replace(settings.network, model=str(value)))
    raise ValueError(f"unknown study axis {axis!r}; expected one of {STUDY_AXES}")


def parameter_study(
    base: SweepSettings,
    axis: str,
    values,
    measure: str = "B",
    bracket: tuple[float, float] = (0.0, 3.0),
    tol: float = 0.01,
    progress=None,
) -> list[StudyPoint]:
    """Crossover location as a function of one swept parameter.

    Each value gets its own engine (fresh realization set under the same
    master seed). A value whose curves never cross inside the bracket is
    reported with beta_star None rather than interpolated or dropped.
    """
    if not values:
        raise ValueError("values list is empty")
    points: list[StudyPoint] = []
    for value in values:
        engine = SweepEngine(_apply_axis(base, axis, value), progress=progress)
        try:
            result = engine.crossover(measure, bracket, tol)
        except NoCrossoverError as exc:
            if progress is not None:
                progress(f"{axis}={value}: {exc}")
            points.append(StudyPoint(axis=axis, value=value, beta_star=None, stderr=None))
            continue
        stderr = engine.crossover_stderr(result, measure)
        points.append(
            StudyPoint(
                axis=axis, value=value, beta_star=result.beta_star, stderr=stderr
            )
        )
    return points


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_csv_text(records: list[SweepRecord]) -> str:
    """One row per record, shortest-roundtrip float formatting, so equal
    runs produce byte-equal files."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(
            [
                _format_value(rec.beta),
                rec.strategy,
                rec.network_seed,
                rec.attack_seed,
                rec.G,
                _format_value(rec.B),
                _format_value(rec.E),
                _format_value(rec.rho_g),
                _format_value(rec.rho_b),
            ]
        )
    return buf.getvalue()


def write_records_csv(records: list[SweepRecord], path: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(records_csv_text(records))


def read_records_csv(path: str) -> list[SweepRecord]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV columns {header}")
        records = []
        for row in reader:
            records.append(
                SweepRecord(
                    beta=float(row[0]),
                    strategy=row[1],
                    network_seed=int(row[2]),
                    attack_seed=int(row[3]),
                    G=int(row[4]),
                    B=float(row[5]),
                    E=float(row[6]),
                    rho_g=float(row[7]),
                    rho_b=float(row[8]),
                )
            )
    return records
