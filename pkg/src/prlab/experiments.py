"""Scenario harness: sweep the random-graph recipes over a size grid.

Each scenario names a graph family, a size grid, and a replicate count.
Every (size, replicate) cell derives its own RNG streams from the base
seed, draws a graph (resampling a bounded number of times when the draw
is disconnected or has an isolated vertex), computes the exact PageRank
vector and its limit approximation, and writes one record of error and
spectral diagnostics.  Reruns with the same configuration are
byte-identical: record order is fixed, floats are emitted in shortest
round-trip form, and wall-clock timings stay out of the CSV unless
explicitly requested.
"""

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .asymptotics import asymptotic_mixture, sbm_equal_closed_form
from .errors import EmptySetError, InadmissibleWeightsError, ScenarioError
from .generators import (
    SbmParams,
    Seed,
    gen_chung_lu,
    gen_er,
    gen_sbm,
    geometric_clipped_weights,
    power_law_weights,
)
from .graph_core import is_connected
from .metrics import error_report
from .pagerank import (
    PageRankConfig,
    pagerank_power,
    preference_set,
    preference_uniform,
    preference_unit,
)
from .spectral import degree_concentration_stat, second_eigenvalue_magnitude

FAMILIES = (
    "er_log7",
    "chung_lu_geometric",
    "power_law",
    "er_unit_preference",
    "sbm_equal",
)

CSV_HEADER = (
    "scenario,n,replicate,seed,alpha,connected,resamples,tv,l1,max_rel,"
    "lambda2_abs,gap,degree_ratio,concentration_stat,pr_iters,wall_millis"
)

_FAMILY_DEFAULTS = {
    "er_log7": {"C": 1e-3},
    "chung_lu_geometric": {"c": 4.0, "ratio": 7.0},
    "power_law": {"beta": 4.0, "d_exponent": 1.0 / 6.0, "m_exponent": 1.0 / 3.0},
    "er_unit_preference": {"C": 1e-3, "seed_vertex": 0},
    "sbm_equal": {"p": 0.1, "q": 0.01},
}

# harness-internal solver settings: tight enough that the recorded errors
# are generation noise, loose enough that the dense ER sizes stay cheap
_PAGERANK_TOL = 1e-10
_SPECTRAL_TOL = 1e-5
_SPECTRAL_MAX_ITER = 300


def _er_probability(params, n):
    return params["C"] * math.log(n) ** 7 / n


@dataclass(frozen=True)
class Scenario:
    """One sweep recipe; validated on construction.

    family_params carries the per-family constants and is filled with
    defaults for whatever the caller omits.  preference is normalized to
    ("uniform",), ("unit", k), ("set", "community1"), or
    ("set", (ids...)).  The base seed only contributes its base; streams
    are derived per cell.
    """

    family: str
    n_grid: tuple
    replicates: int
    base_seed: Seed = Seed(0)
    alpha: float = 0.85
    family_params: Optional[dict] = None
    preference: Optional[tuple] = None
    resample_limit: int = 5
    name: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ScenarioError(f"unknown family {self.family!r}")
        if not self.name:
            object.__setattr__(self, "name", self.family)
        grid = tuple(int(n) for n in self.n_grid)
        if len(grid) == 0:
            raise ScenarioError("n_grid must be nonempty")
        if any(n < 2 for n in grid):
            raise ScenarioError("n_grid entries must be >= 2")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ScenarioError("n_grid must be strictly increasing")
        object.__setattr__(self, "n_grid", grid)
        if not (isinstance(self.replicates, int) and self.replicates >= 1):
            raise ScenarioError(f"replicates must be a positive int, got {self.replicates!r}")
        if not (isinstance(self.resample_limit, int) and self.resample_limit >= 0):
            raise ScenarioError(f"resample_limit must be >= 0, got {self.resample_limit!r}")
        seed = self.base_seed
        if isinstance(seed, int):
            seed = Seed(seed)
            object.__setattr__(self, "base_seed", seed)
        if not isinstance(seed, Seed):
            raise ScenarioError(f"base_seed must be a Seed or int, got {seed!r}")
        alpha = float(self.alpha)
        if not 0.0 <= alpha < 1.0:
            raise ScenarioError(f"alpha must lie in [0, 1), got {alpha}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "family_params", self._checked_params())
        object.__setattr__(self, "preference", self._checked_preference())

    def _checked_params(self):
        defaults = _FAMILY_DEFAULTS[self.family]
        given = self.family_params or {}
        unknown = set(given) - set(defaults)
        if unknown:
            raise ScenarioError(
                f"unknown family_params for {self.family}: {sorted(unknown)}"
            )
        params = {**defaults, **given}
        grid = self.n_grid
        if self.family in ("er_log7", "er_unit_preference"):
            params["C"] = float(params["C"])
            if params["C"] <= 0:
                raise ScenarioError("C must be positive")
            for n in grid:
                p = _er_probability(params, n)
                if not 0.0 < p <= 1.0:
                    raise ScenarioError(
                        f"C={params['C']} gives edge probability {p} at n={n}, outside (0, 1]"
                    )
        if self.family == "er_unit_preference":
            vertex = params["seed_vertex"]
            if not (isinstance(vertex, int) and 0 <= vertex < grid[0]):
                raise ScenarioError(
                    f"seed_vertex must be an int in [0, {grid[0]}), got {vertex!r}"
                )
        if self.family == "chung_lu_geometric":
            c, ratio = float(params["c"]), float(params["ratio"])
            if c <= 0 or ratio < 1.0:
                raise ScenarioError("need c > 0 and ratio >= 1")
            params["c"], params["ratio"] = c, ratio
            for n in grid:
                # certain failure: even a draw with every weight at the cap
                # is inadmissible; borderline draws just resample
                cap = ratio * c * n ** (1.0 / 3.0) / 3.0
                if cap > n:
                    raise ScenarioError(
                        f"weights cannot be admissible at n={n}; lower c or ratio"
                    )
        if self.family == "power_law":
            beta = float(params["beta"])
            d_exp, m_exp = float(params["d_exponent"]), float(params["m_exponent"])
            if beta <= 2.0:
                raise ScenarioError("beta must exceed 2")
            if not (0.0 < d_exp <= m_exp < 1.0):
                raise ScenarioError("need 0 < d_exponent <= m_exponent < 1")
            params["beta"], params["d_exponent"], params["m_exponent"] = beta, d_exp, m_exp
        if self.family == "sbm_equal":
            p, q = float(params["p"]), float(params["q"])
            if not (0.0 < p <= 1.0 and 0.0 <= q <= p):
                raise ScenarioError(f"need 0 <= q <= p <= 1 and p > 0, got p={p} q={q}")
            params["p"], params["q"] = p, q
            for n in grid:
                if n % 2:
                    raise ScenarioError(f"sbm_equal needs even sizes, got n={n}")
        return params

    def _checked_preference(self):
        pref = self.preference
        if pref is None:
            if self.family == "er_unit_preference":
                return ("unit", self.family_params["seed_vertex"])
            return ("uniform",)
        if pref == ("uniform",) or pref == "uniform":
            return ("uniform",)
        if isinstance(pref, tuple) and len(pref) == 2:
            kind, arg = pref
            if kind == "unit":
                if not (isinstance(arg, int) and 0 <= arg < self.n_grid[0]):
                    raise ScenarioError(
                        f"unit preference vertex must be in [0, {self.n_grid[0]}), got {arg!r}"
                    )
                return ("unit", arg)
            if kind == "set":
                if arg == "community1":
                    if self.family != "sbm_equal":
                        raise ScenarioError(
                            "the community1 preference only makes sense for sbm_equal"
                        )
                    return ("set", "community1")
                vertices = tuple(int(i) for i in arg)
                if not vertices:
                    raise ScenarioError("set preference needs at least one vertex")
                if any(not 0 <= i < self.n_grid[0] for i in vertices):
                    raise ScenarioError(
                        f"set preference vertices must be in [0, {self.n_grid[0]})"
                    )
                return ("set", vertices)
        raise ScenarioError(f"unrecognized preference {pref!r}")


@dataclass(frozen=True)
class ExperimentRecord:
    """One (scenario, n, replicate) cell.

    seed is the derived stream index of the final graph draw.  Metric
    fields are None on failed cells (connected is False then) and
    tv_mixture is only set for sbm_equal, where it tracks the error
    against the plain degree mixture next to tv's block-model target.
    tv_mixture and wall_millis live outside the CSV contract.
    """

    scenario: str
    n: int
    replicate: int
    seed: int
    alpha: float
    connected: bool
    resamples: int
    tv: Optional[float]
    l1: Optional[float]
    max_rel: Optional[float]
    lambda2_abs: Optional[float]
    gap: Optional[float]
    degree_ratio: Optional[float]
    concentration_stat: Optional[float]
    pr_iters: Optional[int]
    wall_millis: Optional[float]
    tv_mixture: Optional[float] = None


def _draw(scenario, n, weight_seed, graph_seed):
    """One attempt at (weights, graph) for the scenario family."""
    params = scenario.family_params
    family = scenario.family
    if family in ("er_log7", "er_unit_preference"):
        return None, gen_er(n, _er_probability(params, n), graph_seed)
    if family == "chung_lu_geometric":
        w = geometric_clipped_weights(
            n, params["c"] * n ** (1.0 / 3.0), params["ratio"], weight_seed
        )
        return w, gen_chung_lu(w, graph_seed)
    if family == "power_law":
        w = power_law_weights(
            n,
            params["beta"],
            n ** params["d_exponent"],
            n ** params["m_exponent"],
        )
        return w, gen_chung_lu(w, graph_seed)
    sbm = SbmParams(n=n, p=params["p"], q=params["q"], m=n // 2)
    return sbm, gen_sbm(sbm, graph_seed)


def _preference_vector(scenario, n):
    kind = scenario.preference[0]
    if kind == "uniform":
        return preference_uniform(n)
    if kind == "unit":
        return preference_unit(n, scenario.preference[1])
    members = scenario.preference[1]
    if members == "community1":
        members = range(n // 2)
    return preference_set(n, list(members))


def _run_cell(scenario, grid_index, n, replicate):
    """Compute the record for one (n, replicate) cell."""
    started = time.perf_counter()
    slot = (grid_index * scenario.replicates + replicate) * (scenario.resample_limit + 1)
    graph = None
    drawn = None
    resamples = 0
    graph_stream = 0
    base = 0
    for attempt in range(scenario.resample_limit + 1):
        base = (slot + attempt) * 4
        graph_stream = base + 1
        try:
            drawn, candidate = _draw(
                scenario,
                n,
                scenario.base_seed.derive(base),
                scenario.base_seed.derive(base + 1),
            )
        except InadmissibleWeightsError:
            # a borderline weight draw is a failed attempt like any other
            continue
        if candidate.min_degree >= 1 and is_connected(candidate):
            graph = candidate
            resamples = attempt
            break
    if graph is None:
        return ExperimentRecord(
            scenario=scenario.name,
            n=n,
            replicate=replicate,
            seed=graph_stream,
            alpha=scenario.alpha,
            connected=False,
            resamples=scenario.resample_limit,
            tv=None,
            l1=None,
            max_rel=None,
            lambda2_abs=None,
            gap=None,
            degree_ratio=None,
            concentration_stat=None,
            pr_iters=None,
            wall_millis=(time.perf_counter() - started) * 1000.0,
        )
    v = _preference_vector(scenario, n)
    solved = pagerank_power(
        graph, v, PageRankConfig(alpha=scenario.alpha, tol=_PAGERANK_TOL)
    )
    tv_mixture = None
    if scenario.family == "sbm_equal":
        target = sbm_equal_closed_form(drawn, v, scenario.alpha)
        mixture = asymptotic_mixture(graph, v, scenario.alpha)
        tv_mixture = error_report(solved.vector, mixture).tv
    else:
        target = asymptotic_mixture(graph, v, scenario.alpha)
    errors = error_report(solved.vector, target)
    report = second_eigenvalue_magnitude(
        graph,
        tol=_SPECTRAL_TOL,
        max_iter=_SPECTRAL_MAX_ITER,
        seed=scenario.base_seed.derive(base + 2),
    )
    concentration = (
        degree_concentration_stat(graph, drawn)
        if scenario.family in ("chung_lu_geometric", "power_law")
        else None
    )
    return ExperimentRecord(
        scenario=scenario.name,
        n=n,
        replicate=replicate,
        seed=graph_stream,
        alpha=scenario.alpha,
        connected=True,
        resamples=resamples,
        tv=errors.tv,
        l1=errors.l1,
        max_rel=errors.max_rel,
        lambda2_abs=report.lambda2_abs,
        gap=report.gap,
        degree_ratio=report.degree_ratio,
        concentration_stat=concentration,
        pr_iters=solved.iterations,
        wall_millis=(time.perf_counter() - started) * 1000.0,
        tv_mixture=tv_mixture,
    )


def run_scenario(scenario, threads=1):
    """All records for the scenario, ordered by (n, replicate).

    Cells are independent; threads > 1 runs them in a pool (the heavy
    kernels drop the interpreter lock).  Output order and content do not
    depend on the thread count.
    """
    cells = [
        (grid_index, n, replicate)
        for grid_index, n in enumerate(scenario.n_grid)
        for replicate in range(scenario.replicates)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda cell: _run_cell(scenario, *cell), cells))
    return [_run_cell(scenario, *cell) for cell in cells]


def success_fraction(records):
    """Fraction of connected records per (scenario, n)."""
    totals = {}
    good = {}
    for record in records:
        key = (record.scenario, record.n)
        totals[key] = totals.get(key, 0) + 1
        good[key] = good.get(key, 0) + (1 if record.connected else 0)
    return {key: good[key] / totals[key] for key in totals}


def _format_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def emit_csv(records, path, include_timings=False):
    """Write records to a CSV file with the pinned 16-column header.

    wall_millis is emitted empty unless include_timings is set, so a
    rerun with the same configuration produces identical bytes.
    """
    if not records:
        raise EmptySetError("no records to emit")
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    r.scenario,
                    str(r.n),
                    str(r.replicate),
                    str(r.seed),
                    _format_cell(r.alpha),
                    _format_cell(r.connected),
                    str(r.resamples),
                    _format_cell(r.tv),
                    _format_cell(r.l1),
                    _format_cell(r.max_rel),
                    _format_cell(r.lambda2_abs),
                    _format_cell(r.gap),
                    _format_cell(r.degree_ratio),
                    _format_cell(r.concentration_stat),
                    _format_cell(r.pr_iters),
                    _format_cell(r.wall_millis) if include_timings else "",
                )
            )
        )
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def _parse_optional_float(cell):
    return None if cell == "" else float(cell)


def parse_csv(path):
    """Read a results file back into records.

    Fields outside the CSV contract (tv_mixture) come back as None, and
    wall_millis is None unless the file carried timings.
    """
    with open(path) as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ScenarioError(f"{path} does not start with the expected header")
    records = []
    for line in lines[1:]:
        if not line:
            continue
        cells = line.split(",")
        if len(cells) != 16:
            raise ScenarioError(f"expected 16 fields, got {len(cells)}: {line!r}")
        if cells[5] not in ("true", "false"):
            raise ScenarioError(f"bad connected flag {cells[5]!r}")
        records.append(
            ExperimentRecord(
                scenario=cells[0],
                n=int(cells[1]),
                replicate=int(cells[2]),
                seed=int(cells[3]),
                alpha=float(cells[4]),
                connected=cells[5] == "true",
                resamples=int(cells[6]),
                tv=_parse_optional_float(cells[7]),
                l1=_parse_optional_float(cells[8]),
                max_rel=_parse_optional_float(cells[9]),
                lambda2_abs=_parse_optional_float(cells[10]),
                gap=_parse_optional_float(cells[11]),
                degree_ratio=_parse_optional_float(cells[12]),
                concentration_stat=_parse_optional_float(cells[13]),
                pr_iters=None if cells[14] == "" else int(cells[14]),
                wall_millis=_parse_optional_float(cells[15]),
            )
        )
    return records


def median(values):
    """Middle order statistic; mean of the two middles on even counts."""
    ordered = sorted(values)
    if not ordered:
        raise EmptySetError("median of nothing")
    half = len(ordered) // 2
    if len(ordered) % 2:
        return float(ordered[half])
    return (ordered[half - 1] + ordered[half]) / 2.0


def emit_loglog(records, path):
    """Write per-scenario (log10 n, log10 median) series for tv and max_rel.

    Records missing a metric (failed cells, absent max_rel, nonpositive
    values that have no logarithm) are excluded from that series and
    counted in the dropped-rows footer.
    """
    if not records:
        raise EmptySetError("no records to emit")
    scenarios = []
    for r in records:
        if r.scenario not in scenarios:
            scenarios.append(r.scenario)
    lines = ["# log-log series: log10(n) log10(median metric)"]
    footer = []
    for scenario in scenarios:
        rows = [r for r in records if r.scenario == scenario]
        sizes = sorted({r.n for r in rows})
        for metric in ("tv", "max_rel"):
            dropped = 0
            series = []
            for n in sizes:
                values = []
                for r in rows:
                    if r.n != n:
                        continue
                    value = getattr(r, metric)
                    if value is None or value <= 0.0:
                        dropped += 1
                    else:
                        values.append(value)
                if values:
                    series.append((math.log10(n), math.log10(median(values))))
            lines.append(f"# series {scenario} {metric}")
            for x, y in series:
                lines.append(f"{x!r} {y!r}")
            footer.append(f"# dropped {scenario} {metric} {dropped}")
    lines.extend(footer)
    with open(path, "w") as handle:
        handle.write("\n".join(lines) + "\n")


def load_config(path):
    """Parse a JSON config file into a list of scenarios.

    The file holds one object with a single "scenarios" key; each entry
    mirrors the Scenario fields.  Unknown keys anywhere are errors, and
    scenario names must be unique.
    """
    with open(path) as handle:
        text = handle.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ScenarioError(f"config is not valid JSON: {err}") from None
    if not isinstance(data, dict):
        raise ScenarioError("config must be a JSON object")
    unknown = set(data) - {"scenarios"}
    if unknown:
        raise ScenarioError(f"unknown top-level keys: {sorted(unknown)}")
    entries = data.get("scenarios")
    if not isinstance(entries, list) or not entries:
        raise ScenarioError('config needs a nonempty "scenarios" list')
    scenarios = [_scenario_from_mapping(entry) for entry in entries]
    names = [s.name for s in scenarios]
    if len(set(names)) != len(names):
        raise ScenarioError(f"duplicate scenario names in config: {names}")
    return scenarios


_SCENARIO_KEYS = {
    "name",
    "family",
    "n_grid",
    "replicates",
    "alpha",
    "base_seed",
    "family_params",
    "preference",
    "resample_limit",
}


def _scenario_from_mapping(entry):
    if not isinstance(entry, dict):
        raise ScenarioError(f"each scenario must be an object, got {entry!r}")
    unknown = set(entry) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"unknown scenario keys: {sorted(unknown)}")
    for key in ("family", "n_grid", "replicates"):
        if key not in entry:
            raise ScenarioError(f"scenario is missing {key!r}")
    kwargs = {
        "family": entry["family"],
        "n_grid": entry["n_grid"],
        "replicates": entry["replicates"],
    }
    if "name" in entry:
        kwargs["name"] = entry["name"]
    if "alpha" in entry:
        kwargs["alpha"] = entry["alpha"]
    if "base_seed" in entry:
        kwargs["base_seed"] = entry["base_seed"]
    if "family_params" in entry:
        kwargs["family_params"] = entry["family_params"]
    if "resample_limit" in entry:
        kwargs["resample_limit"] = entry["resample_limit"]
    if "preference" in entry:
        kwargs["preference"] = _preference_from_config(entry["preference"])
    return Scenario(**kwargs)


def _preference_from_config(pref):
    if pref == "uniform":
        return ("uniform",)
    if isinstance(pref, dict) and len(pref) == 1:
        if "unit" in pref:
            return ("unit", pref["unit"])
        if "set" in pref:
            target = pref["set"]
            if target == "community1":
                return ("set", "community1")
            if isinstance(target, list):
                return ("set", tuple(target))
    raise ScenarioError(f"unrecognized preference {pref!r}")
