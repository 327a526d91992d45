"""Experiment harness: configs, the interaction loop, traces, and reports.

A JSON config names an instance (graph, budget, reward source, optional
explicit decision list, horizon), a policy, and seeds. Each (config, seed)
run produces a CSV trace with per-round actions, payoffs and cumulative
regret against the hindsight-best decision, plus a JSON summary per
config. Reruns of the same pair are byte-identical: every random draw
comes from PCG64 streams derived from the seed alone, and floats are
written in shortest round-trip form.

The per-round feedback reaches a policy only through a FeedbackView, so a
policy that reads outside its action's out-neighborhood fails the run
instead of silently cheating.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .environments import (
    BernoulliSource,
    CliqueAveragedSource,
    FixedSequenceSource,
    clique_partition_instance,
    hard_instance_gap,
    emit_round,
    partition_decision_subset,
)
from .errors import AlignmentBroken, ConfigError, InsufficientData
from .feedback import FeedbackView
from .feedback_graph import (
    FeedbackGraph,
    load_graph,
    make_graph,
    out_neighborhood,
    self_loops_graph,
)
from .policies import (
    EliminationPolicy,
    EtcPolicy,
    OsmdgPolicy,
    UniformRandomPolicy,
    as_decision_tuples,
    recommended_parameters,
)
from .rng import RNG_ALGORITHM, environment_rng, policy_rng
from .sampling import CliqueAlignedSampler, MeanOnlySampler, SwapRoundingSampler

OUTPUT_DIR_ENV = "GRAPHBANDITS_OUTPUT_DIR"

TRACE_FORMAT = "graphbandits-trace v1"

POLICY_IDS = ("osmdg", "osmd-vanilla", "osmd-clique", "arm-elimination", "etc", "uniform")


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class Instance:
    """A fully built problem: graph, budget, rewards, horizon, decisions."""

    graph: FeedbackGraph
    budget: int
    source: object
    horizon: int
    decisions: tuple[tuple[int, ...], ...] | None = None
    cliques: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    instance: Instance
    policy: dict
    seeds: tuple[int, ...]
    horizons: tuple[int, ...] | None
    output_dir: str | None
    raw: dict

    @property
    def config_hash(self) -> str:
        return config_hash(self.raw)


def config_hash(raw_config: dict) -> str:
    canonical = json.dumps(raw_config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _build_graph(spec: dict, base_dir: Path) -> FeedbackGraph:
    if "file" in spec:
        return load_graph(base_dir / spec["file"])
    if "generator" in spec:
        return make_graph(spec["generator"], **spec.get("params", {}))
    if "num_arms" in spec and "edges" in spec:
        return FeedbackGraph(spec["num_arms"], spec["edges"])
    raise ConfigError(f"graph spec needs 'file', 'generator', or inline edges: {spec}")


def _build_source(spec: dict, base_dir: Path, cliques) -> object:
    kind = spec.get("kind")
    if kind == "bernoulli":
        return BernoulliSource(spec["means"])
    if kind == "sequence":
        matrix = np.loadtxt(base_dir / spec["path"], delimiter=",", ndmin=2)
        return FixedSequenceSource(matrix)
    if kind == "clique_averaged":
        if cliques is None:
            raise ConfigError("clique_averaged rewards need a clique partition")
        return CliqueAveragedSource(cliques, clique_means=spec["clique_means"])
    raise ConfigError(f"unknown reward kind {spec.get('kind')!r}")


def build_instance(spec: dict, base_dir: Path | str = ".") -> Instance:
    base_dir = Path(base_dir)
    try:
        graph = _build_graph(spec["graph"], base_dir)
        budget = int(spec["budget"])
        horizon = int(spec["horizon"])
    except KeyError as missing:
        raise ConfigError(f"instance spec missing {missing}") from None
    if not 1 <= budget <= graph.num_arms:
        raise ConfigError(f"budget {budget} outside [1, {graph.num_arms}]")
    if horizon < 1:
        raise ConfigError(f"horizon must be positive, got {horizon}")

    cliques = None
    gspec = spec["graph"]
    if gspec.get("generator") == "clique_partition":
        size = int(gspec["params"]["clique_size"])
        count = int(gspec["params"]["num_cliques"])
        cliques = tuple(tuple(range(i * size, (i + 1) * size)) for i in range(count))
    if "cliques" in spec:
        cliques = tuple(tuple(int(a) for a in c) for c in spec["cliques"])

    decisions_spec = spec.get("decisions", "full")
    if decisions_spec == "full":
        decisions = None
    elif decisions_spec == "partition":
        actions = partition_decision_subset(graph.num_arms, budget)
        decisions = tuple(tuple(int(a) for a in np.flatnonzero(v)) for v in actions)
    else:
        decisions = tuple(
            tuple(t) for t in as_decision_tuples(decisions_spec, graph.num_arms, budget)
        )

    source = _build_source(spec["rewards"], base_dir, cliques)
    if source.num_arms != graph.num_arms:
        raise ConfigError(
            f"reward source covers {source.num_arms} arms, graph has {graph.num_arms}"
        )
    return Instance(
        graph=graph,
        budget=budget,
        source=source,
        horizon=horizon,
        decisions=decisions,
        cliques=cliques,
    )


def parse_config(raw: dict, base_dir: Path | str = ".") -> ExperimentConfig:
    if "instance" not in raw or "policy" not in raw:
        raise ConfigError("config needs 'instance' and 'policy' sections")
    instance = build_instance(raw["instance"], base_dir)
    policy = dict(raw["policy"])
    if policy.get("id") not in POLICY_IDS:
        raise ConfigError(f"unknown policy id {policy.get('id')!r}; known: {POLICY_IDS}")
    seeds = tuple(int(s) for s in raw.get("seeds", [0]))
    if not seeds:
        raise ConfigError("at least one seed required")
    horizons = raw.get("horizons")
    if horizons is not None:
        horizons = tuple(int(t) for t in horizons)
    return ExperimentConfig(
        instance=instance,
        policy=policy,
        seeds=seeds,
        horizons=horizons,
        output_dir=raw.get("output_dir"),
        raw=raw,
    )


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return parse_config(raw, base_dir=path.parent)


def make_policy(policy_spec: dict, instance: Instance, horizon: int):
    """Fresh policy object for one run."""
    pid = policy_spec["id"]
    graph, budget = instance.graph, instance.budget
    if pid in ("osmdg", "osmd-vanilla", "osmd-clique"):
        if instance.decisions is not None:
            raise ConfigError(f"{pid} runs on the full decision set only")
        if pid == "osmdg":
            sampler = SwapRoundingSampler()
        elif pid == "osmd-vanilla":
            sampler = MeanOnlySampler()
        else:
            if instance.cliques is None:
                raise ConfigError("osmd-clique needs a clique partition in the instance")
            sampler = CliqueAlignedSampler(instance.cliques)
        return OsmdgPolicy(
            graph,
            budget,
            horizon,
            epsilon=policy_spec.get("epsilon"),
            eta=policy_spec.get("eta"),
            sampler=sampler,
            independence_number=policy_spec.get("independence_number"),
        )
    if pid == "arm-elimination":
        if instance.decisions is None:
            raise ConfigError("arm-elimination needs an explicit decision list")
        return EliminationPolicy(
            graph,
            [list(d) for d in instance.decisions],
            horizon,
            failure_prob=float(policy_spec.get("failure_prob", 0.05)),
            budget=budget,
        )
    if pid == "etc":
        if instance.decisions is not None:
            raise ConfigError("etc runs on the full decision set only")
        return EtcPolicy(
            graph, budget, horizon, explore_rounds=policy_spec.get("explore_rounds")
        )
    if pid == "uniform":
        if instance.decisions is not None:
            raise ConfigError("uniform runs on the full decision set only")
        return UniformRandomPolicy(graph.num_arms, budget)
    raise ConfigError(f"unknown policy id {pid!r}")


# ---------------------------------------------------------------------------
# the interaction loop


@dataclass
class RegretTrace:
    """Everything one run produced, regret measured in hindsight."""

    seed: int
    horizon: int
    num_arms: int
    budget: int
    policy_name: str
    config_hash: str | None
    actions: list[np.ndarray]
    payoffs: np.ndarray
    cumulative_regret: np.ndarray
    best_action: tuple[int, ...]
    best_payoff: float
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def final_regret(self) -> float:
        return float(self.cumulative_regret[-1])


def hindsight_best(rewards: np.ndarray, budget: int, decisions=None):
    """Best fixed decision against a realized reward matrix.

    Full decision set: the budget arms of largest cumulative reward (ties
    to the lowest index). Explicit list: exhaustive maximum (ties to the
    earliest decision). Returns (arms tuple, per-round payoffs).
    """
    totals = rewards.sum(axis=0)
    if decisions is None:
        top = np.argsort(-totals, kind="stable")[:budget]
        arms = tuple(sorted(int(a) for a in top))
    else:
        scores = [sum(totals[a] for a in d) for d in decisions]
        arms = tuple(sorted(decisions[int(np.argmax(scores))]))
    return arms, rewards[:, list(arms)].sum(axis=1)


def run_single(
    instance: Instance,
    policy,
    seed: int,
    horizon: int | None = None,
    config_hash_value: str | None = None,
    on_round=None,
) -> RegretTrace:
    """One seeded run of one policy on one instance."""
    horizon = instance.horizon if horizon is None else int(horizon)
    env_stream = environment_rng(seed)
    pol_stream = policy_rng(seed)
    graph = instance.graph
    k = graph.num_arms
    rewards = np.empty((horizon, k), dtype=np.float64)
    payoffs = np.empty(horizon, dtype=np.float64)
    actions: list[np.ndarray] = []
    for t in range(horizon):
        action = policy.select(pol_stream)
        row = emit_round(instance.source, t, env_stream)
        allowed = np.zeros(k, dtype=bool)
        allowed[out_neighborhood(graph, action)] = True
        view = FeedbackView(row, allowed)
        policy.update(action, view)
        rewards[t] = row
        payoffs[t] = float(row @ action)
        actions.append(np.flatnonzero(action).astype(np.int64))
        if on_round is not None:
            on_round(t, policy, action)
    best_arms, best_payoffs = hindsight_best(rewards, instance.budget, instance.decisions)
    cumulative_regret = np.cumsum(best_payoffs - payoffs)
    return RegretTrace(
        seed=seed,
        horizon=horizon,
        num_arms=k,
        budget=instance.budget,
        policy_name=getattr(policy, "name", type(policy).__name__),
        config_hash=config_hash_value,
        actions=actions,
        payoffs=payoffs,
        cumulative_regret=cumulative_regret,
        best_action=best_arms,
        best_payoff=float(sum(best_payoffs)),
    )


def _run_seed_from_raw(raw: dict, seed: int) -> RegretTrace:
    config = parse_config(raw)
    policy = make_policy(config.policy, config.instance, config.instance.horizon)
    return run_single(
        config.instance, policy, seed, config_hash_value=config.config_hash
    )


def run(config: ExperimentConfig, output_dir=None, max_workers: int = 1) -> list[RegretTrace]:
    """All seeds of a config; optionally writes traces and a summary.

    With ``max_workers > 1`` seeds fan out to a process pool; results are
    merged in seed order so the artifacts do not depend on worker count.
    """
    if max_workers > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            traces = list(pool.map(_run_seed_from_raw, [config.raw] * len(config.seeds), config.seeds))
    else:
        traces = [_run_seed_from_raw(config.raw, seed) for seed in config.seeds]

    directory = resolve_output_dir(output_dir if output_dir is not None else config.output_dir)
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
        for trace in traces:
            write_trace(trace, directory / trace_filename(config.config_hash, trace.seed))
        finals = [t.final_regret for t in traces]
        summary = {
            "kind": "run",
            "config_hash": config.config_hash,
            "policy": config.policy["id"],
            "rng": RNG_ALGORITHM,
            "seeds": list(config.seeds),
            "horizon": config.instance.horizon,
            "mean_final_regret": float(np.mean(finals)),
            "std_final_regret": float(np.std(finals)),
            "per_seed_final_regret": {str(t.seed): t.final_regret for t in traces},
            "traces": [trace_filename(config.config_hash, t.seed) for t in traces],
            "config": config.raw,
        }
        write_summary(summary, directory / f"{config.config_hash}_summary.json")
    return traces


def resolve_output_dir(explicit=None) -> Path | None:
    if explicit is not None:
        return Path(explicit)
    env_value = os.environ.get(OUTPUT_DIR_ENV)
    return Path(env_value) if env_value else None


# ---------------------------------------------------------------------------
# trace files


def trace_filename(hash_value: str, seed: int, horizon: int | None = None) -> str:
    if horizon is None:
        return f"{hash_value}_seed{seed}.csv"
    return f"{hash_value}_T{horizon}_seed{seed}.csv"


def write_trace(trace: RegretTrace, path) -> None:
    lines = [
        f"# {TRACE_FORMAT}",
        f"# config_hash={trace.config_hash or ''}",
        f"# policy={trace.policy_name}",
        f"# seed={trace.seed}",
        f"# rng={trace.rng_algorithm}",
        f"# horizon={trace.horizon}",
        f"# num_arms={trace.num_arms}",
        f"# budget={trace.budget}",
        f"# best_action={';'.join(str(a) for a in trace.best_action)}",
        f"# best_payoff={trace.best_payoff!r}",
        "t,arms,payoff,cumulative_regret",
    ]
    for t in range(trace.horizon):
        arms = ";".join(str(int(a)) for a in trace.actions[t])
        lines.append(
            f"{t + 1},{arms},{float(trace.payoffs[t])!r},{float(trace.cumulative_regret[t])!r}"
        )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trace(path) -> dict:
    """Parse a trace file back into metadata and arrays."""
    meta: dict = {}
    rows_t: list[int] = []
    rows_arms: list[tuple[int, ...]] = []
    rows_payoff: list[float] = []
    rows_regret: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                body = line[2:]
                if "=" in body:
                    key, value = body.split("=", 1)
                    meta[key] = value
                else:
                    meta["format"] = body
            elif line and not line.startswith("t,"):
                t_str, arms_str, payoff_str, regret_str = line.split(",")
                rows_t.append(int(t_str))
                rows_arms.append(
                    tuple(int(a) for a in arms_str.split(";")) if arms_str else ()
                )
                rows_payoff.append(float(payoff_str))
                rows_regret.append(float(regret_str))
    meta["t"] = np.asarray(rows_t, dtype=np.int64)
    meta["arms"] = rows_arms
    meta["payoff"] = np.asarray(rows_payoff, dtype=np.float64)
    meta["cumulative_regret"] = np.asarray(rows_regret, dtype=np.float64)
    return meta


def write_summary(summary: dict, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# scaling sweeps


@dataclass(frozen=True)
class SweepResult:
    horizons: tuple[int, ...]
    mean_regret: tuple[float, ...]
    std_regret: tuple[float, ...]
    stderr_regret: tuple[float, ...]
    slope: float
    slope_stderr: float
    intercept: float

    def to_dict(self) -> dict:
        return {
            "horizons": list(self.horizons),
            "mean_regret": list(self.mean_regret),
            "std_regret": list(self.std_regret),
            "stderr_regret": list(self.stderr_regret),
            "slope": self.slope,
            "slope_stderr": self.slope_stderr,
            "intercept": self.intercept,
        }


def fit_scaling_exponent(horizons, mean_regrets) -> tuple[float, float, float]:
    """Least-squares slope of log(mean regret) on log(horizon).

    Returns (slope, slope standard error, intercept). Mean regrets must be
    positive; a policy whose regret does not grow at all has no exponent.
    """
    x = np.log(np.asarray(horizons, dtype=np.float64))
    y = np.asarray(mean_regrets, dtype=np.float64)
    if x.shape[0] < 3:
        raise InsufficientData("need at least 3 horizons to fit a slope")
    if np.any(y <= 0.0):
        raise InsufficientData("mean regret must be positive to fit a log-log slope")
    y = np.log(y)
    n = x.shape[0]
    x_center = x - x.mean()
    slope = float(np.dot(x_center, y) / np.dot(x_center, x_center))
    intercept = float(y.mean() - slope * x.mean())
    residuals = y - (slope * x + intercept)
    if n > 2:
        variance = float(np.dot(residuals, residuals) / (n - 2))
        slope_stderr = math.sqrt(variance / float(np.dot(x_center, x_center)))
    else:
        slope_stderr = float("nan")
    return slope, slope_stderr, intercept


def sweep_and_fit(config: ExperimentConfig, output_dir=None) -> SweepResult:
    """Run the config's seed set at every horizon and fit the growth rate.

    Policies are re-tuned per horizon (the closed-form tuning depends on
    it). Requires at least 3 horizons and 10 seeds.
    """
    if config.horizons is None or len(config.horizons) < 3:
        raise InsufficientData("sweep needs a grid of at least 3 horizons")
    if len(config.seeds) < 10:
        raise InsufficientData("sweep needs at least 10 seeds per horizon")
    means, stds, stderrs = [], [], []
    directory = resolve_output_dir(output_dir if output_dir is not None else config.output_dir)
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
    for horizon in config.horizons:
        finals = []
        for seed in config.seeds:
            adjusted = dict(config.raw)
            adjusted["instance"] = dict(config.raw["instance"], horizon=int(horizon))
            trace = _run_seed_from_raw(adjusted, seed)
            finals.append(trace.final_regret)
            if directory is not None:
                write_trace(
                    trace,
                    directory / trace_filename(config.config_hash, seed, horizon=int(horizon)),
                )
        finals_arr = np.asarray(finals)
        means.append(float(finals_arr.mean()))
        stds.append(float(finals_arr.std()))
        stderrs.append(float(finals_arr.std(ddof=1) / math.sqrt(len(finals))))
    slope, slope_stderr, intercept = fit_scaling_exponent(config.horizons, means)
    result = SweepResult(
        horizons=tuple(int(t) for t in config.horizons),
        mean_regret=tuple(means),
        std_regret=tuple(stds),
        stderr_regret=tuple(stderrs),
        slope=slope,
        slope_stderr=slope_stderr,
        intercept=intercept,
    )
    if directory is not None:
        summary = {
            "kind": "sweep",
            "config_hash": config.config_hash,
            "policy": config.policy["id"],
            "rng": RNG_ALGORITHM,
            "seeds": list(config.seeds),
            "config": config.raw,
            **result.to_dict(),
        }
        write_summary(summary, directory / f"{config.config_hash}_sweep_summary.json")
    return result


# ---------------------------------------------------------------------------
# sampler-separation experiment


@dataclass(frozen=True)
class SeparationReport:
    """Paired comparison of swap rounding against clique-aligned sampling."""

    num_cliques: int
    budget: int
    horizon: int
    seeds: tuple[int, ...]
    epsilon: float
    eta: float
    clique_means: tuple[float, ...]
    swap_regrets: tuple[float, ...]
    aligned_regrets: tuple[float, ...]
    mean_swap_regret: float
    mean_aligned_regret: float
    regret_ratio: float
    alignment_held: bool
    swap_mixing_fraction: float

    def to_dict(self) -> dict:
        return {
            "num_cliques": self.num_cliques,
            "budget": self.budget,
            "horizon": self.horizon,
            "seeds": list(self.seeds),
            "epsilon": self.epsilon,
            "eta": self.eta,
            "clique_means": list(self.clique_means),
            "swap_regrets": list(self.swap_regrets),
            "aligned_regrets": list(self.aligned_regrets),
            "mean_swap_regret": self.mean_swap_regret,
            "mean_aligned_regret": self.mean_aligned_regret,
            "regret_ratio": self.regret_ratio,
            "alignment_held": self.alignment_held,
            "swap_mixing_fraction": self.swap_mixing_fraction,
        }


def _is_full_clique(action: np.ndarray, cliques) -> bool:
    selected = np.flatnonzero(action)
    return any(tuple(selected) == tuple(c) for c in cliques)


def separation_experiment(
    num_cliques: int,
    budget: int,
    horizon: int,
    seeds,
    clique_means=None,
    gap_coefficient: float = 1.0,
    epsilon: float | None = None,
    eta: float | None = None,
) -> SeparationReport:
    """Same rewards, same tuning, different samplers.

    The instance is a disjoint union of budget-size cliques with rewards
    shared inside each clique, so the clique-aligned sampler faces an
    equivalent one-choice-per-clique bandit with rewards scaled by the
    budget. Both policies consume identical realized reward streams per
    seed. If the aligned run ever plays a non-clique action or lets its
    iterate drift off the aligned set the experiment fails.

    Default clique means follow the hard-family shape: 1/4 everywhere,
    one elevated clique with gap gap_coefficient * sqrt(cliques/horizon).
    Both policies always share one (epsilon, eta) pair, defaulting to the
    closed-form tuning; overriding eta changes the operating point, never
    the pairing.
    """
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("at least one seed required")
    graph, blocks = clique_partition_instance(num_cliques, budget, self_loops_graph(num_cliques))
    k = graph.num_arms
    if clique_means is None:
        gap = hard_instance_gap(num_cliques, horizon, coefficient=gap_coefficient)
        clique_means = np.full(num_cliques, 0.25)
        clique_means[0] = 0.25 + gap
    clique_means = np.asarray(clique_means, dtype=np.float64)
    tuned_eps, tuned_eta = recommended_parameters(k, budget, horizon, num_cliques)
    epsilon = tuned_eps if epsilon is None else float(epsilon)
    eta = tuned_eta if eta is None else float(eta)

    swap_regrets, aligned_regrets = [], []
    mixing_rounds = 0
    for seed in seeds:
        draws = (environment_rng(seed).random((horizon, num_cliques)) < clique_means)
        source = CliqueAveragedSource(blocks, clique_sequence=budget * draws.astype(np.float64))
        instance = Instance(
            graph=graph, budget=budget, source=source, horizon=horizon, cliques=tuple(blocks)
        )

        mixing = {"count": 0}

        def count_mixing(t, policy, action) -> None:
            if not _is_full_clique(action, blocks):
                mixing["count"] += 1

        swap_policy = OsmdgPolicy(
            graph, budget, horizon, epsilon=epsilon, eta=eta, sampler=SwapRoundingSampler()
        )
        swap_trace = run_single(instance, swap_policy, seed, on_round=count_mixing)
        mixing_rounds += mixing["count"]

        aligned_sampler = CliqueAlignedSampler(blocks)
        aligned_policy = OsmdgPolicy(
            graph, budget, horizon, epsilon=epsilon, eta=eta, sampler=aligned_sampler
        )

        def check_aligned(t, policy, action) -> None:
            if not _is_full_clique(action, blocks):
                raise AlignmentBroken(f"round {t}: action is not a whole clique")
            spread = max(float(np.ptp(policy.x[list(c)])) for c in blocks)
            if spread > 1e-9:
                raise AlignmentBroken(f"round {t}: iterate drifted {spread:.3g} off alignment")

        aligned_trace = run_single(instance, aligned_policy, seed, on_round=check_aligned)
        if aligned_sampler.fallback_count:
            raise AlignmentBroken("clique-aligned sampler fell back to mean-only")
        swap_regrets.append(swap_trace.final_regret)
        aligned_regrets.append(aligned_trace.final_regret)

    mean_swap = float(np.mean(swap_regrets))
    mean_aligned = float(np.mean(aligned_regrets))
    return SeparationReport(
        num_cliques=num_cliques,
        budget=budget,
        horizon=horizon,
        seeds=seeds,
        epsilon=epsilon,
        eta=eta,
        clique_means=tuple(float(m) for m in clique_means),
        swap_regrets=tuple(swap_regrets),
        aligned_regrets=tuple(aligned_regrets),
        mean_swap_regret=mean_swap,
        mean_aligned_regret=mean_aligned,
        regret_ratio=mean_aligned / mean_swap if mean_swap > 0 else math.inf,
        alignment_held=True,
        swap_mixing_fraction=mixing_rounds / (len(seeds) * horizon),
    )
