"""
Sweeps over whole families of signed graphs.

Exhaustive mode walks every signed graph on n labelled vertices: each vertex
pair is absent, positive or negative, so an integer in range(3**C(n, 2))
names one graph and disjoint integer ranges can be handed to separate worker
processes. Random mode samples graphs from seeded generators, theta mode walks
the theta family. Every examined graph runs the configured checks; the first
failing check aborts the sweep with the graph attached.
"""

import itertools
import json
import logging
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, Literal

import networkx as nx
from networkx.algorithms.isomorphism import categorical_edge_match
from pydantic import BaseModel, Field, model_validator

from lib.utils import jsonl, read_lines, write
from netlap.core import (
    SignedGraph,
    coalesce,
    complete_graph,
    complete_join_neg,
    cycle_graph,
    disjoint_union,
    negate,
    net_degree,
    path_graph,
    random_cactus,
    random_signed,
    random_tree,
    random_unicyclic,
    star_graph,
    theta_graph,
)
from netlap.errors import CapExceededError, InputError, TheoremViolation
from netlap.exactalg import nullity
from netlap.settings import get_settings
from netlap.structure import is_connected, shared_edge_block, to_networkx
from netlap.theorems import (
    ADDITIVITY,
    CACTUS_PREDICTION,
    CHECK_NAMES,
    COALESCENCE,
    EDGE_STEP,
    EDGELESS,
    MAX_NULLITY,
    NEGATION,
    NULLITY_BOUNDS,
    CheckResult,
    VerificationReport,
    run_checks,
    verify_all,
)

logger = logging.getLogger(__name__)

SWEEP_CHECKS = (
    NULLITY_BOUNDS,
    MAX_NULLITY,
    EDGE_STEP,
    EDGELESS,
    ADDITIVITY,
    COALESCENCE,
    CACTUS_PREDICTION,
    NEGATION,
)

# ranges handed to each worker, per worker
CHUNKS_PER_WORKER = 8


class SweepConfig(BaseModel):
    n_min: int = Field(default=1, ge=1, description="smallest order to sweep")
    n_max: int = Field(default=4, ge=1, description="largest order to sweep")
    mode: Literal["exhaustive", "random", "theta"] = Field(default="exhaustive", description="graph family to walk")
    samples: int = Field(default=100, ge=0, description="random mode: number of sampled graphs")
    seed: int = Field(default=0, description="random mode: base seed")
    edge_prob: float = Field(default=0.5, ge=0.0, le=1.0, description="random mode: edge probability")
    neg_prob: float = Field(default=0.5, ge=0.0, le=1.0, description="random mode: negative sign probability")
    connected_only: bool = Field(default=False, description="skip disconnected graphs")
    cactus: Literal["any", "cactus", "non-cactus"] = Field(default="any", description="keep only (non-)cacti")
    checks: list[str] = Field(default_factory=lambda: list(SWEEP_CHECKS), description="checks run on every graph")
    workers: int | None = Field(default=None, ge=1, description="worker processes, defaults to the settings")
    max_path_sum: int = Field(default=10, ge=3, description="theta mode: largest a + b + c")
    min_path_length: int = Field(default=1, ge=1, description="theta mode: shortest allowed path")

    @model_validator(mode="after")
    def _check_ranges(self) -> "SweepConfig":
        if self.n_min > self.n_max:
            raise ValueError(f"n_min {self.n_min} exceeds n_max {self.n_max}")
        unknown = [c for c in self.checks if c not in CHECK_NAMES]
        if unknown:
            raise ValueError(f"unknown checks {unknown}, expected names from {list(CHECK_NAMES)}")
        return self


def load_config(config: str) -> SweepConfig:
    with open(config, "r") as file:
        json_data = json.load(file)
    return SweepConfig.model_validate(json_data)


class SweepStatistics(BaseModel):
    enumerated: int = 0
    examined: int = Field(default=0, description="graphs that passed the filters")
    checks: dict[str, dict[str, int]] = Field(default_factory=dict, description="per-check tallies")
    histogram: dict[str, int] = Field(default_factory=dict, description='connected graphs keyed "n,beta,eta"')
    extremal: list[str] = Field(default_factory=list, description="connected graphs with eta = n - 1, as JSON")

    def tally(self, result: CheckResult) -> None:
        row = self.checks.setdefault(result.name, {"applicable": 0, "passed": 0, "failed": 0, "skipped": 0})
        if not result.applicable:
            row["skipped"] += 1
            return
        row["applicable"] += 1
        row["passed" if result.passed else "failed"] += 1

    def merge(self, other: "SweepStatistics") -> None:
        """Commutative: counts add, lists concatenate and are re-sorted."""
        self.enumerated += other.enumerated
        self.examined += other.examined
        for name, row in other.checks.items():
            mine = self.checks.setdefault(name, dict.fromkeys(row, 0))
            for key, count in row.items():
                mine[key] = mine.get(key, 0) + count
        for key, count in other.histogram.items():
            self.histogram[key] = self.histogram.get(key, 0) + count
        self.extremal = sorted(self.extremal + other.extremal)

    def histogram_map(self) -> dict[tuple[int, int, int], int]:
        out = {}
        for key, count in self.histogram.items():
            n, beta, eta = (int(x) for x in key.split(","))
            out[(n, beta, eta)] = count
        return dict(sorted(out.items()))


class SweepResult(BaseModel):
    statistics: SweepStatistics
    report: VerificationReport = Field(description="one aggregated result per configured check")

    def summary(self) -> dict:
        stats = self.statistics
        failed = {name: row["failed"] for name, row in stats.checks.items()}
        return {
            "enumerated": stats.enumerated,
            "examined": stats.examined,
            "bounds_violations": failed.get(NULLITY_BOUNDS, 0),
            "violations": sum(failed.values()),
            "checks": dict(sorted(stats.checks.items())),
            "histogram": {key: stats.histogram[key] for key in sorted(stats.histogram, key=_histogram_order)},
            "extremal_labelled": len(stats.extremal),
            "extremal_classes": len(dedupe_isomorphic([SignedGraph.from_json(g) for g in stats.extremal])),
        }


def _histogram_order(key: str) -> tuple[int, ...]:
    return tuple(int(x) for x in key.split(","))


def _aggregate(stats: SweepStatistics, names: list[str]) -> VerificationReport:
    checks = []
    for name in names:
        row = stats.checks.get(name, {})
        if not row.get("applicable"):
            checks.append(CheckResult(name=name, applicable=False, passed=False, witness="no graph met the precondition"))
            continue
        ok = row.get("failed", 0) == 0
        checks.append(
            CheckResult(
                name=name,
                applicable=True,
                passed=ok,
                witness=None if ok else f"{row['failed']} of {row['applicable']} graphs failed",
            )
        )
    return VerificationReport(checks=checks)


# graph spaces


def vertex_pairs(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def space_size(n: int) -> int:
    return 3 ** (n * (n - 1) // 2)


def graph_from_code(n: int, code: int) -> SignedGraph:
    """
    Decode a base-3 integer into a signed graph on n vertices. Digit i (least
    significant first) belongs to the i-th vertex pair in lexicographic order:
    0 absent, 1 positive, 2 negative.
    """
    if n < 0:
        raise InputError(f"vertex count must be non-negative, got {n}")
    if not 0 <= code < space_size(n):
        raise InputError(f"code {code} outside 0..{space_size(n) - 1} for n={n}")
    edges = []
    for u, v in vertex_pairs(n):
        code, digit = divmod(code, 3)
        if digit:
            edges.append((u, v, 1 if digit == 1 else -1))
    # pairs come out in lexicographic order, so the edges are canonical
    return SignedGraph.model_construct(n=n, edges=tuple(edges))


def random_sample(cfg: SweepConfig, index: int) -> SignedGraph:
    """The index-th graph of a random sweep; depends only on (seed, index)."""
    rng = random.Random(f"{cfg.seed}:{index}")
    n = rng.randint(cfg.n_min, cfg.n_max)
    return random_signed(n, seed=rng.getrandbits(64), edge_prob=cfg.edge_prob, neg_prob=cfg.neg_prob)


PathSigns = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def theta_lengths(cfg: SweepConfig) -> Iterator[tuple[int, int, int]]:
    """Path lengths a <= b <= c with b >= 2 and a + b + c <= max_path_sum."""
    top = cfg.max_path_sum
    for a in range(cfg.min_path_length, top + 1):
        for b in range(max(a, 2), top + 1):
            for c in range(b, top - a - b + 1):
                yield a, b, c


def _theta_key(signs: PathSigns) -> tuple:
    # paths may be permuted and the two terminals swapped
    forward = tuple(sorted((len(p), p) for p in signs))
    backward = tuple(sorted((len(p), tuple(reversed(p))) for p in signs))
    return min(forward, backward)


def theta_family(cfg: SweepConfig) -> Iterator[tuple[PathSigns, SignedGraph]]:
    """Every theta graph in range, one per sign pattern up to symmetry."""
    for a, b, c in theta_lengths(cfg):
        seen: set[tuple] = set()
        patterns = [list(itertools.product((1, -1), repeat=length)) for length in (a, b, c)]
        for signs in itertools.product(*patterns):
            key = _theta_key(signs)
            if key in seen:
                continue
            seen.add(key)
            yield signs, theta_graph(a, b, c, signs)


# examination


def _keep(g: SignedGraph, cfg: SweepConfig, connected: bool) -> bool:
    if cfg.connected_only and not connected:
        return False
    if cfg.cactus == "any":
        return True
    if not connected:
        return False
    return (shared_edge_block(g) is None) == (cfg.cactus == "cactus")


def examine(g: SignedGraph, cfg: SweepConfig, stats: SweepStatistics) -> None:
    """Filter, record nullity statistics and run the checks; raise on the first failure."""
    stats.enumerated += 1
    connected = is_connected(g)
    if not _keep(g, cfg, connected):
        return
    stats.examined += 1
    eta = nullity(g)
    if connected:
        key = f"{g.n},{g.m - g.n + 1},{eta}"
        stats.histogram[key] = stats.histogram.get(key, 0) + 1
        if g.n >= 2 and eta == g.n - 1:
            stats.extremal.append(g.to_json())
    for result in run_checks(g, cfg.checks, eta):
        stats.tally(result)
        if result.applicable and not result.passed:
            raise TheoremViolation(result.name, result.witness or "", g.to_json())


def _graphs(cfg: SweepConfig, task: tuple[int, int, int]) -> Iterator[SignedGraph]:
    n, start, stop = task
    if cfg.mode == "random":
        for index in range(start, stop):
            yield random_sample(cfg, index)
    else:
        for code in range(start, stop):
            yield graph_from_code(n, code)


def sweep_chunk(cfg: SweepConfig, task: tuple[int, int, int]) -> SweepStatistics:
    """Worker entry point: examine one contiguous range of the space."""
    stats = SweepStatistics()
    for g in _graphs(cfg, task):
        examine(g, cfg, stats)
    return stats


def _split(n: int, total: int, parts: int) -> list[tuple[int, int, int]]:
    parts = max(1, min(parts, total))
    step, rest = divmod(total, parts)
    tasks, start = [], 0
    for i in range(parts):
        stop = start + step + (1 if i < rest else 0)
        tasks.append((n, start, stop))
        start = stop
    return tasks


def _workers(cfg: SweepConfig) -> int:
    return cfg.workers or get_settings().workers


def _run(cfg: SweepConfig, tasks: list[tuple[int, int, int]]) -> SweepStatistics:
    stats = SweepStatistics()
    workers = _workers(cfg)
    if workers == 1 or len(tasks) == 1:
        for task in tasks:
            stats.merge(sweep_chunk(cfg, task))
        return stats

    executor = ProcessPoolExecutor(max_workers=workers)
    try:
        futures = [executor.submit(sweep_chunk, cfg, task) for task in tasks]
        # merge in task order so the result does not depend on scheduling
        for future in futures:
            stats.merge(future.result())
    except BaseException:
        executor.shutdown(wait=True, cancel_futures=True)
        raise
    executor.shutdown(wait=True)
    return stats


def exhaustive_sweep(cfg: SweepConfig) -> SweepResult:
    """Every signed graph on n labelled vertices for n_min <= n <= n_max."""
    ceiling = get_settings().exhaustive_max_n
    if cfg.n_max > ceiling:
        raise CapExceededError("exhaustive sweep", cfg.n_max, ceiling)
    cfg = cfg.model_copy(update={"mode": "exhaustive"})
    workers = _workers(cfg)
    tasks = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        logger.info("Sweeping all %d signed graphs on n=%d ---->", space_size(n), n)
        tasks.extend(_split(n, space_size(n), workers * CHUNKS_PER_WORKER))
    stats = _run(cfg, tasks)
    return SweepResult(statistics=stats, report=_aggregate(stats, cfg.checks))


def random_sweep(cfg: SweepConfig) -> SweepResult:
    cfg = cfg.model_copy(update={"mode": "random"})
    logger.info("Sampling %d signed graphs on %d..%d vertices ---->", cfg.samples, cfg.n_min, cfg.n_max)
    if cfg.samples == 0:
        stats = SweepStatistics()
    else:
        stats = _run(cfg, _split(0, cfg.samples, _workers(cfg) * CHUNKS_PER_WORKER))
    return SweepResult(statistics=stats, report=_aggregate(stats, cfg.checks))


def theta_sweep(cfg: SweepConfig) -> SweepResult:
    logger.info("Sweeping theta graphs up to total path length %d ---->", cfg.max_path_sum)
    stats = SweepStatistics()
    for _, g in theta_family(cfg):
        examine(g, cfg, stats)
    return SweepResult(statistics=stats, report=_aggregate(stats, cfg.checks))


def sweep(cfg: SweepConfig) -> SweepResult:
    if cfg.mode == "exhaustive":
        return exhaustive_sweep(cfg)
    if cfg.mode == "random":
        return random_sweep(cfg)
    return theta_sweep(cfg)


def nullity_histogram(cfg: SweepConfig) -> dict[tuple[int, int, int], int]:
    """Counts of connected graphs by (n, beta, eta) over the configured space."""
    return sweep(cfg).statistics.histogram_map()


def _profile(g: SignedGraph) -> tuple:
    degrees = sorted((len(adj), net_degree(g, v)) for v, adj in enumerate(g.neighbors()))
    positives = sum(1 for *_, s in g.edges if s > 0)
    return g.n, g.m, positives, tuple(degrees)


def dedupe_isomorphic(graphs: list[SignedGraph]) -> list[SignedGraph]:
    """First representative of each sign-preserving isomorphism class, in input order."""
    buckets: dict[tuple, list[nx.Graph]] = {}
    kept = []
    match = categorical_edge_match("sign", 0)
    for g in graphs:
        G = to_networkx(g)
        bucket = buckets.setdefault(_profile(g), [])
        if any(nx.is_isomorphic(G, H, edge_match=match) for H in bucket):
            continue
        bucket.append(G)
        kept.append(g)
    return kept


# shared-edge cycles


class CycleProfile(BaseModel):
    length: int
    m_plus: int
    m_minus: int

    @property
    def balanced_count(self) -> bool:
        return self.m_plus == self.m_minus


class Finding(BaseModel):
    graph: SignedGraph = Field(description="the graph, stored as its {n, edges} object")
    nullity: int
    beta: int
    cycles: list[CycleProfile]
    note: str = Field(description="the phenomenon the graph illustrates")

    def reverify(self) -> bool:
        return nullity(self.graph) == self.nullity

    @property
    def balanced_cycles(self) -> int:
        return sum(1 for c in self.cycles if c.balanced_count)


WITNESS_NOTE = "shared-edge cycles with equal sign counts, yet nullity 1"
CONTRAST_NOTE = "shared-edge cycles with equal sign counts and nullity above 1"


def theta_cycles(signs: PathSigns) -> list[CycleProfile]:
    """The three cycles of a theta graph, one per pair of paths."""
    cycles = []
    for x, y in ((0, 1), (0, 2), (1, 2)):
        joined = signs[x] + signs[y]
        plus = sum(1 for s in joined if s > 0)
        cycles.append(CycleProfile(length=len(joined), m_plus=plus, m_minus=len(joined) - plus))
    return cycles


def find_shared_cycle_examples(cfg: SweepConfig) -> list[Finding]:
    """
    Theta graphs with at least two equal-count cycles and nullity 1, followed
    by the contrasting theta graphs with an equal-count cycle and nullity
    above 1. An empty list is a valid outcome.
    """
    if cfg.mode != "theta":
        raise InputError(f"shared-cycle search needs theta mode, got {cfg.mode!r}")
    witnesses, contrasts = [], []
    examined = 0
    for signs, g in theta_family(cfg):
        examined += 1
        cycles = theta_cycles(signs)
        balanced = sum(1 for c in cycles if c.balanced_count)
        if balanced == 0:
            continue
        eta = nullity(g)
        if balanced >= 2 and eta == 1:
            witnesses.append(Finding(graph=g, nullity=eta, beta=2, cycles=cycles, note=WITNESS_NOTE))
        elif eta > 1:
            contrasts.append(Finding(graph=g, nullity=eta, beta=2, cycles=cycles, note=CONTRAST_NOTE))
    logger.info("%d theta graphs: %d witnesses, %d contrasts", examined, len(witnesses), len(contrasts))
    return witnesses + contrasts


def write_findings(findings: list[Finding], path: str) -> None:
    """One JSON object per line; "-" writes to stdout."""
    write(path, jsonl([f.model_dump_json() for f in findings]))


def read_findings(path: str) -> list[Finding]:
    return [Finding.model_validate_json(line) for line in read_lines(path)]


# built-in corpus


def suite_corpus(seed: int = 0) -> list[tuple[str, SignedGraph]]:
    corpus: list[tuple[str, SignedGraph]] = [
        ("edgeless n=3", SignedGraph(n=3)),
        ("single vertex", SignedGraph(n=1)),
        ("positive triangle", complete_graph(3)),
        ("positive K4", complete_graph(4)),
        ("negative K4", complete_graph(4, -1)),
        ("mixed star", star_graph([1, 1, -1])),
        ("mixed path", path_graph([1, -1, -1, 1])),
        ("bowtie", coalesce(cycle_graph([1, -1, 1]), 0, cycle_graph([1, 1, -1, -1]), 0)),
        ("two components", disjoint_union(complete_graph(3), path_graph([-1, 1]))),
        ("components with isolated vertex", disjoint_union(cycle_graph([1, -1, 1, -1]), SignedGraph(n=1))),
    ]
    for signs in itertools.product((1, -1), repeat=4):
        corpus.append((f"C4 {signs}", cycle_graph(signs)))
    for k in range(1, 4):
        join = complete_join_neg(k)
        corpus.append((f"join k={k}", join))
        corpus.append((f"negated join k={k}", negate(join)))
    for i in range(4):
        corpus.append((f"tree {i}", random_tree(6 + i, seed=seed + i)))
        corpus.append((f"unicyclic {i}", random_unicyclic(7, 3 + i, seed=seed + i)))
        corpus.append((f"signed {i}", random_signed(6, seed=seed + i)))
    for profile in ("unbalanced", "balanced", "mixed", "random"):
        corpus.append((f"{profile} cactus", random_cactus(12, 2, seed=seed, profile=profile, max_cycle_length=6)))
    corpus.append(("theta 1,2,2", theta_graph(1, 2, 2)))
    corpus.append(("theta 2,2,2", theta_graph(2, 2, 2, [[1, -1], [-1, 1], [1, 1]])))
    corpus.append(("theta 1,3,3", theta_graph(1, 3, 3, [[1], [-1, 1, -1], [1, -1, -1]])))
    return corpus


def small_suite(seed: int = 0) -> VerificationReport:
    """verify_all over the built-in corpus, merged with an exhaustive sweep for n <= 4."""
    reports = []
    for label, g in suite_corpus(seed):
        logger.debug("Verifying %s ---->", label)
        report = verify_all(g)
        reports.append(
            VerificationReport(
                checks=[
                    c if c.passed or not c.applicable else c.model_copy(update={"witness": f"{label}: {c.witness}"})
                    for c in report.checks
                ]
            )
        )
    swept = exhaustive_sweep(SweepConfig(n_min=1, n_max=4, workers=1)).report
    return reports[0].merged(*reports[1:], swept)
