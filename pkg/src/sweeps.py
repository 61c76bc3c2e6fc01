"""
Sweeps Module

Exhaustive verification runs over the enumerated connected graphs:
reg <= hgt together with every other bound, subadditivity over edge splits
E(G) = E(H_1) ∪ E(H_2), and the clique-separator decomposition theorem.

Work is sharded per graph. With jobs > 1 the graphs go to a process pool;
results are merged back in enumeration order, so reports never depend on the
number of workers. Each finished graph is appended to the resume cache.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import repeat
from typing import Any, Callable, Dict, Iterator, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from tqdm import tqdm

from src.analytics import alert_flags, bounds_frame, evaluate_flags, tightness_summary
from src.bounds import bounds_report, decomp_check, enumerate_decompositions
from src.errors import PreconditionError, SizeLimitError
from src.graphs import EdgeSubgraph, emit_graph6, enumerate_connected_graphs, parse_graph6
from src.homology import MAX_REG_VERTICES, reg_binomial_edge
from src.monitoring import alert, log_event
from src.storage import open_cache

HEIGHT_MAX_N = 7
ALL_SPLITS_MAX_N = 5
SAMPLE_SPLITS_MAX_N = 7
DECOMPOSITION_MAX_N = 7


class SweepCase(BaseModel):
    """One split of G; split has one character per edge of G: '1', '2' or 'b' (both)."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    graph6: str
    split: str
    reg_g: int = Field(serialization_alias="regG")
    reg_h1: int = Field(serialization_alias="regH1")
    reg_h2: int = Field(serialization_alias="regH2")
    holds: bool


class GraphOutcome(BaseModel):
    """Everything one sweep learned about one graph; one resume-cache line."""

    graph6: str
    n: int
    cases: int
    violations: List[Dict[str, Any]] = Field(default_factory=list)
    bounds: Optional[Dict[str, Any]] = None


class SweepReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    sweep: str
    max_n: int = Field(serialization_alias="maxN")
    splits: Optional[str] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    p: int
    graphs: int
    cases: int
    violations: List[Dict[str, Any]]
    bounds: List[Dict[str, Any]] = Field(default_factory=list)
    summary: List[Dict[str, Any]] = Field(default_factory=list)
    flags: Dict[str, bool] = Field(default_factory=dict)
    wall_time: float = Field(default=0.0, serialization_alias="wallTime")

    @property
    def holds(self) -> bool:
        return not self.violations

    def content(self) -> Dict[str, Any]:
        """The report without its wall time, for comparing runs."""
        return self.model_dump(by_alias=True, exclude={"wall_time"})


@dataclass(frozen=True)
class SweepParams:
    p: int = 2
    max_vertices: int = MAX_REG_VERTICES
    splits: str = "all"
    samples: int = 200
    seed: int = 0


# splits ----------------------------------------------------------------------


def canonical_splits(edge_count: int) -> Iterator[tuple[int, int]]:
    """
    Every (H_1, H_2) edge-mask pair with H_1 ∪ H_2 = E(G), both nonempty,
    listed once per unordered pair (mask1 <= mask2).
    """
    full = (1 << edge_count) - 1
    for mask1 in range(1, full + 1):
        rest = full & ~mask1
        shared = mask1
        while True:
            mask2 = rest | shared
            if mask2 and mask1 <= mask2:
                yield mask1, mask2
            if not shared:
                break
            shared = (shared - 1) & mask1


def sampled_splits(edge_count: int, samples: int, rng: np.random.Generator) -> List[tuple[int, int]]:
    """Random per-edge assignments (0 = H_1, 1 = H_2, 2 = both), canonicalised and deduplicated."""
    weights = 1 << np.arange(edge_count, dtype=np.int64)
    draws = rng.integers(0, 3, size=(samples, edge_count))
    first = ((draws != 1) * weights).sum(axis=1)
    second = ((draws != 0) * weights).sum(axis=1)
    seen: Dict[tuple[int, int], None] = {}
    for mask1, mask2 in zip(first.tolist(), second.tolist()):
        if mask1 and mask2:
            seen.setdefault((min(mask1, mask2), max(mask1, mask2)))
    return list(seen)


def split_descriptor(mask1: int, mask2: int, edge_count: int) -> str:
    return "".join(
        "b" if mask1 >> e & mask2 >> e & 1 else "1" if mask1 >> e & 1 else "2" for e in range(edge_count)
    )


def split_masks(descriptor: str) -> tuple[int, int]:
    mask1 = sum(1 << e for e, side in enumerate(descriptor) if side in "1b")
    mask2 = sum(1 << e for e, side in enumerate(descriptor) if side in "2b")
    return mask1, mask2


# per-graph workers (module level so the process pool can pickle them) --------


def height_outcome(graph6: str, params: SweepParams) -> GraphOutcome:
    graph = parse_graph6(graph6)
    report = bounds_report(graph, params.p, params.max_vertices)
    dumped = report.model_dump(by_alias=True)
    return GraphOutcome(
        graph6=graph6, n=graph.n, cases=1, violations=[] if report.holds else [dumped], bounds=dumped
    )


def subadditivity_outcome(graph6: str, params: SweepParams) -> GraphOutcome:
    graph = parse_graph6(graph6)
    m = graph.edge_count
    reg_g = reg_binomial_edge(graph, params.p, params.max_vertices)
    if params.splits == "all":
        splits = canonical_splits(m)
    else:
        rng = np.random.default_rng([params.seed, *graph6.encode("ascii")])
        splits = iter(sampled_splits(m, params.samples, rng))
    cases = 0
    violations = []
    for mask1, mask2 in splits:
        cases += 1
        reg_h1 = reg_binomial_edge(EdgeSubgraph(graph, mask1).to_graph(), params.p, params.max_vertices)
        reg_h2 = reg_binomial_edge(EdgeSubgraph(graph, mask2).to_graph(), params.p, params.max_vertices)
        if reg_g > reg_h1 + reg_h2:
            case = SweepCase(
                graph6=graph6,
                split=split_descriptor(mask1, mask2, m),
                reg_g=reg_g,
                reg_h1=reg_h1,
                reg_h2=reg_h2,
                holds=False,
            )
            violations.append(case.model_dump(by_alias=True))
    return GraphOutcome(graph6=graph6, n=graph.n, cases=cases, violations=violations)


def decomposition_outcome(graph6: str, params: SweepParams) -> GraphOutcome:
    graph = parse_graph6(graph6)
    cases = 0
    violations = []
    for a, b, c in enumerate_decompositions(graph):
        cases += 1
        case = decomp_check(graph, a, b, c, params.p, params.max_vertices)
        if not case.holds:
            violations.append(case.model_dump(by_alias=True))
    return GraphOutcome(graph6=graph6, n=graph.n, cases=cases, violations=violations)


# orchestration ---------------------------------------------------------------


def connected_graph6s(max_n: int) -> List[str]:
    return [emit_graph6(g) for n in range(2, max_n + 1) for g in enumerate_connected_graphs(n)]


def run_outcomes(
    worker: Callable[[str, SweepParams], GraphOutcome],
    graph6s: List[str],
    params: SweepParams,
    jobs: int = 1,
    resume: Optional[str] = None,
    progress: bool = False,
) -> List[GraphOutcome]:
    """Runs worker on every graph not already in the resume cache; returns outcomes in input order."""
    with open_cache(resume) as cache:
        done = {key: GraphOutcome.model_validate(record) for key, record in (cache.load() if cache else {}).items()}
        pending = [g for g in graph6s if g not in done]
        if done:
            log_event("sweep_resumed", {"cached": len(done), "pending": len(pending)})
        pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 and pending else None
        try:
            outcomes = pool.map(worker, pending, repeat(params)) if pool else map(worker, pending, repeat(params))
            for outcome in tqdm(outcomes, total=len(pending), disable=not progress, desc=worker.__name__):
                done[outcome.graph6] = outcome
                if cache:
                    cache.append(outcome.model_dump())
        finally:
            if pool:
                pool.shutdown()
    return [done[g] for g in graph6s]


def _check_range(max_n: int, cap: int, what: str) -> None:
    if max_n < 2:
        raise PreconditionError(f"{what} needs --max-n >= 2, got {max_n}")
    if max_n > cap:
        raise SizeLimitError(f"{what} supports --max-n <= {cap}, got {max_n}")


def _report(
    sweep: str, max_n: int, params: SweepParams, outcomes: List[GraphOutcome], started: float, **extra: Any
) -> SweepReport:
    violations = [v for o in outcomes for v in o.violations]
    bounds = [o.bounds for o in outcomes if o.bounds is not None]
    frame = bounds_frame(bounds)
    report = SweepReport(
        sweep=sweep,
        max_n=max_n,
        p=params.p,
        graphs=len(outcomes),
        cases=sum(o.cases for o in outcomes),
        violations=violations,
        bounds=bounds,
        summary=tightness_summary(frame).to_dict(orient="records"),
        flags=evaluate_flags(frame, violations),
        wall_time=round(time.monotonic() - started, 3),
        **extra,
    )
    log_event(f"sweep_{sweep}_finished", {"graphs": report.graphs, "cases": report.cases, "violations": len(violations)})
    alert({"sweep": sweep, "maxN": max_n, "graphs": report.graphs, "cases": report.cases}, alert_flags(report.flags))
    return report


def check_height(
    max_n: int,
    p: int = 2,
    jobs: int = 1,
    resume: Optional[str] = None,
    progress: bool = False,
    max_vertices: int = MAX_REG_VERTICES,
) -> SweepReport:
    """reg <= hgt (and every other bound) on all connected graphs with 2 <= n <= max_n."""
    _check_range(max_n, min(HEIGHT_MAX_N, max_vertices), "check-height")
    started = time.monotonic()
    params = SweepParams(p=p, max_vertices=max_vertices)
    log_event("sweep_height_start", {"maxN": max_n, "p": p, "jobs": jobs})
    outcomes = run_outcomes(height_outcome, connected_graph6s(max_n), params, jobs, resume, progress)
    return _report("height", max_n, params, outcomes, started)


def check_subadditivity(
    max_n: int,
    splits: str = "all",
    samples: int = 200,
    seed: int = 0,
    p: int = 2,
    jobs: int = 1,
    resume: Optional[str] = None,
    progress: bool = False,
    max_vertices: int = MAX_REG_VERTICES,
) -> SweepReport:
    """reg(G) <= reg(H_1) + reg(H_2) over every (or a seeded sample of) edge split."""
    if splits not in ("all", "sample"):
        raise PreconditionError(f"--splits must be all or sample, got {splits}")
    cap = ALL_SPLITS_MAX_N if splits == "all" else SAMPLE_SPLITS_MAX_N
    _check_range(max_n, min(cap, max_vertices), f"check-subadditivity --splits {splits}")
    started = time.monotonic()
    params = SweepParams(p=p, max_vertices=max_vertices, splits=splits, samples=samples, seed=seed)
    log_event("sweep_subadditivity_start", {"maxN": max_n, "splits": splits, "samples": samples, "seed": seed})
    outcomes = run_outcomes(subadditivity_outcome, connected_graph6s(max_n), params, jobs, resume, progress)
    extra: Dict[str, Any] = {"splits": splits}
    if splits == "sample":
        extra.update(samples=samples, seed=seed)
    return _report("subadditivity", max_n, params, outcomes, started, **extra)


def check_decompositions(
    max_n: int,
    p: int = 2,
    jobs: int = 1,
    resume: Optional[str] = None,
    progress: bool = False,
    max_vertices: int = MAX_REG_VERTICES,
) -> SweepReport:
    """Initial-ideal additivity and the regularity inequality for every valid (A, B, C)."""
    _check_range(max_n, min(DECOMPOSITION_MAX_N, max_vertices), "check-decompositions")
    started = time.monotonic()
    params = SweepParams(p=p, max_vertices=max_vertices)
    log_event("sweep_decompositions_start", {"maxN": max_n, "p": p, "jobs": jobs})
    outcomes = run_outcomes(decomposition_outcome, connected_graph6s(max_n), params, jobs, resume, progress)
    return _report("decompositions", max_n, params, outcomes, started)
