"""Discovery orchestration: order the activities, then per iteration
project the log, reduce the search space, generate candidates, score them
and keep the best net. Every iteration is recorded for the report.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .candidates import DEFAULT_PATTERNS, generate_candidates
from .errors import DiscoveryAborted
from .eventlog import _as_fraction
from .ordering import OrderingStrategy, make_order
from .petri import WorkflowNet, is_free_choice, is_sound
from .quality import evaluate
from .reduction import full_node_set, reduce_search_space, search_space_ratio

logger = logging.getLogger(__name__)

REPORT_SCHEMA = 1


@dataclass
class DiscoveryConfig:
    strategy: OrderingStrategy = OrderingStrategy("bfs", "start")
    threshold: Fraction = Fraction(9, 10)
    coverage: Fraction = Fraction(95, 100)
    max_subset_size: int = 3
    patterns: tuple = DEFAULT_PATTERNS
    path_budget: int = 50_000
    tau_depth: int = 5
    soundness_budget: int = 100_000
    debug_soundness: bool = False
    jobs: int = 1

    def __post_init__(self):
        self.threshold = _as_fraction(self.threshold)
        self.coverage = _as_fraction(self.coverage)
        if not 0 <= self.threshold <= 1:
            raise ValueError("threshold must be in [0, 1]")
        if not 0 < self.coverage <= 1:
            raise ValueError("coverage must be in (0, 1]")
        if self.max_subset_size < 1:
            raise ValueError("max_subset_size must be >= 1")


@dataclass
class IterationRecord:
    index: int
    activity: str
    v_size: int
    net_nodes: int  # |P u T| of the net the iteration started from
    ratio: Fraction
    provenance: str
    fallback: bool
    candidate_count: int
    pattern: str
    fitness: float
    precision: float
    f1: float
    millis: float
    applications: list = field(default_factory=list)

    def to_json(self):
        return {
            "i": self.index,
            "activity": self.activity,
            "v_size": self.v_size,
            "net_nodes": self.net_nodes,
            "ratio": str(self.ratio),
            "provenance": self.provenance,
            "fallback": self.fallback,
            "candidates": self.candidate_count,
            "pattern": self.pattern,
            "fitness": self.fitness,
            "precision": self.precision,
            "f1": self.f1,
            "millis": self.millis,
            "applications": [app.to_json() for app in self.applications],
        }


@dataclass
class DiscoveryReport:
    strategy: str
    records: list = field(default_factory=list)
    total_millis: float = 0.0

    def to_json(self):
        final = self.records[-1] if self.records else None
        return {
            "schema": REPORT_SCHEMA,
            "strategy": self.strategy,
            "iterations": [r.to_json() for r in self.records],
            "totals": {
                "activities": len(self.records),
                "total_millis": self.total_millis,
                "final_fitness": final.fitness if final else None,
                "final_precision": final.precision if final else None,
                "final_f1": final.f1 if final else None,
            },
        }


def select_best(candidates, log, tau_depth=5, jobs=1):
    """Best candidate by F1 on the given log; ties fall through to higher
    fitness, fewer nodes, smallest canonical serialization."""
    if not candidates:
        raise ValueError("no candidates to select from")
    keys = {c.key for c in candidates}
    assert len(keys) == len(candidates), "duplicate candidates reached selection"
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            scores = list(pool.map(lambda c: evaluate(c.net, log, tau_depth), candidates))
    else:
        scores = [evaluate(c.net, log, tau_depth) for c in candidates]
    ranked = sorted(
        zip(candidates, scores),
        key=lambda cs: (-cs[1].f1, -cs[1].fitness, len(cs[0].net.net.nodes), cs[0].key),
    )
    return ranked[0]


def discover(log, config=None):
    """Run the full incremental discovery on ``log``.

    Returns (final WorkflowNet, DiscoveryReport). The log is variant-
    filtered to the configured coverage first; the candidate selection in
    iteration i uses the log projected onto the activities placed so far.
    """
    config = config or DiscoveryConfig()
    if not log.total_traces:
        raise DiscoveryAborted("cannot discover from an empty log")
    filtered = log.filter_variants(config.coverage)
    gamma = make_order(filtered, config.strategy)
    wf = WorkflowNet.initial()
    report = DiscoveryReport(strategy=config.strategy.name)
    placed = []
    for index, activity in enumerate(gamma, start=1):
        placed.append(activity)
        projected = filtered.project(placed)
        started = time.perf_counter()
        net_nodes = len(wf.net.nodes)
        node_set = reduce_search_space(
            activity, projected, wf, config.threshold, config.path_budget
        )
        ratio = search_space_ratio(node_set, wf)
        candidates = generate_candidates(
            wf, node_set, activity, config.max_subset_size, config.patterns
        )
        if not candidates:
            node_set = full_node_set(wf)
            candidates = generate_candidates(
                wf, node_set, activity, config.max_subset_size, config.patterns
            )
            if not candidates:
                raise DiscoveryAborted(
                    f"no candidate net for activity {activity!r} in iteration {index}",
                    iteration=index,
                    activity=activity,
                )
        best, score = select_best(candidates, projected, config.tau_depth, config.jobs)
        if config.debug_soundness:
            assert is_sound(best.net, config.soundness_budget)
        wf = best.net
        elapsed = (time.perf_counter() - started) * 1000.0
        report.records.append(
            IterationRecord(
                index=index,
                activity=activity,
                v_size=len(node_set),
                net_nodes=net_nodes,
                ratio=ratio,
                provenance=node_set.provenance,
                fallback=node_set.fallback,
                candidate_count=len(candidates),
                pattern=best.pattern,
                fitness=score.fitness,
                precision=score.precision,
                f1=score.f1,
                millis=elapsed,
                applications=best.applications,
            )
        )
        report.total_millis += elapsed
        assert is_free_choice(wf.net)
    return wf, report
