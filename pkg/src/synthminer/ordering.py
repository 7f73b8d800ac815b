"""Activity-ordering strategies: frequency, BFS and DFS exploration of the
directly-follows relation, each from the start or the end of the log.

Both graph-based strategies seed their exploration with the start
activities. The seed sequence ranks them by how often they start a trace,
then by total frequency, then alphabetically; ranking purely by total
frequency (with the alphabetical tie-break) would not reproduce the
end-direction behavior on logs where all activities are equally frequent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)

STRATEGY_NAMES = ("freq", "bfs-start", "bfs-end", "dfs-start", "dfs-end")


@dataclass(frozen=True)
class OrderingStrategy:
    kind: str  # "frequency" | "bfs" | "dfs"
    direction: str = "start"  # ignored for frequency

    @classmethod
    def from_name(cls, name):
        if name == "freq":
            return cls("frequency")
        if name in ("bfs-start", "bfs-end", "dfs-start", "dfs-end"):
            kind, direction = name.split("-")
            return cls(kind, direction)
        raise ValueError(f"unknown strategy {name!r}; valid: {', '.join(STRATEGY_NAMES)}")

    @property
    def name(self):
        if self.kind == "frequency":
            return "freq"
        return f"{self.kind}-{self.direction}"


def sort_dfa(a, log):
    """Activities directly following ``a``, by descending succession count.

    Ties break lexicographically.
    """
    followers = [b for b in log.activities if log.direct_succession(a, b) > 0]
    return sorted(followers, key=lambda b: (-log.direct_succession(a, b), b))


def order_frequency(log):
    """Activities by descending frequency, ties alphabetical."""
    return sorted(log.activities, key=lambda a: (-log.activity_count(a), a))


def _start_sequence(log):
    starts = {t[0] for t in log.variants if t}
    return sorted(
        starts,
        key=lambda a: (-log.start_count(a), -log.activity_count(a), a),
    )


def _append_disconnected(sigma, log):
    remaining = [a for a in order_frequency(log) if a not in set(sigma)]
    logger.warning(
        "directly-follows graph is disconnected; appending %s by frequency", remaining
    )
    return sigma + remaining


def order_bfs(log):
    """Breadth-first order: seed with the start activities, then walk the
    seed sequence appending each activity's not-yet-placed followers."""
    activities = log.activities
    sigma = _start_sequence(log)
    i = 0
    while len(sigma) < len(activities):
        if i >= len(sigma):
            return _append_disconnected(sigma, log)
        placed = set(sigma)
        sigma += [b for b in sort_dfa(sigma[i], log) if b not in placed]
        i += 1
    return sigma


def order_dfs(log):
    """Depth-first order: repeatedly follow the strongest unexplored
    successor of the last placed activity, backtracking through a stack of
    deferred discoveries (new finds are pushed in front)."""
    activities = log.activities
    if not activities:
        return []
    seeds = _start_sequence(log)
    sigma = [seeds[0]]
    stack = seeds[1:]
    while len(sigma) < len(activities):
        placed = set(sigma)
        followers = [b for b in sort_dfa(sigma[-1], log) if b not in placed]
        if followers:
            sigma.append(followers[0])
        elif stack:
            sigma.append(stack[0])
        else:
            return _append_disconnected(sigma, log)
        placed = set(sigma)
        stacked = set(stack)
        stack = [b for b in followers if b not in placed and b not in stacked] + [
            b for b in stack if b not in placed
        ]
    return sigma


def make_order(log, strategy):
    """Dispatch on the strategy; end-direction strategies explore the
    reversed log (directly-precede exploration via trace reversal)."""
    if strategy.kind == "frequency":
        return order_frequency(log)
    source = log if strategy.direction == "start" else log.reverse()
    if strategy.kind == "bfs":
        return order_bfs(source)
    if strategy.kind == "dfs":
        return order_dfs(source)
    raise ValueError(f"unknown ordering kind {strategy.kind!r}")
