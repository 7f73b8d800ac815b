"""Replay-based quality metrics: token fitness, escaping-edges precision
and their harmonic mean.

Both metrics replay traces against the net with a bounded, deterministic
lookahead over silent transitions (breadth-first, transitions visited in
creation order), so repeated evaluations of the same inputs agree bit for
bit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .petri import enabled, fire, freeze_marking


@dataclass(frozen=True)
class QualityScore:
    fitness: float
    precision: float
    f1: float


def f1(fitness, precision):
    """Harmonic mean; zero when both inputs are zero."""
    if fitness == 0 and precision == 0:
        return 0.0
    return 2 * fitness * precision / (fitness + precision)


def evaluate(wf, log, tau_depth=5):
    fit = replay_fitness(wf, log, tau_depth)
    prec = precision(wf, log, tau_depth)
    return QualityScore(fit, prec, f1(fit, prec))


# -- silent-transition lookahead -----------------------------------------


def _silent_transitions(net):
    return [t for t in net.transitions if net.label(t) is None]


def _silent_search(net, marking, goal, depth):
    """BFS over silent firings, at most ``depth`` deep, first hit wins.

    ``goal`` maps a marking to True when the search should stop there.
    Returns the silent firing sequence (possibly empty) or None.
    """
    silent = _silent_transitions(net)
    if goal(marking):
        return []
    seen = {freeze_marking(marking)}
    queue = deque([(marking, [])])
    while queue:
        current, path = queue.popleft()
        if len(path) >= depth:
            continue
        for t in silent:
            if all(current.get(p, 0) >= 1 for p in net.preset(t)):
                nxt = fire(net, current, t)
                key = freeze_marking(nxt)
                if key in seen:
                    continue
                seen.add(key)
                if goal(nxt):
                    return path + [t]
                queue.append((nxt, path + [t]))
    return None


def _enable_label(net, marking, label, depth):
    """Silent prefix after which some ``label`` transition is enabled."""
    def goal(m):
        return any(
            all(m.get(p, 0) >= 1 for p in net.preset(t))
            for t in net.transitions_labeled(label)
        )
    return _silent_search(net, marking, goal, depth)


def _enabled_labels(net, marking, depth):
    """Visible labels fireable now or within the silent lookahead."""
    labels = set()
    silent = _silent_transitions(net)
    seen = {freeze_marking(marking)}
    queue = deque([(marking, 0)])
    while queue:
        current, dist = queue.popleft()
        for t in enabled(net, current):
            label = net.label(t)
            if label is not None:
                labels.add(label)
            elif dist < depth:
                nxt = fire(net, current, t)
                key = freeze_marking(nxt)
                if key not in seen:
                    seen.add(key)
                    queue.append((nxt, dist + 1))
    return labels


# -- fitness -------------------------------------------------------------


def _fire_counted(net, marking, t, counters):
    counters["consumed"] += len(net.preset(t))
    counters["produced"] += len(net.postset(t))
    return fire(net, marking, t)


def _replay_trace(wf, trace, tau_depth):
    """Token replay of one trace; returns (missing, remaining, consumed,
    produced, clean) where clean means no token was ever force-inserted."""
    net = wf.net
    marking = dict(wf.initial_marking())
    counters = {"consumed": 0, "produced": 1}  # the initial token counts as produced
    missing = 0
    for label in trace:
        candidates = net.transitions_labeled(label)
        if not candidates:
            # No transition carries this label at all: account one token
            # conjured and consumed out of thin air.
            missing += 1
            counters["consumed"] += 1
            continue
        prefix = _enable_label(net, marking, label, tau_depth)
        if prefix is not None:
            for t in prefix:
                marking = _fire_counted(net, marking, t, counters)
            t = next(
                t for t in candidates
                if all(marking.get(p, 0) >= 1 for p in net.preset(t))
            )
        else:
            # Force the least-damaged candidate, inserting missing tokens.
            t = min(
                candidates,
                key=lambda t: (
                    sum(1 for p in net.preset(t) if marking.get(p, 0) < 1), t,
                ),
            )
            for p in net.preset(t):
                if marking.get(p, 0) < 1:
                    missing += 1
                    marking[p] = marking.get(p, 0) + 1
        marking = _fire_counted(net, marking, t, counters)
    # Close the case: silent run to the final marking if one exists within
    # a depth generous enough for the leftover skip/end transitions.
    final = wf.final_marking()
    closing_depth = max(tau_depth, len(_silent_transitions(net)) + 1)
    suffix = _silent_search(
        net, marking, lambda m: freeze_marking(m) == freeze_marking(final), closing_depth
    )
    if suffix is None:
        suffix = _silent_search(
            net, marking, lambda m: m.get(wf.sink, 0) >= 1, closing_depth
        )
    for t in suffix or []:
        marking = _fire_counted(net, marking, t, counters)
    counters["consumed"] += 1  # the final token leaves the net
    if marking.get(wf.sink, 0) >= 1:
        marking[wf.sink] -= 1
    else:
        missing += 1
    remaining = sum(marking.values())
    return missing, remaining, counters["consumed"], counters["produced"]


def replay_fitness(wf, log, tau_depth=5):
    """Aggregated token-replay fitness over the whole log,
    multiplicity-weighted: 1/2 (1 - missing/consumed) + 1/2 (1 - remaining/produced)."""
    total_m = total_r = total_c = total_p = 0
    for trace, mult in log.variants.items():
        m, r, c, p = _replay_trace(wf, trace, tau_depth)
        total_m += m * mult
        total_r += r * mult
        total_c += c * mult
        total_p += p * mult
    if total_c == 0 or total_p == 0:
        return 1.0
    value = 0.5 * (1 - total_m / total_c) + 0.5 * (1 - total_r / total_p)
    return max(0.0, min(1.0, value))


# -- precision -----------------------------------------------------------


def _prefix_tree(log):
    """Trie over variants: node = (weight, children{label: node})."""
    root = {"weight": 0, "children": {}}
    for trace, mult in log.variants.items():
        node = root
        node["weight"] += mult
        for label in trace:
            node = node["children"].setdefault(label, {"weight": 0, "children": {}})
            node["weight"] += mult
    return root


def precision(wf, log, tau_depth=5):
    """Escaping-edges precision.

    Each reachable prefix state contributes |enabled \\ observed| /
    |enabled|, weighted by how many traces pass through it; prefixes whose
    replay would need missing tokens are skipped.
    """
    net = wf.net
    root = _prefix_tree(log)
    total_weight = 0
    escaping = 0.0
    stack = [(root, dict(wf.initial_marking()))]
    while stack:
        node, marking = stack.pop()
        observed = set(node["children"])
        enabled_labels = _enabled_labels(net, marking, tau_depth)
        total_weight += node["weight"]
        if enabled_labels:
            ratio = len(enabled_labels - observed) / len(enabled_labels)
            escaping += node["weight"] * ratio
        for label in sorted(node["children"]):
            prefix = _enable_label(net, marking, label, tau_depth)
            if prefix is None:
                continue  # replay fails here; skip the subtree
            m = marking
            for t in prefix:
                m = fire(net, m, t)
            t = next(
                t for t in net.transitions_labeled(label)
                if all(m.get(p, 0) >= 1 for p in net.preset(t))
            )
            stack.append((node["children"][label], fire(net, m, t)))
    if total_weight == 0:
        return 1.0
    return max(0.0, min(1.0, 1 - escaping / total_weight))
