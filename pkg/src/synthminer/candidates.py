"""Candidate generation: pattern templates built from the synthesis rules,
confined to the reduced search space.

The pattern registry covers the constructs the incremental rules can
express at one step: sequential insertion (both abstraction directions),
exclusive choice, self-loop, a concurrent branch (linear place followed
by abstraction) and optional-skip variants. Additional patterns can be
registered without touching the miner loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import RuleRejected
from .petri import is_free_choice
from .rules import (
    apply_abstraction,
    apply_dual_abstraction,
    apply_linear_place,
    apply_linear_transition,
)

DEFAULT_PATTERNS = ("seq", "dual", "choice", "par", "skip", "loop")

PATTERN_TAGS = {
    "seq": "sequence",
    "dual": "sequence",
    "choice": "choice",
    "par": "parallel",
    "loop": "self-loop",
}


@dataclass
class CandidateNet:
    net: object  # WorkflowNet
    pattern: str
    applications: list = field(default_factory=list)
    key: str = ""  # canonical serialization, filled by generate_candidates


def canonical_key(wf):
    """Creation-order-independent serialization of a workflow net.

    Nodes are colored by (kind, label, source/sink role) and the colors
    refined by neighborhood until stable; remaining ties (true symmetries
    in practice) break by node id. Two nets built through different rule
    sequences but with the same shape serialize identically.
    """
    net = wf.net
    nodes = net.nodes
    colors = {}
    for n in nodes:
        node = net.node(n)
        role = "i" if n == wf.source else "o" if n == wf.sink else ""
        label_part = (node.label or "\x00silent") if node.kind == "transition" else ""
        base = (node.kind, label_part, role)
        colors[n] = base
    for _ in range(len(nodes)):
        palette = {}
        new_colors = {}
        for n in nodes:
            sig = (
                colors[n],
                tuple(sorted(colors[m] for m in net.preset(n))),
                tuple(sorted(colors[m] for m in net.postset(n))),
            )
            new_colors[n] = palette.setdefault(sig, sig)
        if len(set(new_colors.values())) == len(set(colors.values())):
            colors = new_colors
            break
        colors = new_colors
    index = {n: i for i, n in enumerate(sorted(nodes, key=lambda n: (colors[n], n)))}
    parts = []
    for n in sorted(nodes, key=index.get):
        node = net.node(n)
        parts.append(f"{node.kind[0]}{index[n]}:{node.label or ''}")
    arcs = sorted((index[s], index[d]) for s, d in net.arcs)
    parts.append(";".join(f"{s}>{d}" for s, d in arcs))
    return "|".join(parts)


def _subsets(items, max_size):
    for size in range(1, min(max_size, len(items)) + 1):
        yield from combinations(items, size)


def generate_candidates(wf, node_set, label, max_subset_size=3,
                        patterns=DEFAULT_PATTERNS):
    """All candidate nets inserting one ``label``-transition, confined to
    ``node_set``.

    Returns a deduplicated list in a deterministic order. An empty result
    signals the caller to retry with the full fallback node set.
    """
    patterns = set(patterns)
    net = wf.net
    v_transitions = node_set.transitions(net)
    v_places = node_set.places(net)
    v_nodes = node_set.nodes
    raw = []

    if "seq" in patterns:
        for r_set in _subsets(v_transitions, max_subset_size):
            shared = set(v_places)
            for r in r_set:
                shared &= set(net.postset(r))
            for s_set in _subsets(sorted(shared), max_subset_size):
                _try(raw, "sequence", apply_abstraction, wf, set(r_set), set(s_set), label)

    if "dual" in patterns:
        for s_set in _subsets(v_places, max_subset_size):
            shared = set(v_transitions)
            for s in s_set:
                shared &= set(net.postset(s))
            for r_set in _subsets(sorted(shared), max_subset_size):
                _try(raw, "sequence", apply_dual_abstraction, wf, set(s_set), set(r_set), label)

    if "choice" in patterns:
        for t in v_transitions:
            if t in (wf.start, wf.end):
                continue  # duplicating the boundary would re-wire source/sink
            surrounding = set(net.preset(t)) | set(net.postset(t))
            if not surrounding <= v_nodes:
                continue  # new transition may only touch the reduced node set
            _try(raw, "choice", apply_linear_transition, wf,
                 set(net.preset(t)), set(net.postset(t)), label)

    if "loop" in patterns:
        for p in v_places:
            _try(raw, "self-loop", apply_linear_transition, wf, {p}, {p}, label)

    if "par" in patterns:
        for t_from in v_transitions:
            for t_to in v_transitions:
                if t_from == t_to:
                    continue
                _try_parallel(raw, wf, t_from, t_to, label)

    if "skip" in patterns:
        # Optional-activity variants: a silent alternative to the freshly
        # inserted transition, where linear dependence admits it.
        for candidate in list(raw):
            if candidate.pattern not in ("sequence", "parallel"):
                continue
            new_t = candidate.applications[-1].created.get("transition")
            if new_t is None:
                continue
            inner = candidate.net
            try:
                skipped, application = apply_linear_transition(
                    inner, set(inner.net.preset(new_t)), set(inner.net.postset(new_t)), None
                )
            except RuleRejected:
                continue
            raw.append(CandidateNet(skipped, "skip-variant",
                                    candidate.applications + [application]))

    out = []
    seen = set()
    for candidate in raw:
        assert is_free_choice(candidate.net.net)
        candidate.key = canonical_key(candidate.net)
        if candidate.key not in seen:
            seen.add(candidate.key)
            out.append(candidate)
    # Confinement audit: rule parameters stay inside the node set (nodes
    # created by an earlier step of a composite are exempt).
    for candidate in out:
        created = {nid for app in candidate.applications for nid in app.created.values()}
        for app in candidate.applications:
            for value in app.params.values():
                if isinstance(value, (set, frozenset)):
                    assert value <= (set(v_nodes) | created)
    return out


def _try(out, tag, rule, wf, *args):
    try:
        net, application = rule(wf, *args)
    except RuleRejected:
        return
    out.append(CandidateNet(net, tag, [application]))


def _try_parallel(out, wf, t_from, t_to, label):
    """Concurrent branch: a dependent place spanning t_from -> t_to, then
    an abstraction inserting the activity on it."""
    try:
        widened, first = apply_linear_place(wf, {t_from}, {t_to})
    except RuleRejected:
        return
    new_place = first.created["place"]
    try:
        final, second = apply_abstraction(widened, {t_from}, {new_place}, label)
    except RuleRejected:
        return
    out.append(CandidateNet(final, "parallel", [first, second]))
