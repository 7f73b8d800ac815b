"""Log-heuristic search-space reduction.

Before adding an activity, the causal predecessors/successors observed in
the projected log pick out transition sets on the current net; the nodes
on elementary paths between them form the reduced search space that
confines rule applications.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .eventlog import _as_fraction
from .petri import path_nodes


@dataclass(frozen=True)
class NodeSet:
    """Reduced search space over net node ids.

    provenance records whether the elementary-path computation ran
    exactly or fell back to the reachability over-approximation;
    fallback marks the everything-but-source/sink escape hatch used when
    the guiding transition sets are not connected at all.
    """

    nodes: frozenset
    provenance: str
    t_pre: frozenset
    t_fol: frozenset
    fallback: bool = False

    def __len__(self):
        return len(self.nodes)

    def places(self, net):
        return [n for n in sorted(self.nodes) if net.is_place(n)]

    def transitions(self, net):
        return [n for n in sorted(self.nodes) if net.is_transition(n)]


def reduce_search_space(activity, log, wf, threshold, path_budget=50_000):
    """Node set of the current net where ``activity`` should be inserted.

    Transitions labeled by the causal predecessors (successors) of the
    activity form the path sources (targets); either set defaults to the
    start (end) transition when the log names no predecessor/successor or
    none of the named ones is on the net yet. A label can tag several
    transitions after duplication; all of them participate.
    """
    threshold = _as_fraction(threshold)
    net = wf.net
    pre_labels = log.preceding_set(activity, threshold)
    fol_labels = log.following_set(activity, threshold)
    t_pre = {t for lab in pre_labels for t in net.transitions_labeled(lab)}
    if not t_pre:
        t_pre = {wf.start}
    t_fol = {t for lab in fol_labels for t in net.transitions_labeled(lab)}
    if not t_fol:
        t_fol = {wf.end}
    nodes, provenance = path_nodes(net, t_pre, t_fol, mode="exact", budget=path_budget)
    fallback = False
    if not nodes:
        # Mutually unreachable guide sets can occur mid-discovery; refusing
        # the iteration would deadlock, so widen to every interior node.
        nodes = frozenset(set(net.nodes) - {wf.source, wf.sink})
        provenance = "approximated"
        fallback = True
    assert wf.source not in nodes and wf.sink not in nodes
    return NodeSet(nodes, provenance, frozenset(t_pre), frozenset(t_fol), fallback)


def full_node_set(wf):
    """Everything except source and sink, flagged as a fallback."""
    nodes = frozenset(set(wf.net.nodes) - {wf.source, wf.sink})
    return NodeSet(nodes, "approximated", frozenset({wf.start}), frozenset({wf.end}), True)


def search_space_ratio(node_set, wf):
    """|V| / (|P u T| - 2): share of insertion-eligible nodes considered.

    The -2 removes the source and sink places, which can never border a
    new node.
    """
    denominator = len(wf.net.nodes) - 2
    if denominator <= 0:
        raise ValueError("net has no interior nodes")
    return Fraction(len(node_set.nodes), denominator)
