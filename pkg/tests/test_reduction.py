from fractions import Fraction

import pytest

from synthminer.eventlog import EventLog
from synthminer.petri import WorkflowNet
from synthminer.reduction import full_node_set, reduce_search_space, search_space_ratio


def test_reduction_optional_activity_scenario(l3_log, w2_net):
    # Inserting y into the x..z chain: the causal neighbors confine the
    # search to the three nodes between the x- and z-transitions.
    node_set = reduce_search_space("y", l3_log, w2_net, Fraction(9, 10))
    net = w2_net.net
    t1 = net.transitions_labeled("x")[0]
    t2 = net.transitions_labeled("z")[0]
    p2 = net.postset(t1)[0]
    assert node_set.t_pre == frozenset({t1})
    assert node_set.t_fol == frozenset({t2})
    assert node_set.nodes == frozenset({t1, p2, t2})
    assert node_set.provenance == "exact"
    assert not node_set.fallback
    assert search_space_ratio(node_set, w2_net) == Fraction(3, 5)


def test_reduction_defaults_to_boundary(l3_log, w2_net):
    # Threshold 1 is unreachable (strengths are strictly below 1), so both
    # guide sets default to the boundary transitions.
    node_set = reduce_search_space("y", l3_log, w2_net, Fraction(1))
    assert node_set.t_pre == frozenset({w2_net.start})
    assert node_set.t_fol == frozenset({w2_net.end})
    # start .. end spans every interior node of the chain.
    assert len(node_set) == 5


def test_reduction_first_iteration():
    wf = WorkflowNet.initial()
    log = EventLog([(("a",), 1)])
    node_set = reduce_search_space("a", log, wf, Fraction(9, 10))
    assert node_set.nodes == frozenset(set(wf.net.nodes) - {wf.source, wf.sink})
    assert search_space_ratio(node_set, wf) == Fraction(1)


def test_reduction_unknown_labels_default(w2_net):
    # Causal neighbors that are not on the net yet fall back to the boundary.
    log = EventLog([(("q", "y", "r"), 10)])
    node_set = reduce_search_space("y", log, w2_net, Fraction(1, 2))
    assert node_set.t_pre == frozenset({w2_net.start})
    assert node_set.t_fol == frozenset({w2_net.end})


def test_full_node_set(w2_net):
    node_set = full_node_set(w2_net)
    assert node_set.fallback
    assert w2_net.source not in node_set.nodes
    assert w2_net.sink not in node_set.nodes
    assert len(node_set) == 5
    assert search_space_ratio(node_set, w2_net) == Fraction(1)


def test_node_set_partitions(w2_net):
    node_set = full_node_set(w2_net)
    places = node_set.places(w2_net.net)
    transitions = node_set.transitions(w2_net.net)
    assert set(places) | set(transitions) == set(node_set.nodes)
    assert not set(places) & set(transitions)


def test_ratio_rejects_degenerate_net():
    wf = WorkflowNet.initial()
    node_set = full_node_set(wf)
    # Artificially shrink the net below the two boundary places.
    class Tiny:
        class net:
            nodes = [0, 1]
    with pytest.raises(ValueError):
        search_space_ratio(node_set, Tiny)