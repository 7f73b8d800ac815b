import random

import pytest

from conftest import random_bipartite_net
from synthminer.errors import BudgetExceeded, NetStructureError
from synthminer.petri import (
    PetriNet,
    Soundness,
    WorkflowNet,
    enabled,
    fire,
    is_free_choice,
    is_sound,
    path_nodes,
    soundness,
)


def test_initial_net_shape():
    wf = WorkflowNet.initial()
    net = wf.net
    assert len(net.places) == 3
    assert len(net.transitions) == 2
    assert len(net.arcs) == 4
    assert net.label(wf.start) is None
    assert net.label(wf.end) is None
    wf.validate()


def test_initial_net_properties():
    wf = WorkflowNet.initial()
    assert is_free_choice(wf.net)
    assert is_sound(wf)


def test_free_choice_violation():
    net = PetriNet()
    p = net.add_place()
    q = net.add_place()
    t1 = net.add_transition()
    t2 = net.add_transition()
    net.add_arc(p, t1)
    net.add_arc(p, t2)
    net.add_arc(q, t2)
    assert not is_free_choice(net)


def test_arcs_must_alternate_kinds():
    net = PetriNet()
    p = net.add_place()
    q = net.add_place()
    with pytest.raises(NetStructureError):
        net.add_arc(p, q)


def test_incidence_initial_net():
    wf = WorkflowNet.initial()
    places, transitions, matrix = wf.net.incidence_matrix()
    col_start = [matrix[i][transitions.index(wf.start)] for i in range(len(places))]
    assert col_start == [-1, 1, 0]  # consume from source, produce on p1
    assert wf.net.transition_column(wf.start) == col_start


def test_zero_column_for_arcless_transition():
    wf = WorkflowNet.initial()
    t = wf.net.add_transition()
    assert wf.net.transition_column(t) == [0, 0, 0]


def test_enabled_and_fire():
    wf = WorkflowNet.initial()
    m0 = wf.initial_marking()
    assert enabled(wf.net, m0) == [wf.start]
    m1 = fire(wf.net, m0, wf.start)
    assert m1 == {2: 1}  # p1 is the third node created (id 2)
    assert enabled(wf.net, {}) == []
    with pytest.raises(NetStructureError):
        fire(wf.net, {}, wf.start)


def test_soundness_initial():
    assert soundness(WorkflowNet.initial()) is Soundness.SOUND


def test_soundness_dead_end():
    # Detach the end transition's input: sink unreachable.
    wf = WorkflowNet.initial()
    p1 = wf.net.postset(wf.start)[0]
    wf.net.remove_arc(p1, wf.end)
    extra = wf.net.add_place()
    wf.net.add_arc(extra, wf.end)
    assert soundness(wf) is Soundness.UNSOUND


def test_soundness_unbounded():
    # A transition that multiplies tokens: p1 -> t -> {p1, p_extra}.
    wf = WorkflowNet.initial()
    p1 = wf.net.postset(wf.start)[0]
    extra = wf.net.add_place()
    t = wf.net.add_transition(label="dup")
    wf.net.add_arc(p1, t)
    wf.net.add_arc(t, p1)
    wf.net.add_arc(t, extra)
    drain = wf.net.add_transition()
    wf.net.add_arc(extra, drain)
    wf.net.add_arc(drain, wf.net.preset(wf.end)[0])
    assert soundness(wf) is Soundness.UNSOUND


def test_soundness_improper_completion():
    # Second token left behind when the sink is reached.
    net = PetriNet()
    source = net.add_place("source")
    start = net.add_transition("start")
    a = net.add_place()
    b = net.add_place()
    end = net.add_transition("end")
    sink = net.add_place("sink")
    net.add_arc(source, start)
    net.add_arc(start, a)
    net.add_arc(start, b)
    net.add_arc(a, end)
    net.add_arc(end, sink)
    stray = net.add_transition(label="s")
    net.add_arc(b, stray)
    net.add_arc(stray, a)
    wf = WorkflowNet(net, source, sink, start, end)
    assert soundness(wf) is Soundness.UNSOUND


def test_soundness_budget():
    wf = WorkflowNet.initial()
    assert soundness(wf, budget=1) is Soundness.INDETERMINATE
    with pytest.raises(BudgetExceeded):
        is_sound(wf, budget=1)


def test_validate_rejects_stray_nodes():
    wf = WorkflowNet.initial()
    wf.net.add_place("floating")
    with pytest.raises(NetStructureError):
        wf.validate()


def test_path_nodes_w2(w2_net):
    net = w2_net.net
    t1 = net.transitions_labeled("x")[0]
    t2 = net.transitions_labeled("z")[0]
    nodes, provenance = path_nodes(net, {t1}, {t2})
    assert provenance == "exact"
    p2 = net.postset(t1)[0]
    assert nodes == frozenset({t1, p2, t2})


def test_path_nodes_self(w2_net):
    net = w2_net.net
    t1 = net.transitions_labeled("x")[0]
    nodes, _ = path_nodes(net, {t1}, {t1})
    assert nodes == frozenset({t1})


def test_path_nodes_empty_sets(w2_net):
    assert path_nodes(w2_net.net, set(), {1}) == (frozenset(), "exact")
    assert path_nodes(w2_net.net, {1}, set()) == (frozenset(), "exact")


def test_path_nodes_budget_falls_back(w2_net):
    net = w2_net.net
    t1 = net.transitions_labeled("x")[0]
    t2 = net.transitions_labeled("z")[0]
    nodes, provenance = path_nodes(net, {t1}, {t2}, budget=1)
    assert provenance == "approximated"
    assert nodes >= frozenset({t1, t2})


def _brute_force_path_nodes(net, sources, targets):
    """Independent elementary-path enumeration by plain recursion."""
    result = set()

    def walk(node, path, on_path):
        if node in targets:
            result.update(path)
        for nxt in net.postset(node):
            if nxt not in on_path:
                walk(nxt, path + [nxt], on_path | {nxt})

    for src in sources:
        walk(src, [src], {src})
    return frozenset(result)


def test_path_nodes_random_vs_brute_force():
    rng = random.Random(42)
    for _ in range(60):
        net = random_bipartite_net(rng, max_nodes=10)
        nodes = net.nodes
        sources = set(rng.sample(nodes, rng.randint(1, min(2, len(nodes)))))
        targets = set(rng.sample(nodes, rng.randint(1, min(2, len(nodes)))))
        exact, provenance = path_nodes(net, sources, targets)
        assert provenance == "exact"
        assert exact == _brute_force_path_nodes(net, sources, targets)
        approx, _ = path_nodes(net, sources, targets, mode="approx")
        assert exact <= approx
