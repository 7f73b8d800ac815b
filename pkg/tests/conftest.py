import pytest

from synthminer.eventlog import EventLog
from synthminer.petri import PetriNet, WorkflowNet


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # One visible PASS/FAIL line per acceptance criterion, printed through
    # the terminal reporter so output capture does not swallow it.
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    reporter = item.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None:
        return
    number, title = marker.args
    status = "PASS" if report.passed else "FAIL"
    reporter.write_line(f"criterion {number:2d} ({title}): {status}")

# The running example log: ten traces over six activities.
LS_TRACES = [
    "bcdefg",
    "becdfg",
    "becfgd",
    "becfdg",
    "bcedfg",
    "bcefgd",
    "bcefdg",
    "ebcdfg",
    "ebcfgd",
    "ebcfdg",
]


@pytest.fixture
def ls_log():
    return EventLog.from_traces(tuple(t) for t in LS_TRACES)


@pytest.fixture
def l3_log():
    # One optional activity between two mandatory ones.
    return EventLog([(("x", "y", "z"), 66), (("x", "z"), 66)])


def build_w2():
    """Seven-node chain net: i -> start(tau) -> p1 -> t1(x) -> p2 -> t2(z) -> o.

    The end transition carries label z, i.e. the last added activity sits
    directly on the boundary.
    """
    net = PetriNet()
    source = net.add_place("source")
    start = net.add_transition("start")
    p1 = net.add_place("p1")
    t1 = net.add_transition("t1", "x")
    p2 = net.add_place("p2")
    t2 = net.add_transition("t2", "z")
    sink = net.add_place("sink")
    net.add_arc(source, start)
    net.add_arc(start, p1)
    net.add_arc(p1, t1)
    net.add_arc(t1, p2)
    net.add_arc(p2, t2)
    net.add_arc(t2, sink)
    wf = WorkflowNet(net, source, sink, start, t2)
    wf.validate()
    return wf


@pytest.fixture
def w2_net():
    return build_w2()


def random_bipartite_net(rng, max_nodes=12, arc_prob=0.3):
    """Random place/transition net (no workflow structure) for path tests."""
    n_places = rng.randint(1, max_nodes // 2)
    n_transitions = rng.randint(1, max_nodes - n_places)
    net = PetriNet()
    places = [net.add_place() for _ in range(n_places)]
    transitions = [net.add_transition(label=f"t{i}") for i in range(n_transitions)]
    for p in places:
        for t in transitions:
            if rng.random() < arc_prob:
                net.add_arc(p, t)
            if rng.random() < arc_prob:
                net.add_arc(t, p)
    return net
