"""Petri nets and workflow nets: structure, semantics, structural checks.

Nodes carry integer ids assigned in creation order; every iteration over
nodes follows that order, which keeps candidate enumeration and all
tie-breaks reproducible. Nets are treated as immutable values: the
synthesis rules copy a net, extend the copy and validate it. The mutating
methods are for construction code only.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded, NetStructureError

PLACE = "place"
TRANSITION = "transition"


@dataclass(frozen=True)
class Node:
    id: int
    kind: str
    name: str
    label: str | None = None  # transitions only; None means silent (tau)


class PetriNet:
    """Labeled place/transition net with arc weight one."""

    def __init__(self):
        self._nodes = {}
        self._post = {}
        self._pre = {}
        self._next_id = 0

    def copy(self):
        clone = PetriNet.__new__(PetriNet)
        clone._nodes = dict(self._nodes)
        clone._post = {k: set(v) for k, v in self._post.items()}
        clone._pre = {k: set(v) for k, v in self._pre.items()}
        clone._next_id = self._next_id
        return clone

    # -- construction ----------------------------------------------------

    def add_place(self, name=None):
        nid = self._next_id
        self._next_id += 1
        self._nodes[nid] = Node(nid, PLACE, name or f"p{nid}")
        self._post[nid] = set()
        self._pre[nid] = set()
        return nid

    def add_transition(self, name=None, label=None):
        nid = self._next_id
        self._next_id += 1
        self._nodes[nid] = Node(nid, TRANSITION, name or f"t{nid}", label)
        self._post[nid] = set()
        self._pre[nid] = set()
        return nid

    def add_arc(self, src, dst):
        if self._nodes[src].kind == self._nodes[dst].kind:
            raise NetStructureError("arcs must connect a place and a transition")
        self._post[src].add(dst)
        self._pre[dst].add(src)

    def remove_arc(self, src, dst):
        self._post[src].discard(dst)
        self._pre[dst].discard(src)

    # -- queries ---------------------------------------------------------

    def node(self, nid):
        return self._nodes[nid]

    def has_arc(self, src, dst):
        return dst in self._post.get(src, ())

    @property
    def nodes(self):
        return sorted(self._nodes)

    @property
    def places(self):
        return [n for n in sorted(self._nodes) if self._nodes[n].kind == PLACE]

    @property
    def transitions(self):
        return [n for n in sorted(self._nodes) if self._nodes[n].kind == TRANSITION]

    @property
    def arcs(self):
        return sorted((s, d) for s, dsts in self._post.items() for d in dsts)

    def is_place(self, nid):
        return self._nodes[nid].kind == PLACE

    def is_transition(self, nid):
        return self._nodes[nid].kind == TRANSITION

    def label(self, nid):
        return self._nodes[nid].label

    def preset(self, nid):
        return sorted(self._pre[nid])

    def postset(self, nid):
        return sorted(self._post[nid])

    def transitions_labeled(self, label):
        return [t for t in self.transitions if self._nodes[t].label == label]

    def incidence_matrix(self):
        """Rows = places, columns = transitions, in creation order.

        entry(p, t) = [t -> p in F] - [p -> t in F], exact integers.
        """
        places = self.places
        transitions = self.transitions
        matrix = [
            [int(t in self._pre[p]) - int(t in self._post[p]) for t in transitions]
            for p in places
        ]
        return places, transitions, matrix

    def place_row(self, p):
        return [int(t in self._pre[p]) - int(t in self._post[p]) for t in self.transitions]

    def transition_column(self, t):
        return [int(t in self._pre[p]) - int(t in self._post[p]) for p in self.places]


class WorkflowNet:
    """Petri net with dedicated source/sink places and start/end transitions."""

    def __init__(self, net, source, sink, start, end):
        self.net = net
        self.source = source
        self.sink = sink
        self.start = start
        self.end = end

    @classmethod
    def initial(cls):
        """The seed net: source -> start -> p1 -> end -> sink, both
        boundary transitions silent."""
        net = PetriNet()
        source = net.add_place("source")
        start = net.add_transition("start")
        p1 = net.add_place("p1")
        end = net.add_transition("end")
        sink = net.add_place("sink")
        net.add_arc(source, start)
        net.add_arc(start, p1)
        net.add_arc(p1, end)
        net.add_arc(end, sink)
        return cls(net, source, sink, start, end)

    def copy(self):
        return WorkflowNet(self.net.copy(), self.source, self.sink, self.start, self.end)

    def refresh_endpoints(self):
        """Re-derive start/end after a rule shifted the boundary structure."""
        post = self.net.postset(self.source)
        pre = self.net.preset(self.sink)
        if len(post) == 1:
            self.start = post[0]
        if len(pre) == 1:
            self.end = pre[0]

    def validate(self):
        net = self.net
        if not net.is_place(self.source) or not net.is_place(self.sink):
            raise NetStructureError("source/sink must be places")
        if net.preset(self.source):
            raise NetStructureError("source place must have an empty preset")
        if net.postset(self.sink):
            raise NetStructureError("sink place must have an empty postset")
        if net.postset(self.source) != [self.start] or net.preset(self.start) != [self.source]:
            raise NetStructureError("start transition must be the sole consumer of source")
        if net.preset(self.sink) != [self.end] or net.postset(self.end) != [self.sink]:
            raise NetStructureError("end transition must be the sole producer of sink")
        fwd = _reachable(net, {self.source}, forward=True)
        bwd = _reachable(net, {self.sink}, forward=False)
        stray = set(net.nodes) - (fwd & bwd)
        if stray:
            raise NetStructureError(f"nodes not on a source-to-sink path: {sorted(stray)}")

    def visible_labels(self):
        """Multiset of non-silent transition labels, as a sorted list."""
        return sorted(
            lab for t in self.net.transitions if (lab := self.net.label(t)) is not None
        )

    def initial_marking(self):
        return {self.source: 1}

    def final_marking(self):
        return {self.sink: 1}


def _reachable(net, seeds, forward=True):
    seen = set(seeds)
    queue = deque(seeds)
    step = net.postset if forward else net.preset
    while queue:
        node = queue.popleft()
        for nxt in step(node):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


# -- token semantics -----------------------------------------------------


def enabled(net, marking):
    """Transitions fireable in the given marking, in creation order."""
    return [
        t
        for t in net.transitions
        if all(marking.get(p, 0) >= 1 for p in net.preset(t))
    ]


def fire(net, marking, t):
    """Fire ``t``: consume/produce one token per arc. Returns a new marking."""
    for p in net.preset(t):
        if marking.get(p, 0) < 1:
            raise NetStructureError(f"transition {t} is not enabled")
    new = dict(marking)
    for p in net.preset(t):
        new[p] -= 1
        if new[p] == 0:
            del new[p]
    for p in net.postset(t):
        new[p] = new.get(p, 0) + 1
    return new


def freeze_marking(marking):
    return tuple(sorted((p, n) for p, n in marking.items() if n))


# -- structural checks ---------------------------------------------------


def is_free_choice(net):
    """Transitions sharing an input place must share all input places."""
    for p in net.places:
        consumers = net.postset(p)
        if len(consumers) < 2:
            continue
        first = net.preset(consumers[0])
        for t in consumers[1:]:
            if net.preset(t) != first:
                return False
    return True


class Soundness(enum.Enum):
    SOUND = "sound"
    UNSOUND = "unsound"
    INDETERMINATE = "indeterminate"


def soundness(wf, budget=100_000):
    """Classify a workflow net by explicit state-space exploration.

    Sound iff, starting from one token on the source place: the final
    marking stays reachable from every reachable marking, it is the only
    marking putting a token on the sink, and every transition fires in
    some run. Ancestor-covering markings witness improper completion
    directly (the run to the final marking would leave the surplus
    behind), so unboundedness short-circuits to UNSOUND. A state budget
    caps the exploration; hitting it yields INDETERMINATE.
    """
    net = wf.net
    m0 = wf.initial_marking()
    final = freeze_marking(wf.final_marking())
    start_key = freeze_marking(m0)
    parent = {start_key: None}
    markings = {start_key: m0}
    edges = {}
    fired = set()
    queue = deque([start_key])
    while queue:
        key = queue.popleft()
        marking = markings[key]
        edges[key] = []
        for t in enabled(net, marking):
            fired.add(t)
            nxt = fire(net, marking, t)
            nkey = freeze_marking(nxt)
            edges[key].append(nkey)
            if nkey not in parent:
                if len(parent) >= budget:
                    return Soundness.INDETERMINATE
                parent[nkey] = key
                markings[nkey] = nxt
                # Walk the ancestor chain: a strictly covered ancestor
                # proves unboundedness and improper completion.
                anc = key
                while anc is not None:
                    if _covers(nxt, markings[anc]):
                        return Soundness.UNSOUND
                    anc = parent[anc]
                queue.append(nkey)
    # Proper completion: no reachable marking covers the sink besides the
    # final marking itself.
    sink = wf.sink
    for key, marking in markings.items():
        if marking.get(sink, 0) and key != final:
            return Soundness.UNSOUND
    if final not in markings:
        return Soundness.UNSOUND
    # Option to complete: every reachable marking reaches the final one.
    reverse = {}
    for src, dsts in edges.items():
        for dst in dsts:
            reverse.setdefault(dst, []).append(src)
    can_finish = {final}
    queue = deque([final])
    while queue:
        key = queue.popleft()
        for prev in reverse.get(key, ()):
            if prev not in can_finish:
                can_finish.add(prev)
                queue.append(prev)
    if len(can_finish) != len(markings):
        return Soundness.UNSOUND
    if set(net.transitions) - fired:
        return Soundness.UNSOUND
    return Soundness.SOUND


def _covers(big, small):
    if big == small:
        return False
    return all(big.get(p, 0) >= n for p, n in small.items())


def is_sound(wf, budget=100_000):
    """Boolean soundness; raises BudgetExceeded instead of guessing."""
    verdict = soundness(wf, budget)
    if verdict is Soundness.INDETERMINATE:
        raise BudgetExceeded(f"soundness exploration exceeded {budget} markings")
    return verdict is Soundness.SOUND


# -- elementary-path node sets -------------------------------------------


def path_nodes(net, sources, targets, mode="exact", budget=50_000):
    """Union of nodes lying on an elementary path from ``sources`` to
    ``targets``.

    mode="exact" enumerates elementary paths by depth-first search with an
    on-path visited set, restricted to the over-approximation below; when
    the number of expansion steps exceeds ``budget`` it falls back to the
    approximation. mode="approx" returns {x | x reachable from sources and
    targets reachable from x}, a superset of the exact answer.

    Returns (frozenset of node ids, "exact" | "approximated").
    """
    sources = set(sources)
    targets = set(targets)
    if not sources or not targets:
        return frozenset(), "exact"
    approx = _reachable(net, sources, forward=True) & _reachable(net, targets, forward=False)
    if mode == "approx":
        return frozenset(approx), "approximated"
    result = set()
    steps = 0
    for src in sorted(sources):
        if src not in approx:
            continue
        stack = [(src, {src}, [src])]
        while stack:
            node, on_path, path = stack.pop()
            steps += 1
            if steps > budget:
                return frozenset(approx), "approximated"
            if node in targets:
                result.update(path)
                # A single node of sources & targets is itself a path;
                # longer paths through it are still enumerated below.
            for nxt in net.postset(node):
                if nxt in approx and nxt not in on_path:
                    stack.append((nxt, on_path | {nxt}, path + [nxt]))
    return frozenset(result), "exact"
