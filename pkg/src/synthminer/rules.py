"""The four net-growing synthesis rules.

Every rule validates its precondition, copies the input workflow net,
applies the change and re-validates the result; the input net is never
mutated. Precondition failures raise RuleRejected with a reason.

The two linear-dependency rules use exact rational arithmetic. For new
places the dependency must additionally be a *nonnegative* combination of
non-source/sink place rows: a place whose marking equation carried
negative coefficients (or leaned on the source/sink) could block runs
that were possible before and thereby destroy soundness, which the rules
are required to preserve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RuleRejected
from .linalg import is_linear_combination, nonneg_combination
from .petri import is_free_choice

ABSTRACTION = "abstraction"
LINEAR_TRANSITION = "linear_transition"
LINEAR_PLACE = "linear_place"
DUAL_ABSTRACTION = "dual_abstraction"


@dataclass
class RuleApplication:
    """Audit record of one rule application (serializable for reports)."""

    rule: str
    params: dict
    label: str | None = None
    created: dict = field(default_factory=dict)  # role -> new node id

    def to_json(self):
        return {
            "rule": self.rule,
            "params": {k: sorted(v) if isinstance(v, (set, frozenset)) else v
                       for k, v in self.params.items()},
            "label": self.label,
            "created": self.created,
        }


def _require(cond, reason):
    if not cond:
        raise RuleRejected(reason)


def _check_sets(wf, transitions, places):
    net = wf.net
    _require(transitions, "empty transition set")
    _require(places, "empty place set")
    for t in transitions:
        _require(net.is_transition(t), f"node {t} is not a transition")
    for p in places:
        _require(net.is_place(p), f"node {p} is not a place")


def apply_abstraction(wf, transitions, places, label):
    """Insert place+transition between a fully connected R (transitions)
    and S (places): arcs R x S are replaced by R -> p -> t -> S."""
    transitions = set(transitions)
    places = set(places)
    _check_sets(wf, transitions, places)
    for r in transitions:
        for s in places:
            _require(wf.net.has_arc(r, s), "R and S are not fully connected")
    new = wf.copy()
    net = new.net
    for r in transitions:
        for s in places:
            net.remove_arc(r, s)
    p = net.add_place()
    t = net.add_transition(label=label)
    for r in sorted(transitions):
        net.add_arc(r, p)
    net.add_arc(p, t)
    for s in sorted(places):
        net.add_arc(t, s)
    new.refresh_endpoints()
    new.validate()
    application = RuleApplication(
        ABSTRACTION, {"transitions": transitions, "places": places}, label,
        {"place": p, "transition": t},
    )
    return new, application


def apply_dual_abstraction(wf, places, transitions, label):
    """Insert transition+place between a fully connected S (places) and
    R (transitions): arcs S x R are replaced by S -> t -> p -> R."""
    places = set(places)
    transitions = set(transitions)
    _check_sets(wf, transitions, places)
    for s in places:
        for r in transitions:
            _require(wf.net.has_arc(s, r), "S and R are not fully connected")
    new = wf.copy()
    net = new.net
    for s in places:
        for r in transitions:
            net.remove_arc(s, r)
    t = net.add_transition(label=label)
    p = net.add_place()
    for s in sorted(places):
        net.add_arc(s, t)
    net.add_arc(t, p)
    for r in sorted(transitions):
        net.add_arc(p, r)
    if not is_free_choice(net):
        raise RuleRejected("dual abstraction would break free-choiceness")
    new.refresh_endpoints()
    new.validate()
    application = RuleApplication(
        DUAL_ABSTRACTION, {"places": places, "transitions": transitions}, label,
        {"transition": t, "place": p},
    )
    return new, application


def apply_linear_transition(wf, pre_places, post_places, label):
    """Add a transition whose incidence column is a rational combination
    of the existing columns. The result must stay a free-choice workflow
    net; source and sink places may not be touched."""
    pre_places = set(pre_places)
    post_places = set(post_places)
    _require(pre_places, "transition needs a nonempty preset")
    _require(post_places, "transition needs a nonempty postset")
    net = wf.net
    for p in pre_places | post_places:
        _require(net.is_place(p), f"node {p} is not a place")
        _require(
            p not in (wf.source, wf.sink),
            "new transitions may not connect to source or sink",
        )
    places = net.places
    column = [int(p in post_places) - int(p in pre_places) for p in places]
    basis = [net.transition_column(t) for t in net.transitions]
    dependent, witness = is_linear_combination(basis, column)
    _require(dependent, "incidence column is not linearly dependent")
    new = wf.copy()
    t = new.net.add_transition(label=label)
    for p in sorted(pre_places):
        new.net.add_arc(p, t)
    for p in sorted(post_places):
        new.net.add_arc(t, p)
    if not is_free_choice(new.net):
        raise RuleRejected("new transition would break free-choiceness")
    new.refresh_endpoints()
    new.validate()
    application = RuleApplication(
        LINEAR_TRANSITION,
        {"pre_places": pre_places, "post_places": post_places,
         "witness": [str(w) for w in witness]},
        label,
        {"transition": t},
    )
    return new, application


def apply_linear_place(wf, pre_transitions, post_transitions):
    """Add an unmarked place whose incidence row is a nonnegative rational
    combination of the non-source/sink place rows."""
    pre_transitions = set(pre_transitions)
    post_transitions = set(post_transitions)
    _require(pre_transitions, "place needs a producer")
    _require(post_transitions, "place needs a consumer")
    # A self-loop pair cancels in the incidence row, so the dependency test
    # would not see the blocking arc; such a place can deadlock the net.
    _require(
        not (pre_transitions & post_transitions),
        "place may not self-loop on a transition",
    )
    net = wf.net
    for t in pre_transitions | post_transitions:
        _require(net.is_transition(t), f"node {t} is not a transition")
    transitions = net.transitions
    row = [int(t in pre_transitions) - int(t in post_transitions) for t in transitions]
    basis = [net.place_row(p) for p in net.places if p not in (wf.source, wf.sink)]
    witness = nonneg_combination(basis, row)
    _require(witness is not None, "incidence row is not a nonnegative combination")
    new = wf.copy()
    p = new.net.add_place()
    for t in sorted(pre_transitions):
        new.net.add_arc(t, p)
    for t in sorted(post_transitions):
        new.net.add_arc(p, t)
    if not is_free_choice(new.net):
        raise RuleRejected("new place would break free-choiceness")
    new.refresh_endpoints()
    new.validate()
    application = RuleApplication(
        LINEAR_PLACE,
        {"pre_transitions": pre_transitions, "post_transitions": post_transitions,
         "witness": [str(w) for w in witness]},
        None,
        {"place": p},
    )
    return new, application
