"""Event logs: parsing, projection, filtering and log statistics.

An event log is a multiset of traces, stored as variant -> multiplicity.
Activity labels are plain strings; ties everywhere are broken by byte-wise
lexicographic label order so every derived result is deterministic.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass
from datetime import datetime
from fractions import Fraction

from .errors import ConfigError, LogParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dfg:
    """Directly-follows graph of a log."""

    nodes: frozenset
    arcs: dict  # (a, b) -> number of direct successions
    start_counts: dict  # a -> traces starting with a
    end_counts: dict  # a -> traces ending with a


def _as_fraction(value):
    """Coerce thresholds/coverages to exact rationals.

    Floats are converted through their decimal repr so that 0.95 means
    19/20, not the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


class EventLog:
    """Immutable multiset of traces with cached statistics."""

    def __init__(self, variants=None):
        counts = Counter()
        for trace, mult in variants or []:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if mult:
                counts[tuple(trace)] += mult
        # Canonical storage order: lexicographic by variant. This makes
        # logs built in different orders compare (and serialize) equal.
        self._variants = dict(sorted(counts.items()))
        self._activities = frozenset(a for trace in self._variants for a in trace)
        self._pair_counts = None
        self._activity_counts = None

    @classmethod
    def from_traces(cls, traces):
        return cls((trace, 1) for trace in traces)

    # -- basic accessors -------------------------------------------------

    @property
    def variants(self):
        return self._variants

    @property
    def activities(self):
        return self._activities

    @property
    def total_traces(self):
        return sum(self._variants.values())

    @property
    def total_events(self):
        return sum(len(t) * m for t, m in self._variants.items())

    def __eq__(self, other):
        return isinstance(other, EventLog) and self._variants == other._variants

    def __hash__(self):
        return hash(tuple(self._variants.items()))

    def __len__(self):
        return self.total_traces

    def __repr__(self):
        return f"EventLog({self.total_traces} traces, {len(self._variants)} variants)"

    # -- transformations -------------------------------------------------

    def project(self, keep):
        """Project every trace onto the label set ``keep``.

        Colliding projected variants merge their multiplicities.
        """
        keep = set(keep)
        return EventLog(
            (tuple(a for a in trace if a in keep), mult)
            for trace, mult in self._variants.items()
        )

    def reverse(self):
        """Reverse every trace (an involution)."""
        return EventLog((trace[::-1], mult) for trace, mult in self._variants.items())

    def filter_variants(self, coverage):
        """Keep the most frequent variants until they cover the requested
        fraction of traces.

        Variants are taken in descending multiplicity, ties resolved by
        lexicographic trace order. Comparison against coverage * total is
        exact rational arithmetic.
        """
        coverage = _as_fraction(coverage)
        if not 0 < coverage <= 1:
            raise ValueError("coverage must be in (0, 1]")
        if not self._variants:
            raise ValueError("cannot filter an empty log")
        ranked = sorted(self._variants.items(), key=lambda kv: (-kv[1], kv[0]))
        needed = coverage * self.total_traces
        kept = []
        cum = 0
        for trace, mult in ranked:
            kept.append((trace, mult))
            cum += mult
            if cum >= needed:
                break
        return EventLog(kept)

    # -- statistics ------------------------------------------------------

    def _counts(self):
        if self._pair_counts is None:
            pairs = Counter()
            acts = Counter()
            for trace, mult in self._variants.items():
                for a in trace:
                    acts[a] += mult
                for a, b in zip(trace, trace[1:]):
                    pairs[(a, b)] += mult
            self._pair_counts = pairs
            self._activity_counts = acts
        return self._activity_counts, self._pair_counts

    def activity_count(self, a):
        """Occurrences of ``a`` over all traces, multiplicity-weighted."""
        return self._counts()[0].get(a, 0)

    def direct_succession(self, a, b):
        """Number of times ``b`` immediately follows ``a``."""
        return self._counts()[1].get((a, b), 0)

    def causal_strength(self, a, b):
        """Normalized asymmetry of direct successions, as an exact rational.

        For a != b: (#(a,b) - #(b,a)) / (#(a,b) + #(b,a) + 1).
        For a == b: #(a,a) / (#(a,a) + 1).
        """
        ab = self.direct_succession(a, b)
        if a == b:
            return Fraction(ab, ab + 1)
        ba = self.direct_succession(b, a)
        return Fraction(ab - ba, ab + ba + 1)

    def preceding_set(self, a, c):
        """Activities whose causal strength toward ``a`` reaches ``c``.

        Candidates are drawn from the log's own activity set; over the
        full label universe the set would be vacuous.
        """
        c = _as_fraction(c)
        return {p for p in self._activities if self.causal_strength(p, a) >= c}

    def following_set(self, a, c):
        """Activities toward which ``a``'s causal strength reaches ``c``."""
        c = _as_fraction(c)
        return {f for f in self._activities if self.causal_strength(a, f) >= c}

    def build_dfg(self):
        """Directly-follows graph: arcs are exactly the pairs seen at least once."""
        _, pairs = self._counts()
        starts = Counter()
        ends = Counter()
        for trace, mult in self._variants.items():
            if trace:
                starts[trace[0]] += mult
                ends[trace[-1]] += mult
        return Dfg(
            nodes=self._activities,
            arcs=dict(sorted(pairs.items())),
            start_counts=dict(sorted(starts.items())),
            end_counts=dict(sorted(ends.items())),
        )

    def start_count(self, a):
        """Number of traces beginning with ``a``."""
        return sum(m for t, m in self._variants.items() if t and t[0] == a)


# -- parsers -------------------------------------------------------------


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def parse_xes(source):
    """Parse an XES byte stream or file path into an EventLog.

    Only the trace/event/concept:name subset is read; everything else is
    ignored. Events without a concept:name are skipped (counted in a
    warning), traces are kept in document order.
    """
    if isinstance(source, (str, bytes)):
        data = source if isinstance(source, bytes) else open(source, "rb").read()
    else:
        data = source.read()
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (None, None))
        raise LogParseError(f"malformed XES: {exc}", line=line, column=column) from exc
    traces = []
    skipped = 0
    for trace_el in root.iter():
        if _local(trace_el.tag) != "trace":
            continue
        events = []
        for event_el in trace_el:
            if _local(event_el.tag) != "event":
                continue
            name = None
            for attr in event_el:
                if _local(attr.tag) == "string" and attr.get("key") == "concept:name":
                    name = attr.get("value")
            if name is None:
                skipped += 1
            else:
                events.append(name)
        traces.append(tuple(events))
    if skipped:
        logger.warning("parse_xes: skipped %d events without concept:name", skipped)
    if not traces:
        logger.warning("parse_xes: no <trace> elements found, log is empty")
    return EventLog.from_traces(traces)


def _parse_timestamp(text):
    text = text.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        return datetime.fromisoformat(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return None


def parse_csv(source, case_col, activity_col, time_col=None):
    """Parse a delimited event table into an EventLog.

    Rows are grouped by ``case_col``. Within a case the events are ordered
    by ``time_col`` when given (stable sort, so timestamp ties keep file
    order), otherwise by file order. Rows with unparsable timestamps are
    rejected and counted.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for col in (case_col, activity_col) + ((time_col,) if time_col else ()):
        if col not in header:
            raise ConfigError(f"column {col!r} not in CSV header {header}")
    cases = {}
    rejected = 0
    for row in reader:
        case = row[case_col]
        activity = row[activity_col]
        if time_col:
            ts = _parse_timestamp(row[time_col] or "")
            if ts is None:
                rejected += 1
                continue
        else:
            ts = None
        cases.setdefault(case, []).append((ts, activity))
    if rejected:
        logger.warning("parse_csv: rejected %d rows with unparsable timestamps", rejected)
    traces = []
    for case in cases:  # insertion order = first appearance in the file
        events = cases[case]
        if time_col:
            events = sorted(events, key=lambda e: e[0])
        traces.append(tuple(a for _, a in events))
    return EventLog.from_traces(traces)


def load_json(source):
    """Read the canonical JSON log form: [{"variant": [...], "count": n}, ...]."""
    if isinstance(source, bytes):
        data = json.loads(source.decode("utf-8"))
    elif isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    else:
        data = json.load(source)
    try:
        return EventLog((tuple(entry["variant"]), int(entry["count"])) for entry in data)
    except (TypeError, KeyError) as exc:
        raise LogParseError(f"bad JSON log structure: {exc}") from exc


def dump_json(log):
    """Serialize a log to its canonical JSON form (sorted by variant)."""
    entries = [
        {"variant": list(trace), "count": mult} for trace, mult in log.variants.items()
    ]
    return json.dumps(entries, indent=2) + "\n"
