"""PNML and GraphViz DOT serialization for workflow nets.

Output is byte-deterministic for a fixed net: nodes are emitted in
creation order and ids are derived from node ids, so writing, parsing and
writing again reproduces the exact bytes.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .errors import LogParseError, NetStructureError
from .petri import PetriNet, WorkflowNet

_TOOL = "synthminer"


def write_pnml(wf):
    """Serialize a workflow net to PNML bytes.

    Silent transitions get an empty name and a toolspecific invisible
    flag; the source place carries the initial marking.
    """
    net = wf.net
    pnml = ET.Element("pnml")
    net_el = ET.SubElement(
        pnml,
        "net",
        id="net1",
        type="http://www.pnml.org/version-2009/grammar/ptnet",
    )
    page = ET.SubElement(net_el, "page", id="page1")
    for p in net.places:
        el = ET.SubElement(page, "place", id=f"n{p}")
        name = ET.SubElement(el, "name")
        ET.SubElement(name, "text").text = net.node(p).name
        if p == wf.source:
            marking = ET.SubElement(el, "initialMarking")
            ET.SubElement(marking, "text").text = "1"
    for t in net.transitions:
        el = ET.SubElement(page, "transition", id=f"n{t}")
        label = net.label(t)
        name = ET.SubElement(el, "name")
        ET.SubElement(name, "text").text = label if label is not None else ""
        if label is None:
            tool = ET.SubElement(el, "toolspecific", tool=_TOOL, version="1.0")
            ET.SubElement(tool, "invisible").text = "true"
    for i, (src, dst) in enumerate(wf.net.arcs):
        ET.SubElement(page, "arc", id=f"a{i}", source=f"n{src}", target=f"n{dst}")
    ET.indent(pnml)
    return ET.tostring(pnml, encoding="utf-8", xml_declaration=True) + b"\n"


def _local(tag):
    return tag.rsplit("}", 1)[-1]


def parse_pnml(data):
    """Parse PNML bytes back into a WorkflowNet.

    Source/sink are recovered structurally (empty preset / postset);
    transitions flagged invisible, or with an empty name, become silent.
    """
    if isinstance(data, str):
        with open(data, "rb") as fh:
            data = fh.read()
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (None, None))
        raise LogParseError(f"malformed PNML: {exc}", line=line, column=column) from exc
    net = PetriNet()
    ids = {}
    arcs = []
    for el in root.iter():
        tag = _local(el.tag)
        if tag == "place":
            name = _text(el, "name")
            ids[el.get("id")] = net.add_place(name or None)
        elif tag == "transition":
            name = _text(el, "name")
            invisible = any(
                _local(sub.tag) == "invisible" and (sub.text or "").strip() == "true"
                for sub in el.iter()
            )
            label = None if invisible or not name else name
            ids[el.get("id")] = net.add_transition(name or None, label)
        elif tag == "arc":
            arcs.append((el.get("source"), el.get("target")))
    for src, dst in arcs:
        if src not in ids or dst not in ids:
            raise LogParseError(f"arc references unknown node: {src} -> {dst}")
        net.add_arc(ids[src], ids[dst])
    sources = [p for p in net.places if not net.preset(p)]
    sinks = [p for p in net.places if not net.postset(p)]
    if len(sources) != 1 or len(sinks) != 1:
        raise NetStructureError("PNML net is not a workflow net (need unique source/sink)")
    source, sink = sources[0], sinks[0]
    starts = net.postset(source)
    ends = net.preset(sink)
    if len(starts) != 1 or len(ends) != 1:
        raise NetStructureError("source/sink must connect to a single transition")
    wf = WorkflowNet(net, source, sink, starts[0], ends[0])
    wf.validate()
    return wf


def _text(el, child_tag):
    for sub in el:
        if _local(sub.tag) == child_tag:
            for txt in sub:
                if _local(txt.tag) == "text":
                    return txt.text or ""
    return ""


def write_dot(wf):
    """Render the net as GraphViz DOT: circles for places, boxes for
    transitions, filled boxes for silent ones."""
    net = wf.net
    lines = ["digraph workflow_net {", "  rankdir=LR;"]
    for p in net.places:
        name = net.node(p).name
        lines.append(f'  n{p} [shape=circle, label="{name}"];')
    for t in net.transitions:
        label = net.label(t)
        if label is None:
            lines.append(
                f'  n{t} [shape=box, style=filled, fillcolor=black, label="", height=0.25];'
            )
        else:
            lines.append(f'  n{t} [shape=box, label="{label}"];')
    for src, dst in net.arcs:
        lines.append(f"  n{src} -> n{dst};")
    lines.append("}")
    return "\n".join(lines) + "\n"
