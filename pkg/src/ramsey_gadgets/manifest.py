"""Replayable construction manifests.

A manifest records a base graph plus a sequence of compositions.  Since
compose() assigns edge ids deterministically, replaying a manifest
reproduces the exact same graph, vertex labels and edge ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import graph6
from .graph import ComposeError, Graph, compose


@dataclass(frozen=True)
class ManifestStep:
    kind: str                       # "base", "compose" or "edges"
    payload: str                    # graph6/sparse6 token ("" for edges steps)
    labels: tuple[Optional[str], ...]
    identification: tuple[tuple[int, int], ...] = ()   # vertex pairs for edges steps
    label_prefix: Optional[str] = None
    note: str = ""
    # graph6 orders edges canonically; edge ids must survive replay, so
    # the construction-time edge order is kept alongside the payload
    edge_order: tuple[tuple[int, int], ...] = ()

    def graph(self) -> Graph:
        g = graph6.parse_any(self.payload)
        edges = self.edge_order or g.edges
        if set(edges) != set(g.edges):
            raise ComposeError("edge order does not match the graph payload")
        labels = self.labels if any(self.labels) else (None,) * g.n
        return Graph(g.n, tuple(edges), labels)


@dataclass
class ConstructionManifest:
    steps: list[ManifestStep] = field(default_factory=list)

    def record_base(self, g: Graph, note: str = ""):
        if self.steps:
            raise ComposeError("manifest already has a base step")
        self.steps.append(ManifestStep("base", graph6.write_auto(g), g.labels,
                                       note=note, edge_order=g.edges))

    def record_compose(self, gadget: Graph, identification: dict[int, int],
                       label_prefix: Optional[str] = None, note: str = ""):
        self.steps.append(ManifestStep(
            "compose", graph6.write_auto(gadget), gadget.labels,
            tuple(sorted(identification.items())), label_prefix, note,
            gadget.edges))

    def record_edges(self, pairs: list[tuple[int, int]], note: str = ""):
        self.steps.append(ManifestStep("edges", "", (), tuple(pairs), None, note))

    def replay(self) -> Graph:
        if not self.steps or self.steps[0].kind != "base":
            raise ComposeError("manifest must start with a base step")
        g = self.steps[0].graph()
        for step in self.steps[1:]:
            if step.kind == "edges":
                g = Graph(g.n, g.edges + tuple(step.identification), g.labels)
            elif step.kind == "compose":
                g = compose(g, step.graph(), dict(step.identification),
                            step.label_prefix).graph
            else:
                raise ComposeError(f"unknown manifest step kind {step.kind!r}")
        return g

    def to_json(self) -> dict:
        return {
            "steps": [
                {
                    "kind": s.kind,
                    "payload": s.payload,
                    "labels": list(s.labels),
                    "identification": [list(p) for p in s.identification],
                    "label_prefix": s.label_prefix,
                    "note": s.note,
                    "edge_order": [list(e) for e in s.edge_order],
                }
                for s in self.steps
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionManifest":
        steps = [
            ManifestStep(
                s["kind"], s["payload"], tuple(s["labels"]),
                tuple((int(a), int(b)) for a, b in s.get("identification", [])),
                s.get("label_prefix"), s.get("note", ""),
                tuple((int(a), int(b)) for a, b in s.get("edge_order", [])))
            for s in data["steps"]
        ]
        return cls(steps)

    def save(self, path: str):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)

    @classmethod
    def load(cls, path: str) -> "ConstructionManifest":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


class ManifestBuilder:
    """Tracks a growing host graph together with its manifest."""

    def __init__(self, base: Graph, note: str = ""):
        self.graph = base
        self.manifest = ConstructionManifest()
        self.manifest.record_base(base, note=note)

    @classmethod
    def resume(cls, graph: Graph, manifest: ConstructionManifest) -> "ManifestBuilder":
        """Continue composing onto an already-built graph.  The given
        manifest is copied, so the original recipe stays unchanged."""
        b = cls.__new__(cls)
        b.graph = graph
        b.manifest = ConstructionManifest(list(manifest.steps))
        return b

    def compose(self, gadget: Graph, identification: dict[int, int],
                label_prefix: Optional[str] = None, note: str = ""):
        res = compose(self.graph, gadget, identification, label_prefix)
        self.graph = res.graph
        self.manifest.record_compose(gadget, identification, label_prefix, note)
        return res

    def add_edges(self, pairs, note: str = "") -> list[int]:
        """Add edges between existing vertices; returns the new edge ids."""
        norm = []
        for u, v in pairs:
            if not (0 <= u < self.graph.n and 0 <= v < self.graph.n):
                raise ComposeError(f"edge ({u},{v}) out of range")
            if self.graph.has_edge(u, v):
                raise ComposeError(f"edge ({u},{v}) already present")
            norm.append((u, v) if u < v else (v, u))
        first = self.graph.num_edges
        self.graph = Graph(self.graph.n, self.graph.edges + tuple(norm),
                           self.graph.labels)
        self.manifest.record_edges(norm, note)
        return list(range(first, first + len(norm)))
