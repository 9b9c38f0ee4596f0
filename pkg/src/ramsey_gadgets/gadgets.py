"""Gadget graphs: signal senders, indicators, generalized negative
indicators, and pattern gadgets.

Senders are pluggable inputs (loaded, searched for, or stubbed); every
other gadget is built mechanically by composing senders and smaller
gadgets, and verified either structurally (interfaces, distances,
piece counts) or semantically (exhaustive coloring searches).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Optional, Protocol, Sequence

from . import graph6
from .arrowing import (ARROWS, DOES_NOT_ARROW, NO_BUDGET, UNKNOWN, ArrowInstance,
                       Budget, arrows, extendable, verify_witness)
from .coloring import ColorPattern, EdgeColoring, PatternFamily, pattern_of
from .graph import (Graph, GraphError, compose, disjoint_union, edge_distance,
                    enumerate_copies, girth, graphs_isomorphic, matching_graph,
                    single_edge)
from .manifest import ConstructionManifest, ManifestBuilder

POSITIVE = "positive"
NEGATIVE = "negative"

STATUS_STUB = "stub"
STATUS_UNVERIFIED = "unverified"
STATUS_STRUCTURAL = "structurally_verified"
STATUS_FULL = "fully_verified"
_STATUS_ORDER = {STATUS_STUB: 0, STATUS_UNVERIFIED: 1,
                 STATUS_STRUCTURAL: 2, STATUS_FULL: 3}

PASS = "pass"
FAIL = "fail"
SKIPPED_STUB = "skipped_stub"
EXHAUSTED = "budget_exhausted"


def _worst_status(statuses) -> str:
    return min(statuses, key=_STATUS_ORDER.__getitem__, default=STATUS_FULL)


# ---------------------------------------------------------------------------
# reports

@dataclass(frozen=True)
class PropertyResult:
    name: str
    outcome: str                     # pass / fail / skipped_stub / budget_exhausted
    method: str                      # structural / exhaustive / search / randomized
    detail: str = ""
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "outcome": self.outcome,
               "method": self.method, "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    results: tuple[PropertyResult, ...]

    def outcome_of(self, name: str) -> str:
        for r in self.results:
            if r.name == name:
                return r.outcome
        raise KeyError(name)

    @property
    def failures(self) -> list[PropertyResult]:
        return [r for r in self.results if r.outcome == FAIL]

    @property
    def ok(self) -> bool:
        """No refutation and no exhausted budget (skips allowed)."""
        return all(r.outcome in (PASS, SKIPPED_STUB) for r in self.results)

    @property
    def fully_verified(self) -> bool:
        return all(r.outcome == PASS for r in self.results)

    def to_json(self) -> dict:
        return {"subject": self.subject,
                "results": [r.to_json() for r in self.results]}


# ---------------------------------------------------------------------------
# signal senders

@dataclass
class SenderSpec:
    graph: Graph
    e: int                  # signal edge ids
    f: int
    polarity: str
    h: Graph
    q: int
    d: int
    status: str = STATUS_UNVERIFIED

    def __post_init__(self):
        if self.e == self.f:
            raise GraphError("signal edges must differ")
        if self.polarity not in (POSITIVE, NEGATIVE):
            raise GraphError(f"unknown polarity {self.polarity!r}")

    def signal_distance(self) -> float:
        return edge_distance(self.graph, [self.e], [self.f])

    def to_json(self) -> dict:
        return {"kind": "sender", "graph": graph6.write_auto(self.graph),
                "edge_order": [list(e) for e in self.graph.edges],
                "e": self.e, "f": self.f, "polarity": self.polarity,
                "h": graph6.write_auto(self.h), "q": self.q, "d": self.d,
                "status": self.status}

    @classmethod
    def from_json(cls, data: dict) -> "SenderSpec":
        g = graph6.parse_any(data["graph"])
        order = tuple((int(a), int(b)) for a, b in data.get("edge_order", []))
        if order:
            if set(order) != set(g.edges):
                raise GraphError("edge order does not match the graph payload")
            g = Graph(g.n, order, g.labels)
        return cls(g, int(data["e"]),
                   int(data["f"]), data["polarity"],
                   graph6.parse_any(data["h"]), int(data["q"]),
                   int(data["d"]), data.get("status", STATUS_UNVERIFIED))


def make_stub_sender(h: Graph, q: int, d: int, polarity: str) -> SenderSpec:
    """Two designated edges joined by a path of length exactly d.

    Satisfies only the distance axiom; used to exercise composition
    mechanics when no real sender is available.
    """
    if d < 1:
        raise GraphError("distance must be at least 1")
    # e = (0,1), f = (2,3), path of d edges from 1 to 2
    edges = [(0, 1), (2, 3)]
    prev = 1
    for i in range(d - 1):
        edges.append(tuple(sorted((prev, 4 + i))))
        prev = 4 + i
    edges.append(tuple(sorted((prev, 2))))
    g = Graph(3 + d, tuple(edges))
    return SenderSpec(g, 0, 1, polarity, h, q, d, status=STATUS_STUB)


def string_senders(senders: Sequence[SenderSpec]) -> SenderSpec:
    """Chain senders by identifying consecutive signal edges.  All but
    the last must be positive; the result's polarity is the last one's
    and its distance claim is the sum of the members' claims."""
    if not senders:
        raise GraphError("nothing to string")
    first = senders[0]
    for s in senders[:-1]:
        if s.polarity != POSITIVE:
            raise GraphError("only the last sender in a chain may be negative")
    for s in senders[1:]:
        if s.q != first.q or not graphs_isomorphic(s.h, first.h):
            raise GraphError("stringed senders must share target and color count")
    if len(senders) == 1:
        return first

    g = first.graph
    e_id, f_id = first.e, first.f
    for s in senders[1:]:
        hu, hv = g.edges[f_id]
        gu, gv = s.graph.edges[s.e]
        res = compose(g, s.graph, {gu: hu, gv: hv})
        g = res.graph
        f_id = res.edge_map[s.f]
    statuses = {s.status for s in senders}
    if statuses == {STATUS_FULL}:
        status = STATUS_FULL          # semantics follow from the members'
    elif STATUS_STUB in statuses:
        status = STATUS_STUB
    else:
        status = STATUS_UNVERIFIED
    return SenderSpec(g, e_id, f_id, senders[-1].polarity, first.h, first.q,
                      sum(s.d for s in senders), status)


def _extend_outcome(res) -> str:
    return UNKNOWN if res.verdict == UNKNOWN else res.verdict


def verify_sender(spec: SenderSpec, budget: Budget = NO_BUDGET,
                  workers: int = 1) -> VerificationReport:
    results = []
    dist = spec.signal_distance()
    results.append(PropertyResult(
        "S3", PASS if dist >= spec.d else FAIL, "structural",
        f"signal distance {dist}, required {spec.d}"))

    if spec.status == STATUS_STUB:
        results.append(PropertyResult("S1", SKIPPED_STUB, "structural",
                                      "stub sender: semantics not claimed"))
        results.append(PropertyResult("S2", SKIPPED_STUB, "structural",
                                      "stub sender: semantics not claimed"))
        return VerificationReport("sender", tuple(results))

    inst = ArrowInstance.create(spec.graph, spec.h, spec.q, budget)
    res = arrows(inst, workers)
    if res.verdict == UNKNOWN:
        results.append(PropertyResult("S1", EXHAUSTED, "search"))
    elif res.verdict == DOES_NOT_ARROW:
        results.append(PropertyResult("S1", PASS, "search",
                                      "target-free coloring found"))
    else:
        results.append(PropertyResult("S1", FAIL, "search",
                                      "graph forces a monochromatic target"))

    # a violating coloring can be color-permuted to fixed colors on e, f
    if spec.polarity == POSITIVE:
        bad = {spec.e: 1, spec.f: 2}
    else:
        bad = {spec.e: 1, spec.f: 1}
    ext = extendable(spec.graph, EdgeColoring.from_map(spec.q, bad),
                     spec.h, spec.q, budget, instance=inst)
    if ext.verdict == UNKNOWN:
        results.append(PropertyResult("S2", EXHAUSTED, "search"))
    elif ext.verdict == "extendable":
        results.append(PropertyResult(
            "S2", FAIL, "search", "free coloring violating the signal relation",
            {"coloring": ext.witness.to_json()}))
    else:
        results.append(PropertyResult("S2", PASS, "search",
                                      "no violating free coloring exists"))
    return VerificationReport("sender", tuple(results))


def search_sender(h: Graph, q: int, d: int, polarity: str, max_order: int,
                  corpus: Optional[Sequence[Graph]] = None,
                  budget: Budget = NO_BUDGET) -> Optional[SenderSpec]:
    """Scan a corpus of candidate graphs and all designated edge pairs
    at distance >= d; return the first fully verified sender, if any."""
    if corpus is None:
        corpus = graph6.load_corpus(max_order=max_order)
    for g in corpus:
        if g.n > max_order or g.num_edges < 2:
            continue
        inst = ArrowInstance.create(g, h, q, budget)
        base = arrows(inst)
        if base.verdict != DOES_NOT_ARROW:
            continue
        for e_id, f_id in combinations(range(g.num_edges), 2):
            if edge_distance(g, [e_id], [f_id]) < d:
                continue
            spec = SenderSpec(g, e_id, f_id, polarity, h, q, d)
            report = verify_sender(spec, budget)
            if report.fully_verified:
                spec.status = STATUS_FULL
                return spec
    return None


# ---------------------------------------------------------------------------
# sender providers

class SenderProvider(Protocol):
    def get(self, polarity: str, h: Graph, q: int, d: int) -> SenderSpec: ...


class StubSenderProvider:
    def get(self, polarity: str, h: Graph, q: int, d: int) -> SenderSpec:
        return make_stub_sender(h, q, d, polarity)


class FixedSenderProvider:
    """Serves pre-supplied senders, stringing stubs is not attempted;
    raises when no compatible sender is known."""

    def __init__(self, senders: Sequence[SenderSpec]):
        self.senders = list(senders)

    def get(self, polarity: str, h: Graph, q: int, d: int) -> SenderSpec:
        for s in self.senders:
            if s.polarity == polarity and s.q == q and s.d >= d \
                    and graphs_isomorphic(s.h, h):
                return s
        raise GraphError(
            f"no {polarity} sender available for q={q}, d={d}")


class SearchSenderProvider:
    def __init__(self, max_order: int,
                 corpus: Optional[Sequence[Graph]] = None,
                 budget: Budget = NO_BUDGET):
        self.max_order = max_order
        self.corpus = corpus
        self.budget = budget
        self._cache: dict = {}

    def get(self, polarity: str, h: Graph, q: int, d: int) -> SenderSpec:
        key = (polarity, h, q, d)
        if key not in self._cache:
            self._cache[key] = search_sender(
                h, q, d, polarity, self.max_order, self.corpus, self.budget)
        spec = self._cache[key]
        if spec is None:
            raise GraphError(
                f"sender search found no {polarity} sender at order "
                f"<= {self.max_order}")
        return spec


# ---------------------------------------------------------------------------
# indicators

@dataclass
class IndicatorSpec:
    graph: Graph
    f_vertices: tuple[int, ...]     # vertices of the indicator subgraph
    f_eids: tuple[int, ...]         # its edges
    e: int                          # indicator edge id
    polarity: str
    h: Graph
    q: int
    d: int
    status: str = STATUS_UNVERIFIED
    senders_status: str = STATUS_UNVERIFIED
    counts: dict = field(default_factory=dict)
    manifest: Optional[ConstructionManifest] = None

    def to_json(self) -> dict:
        return {
            "kind": "indicator", "graph": graph6.write_auto(self.graph),
            "f_vertices": list(self.f_vertices), "f_eids": list(self.f_eids),
            "e": self.e, "polarity": self.polarity,
            "h": graph6.write_auto(self.h), "q": self.q, "d": self.d,
            "status": self.status, "senders_status": self.senders_status,
            "counts": self.counts,
            "manifest": self.manifest.to_json() if self.manifest else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "IndicatorSpec":
        return cls(
            _graph_from_json(data), tuple(data["f_vertices"]),
            tuple(data["f_eids"]), int(data["e"]), data["polarity"],
            graph6.parse_any(data["h"]), int(data["q"]), int(data["d"]),
            data.get("status", STATUS_UNVERIFIED),
            data.get("senders_status", STATUS_UNVERIFIED),
            dict(data.get("counts", {})),
            ConstructionManifest.from_json(data["manifest"])
            if data.get("manifest") else None)


def _graph_from_json(data: dict) -> Graph:
    """Gadget graphs round-trip through their manifest when available:
    replay reproduces edge ids, which the bare graph6 payload cannot."""
    if data.get("manifest"):
        g = ConstructionManifest.from_json(data["manifest"]).replay()
        if set(g.edges) != set(graph6.parse_any(data["graph"]).edges):
            raise GraphError("manifest does not replay to the graph payload")
        return g
    return graph6.parse_any(data["graph"])


def _attach_sender(builder: ManifestBuilder, spec: SenderSpec,
                   host_a: int, host_b: int, note: str = ""):
    """Compose a fresh sender copy, signal edges onto two host edges."""
    g = spec.graph
    au, av = g.edges[spec.e]
    bu, bv = g.edges[spec.f]
    ha = builder.graph.edges[host_a]
    hb = builder.graph.edges[host_b]
    ident = {au: ha[0], av: ha[1], bu: hb[0], bv: hb[1]}
    builder.compose(g, ident, note=note or f"{spec.polarity} sender")


def _attach_fresh_edge(builder: ManifestBuilder, note: str = "") -> int:
    res = builder.compose(single_edge(), {}, note=note or "fresh edge")
    return res.edge_map[0]


def _attach_fresh_graph(builder: ManifestBuilder, g: Graph, note: str = ""):
    return builder.compose(g, {}, note=note)


def _pick_base_edges(h: Graph) -> tuple[int, int]:
    """Two starting-copy edges; the first must not be a pendant edge
    (both its endpoints need degree >= 2), matching the constraint for
    clique-with-pendant targets."""
    e1 = None
    for eid, (u, v) in enumerate(h.edges):
        if h.degree(u) >= 2 and h.degree(v) >= 2:
            e1 = eid
            break
    if e1 is None:
        e1 = 0
    e2 = 0 if e1 != 0 else 1
    return e1, e2


def _is_cycle(h: Graph) -> bool:
    return h.n >= 3 and h.num_edges == h.n and \
        all(d == 2 for d in h.degrees()) and h.is_connected()


def _check_indicator_preconditions(h: Graph, f: Graph):
    if h.num_edges < 2:
        raise GraphError("target needs at least 2 edges")
    if f.num_edges >= h.num_edges and enumerate_copies(f, h):
        raise GraphError("indicator subgraph must not contain the target")
    if _is_cycle(h) and girth(f) <= h.n:
        raise GraphError(
            f"cycle target of length {h.n} needs indicator subgraph of "
            f"girth > {h.n}")


def _attach_indicator_core(builder: ManifestBuilder, f_eids: list[int],
                           h: Graph, q: int, d: int,
                           provider: SenderProvider, counts: dict,
                           statuses: set) -> int:
    """Recursively attach a positive indicator for the host edges f_eids
    onto the builder's graph; returns the fresh indicator edge id."""

    def sender(polarity: str) -> SenderSpec:
        s = provider.get(polarity, h, q, d)
        statuses.add(s.status)
        key = f"{polarity}_senders"
        counts[key] = counts.get(key, 0) + 1
        return s

    if len(f_eids) == 1:
        # one-edge subgraph: the indicator degenerates to a sender
        s = sender(POSITIVE)
        g = s.graph
        eu, ev = g.edges[s.e]
        hf = builder.graph.edges[f_eids[0]]
        res = builder.compose(g, {eu: hf[0], ev: hf[1]},
                              note="positive sender as one-edge indicator")
        counts["one_edge_bases"] = counts.get("one_edge_bases", 0) + 1
        return res.edge_map[s.f]

    if len(f_eids) == 2:
        f1, f2 = f_eids
        if q == 2:
            counts["base_q2"] = counts.get("base_q2", 0) + 1
            counts["start_copies"] = counts.get("start_copies", 0) + 1
            res = _attach_fresh_graph(builder, h, note="starting copy")
            h0 = [res.edge_map[i] for i in range(h.num_edges)]
            e1_idx, e2_idx = _pick_base_edges(h)
            e1, e2 = h0[e1_idx], h0[e2_idx]
            e = _attach_fresh_edge(builder, note="indicator edge")
            for i, g_eid in enumerate(h0):
                if i in (e1_idx, e2_idx):
                    continue
                _attach_sender(builder, sender(NEGATIVE), f1, g_eid)
            _attach_sender(builder, sender(NEGATIVE), f2, e2)
            _attach_sender(builder, sender(POSITIVE), e1, e)
            return e

        counts["base_qgt2"] = counts.get("base_qgt2", 0) + 1
        mres = _attach_fresh_graph(builder, matching_graph(q - 1),
                                   note="base matching")
        m_edges = [mres.edge_map[i] for i in range(q - 1)]
        # q-1 starting copies sharing exactly the indicator edge
        e = _attach_fresh_edge(builder, note="indicator edge")
        eu, ev = builder.graph.edges[e]
        shared = h.edges[0]
        copies = []
        for i in range(q - 1):
            counts["start_copies"] = counts.get("start_copies", 0) + 1
            res = builder.compose(h, {shared[0]: eu, shared[1]: ev},
                                  note=f"starting copy {i + 1}")
            copies.append([res.edge_map[j] for j in range(h.num_edges)])
        for i in range(q - 2):
            _attach_sender(builder, sender(NEGATIVE), f1, m_edges[i])
        _attach_sender(builder, sender(NEGATIVE), f2, m_edges[q - 2])
        for i, j in combinations(range(q - 1), 2):
            _attach_sender(builder, sender(NEGATIVE), m_edges[i], m_edges[j])
        for i in range(q - 1):
            for j, g_eid in enumerate(copies[i]):
                if g_eid == e:
                    continue
                _attach_sender(builder, sender(POSITIVE), m_edges[i], g_eid)
        return e

    # induction: split off the highest edge, indicate the rest, then the pair
    counts["recursive_steps"] = counts.get("recursive_steps", 0) + 1
    f = f_eids[-1]
    e_prime = _attach_indicator_core(builder, f_eids[:-1], h, q, d,
                                     provider, counts, statuses)
    return _attach_indicator_core(builder, [f, e_prime], h, q, d,
                                  provider, counts, statuses)


def build_indicator(h: Graph, f: Graph, q: int, polarity: str,
                    provider: SenderProvider,
                    d: Optional[int] = None) -> IndicatorSpec:
    if d is None:
        d = h.n + 1
    if f.num_edges < 2:
        raise GraphError("indicator subgraph needs at least 2 edges")
    _check_indicator_preconditions(h, f)
    if polarity not in (POSITIVE, NEGATIVE):
        raise GraphError(f"unknown polarity {polarity!r}")

    base = f.relabel({v: f"F{v}" for v in range(f.n)})
    builder = ManifestBuilder(base, note="indicator subgraph")
    counts: dict = {}
    statuses: set = set()
    e = _attach_indicator_core(builder, list(range(f.num_edges)), h, q, d,
                               provider, counts, statuses)
    if polarity == NEGATIVE:
        e_prime = e
        e = _attach_fresh_edge(builder, note="negative indicator edge")
        s = provider.get(NEGATIVE, h, q, d)
        statuses.add(s.status)
        counts["negative_senders"] = counts.get("negative_senders", 0) + 1
        _attach_sender(builder, s, e_prime, e)

    spec = IndicatorSpec(
        builder.graph, tuple(range(f.n)), tuple(range(f.num_edges)), e,
        polarity, h, q, d, STATUS_UNVERIFIED, _worst_status(statuses),
        counts, builder.manifest)
    if _structural_indicator_ok(spec):
        spec.status = STATUS_STRUCTURAL
    return spec


def _no_extra_edges(graph: Graph, eids) -> bool:
    eset = set(eids)
    verts = sorted(graph.edge_vertices(eids))
    for u, v in combinations(verts, 2):
        if graph.has_edge(u, v) and graph.edge_id(u, v) not in eset:
            return False
    return True


def _structural_indicator_ok(spec: IndicatorSpec) -> bool:
    return _no_extra_edges(spec.graph, spec.f_eids) and \
        edge_distance(spec.graph, spec.f_eids, [spec.e]) >= spec.d


def _run_extendable(graph: Graph, partial: dict[int, int], h: Graph, q: int,
                    budget: Budget, inst: Optional[ArrowInstance] = None):
    return extendable(graph, EdgeColoring.from_map(q, partial), h, q,
                      budget, instance=inst)


def verify_indicator(spec: IndicatorSpec, budget: Budget = NO_BUDGET,
                     max_cases: int = 512) -> VerificationReport:
    results = []
    dist = edge_distance(spec.graph, spec.f_eids, [spec.e])
    i1 = _no_extra_edges(spec.graph, spec.f_eids) and dist >= spec.d
    results.append(PropertyResult(
        "I1", PASS if i1 else FAIL, "structural",
        f"induced subgraph and distance {dist} >= {spec.d}"))

    if spec.senders_status == STATUS_STUB:
        for name in ("I2", "I3", "I4"):
            results.append(PropertyResult(
                name, SKIPPED_STUB, "structural",
                "built from stub senders: coloring semantics not claimed"))
        return VerificationReport("indicator", tuple(results))

    q = spec.q
    inst = ArrowInstance.create(spec.graph, spec.h, q, budget)

    mono = {eid: 1 for eid in spec.f_eids}
    ext = _run_extendable(spec.graph, mono, spec.h, q, budget, inst)
    if ext.verdict == UNKNOWN:
        results.append(PropertyResult("I2", EXHAUSTED, "search"))
    elif ext.extendable:
        results.append(PropertyResult("I2", PASS, "search",
                                      "free coloring with monochromatic subgraph"))
    else:
        results.append(PropertyResult("I2", FAIL, "search",
                                      "no free coloring keeps the subgraph monochromatic"))

    # violation: subgraph monochromatic but the indicator edge disobeys
    bad_e = 2 if spec.polarity == POSITIVE else 1
    bad = dict(mono)
    bad[spec.e] = bad_e
    ext = _run_extendable(spec.graph, bad, spec.h, q, budget, inst)
    if ext.verdict == UNKNOWN:
        results.append(PropertyResult("I3", EXHAUSTED, "search"))
    elif ext.extendable:
        results.append(PropertyResult(
            "I3", FAIL, "search", "indicator edge can disobey the subgraph color",
            {"coloring": ext.witness.to_json()}))
    else:
        results.append(PropertyResult("I3", PASS, "search"))

    # every non-constant subgraph coloring leaves the edge free
    cases = []
    for assign in product(range(1, q + 1), repeat=len(spec.f_eids)):
        if len(set(assign)) > 1:
            cases.append(assign)
    total = len(cases) * q
    covered = 0
    failure = None
    unknown = False
    for assign in cases:
        for k in range(1, q + 1):
            if covered >= max_cases:
                break
            covered += 1
            part = dict(zip(spec.f_eids, assign))
            part[spec.e] = k
            ext = _run_extendable(spec.graph, part, spec.h, q, budget, inst)
            if ext.verdict == UNKNOWN:
                unknown = True
            elif not ext.extendable:
                failure = (assign, k)
                break
        if failure or covered >= max_cases:
            break
    if failure:
        assign, k = failure
        results.append(PropertyResult(
            "I4", FAIL, "search",
            f"subgraph colors {assign} block edge color {k}",
            {"partial": [[e, c] for e, c in zip(spec.f_eids, assign)]
             + [[spec.e, k]]}))
    elif unknown or covered < total:
        results.append(PropertyResult(
            "I4", EXHAUSTED, "search", f"covered {covered} of {total} cases"))
    else:
        results.append(PropertyResult("I4", PASS, "search",
                                      f"all {total} cases extend"))
    return VerificationReport("indicator", tuple(results))


# ---------------------------------------------------------------------------
# generalized negative indicators

@dataclass
class GNISpec:
    graph: Graph
    f_vertices: tuple[int, ...]
    f_eids: tuple[int, ...]
    g_vertices: tuple[int, ...]
    g_classes: tuple[tuple[int, ...], ...]    # partition of the G edges
    h: Graph
    q: int
    d: int
    m_edges: tuple[tuple[int, ...], ...]      # per k: matching of size q
    p_edges: tuple[tuple[int, ...], ...]      # per k: matching of size 2
    e_k: tuple[int, ...]                      # distinguished edge of each P_k
    status: str = STATUS_UNVERIFIED
    senders_status: str = STATUS_UNVERIFIED
    counts: dict = field(default_factory=dict)
    manifest: Optional[ConstructionManifest] = None

    @property
    def g_eids(self) -> tuple[int, ...]:
        return tuple(e for cls in self.g_classes for e in cls)

    def to_json(self) -> dict:
        return {
            "kind": "generalized_negative_indicator",
            "graph": graph6.write_auto(self.graph),
            "f_vertices": list(self.f_vertices), "f_eids": list(self.f_eids),
            "g_vertices": list(self.g_vertices),
            "g_classes": [list(c) for c in self.g_classes],
            "h": graph6.write_auto(self.h), "q": self.q, "d": self.d,
            "m_edges": [list(m) for m in self.m_edges],
            "p_edges": [list(p) for p in self.p_edges],
            "e_k": list(self.e_k),
            "status": self.status, "senders_status": self.senders_status,
            "counts": self.counts,
            "manifest": self.manifest.to_json() if self.manifest else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GNISpec":
        return cls(
            _graph_from_json(data), tuple(data["f_vertices"]),
            tuple(data["f_eids"]), tuple(data["g_vertices"]),
            tuple(tuple(c) for c in data["g_classes"]),
            graph6.parse_any(data["h"]), int(data["q"]), int(data["d"]),
            tuple(tuple(m) for m in data["m_edges"]),
            tuple(tuple(p) for p in data["p_edges"]), tuple(data["e_k"]),
            data.get("status", STATUS_UNVERIFIED),
            data.get("senders_status", STATUS_UNVERIFIED),
            dict(data.get("counts", {})),
            ConstructionManifest.from_json(data["manifest"])
            if data.get("manifest") else None)


def _indicator_for(h: Graph, f: Graph, q: int, d: int, polarity: str,
                   provider: SenderProvider) -> IndicatorSpec:
    """An indicator whose subgraph is f; a single-edge f degenerates to
    a bare sender."""
    if f.num_edges >= 2:
        return build_indicator(h, f, q, polarity, provider, d)
    s = provider.get(polarity, h, q, d)
    return IndicatorSpec(
        s.graph, s.graph.edges[s.e], (s.e,), s.f, polarity, h, q, d,
        STATUS_STRUCTURAL if s.signal_distance() >= d else STATUS_UNVERIFIED,
        s.status, {f"{polarity}_senders": 1, "one_edge_bases": 1}, None)


def _attach_indicator_copy(builder: ManifestBuilder, ind: IndicatorSpec,
                           host_f_vertices: Sequence[int], host_e: int,
                           note: str = ""):
    """Fresh copy of a standalone indicator: its subgraph vertices land
    on host_f_vertices (same local order) and its edge on host_e."""
    ident = {fv: hv for fv, hv in zip(ind.f_vertices, host_f_vertices)}
    eu, ev = ind.graph.edges[ind.e]
    hu, hv = builder.graph.edges[host_e]
    ident[eu] = hu
    ident[ev] = hv
    builder.compose(ind.graph, ident, note=note or f"{ind.polarity} indicator")


def _merge_counts(total: dict, part: dict, copies: int = 1):
    for k, v in part.items():
        total[k] = total.get(k, 0) + v * copies


def build_gni(h: Graph, f: Graph, g: Graph,
              partition: Sequence[Sequence[int]], q: int,
              provider: SenderProvider,
              d: Optional[int] = None) -> GNISpec:
    """Rainbow-forcing gadget: when the subgraph f is monochromatic,
    the declared classes of g must each be monochromatic and use all
    remaining colors."""
    if d is None:
        d = h.n + 1
    if d <= h.n:
        raise GraphError("distance parameter must exceed the target order")
    if len(partition) != q - 1:
        raise GraphError(f"partition must have exactly {q - 1} classes")
    seen: set[int] = set()
    for cls in partition:
        if seen & set(cls):
            raise GraphError("partition classes overlap")
        seen |= set(cls)
    if seen != set(range(g.num_edges)):
        raise GraphError("partition must cover the g edges exactly")
    if f.num_edges >= h.num_edges and enumerate_copies(f, h):
        raise GraphError("subgraph f must not contain the target")
    for cls in partition:
        if cls and len(cls) >= h.num_edges and \
                enumerate_copies(g.edge_induced(cls), h):
            raise GraphError("a declared class of g contains the target")

    base = disjoint_union(
        f.relabel({v: f"F{v}" for v in range(f.n)}),
        g.relabel({v: f"G{v}" for v in range(g.n)}))
    builder = ManifestBuilder(base, note="indicator subgraphs")
    f_vertices = tuple(range(f.n))
    f_eids = tuple(range(f.num_edges))
    g_vertices = tuple(range(f.n, f.n + g.n))
    g_classes = tuple(tuple(e + f.num_edges for e in cls) for cls in partition)

    m_edges = []
    p_edges = []
    for k in range(q - 1):
        res = _attach_fresh_graph(builder, matching_graph(q),
                                  note=f"matching M_{k + 1}")
        m_edges.append(tuple(res.edge_map[i] for i in range(q)))
        res = _attach_fresh_graph(builder, matching_graph(2),
                                  note=f"matching P_{k + 1}")
        p_edges.append(tuple(res.edge_map[i] for i in range(2)))
    e_k = tuple(p[0] for p in p_edges)

    counts: dict = {}
    statuses: set = set()
    neg_ind = _indicator_for(h, f, q, d, NEGATIVE, provider)
    pair_ind = _indicator_for(h, matching_graph(2), q, d, POSITIVE, provider)
    statuses.add(neg_ind.senders_status)
    statuses.add(pair_ind.senders_status)

    host_f = list(f_vertices)
    for k in range(q - 1):
        for m in m_edges[k]:
            _attach_indicator_copy(builder, neg_ind, host_f, m,
                                   note=f"negative indicator F -> M_{k + 1}")
            _merge_counts(counts, neg_ind.counts)
            counts["negative_indicators"] = counts.get("negative_indicators", 0) + 1
    for k in range(q - 1):
        for s_pair in combinations(m_edges[k], 2):
            sv = [v for eid in s_pair for v in builder.graph.edges[eid]]
            for p in p_edges[k]:
                _attach_indicator_copy(builder, pair_ind, sv, p,
                                       note=f"positive indicator S -> P_{k + 1}")
                _merge_counts(counts, pair_ind.counts)
                counts["positive_indicators_pairs"] = \
                    counts.get("positive_indicators_pairs", 0) + 1
    for k1, k2 in combinations(range(q - 1), 2):
        s = provider.get(NEGATIVE, h, q, d)
        statuses.add(s.status)
        _attach_sender(builder, s, e_k[k1], e_k[k2],
                       note="negative sender between distinguished edges")
        counts["negative_senders"] = counts.get("negative_senders", 0) + 1
        counts["cross_senders"] = counts.get("cross_senders", 0) + 1
    for k in range(q - 1):
        pv = [v for eid in p_edges[k] for v in builder.graph.edges[eid]]
        for g_eid in g_classes[k]:
            _attach_indicator_copy(builder, pair_ind, pv, g_eid,
                                   note=f"positive indicator P_{k + 1} -> class")
            _merge_counts(counts, pair_ind.counts)
            counts["positive_indicators_classes"] = \
                counts.get("positive_indicators_classes", 0) + 1

    spec = GNISpec(builder.graph, f_vertices, f_eids, g_vertices, g_classes,
                   h, q, d, tuple(m_edges), tuple(p_edges), e_k,
                   STATUS_UNVERIFIED, _worst_status(statuses), counts,
                   builder.manifest)
    if _structural_gni_ok(spec):
        spec.status = STATUS_STRUCTURAL
    return spec


def _structural_gni_ok(spec: GNISpec) -> bool:
    g_eids = spec.g_eids
    if not g_eids:
        return False
    return (_no_extra_edges(spec.graph, spec.f_eids)
            and _no_extra_edges(spec.graph, g_eids)
            and edge_distance(spec.graph, spec.f_eids, g_eids) >= spec.d)


def gni_expected_counts(q: int, class_sizes: Sequence[int]) -> dict:
    """Closed-form piece counts for the rainbow gadget construction."""
    return {
        "negative_indicators": (q - 1) * q,
        "positive_indicators_pairs": (q - 1) * comb(q, 2) * 2,
        "cross_senders": comb(q - 1, 2),
        "positive_indicators_classes": sum(class_sizes),
    }


def verify_gni(spec: GNISpec, budget: Budget = NO_BUDGET,
               max_cases: int = 256) -> VerificationReport:
    results = []
    g_eids = spec.g_eids
    dist = edge_distance(spec.graph, spec.f_eids, g_eids)
    gi1 = _no_extra_edges(spec.graph, spec.f_eids) and \
        _no_extra_edges(spec.graph, g_eids) and dist >= spec.d
    results.append(PropertyResult(
        "GI1", PASS if gi1 else FAIL, "structural",
        f"induced subgraphs and distance {dist} >= {spec.d}"))

    if spec.senders_status == STATUS_STUB:
        for name in ("GI2", "GI3", "GI4"):
            results.append(PropertyResult(
                name, SKIPPED_STUB, "structural",
                "built from stub senders: coloring semantics not claimed"))
        return VerificationReport("generalized_negative_indicator", tuple(results))

    q = spec.q
    inst = ArrowInstance.create(spec.graph, spec.h, q, budget)
    mono = {eid: 1 for eid in spec.f_eids}

    ext = _run_extendable(spec.graph, mono, spec.h, q, budget, inst)
    if ext.verdict == UNKNOWN:
        results.append(PropertyResult("GI2", EXHAUSTED, "search"))
    elif ext.extendable:
        results.append(PropertyResult("GI2", PASS, "search"))
    else:
        results.append(PropertyResult("GI2", FAIL, "search",
                                      "no free coloring keeps the subgraph monochromatic"))

    # GI3 violations: subgraph mono (color 1 wlog) while either some class
    # is split or the class colors fail to use the remaining palette
    failure = None
    unknown = False
    for gamma in product(range(1, q + 1), repeat=q - 1):
        if {1, *gamma} == set(range(1, q + 1)):
            continue
        part = dict(mono)
        for cls, c in zip(spec.g_classes, gamma):
            for e in cls:
                part[e] = c
        ext = _run_extendable(spec.graph, part, spec.h, q, budget, inst)
        if ext.verdict == UNKNOWN:
            unknown = True
        elif ext.extendable:
            failure = PropertyResult(
                "GI3", FAIL, "search",
                f"monochromatic classes colored {gamma} extend",
                {"coloring": ext.witness.to_json()})
            break
    if failure is None:
        for k, cls in enumerate(spec.g_classes):
            for e1, e2 in combinations(cls, 2):
                for a, b in product(range(1, q + 1), repeat=2):
                    if a == b:
                        continue
                    part = dict(mono)
                    part[e1] = a
                    part[e2] = b
                    ext = _run_extendable(spec.graph, part, spec.h, q,
                                          budget, inst)
                    if ext.verdict == UNKNOWN:
                        unknown = True
                    elif ext.extendable:
                        failure = PropertyResult(
                            "GI3", FAIL, "search",
                            f"class {k + 1} can be split {a}/{b}",
                            {"coloring": ext.witness.to_json()})
                        break
                if failure:
                    break
            if failure:
                break
    if failure is not None:
        results.append(failure)
    elif unknown:
        results.append(PropertyResult("GI3", EXHAUSTED, "search"))
    else:
        results.append(PropertyResult("GI3", PASS, "search"))

    # GI4: any non-constant subgraph coloring + any target-free coloring
    # of g extends
    g_sub_inst = None
    g_sub = spec.graph.edge_induced(g_eids)
    if g_sub.num_edges >= spec.h.num_edges:
        g_sub_inst = ArrowInstance.create(g_sub, spec.h, q, budget)
    phi_fs = [a for a in product(range(1, q + 1), repeat=len(spec.f_eids))
              if len(set(a)) > 1]
    pos_of = {e: i for i, e in enumerate(sorted(g_eids))}
    phi_gs = []
    for a in product(range(1, q + 1), repeat=len(g_eids)):
        if g_sub_inst is not None:
            wit = EdgeColoring.from_map(q, dict(enumerate(a)))
            if not verify_witness(g_sub_inst, wit):
                continue
        phi_gs.append(a)
    total = len(phi_fs) * len(phi_gs)
    covered = 0
    failure = None
    unknown = False
    for phi_f in phi_fs:
        for phi_g in phi_gs:
            if covered >= max_cases:
                break
            covered += 1
            part = dict(zip(spec.f_eids, phi_f))
            for e in g_eids:
                part[e] = phi_g[pos_of[e]]
            ext = _run_extendable(spec.graph, part, spec.h, q, budget, inst)
            if ext.verdict == UNKNOWN:
                unknown = True
            elif not ext.extendable:
                failure = (phi_f, phi_g)
                break
        if failure or covered >= max_cases:
            break
    if failure:
        results.append(PropertyResult(
            "GI4", FAIL, "search",
            f"subgraph colors {failure[0]} with class coloring {failure[1]} "
            "do not extend"))
    elif unknown or covered < total:
        results.append(PropertyResult(
            "GI4", EXHAUSTED, "search", f"covered {covered} of {total} cases"))
    else:
        results.append(PropertyResult("GI4", PASS, "search",
                                      f"all {total} cases extend"))
    return VerificationReport("generalized_negative_indicator", tuple(results))


# ---------------------------------------------------------------------------
# pattern gadgets

@dataclass
class PatternGadgetSpec:
    graph: Graph
    g_vertices: tuple[int, ...]
    g_eids: tuple[int, ...]
    family: PatternFamily
    h: Graph
    q: int
    d: int
    r: int
    m_eids: tuple[int, ...]                     # matching of size (r-1)q+1
    surjection: tuple[tuple[tuple[int, ...], int], ...]   # r-subset -> pattern index
    status: str = STATUS_UNVERIFIED
    senders_status: str = STATUS_UNVERIFIED
    counts: dict = field(default_factory=dict)
    manifest: Optional[ConstructionManifest] = None

    def to_json(self) -> dict:
        return {
            "kind": "pattern_gadget", "graph": graph6.write_auto(self.graph),
            "g_vertices": list(self.g_vertices), "g_eids": list(self.g_eids),
            "family": family_to_json(self.family),
            "h": graph6.write_auto(self.h), "q": self.q, "d": self.d,
            "r": self.r, "m_eids": list(self.m_eids),
            "surjection": [[list(sub), idx] for sub, idx in self.surjection],
            "status": self.status, "senders_status": self.senders_status,
            "counts": self.counts,
            "manifest": self.manifest.to_json() if self.manifest else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PatternGadgetSpec":
        return cls(
            _graph_from_json(data), tuple(data["g_vertices"]),
            tuple(data["g_eids"]), family_from_json(data["family"]),
            graph6.parse_any(data["h"]), int(data["q"]), int(data["d"]),
            int(data["r"]), tuple(data["m_eids"]),
            tuple((tuple(sub), int(idx)) for sub, idx in data["surjection"]),
            data.get("status", STATUS_UNVERIFIED),
            data.get("senders_status", STATUS_UNVERIFIED),
            dict(data.get("counts", {})),
            ConstructionManifest.from_json(data["manifest"])
            if data.get("manifest") else None)


def family_to_json(family: PatternFamily) -> dict:
    return {
        "base": graph6.write_auto(family.base),
        "mode": family.mode,
        "members": [[sorted(cls) for cls in m.classes] for m in family.members],
    }


def family_from_json(data: dict) -> PatternFamily:
    base = graph6.parse_any(data["base"])
    members = tuple(
        ColorPattern(base, tuple(frozenset(cls) for cls in m))
        for m in data["members"])
    return PatternFamily(base, members, data.get("mode", "exact"))


def choose_r(q: int, t_patterns: int) -> int:
    """Least r with C((r-1)q+1, r) >= t_patterns."""
    if q < 2 or t_patterns < 1:
        raise GraphError("need q >= 2 and at least one pattern")
    r = 1
    while comb((r - 1) * q + 1, r) < t_patterns:
        r += 1
    return r


def build_pattern_gadget(h: Graph, g: Graph, family: PatternFamily, q: int,
                         provider: SenderProvider, d: Optional[int] = None,
                         check_base: bool = True,
                         budget: Budget = NO_BUDGET) -> PatternGadgetSpec:
    if d is None:
        d = h.n + 1
    if len(family) == 0:
        raise GraphError("pattern family must be nonempty")
    if family.base.num_edges != g.num_edges:
        raise GraphError("family is not over the given base graph")
    if not family.all_h_free(h):
        raise GraphError("every family pattern must be target-free")
    for m in family.members:
        if m.q != q:
            raise GraphError("family pattern has wrong color count")
    if check_base and g.num_edges >= h.num_edges:
        res = arrows(ArrowInstance.create(g, h, q, budget))
        if res.verdict == ARROWS:
            raise GraphError("base graph must not force the target")
        if res.verdict == UNKNOWN:
            raise GraphError("could not confirm the base graph within budget")

    t = len(family)
    r = choose_r(q, t)
    m_size = (r - 1) * q + 1
    subsets = list(combinations(range(m_size), r))
    # lexicographically first subsets map to the patterns in declared
    # order; the rest to the first pattern, keeping s surjective
    surjection = tuple(
        (sub, i if i < t else 0) for i, sub in enumerate(subsets))

    base = g.relabel({v: f"G{v}" for v in range(g.n)})
    builder = ManifestBuilder(base, note="pattern base graph")
    g_vertices = tuple(range(g.n))
    g_eids = tuple(range(g.num_edges))
    res = _attach_fresh_graph(builder, matching_graph(m_size),
                              note="pattern matching M")
    m_eids = tuple(res.edge_map[i] for i in range(m_size))

    counts: dict = {}
    statuses: set = set()
    sub_f = matching_graph(r)
    pos_ind = _indicator_for(h, sub_f, q, d, POSITIVE, provider)
    statuses.add(pos_ind.senders_status)
    gni_cache: dict[int, tuple] = {}

    for sub, pat_idx in surjection:
        pattern = family.members[pat_idx]
        host_f = [v for i in sub for v in builder.graph.edges[m_eids[i]]]
        last_class = pattern.classes[q - 1]
        for e_local in sorted(last_class):
            _attach_indicator_copy(builder, pos_ind, host_f, g_eids[e_local],
                                   note="positive indicator A -> last class")
            _merge_counts(counts, pos_ind.counts)
            counts["positive_indicators"] = counts.get("positive_indicators", 0) + 1

        rest = sorted(e for cls in pattern.classes[:q - 1] for e in cls)
        if not rest:
            # the pattern puts every edge in the last class: there is
            # nothing left to force, no rainbow gadget is needed
            counts["gni_skipped_empty"] = counts.get("gni_skipped_empty", 0) + 1
            continue
        if pat_idx not in gni_cache:
            sub_g = g.edge_induced(rest)
            vert_list = sorted(g.edge_vertices(rest))
            local_pos = {e: i for i, e in enumerate(rest)}
            sub_partition = [
                sorted(local_pos[e] for e in cls)
                for cls in pattern.classes[:q - 1]]
            gni = build_gni(h, sub_f, sub_g, sub_partition, q, provider, d)
            gni_cache[pat_idx] = (gni, vert_list)
        gni, vert_list = gni_cache[pat_idx]
        statuses.add(gni.senders_status)
        ident = {fv: hv for fv, hv in zip(gni.f_vertices, host_f)}
        for gv, orig in zip(gni.g_vertices, vert_list):
            ident[gv] = orig
        builder.compose(gni.graph, ident,
                        note="rainbow gadget A -> remaining classes")
        _merge_counts(counts, gni.counts)
        counts["gni_copies"] = counts.get("gni_copies", 0) + 1

    spec = PatternGadgetSpec(
        builder.graph, g_vertices, g_eids, family, h, q, d, r, m_eids,
        surjection, STATUS_UNVERIFIED, _worst_status(statuses), counts,
        builder.manifest)
    if _structural_pattern_ok(spec):
        spec.status = STATUS_STRUCTURAL
    return spec


def _structural_pattern_ok(spec: PatternGadgetSpec) -> bool:
    return (_no_extra_edges(spec.graph, spec.g_eids)
            and edge_distance(spec.graph, spec.m_eids, spec.g_eids) >= spec.d)


def verify_pattern_gadget(spec: PatternGadgetSpec,
                          budget: Budget = NO_BUDGET) -> VerificationReport:
    results = []
    dist = edge_distance(spec.graph, spec.m_eids, spec.g_eids)
    p1 = _no_extra_edges(spec.graph, spec.g_eids)
    results.append(PropertyResult(
        "P1", PASS if p1 else FAIL, "structural",
        f"base graph induced; matching distance {dist} >= {spec.d}"))

    if spec.senders_status == STATUS_STUB:
        for name in ("P2", "P3"):
            results.append(PropertyResult(
                name, SKIPPED_STUB, "structural",
                "built from stub senders: coloring semantics not claimed"))
        return VerificationReport("pattern_gadget", tuple(results))

    q = spec.q
    inst = ArrowInstance.create(spec.graph, spec.h, q, budget)
    g_eids = list(spec.g_eids)
    base = spec.family.base

    # P2: no free coloring may induce a pattern outside the family
    failure = None
    unknown = False
    for assign in product(range(1, q + 1), repeat=len(g_eids)):
        local = EdgeColoring.from_map(q, dict(enumerate(assign)))
        pattern = pattern_of(base, local)
        if spec.family.contains(pattern):
            continue
        part = {e: c for e, c in zip(g_eids, assign)}
        ext = _run_extendable(spec.graph, part, spec.h, q, budget, inst)
        if ext.verdict == UNKNOWN:
            unknown = True
        elif ext.extendable:
            failure = PropertyResult(
                "P2", FAIL, "search",
                f"pattern {assign} outside the family extends",
                {"coloring": ext.witness.to_json()})
            break
    if failure is not None:
        results.append(failure)
    elif unknown:
        results.append(PropertyResult("P2", EXHAUSTED, "search"))
    else:
        results.append(PropertyResult("P2", PASS, "search",
                                      "no outside pattern extends"))

    # P3: every family pattern extends
    failure = None
    unknown = False
    special = _is_clique_pendant(spec.h)
    special_ok = True
    for idx, member in enumerate(spec.family.members):
        part = {}
        for ci, cls in enumerate(member.classes):
            for e_local in cls:
                part[g_eids[e_local]] = ci + 1
        ext = _run_extendable(spec.graph, part, spec.h, q, budget, inst)
        if ext.verdict == UNKNOWN:
            unknown = True
        elif not ext.extendable:
            failure = PropertyResult("P3", FAIL, "search",
                                     f"family pattern {idx} does not extend")
            break
        elif special and not _special_witness_ok(spec, ext.witness):
            special_ok = False
    if failure is not None:
        results.append(failure)
    elif unknown:
        results.append(PropertyResult("P3", EXHAUSTED, "search"))
    else:
        detail = "all family patterns extend"
        if special:
            detail += "; clique-copy containment flag " + \
                ("holds" if special_ok else "NOT satisfied by found witnesses")
        results.append(PropertyResult("P3", PASS, "search", detail))
    return VerificationReport("pattern_gadget", tuple(results))


def _is_clique_pendant(h: Graph) -> bool:
    from .graph import clique_with_pendant
    return h.n >= 4 and graphs_isomorphic(h, clique_with_pendant(h.n - 1))


def _special_witness_ok(spec: PatternGadgetSpec,
                        witness: EdgeColoring) -> bool:
    """Monochromatic clique copies touching the base graph must lie
    inside it (checked on pattern-gadget witnesses for clique+pendant
    targets)."""
    from .graph import complete_graph
    t = spec.h.n - 1
    clique = complete_graph(t)
    cmap = witness.as_dict()
    gset = set(spec.g_vertices)
    for emb in enumerate_copies(spec.graph, clique):
        ids = list(emb.edge_set)
        c0 = cmap[ids[0]]
        if any(cmap[e] != c0 for e in ids[1:]):
            continue
        verts = {v for e in ids for v in spec.graph.edges[e]}
        if verts & gset and not verts <= gset:
            return False
    return True


# ---------------------------------------------------------------------------
# robustness probing

def check_robust(outer: Graph, inner_vertices: Sequence[int], h: Graph,
                 trials: int = 10000, s_max: int = 3, seed: int = 0,
                 edge_prob: float = 0.5) -> VerificationReport:
    """Randomized refutation probe of the containment dichotomy: after
    adding new vertices S and edges within S plus the inner vertex set,
    every copy of the target must lie inside the original graph or
    inside the subgraph induced by S and the inner vertices.

    Only copies through an added edge can violate this, so the search
    is anchored at added edges.
    """
    inner = sorted(set(inner_vertices))
    for v in inner:
        if not (0 <= v < outer.n):
            raise GraphError(f"inner vertex {v} out of range")
    # For a connected pattern every straddling copy stays within distance
    # v(pattern)-1 of the inner vertices, so the probe can run on that
    # ball's induced subgraph without losing any violation.
    orig_n = outer.n
    to_orig = list(range(outer.n))
    if h.is_connected() and h.n >= 2:
        ball = set(inner)
        frontier = set(inner)
        for _ in range(h.n - 1):
            frontier = {w for v in frontier for w in outer.neighbors(v)} - ball
            if not frontier:
                break
            ball |= frontier
        if len(ball) < outer.n:
            to_orig = sorted(ball)
            pos = {v: i for i, v in enumerate(to_orig)}
            outer = outer.induced(to_orig)
            inner = sorted(pos[v] for v in inner)
    rng = random.Random(seed)
    inner_set = set(inner)
    pat_edges = h.edges
    pat_deg = h.degrees()

    violation = None
    for trial in range(trials):
        s_count = rng.randint(0, s_max)
        n_aug = outer.n + s_count
        pool = inner + list(range(outer.n, n_aug))
        adj = list(outer.adj) + [0] * s_count
        added: list[tuple[int, int]] = []
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                u, v = pool[i], pool[j]
                if (adj[u] >> v) & 1:
                    continue
                if rng.random() < edge_prob:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
                    added.append((u, v))
        if not added:
            continue
        allowed = inner_set | set(range(outer.n, n_aug))
        emb = _anchored_copy(adj, n_aug, pat_edges, pat_deg, added, allowed)
        if emb is not None:
            def back(v: int) -> int:
                return to_orig[v] if v < outer.n else orig_n + (v - outer.n)
            violation = {
                "trial": trial,
                "new_vertices": s_count,
                "added_edges": [[back(u), back(v)] for u, v in added],
                "copy_vertices": sorted(back(v) for v in emb),
            }
            break

    if violation is None:
        return VerificationReport("robustness", (PropertyResult(
            "robust", PASS, "randomized",
            f"no violation in {trials} trials (seed {seed})"),))
    return VerificationReport("robustness", (PropertyResult(
        "robust", FAIL, "randomized",
        "copy straddles the augmentation and the host", violation),))


def _anchored_copy(adj: list[int], n: int, pat_edges, pat_deg, added,
                   allowed: set[int]) -> Optional[set[int]]:
    """A copy of the pattern using an added edge and a vertex outside
    `allowed`, or None."""
    np = len(pat_deg)
    deg = [bin(a).count("1") for a in adj]
    pat_adj: list[list[int]] = [[] for _ in range(np)]
    for (u, v) in pat_edges:
        pat_adj[u].append(v)
        pat_adj[v].append(u)

    def complete(image: dict[int, int]) -> Optional[set[int]]:
        if len(image) == np:
            verts = set(image.values())
            if verts <= allowed:
                return None
            return verts
        # next unmapped pattern vertex adjacent to a mapped one if possible
        nxt = None
        for pv in range(np):
            if pv in image:
                continue
            if any(w in image for w in pat_adj[pv]):
                nxt = pv
                break
        if nxt is None:
            for pv in range(np):
                if pv not in image:
                    nxt = pv
                    break
        cand = (1 << n) - 1
        for w in pat_adj[nxt]:
            if w in image:
                cand &= adj[image[w]]
        used = 0
        for v in image.values():
            used |= 1 << v
        cand &= ~used
        while cand:
            hv = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            if deg[hv] < pat_deg[nxt]:
                continue
            image[nxt] = hv
            got = complete(image)
            if got is not None:
                return got
            del image[nxt]
        return None

    for (au, av) in added:
        for (pu, pv) in pat_edges:
            for iu, iv in ((au, av), (av, au)):
                if deg[iu] < pat_deg[pu] or deg[iv] < pat_deg[pv]:
                    continue
                got = complete({pu: iu, pv: iv})
                if got is not None:
                    return got
    return None
