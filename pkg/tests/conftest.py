"""Shared oracles.  The exhaustive colorer and the networkx-based copy
enumerator are deliberately independent of the package's own engine so
unit tests cross-check rather than echo it."""

import itertools

import networkx as nx

from ramsey_gadgets import ARROWS, DOES_NOT_ARROW, Graph


def to_networkx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def nx_copies(host: Graph, pattern: Graph) -> set[frozenset[int]]:
    """Distinct pattern copies in host as host-edge-id sets, found with
    networkx subgraph monomorphisms (non-induced)."""
    hn = to_networkx(host)
    pn = to_networkx(pattern.without_isolated())
    matcher = nx.algorithms.isomorphism.GraphMatcher(hn, pn)
    out = set()
    for mapping in matcher.subgraph_monomorphisms_iter():
        inv = {pv: hv for hv, pv in mapping.items()}
        out.add(frozenset(host.edge_id(inv[u], inv[v])
                          for u, v in pattern.without_isolated().edges))
    return out


def naive_arrows(host: Graph, target: Graph, q: int) -> str:
    """Plain q^|E| enumeration; desk sizes only."""
    copies = [tuple(c) for c in nx_copies(host, target)]
    for colors in itertools.product(range(q), repeat=host.num_edges):
        if not any(all(colors[e] == colors[c[0]] for e in c) for c in copies):
            return DOES_NOT_ARROW
    return ARROWS
