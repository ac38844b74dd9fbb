"""Union closure of a family of subgraphs and coverage queries.

A graph is covered by a family when its edge set is the union of a nonempty
subset of the family. The closure is built breadth-first with deduplication,
so its size is output-sensitive rather than 2^|family|. The empty graph is
never covered; the lattice module adds it as the bottom element.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Iterator

from .errors import InputError
from .graphs import (
    Family,
    Graph,
    GroundGraph,
    canonical_key,
    cyclomatic_number,
    edge_list_str,
)
from .matching import WeightFunction, has_perfect_matching, pm_support


class CoveredSet:
    """All graphs covered by a family, in canonical order."""

    __slots__ = ("ground", "family", "graphs", "_masks")

    def __init__(self, ground: GroundGraph, family: Family, graphs: tuple[Graph, ...]):
        self.ground = ground
        self.family = family
        self.graphs = graphs
        self._masks = frozenset(g.edges for g in graphs)

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[Graph]:
        return iter(self.graphs)

    def __contains__(self, g: Graph) -> bool:
        return g.ground == self.ground and g.edges in self._masks

    def contains_mask(self, mask: int) -> bool:
        return mask in self._masks

    def __repr__(self) -> str:
        return f"CoveredSet({self.ground.header()!r}, {len(self.graphs)} graphs)"


def _check_family(F: Family) -> None:
    if len(F) == 0:
        raise InputError("covering needs a nonempty family")
    if any(m.is_empty for m in F):
        raise InputError("family members must have at least one edge")


def covered_closure(F: Family, workers: int = 1) -> CoveredSet:
    """The set of all distinct unions of nonempty subfamilies of F.

    Breadth-first: each frontier graph is merged with every family member and
    unseen results form the next frontier. The result is independent of the
    expansion schedule, so frontier chunks may be farmed out to threads.
    """
    _check_family(F)
    members = [g.edges for g in F]
    seen = set(members)
    frontier = sorted(seen)

    def expand(chunk: list[int]) -> list[int]:
        out = []
        for g in chunk:
            for m in members:
                u = g | m
                if u not in seen:
                    out.append(u)
        return out

    while frontier:
        if workers > 1 and len(frontier) > 256:
            step = (len(frontier) + workers - 1) // workers
            chunks = [frontier[k : k + step] for k in range(0, len(frontier), step)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                produced = [u for part in pool.map(expand, chunks) for u in part]
        else:
            produced = expand(frontier)
        frontier = []
        for u in produced:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    graphs = sorted((Graph(F.ground, m) for m in seen), key=canonical_key)
    return CoveredSet(F.ground, F, tuple(graphs))


def is_covered(G: Graph, F: Family) -> bool:
    """True iff G equals the union of the family members it contains.

    Equivalent to the existential definition (some subfamily unions to G)
    because adding further contained members never shrinks the union.
    """
    _check_family(F)
    if G.ground != F.ground:
        raise InputError("graph and family grounds differ")
    acc = 0
    found = False
    for m in F:
        if m.edges & ~G.edges == 0:
            acc |= m.edges
            found = True
    return found and acc == G.edges


def coefficient_query(G: Graph, w: WeightFunction | None = None) -> int:
    """Coefficient of G's monomial in the membership polynomial, in {-1, 0, +1}.

    For the family of minimum-weight perfect matchings (unit weights when w is
    None): the coefficient is (-1)^cyclomatic(G) when G is covered and 0
    otherwise. Coverage is decided without enumerating anything exponential:
    G is covered iff every edge of G is dual-tight, G has a perfect matching,
    and every edge of G lies in some perfect matching of G. Each query is
    polynomial in n.
    """
    ground = G.ground
    if ground.mode != "bipartite":
        raise InputError("coefficient queries require a bipartite ground")
    if w is not None and w.ground != ground:
        raise InputError("graph and weight function grounds differ")
    if G.is_empty:
        return 0
    if w is not None and G.edges & ~w.tight_mask():
        return 0
    if not has_perfect_matching(G):
        return 0
    if pm_support(G).edges != G.edges:
        return 0
    return -1 if cyclomatic_number(G) % 2 else 1


def format_covered_set(C: CoveredSet) -> str:
    """Header with ground and count, then one line of 'u,v' pairs per graph."""
    lines = [f"{C.ground.header()} {len(C)}"]
    lines.extend(edge_list_str(g) for g in C.graphs)
    return "\n".join(lines) + "\n"
