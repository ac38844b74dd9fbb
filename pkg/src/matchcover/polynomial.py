"""Multilinear membership polynomials and their independent verification.

A 0/1 assignment to the edge variables of a ground graph is the same bit
vector as a spanning subgraph, so assignments are passed around as Graphs (or
raw masks). Membership polynomials are built three ways: from the
inclusion-exclusion coefficients of the covered-set lattice (general
families), from the cyclomatic-number sign rule (perfect-matching families,
weighted or not), and from an exhaustive truth-table transform that serves as
the independent oracle at small sizes.
"""

from __future__ import annotations

import json
from typing import Callable

import numpy as np

from .errors import CapExceededError, InputError
from .covered import covered_closure
from .graphs import Family, Graph, GroundGraph, bipartite_ground, cyclomatic_number
from .lattice import build_lattice
from .matching import (
    WeightFunction,
    enumerate_min_weight_pms,
    enumerate_perfect_matchings,
)

TRANSFORM_BIT_CAP = 16


class MultilinearPolynomial:
    """Integer multilinear polynomial over the edge variables of one ground.

    Terms map a monomial (edge bitmask) to a nonzero integer coefficient.
    """

    __slots__ = ("ground", "terms")

    def __init__(self, ground: GroundGraph, terms: dict[int, int]):
        for mask, coeff in terms.items():
            if not 0 <= mask < (1 << ground.edge_count):
                raise InputError(f"monomial mask {mask:#x} out of range")
            if coeff == 0:
                raise InputError("zero coefficients must be dropped")
        self.ground = ground
        self.terms = dict(terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MultilinearPolynomial)
            and self.ground == other.ground
            and self.terms == other.terms
        )

    def coefficient(self, x: Graph | int) -> int:
        mask = self._mask_of(x)
        return self.terms.get(mask, 0)

    def _mask_of(self, x: Graph | int) -> int:
        if isinstance(x, Graph):
            if x.ground != self.ground:
                raise InputError("assignment ground does not match the polynomial")
            return x.edges
        if not 0 <= x < (1 << self.ground.edge_count):
            raise InputError(f"assignment mask {x:#x} out of range")
        return x

    def evaluate(self, x: Graph | int) -> int:
        """Value at a 0/1 assignment: sum of coefficients of submonomials."""
        mask = self._mask_of(x)
        total = 0
        for term, coeff in self.terms.items():
            if term & ~mask == 0:
                total += coeff
        return total

    def sorted_terms(self) -> list[tuple[int, int]]:
        """(mask, coeff) pairs in canonical (degree, edge-id) order."""
        def key(item):
            mask, _ = item
            ids = tuple(k for k in range(self.ground.edge_count) if mask >> k & 1)
            return (len(ids), ids)

        return sorted(self.terms.items(), key=key)

    def to_text(self) -> str:
        """One term per line: signed coefficient, then sorted x[u,v] factors."""
        lines = []
        pairs = self.ground.edge_pairs()
        for mask, coeff in self.sorted_terms():
            factors = [
                f"x[{pairs[k][0]},{pairs[k][1]}]"
                for k in range(self.ground.edge_count)
                if mask >> k & 1
            ]
            lines.append(" ".join([f"{coeff:+d}"] + factors))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "ground": {"mode": self.ground.mode, "size": self.ground.size},
            "terms": [
                {
                    "coeff": coeff,
                    "edges": [
                        list(self.ground.edge_endpoints(k))
                        for k in range(self.ground.edge_count)
                        if mask >> k & 1
                    ],
                }
                for mask, coeff in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultilinearPolynomial":
        try:
            ground = GroundGraph(data["ground"]["mode"], data["ground"]["size"])
            terms: dict[int, int] = {}
            for item in data["terms"]:
                coeff = item["coeff"]
                if not isinstance(coeff, int):
                    raise InputError(f"coefficient {coeff!r} is not an integer")
                mask = 0
                for (u, v) in item["edges"]:
                    mask |= 1 << ground.edge_index(u, v)
                if mask in terms:
                    raise InputError("duplicate monomial in polynomial file")
                terms[mask] = coeff
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from None
        return cls(ground, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultilinearPolynomial":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from None
        return cls.from_json_dict(data)

    def __repr__(self) -> str:
        return f"MultilinearPolynomial({self.ground.header()!r}, {len(self.terms)} terms)"


def evaluate(p: MultilinearPolynomial, x: Graph | int) -> int:
    return p.evaluate(x)


def membership_oracle(F: Family, G: Graph) -> int:
    """1 iff some family member is a subgraph of G."""
    if G.ground != F.ground:
        raise InputError("graph and family grounds differ")
    return int(any(m.edges & ~G.edges == 0 for m in F))


def membership_polynomial_general(F: Family, workers: int = 1) -> MultilinearPolynomial:
    """Membership polynomial of an arbitrary family via lattice
    inclusion-exclusion: each covered graph contributes minus its Mobius
    number."""
    cov = covered_closure(F, workers=workers)
    lat = build_lattice(cov)
    terms: dict[int, int] = {}
    for g in cov:
        coeff = -lat.mobius(g)
        if coeff:
            terms[g.edges] = coeff
    return MultilinearPolynomial(F.ground, terms)


def _pm_family_polynomial(F: Family, workers: int = 1) -> MultilinearPolynomial:
    cov = covered_closure(F, workers=workers)
    terms = {
        g.edges: (-1 if cyclomatic_number(g) % 2 else 1) for g in cov
    }
    return MultilinearPolynomial(F.ground, terms)


def pm_polynomial(n: int, workers: int = 1) -> MultilinearPolynomial:
    """Membership polynomial of the perfect matchings of K_{n,n}: one term
    per matching-covered subgraph, signed by its cyclomatic number."""
    ground = bipartite_ground(n)
    family = enumerate_perfect_matchings(ground.full_graph())
    return _pm_family_polynomial(family, workers=workers)


def min_weight_pm_polynomial(
    w: WeightFunction, workers: int = 1
) -> MultilinearPolynomial:
    """Membership polynomial of the minimum-weight perfect matchings under w.

    Same sign rule as the unweighted case; every monomial lies inside the
    union of the minimum-weight matchings.
    """
    family = enumerate_min_weight_pms(w)
    return _pm_family_polynomial(family, workers=workers)


def truth_table_transform(
    oracle: Callable[[Graph], int],
    ground: GroundGraph,
    max_bits: int = TRANSFORM_BIT_CAP,
) -> MultilinearPolynomial:
    """The unique multilinear polynomial agreeing with the oracle on all 0/1
    assignments, by the in-place subset Mobius transform over all 2^m points.

    Exhaustive by construction; refuses grounds wider than max_bits.
    """
    m = ground.edge_count
    if m > max_bits:
        raise CapExceededError(
            f"{ground.header()} has {m} edge bits, transform cap is {max_bits}"
        )
    size = 1 << m
    table = np.fromiter(
        (oracle(Graph(ground, mask)) for mask in range(size)),
        dtype=np.int64,
        count=size,
    )
    for bit in range(m):
        step = 1 << bit
        view = table.reshape(-1, 2 * step)
        view[:, step:] -= view[:, :step]
    terms = {
        int(mask): int(table[mask]) for mask in np.nonzero(table)[0]
    }
    return MultilinearPolynomial(ground, terms)
