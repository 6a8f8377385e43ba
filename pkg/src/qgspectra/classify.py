"""Self-intersection classes of pseudo orbits and the exact variance formula.

A bond-distinct primitive pseudo orbit can meet itself only at vertices it
passes through twice; each such vertex is a zero-length 2-encounter.  With
N of them, the pseudo orbit has 2^N partners sharing its bond multiset and
contributes 2^(N-n) to the variance of coefficient n.  Pseudo orbits with
a repeated bond contribute nothing: their partner sums cancel by the
parity balance of Lyndon-word regroupings.  Summing the surviving classes
gives the exact variance

    var(n) = 2^-n * (|P0| + sum_N 2^N |PhatN|)

as a dyadic rational.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

from .graphs import DirectedGraph
from .orbits import (
    DEFAULT_CAP,
    PseudoOrbit,
    enumerate_pseudo_orbits,
)


@dataclass(frozen=True)
class VisitProfile:
    """Traversal counts of a pseudo orbit.

    ``visit_counts[v]`` is the number of passages through vertex v (bonds
    entering v, counted with multiplicity); ``repeated_bonds`` lists
    (bond id, multiplicity) for every bond used more than once.
    """

    visit_counts: tuple[int, ...]
    repeated_bonds: tuple[tuple[int, int], ...]
    doubly_visited: tuple[int, ...]
    higher_visits: tuple[int, ...]


def visit_profile(graph: DirectedGraph, pseudo_orbit: PseudoOrbit) -> VisitProfile:
    counts = [0] * graph.vertex_count
    bond_counts: Counter = Counter()
    for orbit in pseudo_orbit.orbits:
        for b in orbit:
            counts[graph.terminus(b)] += 1
            bond_counts[b] += 1
    repeated = tuple(sorted((b, c) for b, c in bond_counts.items() if c >= 2))
    doubly = tuple(v for v, c in enumerate(counts) if c == 2)
    higher = tuple(v for v, c in enumerate(counts) if c >= 3)
    return VisitProfile(
        visit_counts=tuple(counts),
        repeated_bonds=repeated,
        doubly_visited=doubly,
        higher_visits=higher,
    )


@dataclass(frozen=True)
class OrbitClass:
    """Classification tag: "P0", "PhatN" (with N encounters), or "excluded"."""

    kind: str
    encounters: int | None
    reason: str = ""

    @property
    def label(self) -> str:
        """Dump label: "P0", "P^N", or "excluded"."""
        return "P^N" if self.kind == "PhatN" else self.kind


def classify_pseudo_orbit(graph: DirectedGraph, pseudo_orbit: PseudoOrbit) -> OrbitClass:
    """Assign a pseudo orbit to P0, PhatN, or the excluded (cancelling) class.

    P0: every vertex passed at most once.  PhatN: no repeated bond and
    exactly N vertices passed twice (a self-loop beside a second passage
    counts like any other encounter).  A repeated bond means an encounter
    of positive length or of multiplicity above two; those classes carry
    zero total weight and are excluded.
    """
    profile = visit_profile(graph, pseudo_orbit)
    if profile.repeated_bonds:
        return OrbitClass("excluded", None, "repeated bond")
    if profile.higher_visits:
        # unreachable for distinct bonds on a 2-in graph; kept for audit
        return OrbitClass("excluded", None, "vertex passed three or more times")
    if profile.doubly_visited:
        return OrbitClass("PhatN", len(profile.doubly_visited))
    return OrbitClass("P0", 0)


@dataclass(frozen=True)
class ClassCounts:
    """Census of pseudo orbits of one total length by class."""

    n: int
    p0: int
    phat: dict[int, int]
    excluded: int = 0

    def phat_total(self) -> int:
        return sum(self.phat.values())


def class_counts(
    graph: DirectedGraph,
    n: int,
    mode: str = "bond_distinct",
    cap: int = DEFAULT_CAP,
) -> ClassCounts:
    """Count P0 / PhatN / excluded pseudo orbits of total length n."""
    p0 = 0
    excluded = 0
    phat: dict[int, int] = {}
    for po in enumerate_pseudo_orbits(graph, n, mode=mode, cap=cap):
        tag = classify_pseudo_orbit(graph, po)
        if tag.kind == "P0":
            p0 += 1
        elif tag.kind == "PhatN":
            phat[tag.encounters] = phat.get(tag.encounters, 0) + 1
        else:
            excluded += 1
    return ClassCounts(n=n, p0=p0, phat=dict(sorted(phat.items())), excluded=excluded)


def variance_from_classes(counts: ClassCounts) -> Fraction:
    """Exact coefficient variance from a class census:
    2^-n (|P0| + sum_N 2^N |PhatN|)."""
    total = counts.p0 + sum(2**N * c for N, c in counts.phat.items())
    return Fraction(total, 2**counts.n)


def exact_variance(
    graph: DirectedGraph, n: int, cap: int = DEFAULT_CAP
) -> Fraction:
    """Exact variance of coefficient n; indices above B/2 use the mirror
    symmetry var(n) = var(B - n)."""
    B = graph.num_bonds
    if not 0 <= n <= B:
        raise ValueError(f"n must lie in 0..{B}")
    half = min(n, B - n)
    return variance_from_classes(class_counts(graph, half, cap=cap))


def c_gamma(
    graph: DirectedGraph, pseudo_orbit: PseudoOrbit, partners: Iterable[PseudoOrbit]
) -> Fraction:
    """Signed partner sum C of a pseudo orbit, exactly.

    C = sum over partners gamma' of (-1)^(m+m') A A'; the caller supplies
    the partner set (all pseudo orbits sharing the bond multiset,
    including the pseudo orbit itself).  Equals 2^(N-n) for bond-distinct
    pseudo orbits and 0 for repeated-bond ones.
    """
    reference = pseudo_orbit.bond_multiset()
    total = 0
    for partner in partners:
        if partner.bond_multiset() != reference:
            raise ValueError("partner set contains a different bond multiset")
        total += partner.weight_sign
    return Fraction(pseudo_orbit.weight_sign * total, 2**pseudo_orbit.total_bonds)


def diagonal_approximation(
    graph: DirectedGraph, n: int, cap: int = DEFAULT_CAP
) -> Fraction:
    """Equal-weight estimate 2^-n |P^n| over all primitive pseudo orbits of
    length n (repeated bonds included); approaches 1/2 on large graphs."""
    pos = enumerate_pseudo_orbits(graph, n, mode="general", cap=cap)
    return Fraction(len(pos), 2**n)


def pseudo_orbit_record(graph: DirectedGraph, pseudo_orbit: PseudoOrbit) -> dict:
    """JSON-ready record with the classification attached."""
    tag = classify_pseudo_orbit(graph, pseudo_orbit)
    return {
        "orbits": [list(orbit) for orbit in pseudo_orbit.orbits],
        "n": pseudo_orbit.total_bonds,
        "m": pseudo_orbit.orbit_count,
        "N": tag.encounters,
        "class": tag.label,
    }


def write_orbit_dump(
    graph: DirectedGraph, pseudo_orbits: Iterable[PseudoOrbit], stream: IO[str]
) -> int:
    """Write pseudo orbits as JSON lines; returns the number written."""
    count = 0
    for po in pseudo_orbits:
        stream.write(json.dumps(pseudo_orbit_record(graph, po)) + "\n")
        count += 1
    return count
