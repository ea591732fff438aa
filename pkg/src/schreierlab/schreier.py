"""Symmetric connection multisets and Schreier graphs.

The walk matrix keeps loops and multiple edges: entry (w, w') counts the
connection elements moving w to w', with multiplicity, divided by the total
multiset size.  Collapsing multiplicities is done only inside the explicit
counterexample search, because the gap monotonicity of induced multisets is
false for plain sets.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import DisconnectedGraphError, SearchSpaceError
from .permutations import (
    CosetAction,
    FiniteGroup,
    Permutation,
    Transversal,
    index2_overgroups,
    require_subgroup,
    right_transversal,
)


class SymmetricMultiset:
    """A multiset of group elements, inverse-closed with multiplicities.

    Entries are stored canonically (sorted by image tuple), so two multisets
    are equal exactly when they agree element by element with multiplicity.
    """

    def __init__(self, entries: Iterable[tuple[Permutation, int]]):
        counts: Counter = Counter()
        for p, mult in entries:
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            counts[p] += mult
        if not counts:
            raise ValueError("a connection multiset cannot be empty")
        degree = next(iter(counts)).degree
        if any(p.degree != degree for p in counts):
            raise ValueError("all multiset elements must share one degree")
        for p, mult in counts.items():
            if counts[p.inverse()] != mult:
                raise ValueError(
                    f"multiset is not symmetric at {p!r}: "
                    f"multiplicity {mult} vs {counts[p.inverse()]} for the inverse"
                )
        self.entries: tuple[tuple[Permutation, int], ...] = tuple(
            sorted(counts.items(), key=lambda item: item[0].images)
        )
        self.degree = degree
        self.size = sum(counts.values())

    @classmethod
    def from_elements(cls, perms: Iterable[Permutation]) -> "SymmetricMultiset":
        return cls((p, 1) for p in perms)

    def support(self) -> tuple[Permutation, ...]:
        return tuple(p for p, _ in self.entries)

    def inverse(self) -> "SymmetricMultiset":
        return SymmetricMultiset((p.inverse(), m) for p, m in self.entries)

    def as_set(self) -> "SymmetricMultiset":
        """The same support with every multiplicity collapsed to 1."""
        return SymmetricMultiset((p, 1) for p, _ in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetricMultiset) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"SymmetricMultiset(size={self.size}, support={len(self.entries)})"


def symmetrize(elements: Iterable) -> SymmetricMultiset:
    """Return S joined with S^-1, sizes adding up.

    Accepts a plain sequence of permutations (repeats allowed) or
    (permutation, multiplicity) pairs.  Every element contributes itself and
    its inverse, so an involution appears twice.
    """
    counts: Counter = Counter()
    for item in elements:
        if isinstance(item, Permutation):
            p, mult = item, 1
        else:
            p, mult = item
        counts[p] += mult
        counts[p.inverse()] += mult
    if not counts:
        raise ValueError("cannot symmetrize an empty multiset")
    return SymmetricMultiset(counts.items())


@dataclass
class SchreierGraph:
    """A Schreier graph, carried by its averaging-operator matrix.

    ``walk`` is row-stochastic and symmetric; ``counts`` holds the integer
    edge multiplicities so that symmetry is exact.  ``degree`` is the total
    multiset size; loops sit on the diagonal.
    """

    vertex_count: int
    degree: int
    walk: np.ndarray
    counts: np.ndarray
    group: FiniteGroup
    stabilizer: FiniteGroup
    multiset: SymmetricMultiset

    def __post_init__(self):
        if not np.array_equal(self.counts, self.counts.T):
            raise ValueError("edge counts are not symmetric")
        row_sums = self.counts.sum(axis=1)
        if not np.all(row_sums == self.degree):
            raise ValueError("every vertex must carry |S| edge endpoints")


def schreier_graph(
    group: FiniteGroup, stabilizer: FiniteGroup, multiset: SymmetricMultiset
) -> SchreierGraph:
    """Graph of the action on right cosets of the stabilizer.

    The Cayley graph is the special case of a trivial stabilizer.
    """
    require_subgroup(group, stabilizer)
    for p in multiset.support():
        if p not in group:
            raise ValueError(f"connection element {p!r} lies outside the group")
    action = CosetAction(group, stabilizer)
    n = action.n_points
    counts = np.zeros((n, n), dtype=np.int64)
    rows = np.arange(n)
    for p, mult in multiset.entries:
        images = np.fromiter(
            action.permutation_of(p).images, dtype=np.int64, count=n
        )
        counts[rows, images] += mult
    walk = counts / multiset.size
    return SchreierGraph(
        vertex_count=n,
        degree=multiset.size,
        walk=walk,
        counts=counts,
        group=group,
        stabilizer=stabilizer,
        multiset=multiset,
    )


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    bipartite: bool
    classes: Optional[tuple[int, ...]]


def connectivity_and_bipartiteness(graph: SchreierGraph) -> ConnectivityReport:
    """BFS components and 2-colorability.

    The graph counts as bipartite when every component admits a 2-coloring
    with all non-loop edges crossing; any loop poisons its component, being
    an odd closed walk of length one.
    """
    n = graph.vertex_count
    counts = graph.counts
    neighbors = [np.nonzero(counts[v])[0] for v in range(n)]
    color = [-1] * n
    components = 0
    bipartite = True
    for start in range(n):
        if color[start] >= 0:
            continue
        components += 1
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            if counts[v, v] > 0:
                bipartite = False
            for w in neighbors[v]:
                w = int(w)
                if w == v:
                    continue
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    bipartite = False
    return ConnectivityReport(
        connected=(components == 1),
        bipartite=bipartite,
        classes=tuple(color) if bipartite else None,
    )


@dataclass(frozen=True)
class BipartiteCriterion:
    criterion_holds: bool
    witness: Optional[FiniteGroup]


def bipartite_criterion(
    group: FiniteGroup, stabilizer: FiniteGroup, multiset: SymmetricMultiset
) -> BipartiteCriterion:
    """Index-2 avoidance test for bipartiteness of connected Schreier graphs.

    Holds exactly when some index-2 subgroup containing the stabilizer is
    disjoint from the connection multiset.  Avoidance always forces the
    graph bipartite.  The converse is an equivalence for the regular action
    (trivial stabilizer); with a nontrivial stabilizer a connected coset
    graph can be bipartite without any avoiding index-2 subgroup (smallest
    example: the degree-4 alternating group on cosets of a point stabilizer
    with two double transpositions, a 4-cycle).
    """
    graph = schreier_graph(group, stabilizer, multiset)
    if not connectivity_and_bipartiteness(graph).connected:
        raise DisconnectedGraphError(
            "the index-2 avoidance criterion is stated for connected graphs only"
        )
    support = multiset.support()
    for candidate in index2_overgroups(group, stabilizer):
        if not any(p in candidate for p in support):
            return BipartiteCriterion(criterion_holds=True, witness=candidate)
    return BipartiteCriterion(criterion_holds=False, witness=None)


def rs_induce(
    group: FiniteGroup,
    subgroup: FiniteGroup,
    transversal: Transversal,
    multiset: SymmetricMultiset,
) -> SymmetricMultiset:
    """Rewrite a connection multiset of the group into one of the subgroup.

    Every pair (t, s) of a coset representative and a connection element
    contributes t s (bar(t s))^-1, where bar maps an element to its coset
    representative.  Sizes multiply: the result has |G:H| * |S| members with
    multiplicity, all inside the subgroup, and stays symmetric.
    """
    require_subgroup(group, subgroup)
    if transversal.parent is not group or transversal.subgroup is not subgroup:
        raise ValueError("transversal does not match the given groups")
    inv = group.inverse_indices()
    counts: Counter = Counter()
    for t in transversal.rep_indices:
        for p, mult in multiset.entries:
            ts = group.mult(t, group.index_of(p))
            rewritten = group.mult(ts, inv[transversal.rep_of[ts]])
            counts[rewritten] += mult
    entries = []
    for idx, mult in counts.items():
        element = group.elements[idx]
        if element not in subgroup:
            raise AssertionError("rewritten element escaped the subgroup")
        entries.append((element, mult))
    return SymmetricMultiset(entries)


@dataclass(frozen=True)
class DedupWitness:
    """A connection set whose induced multiset loses its gap when collapsed."""

    connection_set: SymmetricMultiset
    transversal_reps: tuple[Permutation, ...]
    parent_gap: float
    induced_multiset_gap: float
    induced_set_gap: float


@dataclass(frozen=True)
class DedupSearchResult:
    witnesses: tuple[DedupWitness, ...]
    multiset_violations: tuple[DedupWitness, ...]
    sets_examined: int
    connected_count: int
    used_default_transversal: bool


def _symmetric_subsets(group: FiniteGroup) -> Iterable[tuple[int, ...]]:
    inv = group.inverse_indices()
    classes = sorted({tuple(sorted({i, inv[i]})) for i in range(group.order)})
    for r in range(1, len(classes) + 1):
        for combo in itertools.combinations(classes, r):
            yield tuple(sorted(set(itertools.chain.from_iterable(combo))))


def _all_transversals(
    group: FiniteGroup, subgroup: FiniteGroup, cap: int
) -> Iterable[Transversal]:
    base = right_transversal(group, subgroup)
    slots: list[list[Permutation]] = [[] for _ in range(base.coset_count)]
    for x in range(group.order):
        slots[base.slot_of[x]].append(group.elements[x])
    total = 1
    for members in slots:
        total *= len(members)
        if total > cap:
            raise SearchSpaceError(
                f"more than {cap} transversals to enumerate; raise the cap"
            )
    for choice in itertools.product(*slots):
        yield Transversal.from_reps(group, subgroup, choice)


def dedup_counterexample_search(
    group: FiniteGroup,
    subgroup: FiniteGroup,
    stabilizer: FiniteGroup,
    gap_margin: float = 1e-9,
    class_cap: int = 22,
    transversal_cap: int = 10_000,
) -> DedupSearchResult:
    """Exhaustive search for connection sets that lose expansion when
    the induced multiset is collapsed to a plain set.

    Enumerates all symmetric subsets S of the group with a connected
    Schreier graph, rewrites each into the subgroup, and reports every S
    whose deduplicated rewriting has a strictly smaller gap.  The rewriting
    with multiplicities is also checked; it can never lose gap, and any such
    violation is reported separately as an error signal.

    Tries the deterministic transversal first and falls back to scanning
    all transversals when no witness shows up.
    """
    from .spectral import spectral_summary

    require_subgroup(group, subgroup)
    require_subgroup(subgroup, stabilizer)
    inv = group.inverse_indices()
    classes = {tuple(sorted({i, inv[i]})) for i in range(group.order)}
    if len(classes) > class_cap:
        raise SearchSpaceError(
            f"{len(classes)} inverse classes exceed the cap of {class_cap}"
        )

    connected_sets: list[tuple[SymmetricMultiset, float]] = []
    examined = 0
    for indices in _symmetric_subsets(group):
        examined += 1
        multiset = SymmetricMultiset.from_elements(
            group.elements[i] for i in indices
        )
        graph = schreier_graph(group, stabilizer, multiset)
        if not connectivity_and_bipartiteness(graph).connected:
            continue
        connected_sets.append((multiset, spectral_summary(graph).gap))

    def scan(transversal: Transversal) -> tuple[list[DedupWitness], list[DedupWitness]]:
        witnesses = []
        bad_multisets = []
        for multiset, parent_gap in connected_sets:
            induced = rs_induce(group, subgroup, transversal, multiset)
            gap_multi = spectral_summary(
                schreier_graph(subgroup, stabilizer, induced)
            ).gap
            gap_dedup = spectral_summary(
                schreier_graph(subgroup, stabilizer, induced.as_set())
            ).gap
            record = DedupWitness(
                connection_set=multiset,
                transversal_reps=transversal.reps,
                parent_gap=parent_gap,
                induced_multiset_gap=gap_multi,
                induced_set_gap=gap_dedup,
            )
            if gap_dedup < parent_gap - gap_margin:
                witnesses.append(record)
            if gap_multi < parent_gap - gap_margin:
                bad_multisets.append(record)
        return witnesses, bad_multisets

    default = right_transversal(group, subgroup)
    witnesses, bad_multisets = scan(default)
    if witnesses:
        return DedupSearchResult(
            witnesses=tuple(witnesses),
            multiset_violations=tuple(bad_multisets),
            sets_examined=examined,
            connected_count=len(connected_sets),
            used_default_transversal=True,
        )
    for transversal in _all_transversals(group, subgroup, transversal_cap):
        witnesses, extra_bad = scan(transversal)
        bad_multisets.extend(extra_bad)
        if witnesses:
            return DedupSearchResult(
                witnesses=tuple(witnesses),
                multiset_violations=tuple(bad_multisets),
                sets_examined=examined,
                connected_count=len(connected_sets),
                used_default_transversal=False,
            )
    return DedupSearchResult(
        witnesses=(),
        multiset_violations=tuple(bad_multisets),
        sets_examined=examined,
        connected_count=len(connected_sets),
        used_default_transversal=True,
    )
