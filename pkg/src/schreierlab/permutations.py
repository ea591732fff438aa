"""Permutations and finite permutation groups with full element tables.

Groups are stored as exhaustive element tables in a deterministic canonical
order: breadth-first discovery from the identity, following the given
generator order.  At desk scale this is the right trade-off, because every
downstream computation (transversals, subgroup lattices, commutator series,
coset actions) needs fast membership tests and iteration rather than
compact stabilizer-chain machinery.
"""

from __future__ import annotations

import itertools
import operator
from typing import Iterable, Optional, Sequence

from .errors import GroupTooLargeError, NotASubgroupError, SubgroupLimitError

DEFAULT_ORDER_CAP = 100_000
DEFAULT_SUBGROUP_LIMIT = 20_000

# Multiplication tables are materialised for groups up to this order; beyond
# it, products fall back to composing image tuples.
_TABLE_LIMIT = 512


class Permutation:
    """A bijection of {0, ..., n-1}, stored as its tuple of images.

    Products compose left to right: ``(p * q)(x) == q(p(x))``, so that the
    natural action ``x -> x^p`` on points is a right action compatible with
    right cosets throughout the package.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(operator.index(i) for i in images)
        n = len(images)
        if n < 1:
            raise ValueError("a permutation needs degree at least 1")
        seen = [False] * n
        for i in images:
            if not 0 <= i < n or seen[i]:
                raise ValueError(f"images {images!r} are not a bijection of range({n})")
            seen[i] = True
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        # trusted fast path: caller guarantees images is a bijection tuple
        p = cls.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build a permutation from disjoint cycles of 0-based points."""
        images = list(range(degree))
        touched = set()
        for cycle in cycles:
            cycle = tuple(cycle)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if a in touched:
                    raise ValueError(f"point {a} appears in more than one cycle")
                touched.add(a)
                images[a] = b
        return cls(images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError(
                f"degree mismatch: {self.degree} vs {other.degree}"
            )
        oi = other.images
        return Permutation._raw(tuple(oi[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._raw(tuple(inv))

    def __call__(self, point: int) -> int:
        """Image of a point under this permutation."""
        if not 0 <= point < len(self.images):
            raise ValueError(f"point {point} out of range for degree {len(self.images)}")
        return self.images[point]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycle decomposition, each cycle led by its least point."""
        out = []
        seen = [False] * len(self.images)
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cur, cycle = start, []
            while not seen[cur]:
                seen[cur] = True
                cycle.append(cur)
                cur = self.images[cur]
            if len(cycle) > 1 or include_fixed:
                out.append(tuple(cycle))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return f"Permutation.identity({self.degree})"
        text = "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)
        return f"Permutation[{text}]"


class FiniteGroup:
    """A finite permutation group given by its full element table.

    ``elements[0]`` is always the identity.  For groups built by closure the
    element order is the breadth-first discovery order; subgroups carved out
    of a parent keep the parent's relative order.  Both are deterministic,
    which makes transversals and induced multisets reproducible.
    """

    def __init__(self, elements: Sequence[Permutation], generators: Sequence[Permutation]):
        if not elements:
            raise ValueError("a group needs at least the identity element")
        self.elements: tuple[Permutation, ...] = tuple(elements)
        self.degree: int = self.elements[0].degree
        if not self.elements[0].is_identity():
            raise ValueError("elements[0] must be the identity")
        self.generators: tuple[Permutation, ...] = tuple(generators)
        self._index: dict[tuple[int, ...], int] = {
            p.images: i for i, p in enumerate(self.elements)
        }
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate elements in table")
        self._cache: dict = {}

    # -- basic queries ----------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __contains__(self, p: Permutation) -> bool:
        return isinstance(p, Permutation) and p.images in self._index

    def index_of(self, p: Permutation) -> int:
        try:
            return self._index[p.images]
        except KeyError:
            raise ValueError(f"{p!r} is not an element of this group") from None

    def contains_subgroup(self, other: "FiniteGroup") -> bool:
        if other.degree != self.degree or self.order % other.order != 0:
            return False
        return all(p.images in self._index for p in other.elements)

    def element_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self._index)

    def same_elements(self, other: "FiniteGroup") -> bool:
        return self.element_set() == other.element_set()

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, degree={self.degree})"

    # -- index arithmetic --------------------------------------------------

    def _table(self) -> Optional[list[list[int]]]:
        if self.order > _TABLE_LIMIT:
            return None
        table = self._cache.get("table")
        if table is None:
            idx = self._index
            table = [
                [idx[(p * q).images] for q in self.elements] for p in self.elements
            ]
            self._cache["table"] = table
        return table

    def mult(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j]."""
        table = self._table()
        if table is not None:
            return table[i][j]
        return self._index[(self.elements[i] * self.elements[j]).images]

    def inverse_indices(self) -> tuple[int, ...]:
        inv = self._cache.get("inverse")
        if inv is None:
            inv = tuple(self._index[p.inverse().images] for p in self.elements)
            self._cache["inverse"] = inv
        return inv

    def inv(self, i: int) -> int:
        return self.inverse_indices()[i]

    def commutator(self, i: int, j: int) -> int:
        """Index of [x, y] = x^-1 y^-1 x y for element indices i, j."""
        inv = self.inverse_indices()
        return self.mult(self.mult(inv[i], inv[j]), self.mult(i, j))

    # -- derived structure -------------------------------------------------

    def is_abelian(self) -> bool:
        flag = self._cache.get("abelian")
        if flag is None:
            flag = all(
                (p * q).images == (q * p).images
                for p, q in itertools.combinations(self.generators, 2)
            )
            self._cache["abelian"] = flag
        return flag

    def is_transitive(self) -> bool:
        """Whether the group is transitive on its natural points."""
        seen = {0}
        frontier = [0]
        while frontier:
            point = frontier.pop()
            for g in self.generators:
                image = g.images[point]
                if image not in seen:
                    seen.add(image)
                    frontier.append(image)
        return len(seen) == self.degree

    def self_inverse_indices(self) -> tuple[int, ...]:
        """Indices of elements equal to their own inverse (identity included)."""
        out = self._cache.get("self_inverse")
        if out is None:
            inv = self.inverse_indices()
            out = tuple(i for i in range(self.order) if inv[i] == i)
            self._cache["self_inverse"] = out
        return out

    # -- subgroup construction ----------------------------------------------

    def _closure(self, seed: Iterable[int]) -> frozenset[int]:
        """Closure of element indices under multiplication (subgroup)."""
        gens = sorted(set(seed) - {0})
        members = {0}
        members.update(gens)
        frontier = list(members)
        while frontier:
            i = frontier.pop()
            for g in gens:
                j = self.mult(i, g)
                if j not in members:
                    members.add(j)
                    frontier.append(j)
        return frozenset(members)

    def _normal_closure(self, seed: Iterable[int], conjugators: Sequence[int]) -> frozenset[int]:
        """Smallest subgroup containing seed and stable under the conjugators."""
        inv = self.inverse_indices()
        members = self._closure(seed)
        while True:
            extra = set()
            for i in members:
                for g in conjugators:
                    c = self.mult(self.mult(inv[g], i), g)
                    if c not in members:
                        extra.add(c)
            if not extra:
                return members
            members = self._closure(set(members) | extra)

    def subgroup_from_indices(
        self, indices: Iterable[int], generator_indices: Optional[Sequence[int]] = None
    ) -> "FiniteGroup":
        """Subgroup on the given element indices; order inherited from self."""
        idx = sorted(set(indices))
        if not idx or idx[0] != 0:
            raise ValueError("a subgroup must contain the identity (index 0)")
        elements = [self.elements[i] for i in idx]
        if generator_indices:
            gens = [self.elements[i] for i in generator_indices]
        elif len(idx) == 1:
            gens = [self.identity]
        else:
            gens = [self.elements[i] for i in idx if i != 0]
        return FiniteGroup(elements, gens)

    def subgroup_generated(self, perms: Iterable[Permutation]) -> "FiniteGroup":
        """Subgroup of self generated by the given elements."""
        gen_idx = [self.index_of(p) for p in perms]
        return self.subgroup_from_indices(self._closure(gen_idx), gen_idx or None)

    def trivial_subgroup(self) -> "FiniteGroup":
        return self.subgroup_from_indices([0])

    def point_stabilizer(self, point: int) -> "FiniteGroup":
        indices = [i for i, p in enumerate(self.elements) if p.images[point] == point]
        return self.subgroup_from_indices(indices)

    def conjugate_subgroup(self, sub: "FiniteGroup", g: Permutation) -> "FiniteGroup":
        """The subgroup g^-1 * sub * g inside self."""
        gi = self.index_of(g)
        inv = self.inverse_indices()
        members = [self.mult(self.mult(inv[gi], self.index_of(p)), gi) for p in sub.elements]
        return self.subgroup_from_indices(members)


def group_from_generators(
    generators: Sequence[Permutation], cap: int = DEFAULT_ORDER_CAP
) -> FiniteGroup:
    """Breadth-first closure of the generators, identity first.

    Raises GroupTooLargeError once more than ``cap`` elements are found;
    the enumeration never truncates silently.
    """
    if not generators:
        raise ValueError("need at least one generator")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise ValueError("generators must share one degree")
    identity = Permutation.identity(degree)
    elements = [identity]
    seen = {identity.images}
    cursor = 0
    while cursor < len(elements):
        current = elements[cursor]
        cursor += 1
        for g in generators:
            nxt = current * g
            if nxt.images not in seen:
                if len(elements) >= cap:
                    raise GroupTooLargeError(
                        f"group exceeds the configured cap of {cap} elements"
                    )
                seen.add(nxt.images)
                elements.append(nxt)
    return FiniteGroup(elements, generators)


class Transversal:
    """Right-coset representatives of a subgroup, with the bar map.

    ``reps[k]`` is the representative of the k-th coset in discovery order;
    ``rep_of[i]`` gives, for the parent element with index ``i``, the parent
    index of its coset representative, so ``x * rep_of(x)^-1`` lies in the
    subgroup.  ``slot_of[i]`` gives the coset position instead.
    """

    def __init__(self, parent: FiniteGroup, subgroup: FiniteGroup):
        require_subgroup(parent, subgroup)
        self.parent = parent
        self.subgroup = subgroup
        sub_idx = [parent.index_of(p) for p in subgroup.elements]
        rep_of = [-1] * parent.order
        slot_of = [-1] * parent.order
        reps: list[int] = []
        for x in range(parent.order):
            if rep_of[x] >= 0:
                continue
            slot = len(reps)
            reps.append(x)
            for h in sub_idx:
                y = parent.mult(h, x)
                rep_of[y] = x
                slot_of[y] = slot
        self.rep_indices: tuple[int, ...] = tuple(reps)
        self.rep_of: tuple[int, ...] = tuple(rep_of)
        self.slot_of: tuple[int, ...] = tuple(slot_of)
        self.reps: tuple[Permutation, ...] = tuple(parent.elements[i] for i in reps)

    @property
    def coset_count(self) -> int:
        return len(self.rep_indices)

    @classmethod
    def from_reps(
        cls, parent: FiniteGroup, subgroup: FiniteGroup, reps: Sequence[Permutation]
    ) -> "Transversal":
        """Transversal with caller-chosen representatives, one per coset."""
        base = cls(parent, subgroup)
        if len(reps) != base.coset_count:
            raise ValueError(
                f"expected {base.coset_count} representatives, got {len(reps)}"
            )
        chosen = [-1] * base.coset_count
        for p in reps:
            slot = base.slot_of[parent.index_of(p)]
            if chosen[slot] >= 0:
                raise ValueError("two representatives lie in the same coset")
            chosen[slot] = parent.index_of(p)
        obj = cls.__new__(cls)
        obj.parent = parent
        obj.subgroup = subgroup
        obj.rep_indices = tuple(chosen)
        obj.rep_of = tuple(chosen[base.slot_of[x]] for x in range(parent.order))
        obj.slot_of = base.slot_of
        obj.reps = tuple(parent.elements[i] for i in obj.rep_indices)
        return obj


def require_subgroup(parent: FiniteGroup, subgroup: FiniteGroup) -> None:
    if not parent.contains_subgroup(subgroup):
        raise NotASubgroupError(
            f"group of order {subgroup.order} is not a subgroup of the parent"
        )


def right_transversal(parent: FiniteGroup, subgroup: FiniteGroup) -> Transversal:
    """Deterministic right transversal: first-discovered member of each coset."""
    return Transversal(parent, subgroup)


class CosetAction:
    """The right action of a group on the right cosets of a subgroup."""

    def __init__(self, group: FiniteGroup, stabilizer: FiniteGroup):
        self.group = group
        self.stabilizer = stabilizer
        self.transversal = right_transversal(group, stabilizer)
        self.n_points = self.transversal.coset_count
        self.base_point = self.transversal.slot_of[0]

    def permutation_of_index(self, element_index: int) -> Permutation:
        g = self.group
        t = self.transversal
        return Permutation._raw(
            tuple(t.slot_of[g.mult(rep, element_index)] for rep in t.rep_indices)
        )

    def permutation_of(self, p: Permutation) -> Permutation:
        return self.permutation_of_index(self.group.index_of(p))


def derived_subgroup(group: FiniteGroup) -> FiniteGroup:
    """Commutator subgroup: normal closure of generator commutators."""
    cached = group._cache.get("derived")
    if cached is not None:
        return cached
    gen_idx = sorted({group.index_of(g) for g in group.generators})
    seed = {
        group.commutator(i, j) for i in gen_idx for j in gen_idx if i != j
    }
    members = group._normal_closure(seed or {0}, gen_idx)
    result = group.subgroup_from_indices(members)
    group._cache["derived"] = result
    return result


def lower_central_series(
    group: FiniteGroup,
) -> tuple[list[FiniteGroup], Optional[int]]:
    """Terms of the lower central series and the nilpotency class.

    The returned class is None when the series stabilizes above the trivial
    group, and 0 for the trivial group itself.
    """
    cached = group._cache.get("lcs")
    if cached is not None:
        return cached
    gen_idx = sorted({group.index_of(g) for g in group.generators})
    terms = [group]
    current = frozenset(range(group.order))
    while True:
        seed = {group.commutator(x, g) for x in current for g in gen_idx}
        nxt = group._normal_closure(seed or {0}, gen_idx)
        if nxt == current:
            result = (terms, 0 if len(current) == 1 else None)
            break
        terms.append(group.subgroup_from_indices(nxt))
        if len(nxt) == 1:
            result = (terms, len(terms) - 1)
            break
        current = nxt
    group._cache["lcs"] = result
    return result


def nilpotency_class(group: FiniteGroup) -> Optional[int]:
    return lower_central_series(group)[1]


def normal_core(group: FiniteGroup, subgroup: FiniteGroup) -> FiniteGroup:
    """Largest normal subgroup of the parent contained in the subgroup."""
    require_subgroup(group, subgroup)
    inv = group.inverse_indices()
    core = set(group.index_of(p) for p in subgroup.elements)
    transversal = right_transversal(group, subgroup)
    for t in transversal.rep_indices:
        conj = {group.mult(group.mult(inv[t], y), t) for y in core}
        core &= conj
        if len(core) == 1:
            break
    return group.subgroup_from_indices(core)


def faithful_reduction(
    group: FiniteGroup, stabilizer: FiniteGroup, cap: int = DEFAULT_ORDER_CAP
) -> tuple[FiniteGroup, int]:
    """Permutation image of the action on right cosets of the stabilizer.

    Returns the image group (degree = subgroup index) together with the
    base point, the coset of the stabilizer itself.  The image is faithful:
    its order is the parent order divided by the normal core of the
    stabilizer.
    """
    action = CosetAction(group, stabilizer)
    images = [action.permutation_of(g) for g in group.generators]
    image_group = group_from_generators(images, cap=cap)
    return image_group, action.base_point


def intermediate_subgroups(
    group: FiniteGroup,
    floor: FiniteGroup,
    limit: int = DEFAULT_SUBGROUP_LIMIT,
) -> list[FiniteGroup]:
    """All subgroups H with floor <= H <= group.

    Computed as the fixed point of adjoining one element at a time, starting
    from the floor.  Results are sorted canonically by (order, element
    indices); the enumeration fails explicitly when it exceeds ``limit``.
    """
    require_subgroup(group, floor)
    key = ("interval", frozenset(group.index_of(p) for p in floor.elements))
    cached = group._cache.get(key)
    if cached is not None:
        if len(cached) > limit:
            raise SubgroupLimitError(
                f"more than {limit} subgroups between the given groups"
            )
        return cached

    floor_idx = frozenset(group.index_of(p) for p in floor.elements)
    floor_gens = tuple(sorted(floor_idx - {0}))
    known: dict[frozenset[int], tuple[int, ...]] = {floor_idx: floor_gens}
    frontier = [(floor_idx, floor_gens)]
    while frontier:
        members, gens = frontier.pop()
        for g in range(group.order):
            if g in members:
                continue
            new_gens = gens + (g,)
            grown = group._closure(new_gens)
            if grown not in known:
                if len(known) >= limit:
                    raise SubgroupLimitError(
                        f"more than {limit} subgroups between the given groups"
                    )
                known[grown] = new_gens
                frontier.append((grown, new_gens))
    ordered = sorted(known, key=lambda s: (len(s), tuple(sorted(s))))
    result = [
        group.subgroup_from_indices(members, generator_indices=known[members] or None)
        for members in ordered
    ]
    group._cache[key] = result
    return result


def index2_overgroups(group: FiniteGroup, floor: FiniteGroup) -> list[FiniteGroup]:
    """All index-2 subgroups of the group that contain the floor.

    Index-2 subgroups are exactly the preimages of hyperplanes in the
    elementary abelian quotient by K = <commutators, squares>; there are
    2^r - 1 of them for a quotient of rank r.
    """
    require_subgroup(group, floor)
    hyperplanes = group._cache.get("index2")
    if hyperplanes is None:
        derived = derived_subgroup(group)
        seed = {group.index_of(p) for p in derived.elements}
        seed.update(group.mult(i, i) for i in range(group.order))
        kernel = group._closure(seed)

        slot_of = [-1] * group.order
        cosets: list[int] = []
        for x in range(group.order):
            if slot_of[x] >= 0:
                continue
            slot = len(cosets)
            cosets.append(x)
            for k in kernel:
                slot_of[group.mult(k, x)] = slot

        # grow an F2 basis for the quotient, labelling each coset with a bitmask
        vec: dict[int, int] = {slot_of[0]: 0}
        rank = 0
        for slot, rep in enumerate(cosets):
            if slot in vec:
                continue
            bit = 1 << rank
            rank += 1
            for other_slot, value in list(vec.items()):
                product = slot_of[group.mult(rep, cosets[other_slot])]
                vec[product] = bit | value
        members_by_slot = [[] for _ in cosets]
        for x in range(group.order):
            members_by_slot[slot_of[x]].append(x)

        hyperplanes = []
        for mask in range(1, 1 << rank):
            indices: list[int] = []
            for slot in range(len(cosets)):
                if bin(vec[slot] & mask).count("1") % 2 == 0:
                    indices.extend(members_by_slot[slot])
            hyperplanes.append(frozenset(indices))
        group._cache["index2"] = hyperplanes

    floor_idx = {group.index_of(p) for p in floor.elements}
    return [
        group.subgroup_from_indices(h)
        for h in hyperplanes
        if floor_idx <= h
    ]
