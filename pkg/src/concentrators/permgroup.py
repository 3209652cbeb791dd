"""Permutations on finite point sets and fully enumerated permutation groups.

Everything is 0-based: a permutation of degree n is a bijection of
{0, ..., n-1} stored as its image tuple.  Groups are enumerated explicitly by
breadth-first closure, which keeps element order deterministic and lets the
rest of the library address elements by index.  Randomness is always drawn
from numpy's PCG64 seeded through ``SeedSequence`` so that every sampled
multiset is reproducible from its integer seed words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CLOSURE_CAP = 10**6


class GroupError(ValueError):
    """A group-theoretic precondition failed."""


@dataclass(frozen=True)
class Permutation:
    """A permutation of {0, ..., degree-1} stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        seen = [False] * n
        for i in images:
            if not 0 <= i < n or seen[i]:
                raise GroupError(f"images {images!r} are not a bijection on 0..{n - 1}")
            seen[i] = True

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each rotated to start at its least point."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            p = self.images[start]
            while p != start:
                cyc.append(p)
                seen[p] = True
                p = self.images[p]
            out.append(tuple(cyc))
        return tuple(out)


def identity_perm(degree: int) -> Permutation:
    return Permutation(tuple(range(degree)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply q first, then p: the result maps i to p(q(i))."""
    if p.degree != q.degree:
        raise GroupError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(tuple(p.images[j] for j in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, j in enumerate(p.images):
        inv[j] = i
    return Permutation(tuple(inv))


def from_cycles(cycles: Sequence[Sequence[int]], degree: int) -> Permutation:
    """Build a permutation from disjoint cycles; unmentioned points are fixed."""
    images = list(range(degree))
    touched = set()
    for cyc in cycles:
        for i, point in enumerate(cyc):
            if point in touched:
                raise GroupError(f"point {point} repeated across cycles")
            touched.add(point)
            images[point] = cyc[(i + 1) % len(cyc)]
    return Permutation(tuple(images))


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite permutation group with a fixed, fully enumerated element order."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    index: dict = field(repr=False)
    name: str = ""

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self.index

    def index_of(self, p: Permutation) -> int:
        try:
            return self.index[p.images]
        except KeyError:
            raise GroupError(f"{p.images!r} is not an element of {self.label()}") from None

    def identity(self) -> Permutation:
        return self.elements[0]

    def label(self) -> str:
        return self.name or f"group(deg={self.degree},order={len(self.elements)})"


def closure(
    degree: int,
    generators: Sequence[Permutation],
    cap: int = DEFAULT_CLOSURE_CAP,
    name: str = "",
) -> FiniteGroup:
    """Enumerate the group generated by ``generators`` by breadth-first search.

    The element order is deterministic: the identity first, then BFS levels,
    expanding each frontier element by left-multiplying with the generators in
    the order given.  Enumeration refuses to grow past ``cap`` elements.
    """
    for g in generators:
        if g.degree != degree:
            raise GroupError(f"generator degree {g.degree} != {degree}")
    ident = tuple(range(degree))
    index = {ident: 0}
    elements = [ident]
    gen_images = [g.images for g in generators]
    frontier = [ident]
    while frontier:
        nxt = []
        for cur in frontier:
            for gen in gen_images:
                cand = tuple(gen[j] for j in cur)
                if cand not in index:
                    if len(elements) >= cap:
                        raise GroupError(
                            f"closure exceeded the enumeration cap of {cap} elements; "
                            "raise `cap` explicitly if the group really is this large"
                        )
                    index[cand] = len(elements)
                    elements.append(cand)
                    nxt.append(cand)
        frontier = nxt
    perms = tuple(Permutation(t) for t in elements)
    return FiniteGroup(
        degree=degree,
        generators=tuple(generators),
        elements=perms,
        index={p.images: i for i, p in enumerate(perms)},
        name=name,
    )


def is_subgroup(G: FiniteGroup, H: FiniteGroup) -> bool:
    """True when every element of H is an element of G (H is a group already)."""
    if H.degree != G.degree or len(H) > len(G):
        return False
    return all(h.images in G.index for h in H.elements)


@dataclass(frozen=True, eq=False)
class CosetPartition:
    """Right cosets Hg of a subgroup, indexed by their least-element representative."""

    parent: FiniteGroup
    subgroup: FiniteGroup
    representatives: tuple[Permutation, ...]
    coset_of: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.representatives)


def right_cosets(G: FiniteGroup, H: FiniteGroup) -> CosetPartition:
    """Partition G into right cosets Hg; representative = least element index."""
    if not is_subgroup(G, H):
        raise GroupError(f"{H.label()} is not a subgroup of {G.label()}")
    coset_of = [-1] * len(G)
    reps: list[Permutation] = []
    cosets: list[tuple[int, ...]] = []
    for i, g in enumerate(G.elements):
        if coset_of[i] >= 0:
            continue
        members = sorted(G.index_of(compose(h, g)) for h in H.elements)
        c = len(reps)
        for m in members:
            coset_of[m] = c
        reps.append(G.elements[members[0]])
        cosets.append(tuple(members))
    return CosetPartition(
        parent=G,
        subgroup=H,
        representatives=tuple(reps),
        coset_of=tuple(coset_of),
        cosets=tuple(cosets),
    )


def conjugacy_classes(G: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """Conjugacy classes as sorted index tuples, ordered by least member."""
    assigned = [False] * len(G)
    gen_invs = [(g, inverse(g)) for g in G.generators]
    classes = []
    for i in range(len(G)):
        if assigned[i]:
            continue
        orbit = {i}
        frontier = [i]
        assigned[i] = True
        while frontier:
            j = frontier.pop()
            x = G.elements[j]
            for g, ginv in gen_invs:
                k = G.index_of(compose(compose(g, x), ginv))
                if not assigned[k]:
                    assigned[k] = True
                    orbit.add(k)
                    frontier.append(k)
        classes.append(tuple(sorted(orbit)))
    return tuple(classes)


def orbit_of_set(
    generators: Sequence[Permutation], seed_set: Iterable[int]
) -> tuple[tuple[int, ...], ...]:
    """BFS orbit of a point set under elementwise generator action, sorted."""
    start = tuple(sorted(set(int(x) for x in seed_set)))
    for g in generators:
        for x in start:
            if not 0 <= x < g.degree:
                raise GroupError(f"seed point {x} outside 0..{g.degree - 1}")
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for cur in frontier:
            for g in generators:
                image = tuple(sorted(g.images[x] for x in cur))
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    return tuple(sorted(seen))


def seeded_rng(*words: int) -> np.random.Generator:
    """The library-wide PRNG: PCG64 keyed by SeedSequence over integer words.

    All Monte Carlo code derives per-trial generators as
    ``seeded_rng(seed, trial_index)``, so serial and parallel runs agree.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(words))))


def sample_multiset(G: FiniteGroup, k: int, seed: int) -> tuple[Permutation, ...]:
    """k independent uniform draws (with replacement) from G's element list."""
    if k < 1:
        raise GroupError(f"need k >= 1 draws, got {k}")
    rng = seeded_rng(seed)
    picks = rng.integers(0, len(G), size=k)
    return tuple(G.elements[int(i)] for i in picks)


# -- standard construction helpers -------------------------------------------

def trivial_group(degree: int) -> FiniteGroup:
    return closure(degree, [], name=f"1(deg={degree})")


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n acting by rotation on n points."""
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    if n == 1:
        return closure(1, [], name="Z1")
    rot = Permutation(tuple((i + 1) % n for i in range(n)))
    return closure(n, [rot], name=f"Z{n}")


def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("symmetric group needs n >= 1")
    if n == 1:
        return closure(1, [], name="S1")
    gens = [from_cycles([(0, 1)], n)]
    if n > 2:
        gens.append(Permutation(tuple((i + 1) % n for i in range(n))))
    return closure(n, gens, name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    if n < 3:
        return closure(max(n, 1), [], name=f"A{n}")
    gens = [from_cycles([(0, 1, 2)], n)]
    if n > 3:
        if n % 2 == 1:
            gens.append(Permutation(tuple((i + 1) % n for i in range(n))))
        else:
            gens.append(from_cycles([tuple(range(1, n))], n))
    return closure(n, gens, name=f"A{n}")


# Classical generating set for the sharply 5-transitive group on 12 points,
# shipped 0-based.  The first three generators fix {9, 10, 11} and restrict to
# the sharply 2-transitive group of order 72 on the 3x3 grid {0..8} (one grid
# translation plus two quaternion rotations); each later generator extends the
# chain by one point, through orders 720 and 7920 to 95040.  The orbit of
# MATHIEU12_BASE_BLOCK under the full group is the block set of the Steiner
# system S(5, 6, 12).
MATHIEU12_GENERATORS: tuple[Permutation, ...] = (
    from_cycles([(0, 1, 2), (3, 4, 5), (6, 7, 8)], 12),
    from_cycles([(1, 3, 2, 6), (4, 5, 8, 7)], 12),
    from_cycles([(1, 4, 2, 8), (3, 7, 6, 5)], 12),
    from_cycles([(0, 9), (3, 4), (5, 7), (6, 8)], 12),
    from_cycles([(9, 10), (3, 6), (4, 7), (5, 8)], 12),
    from_cycles([(10, 11), (3, 8), (4, 6), (5, 7)], 12),
)

MATHIEU12_BASE_BLOCK: tuple[int, ...] = (0, 1, 2, 9, 10, 11)


def mathieu12_group(cap: int = DEFAULT_CLOSURE_CAP) -> FiniteGroup:
    """Enumerate all 95040 elements of the 5-transitive group on 12 points."""
    return closure(12, MATHIEU12_GENERATORS, cap=cap, name="M12")
