"""Abstract simplicial complexes: nerves, joins, and reduced mod-2 homology.

The fixed-point machinery needs three things from complexes: the nerve
of a family of sets, the join (whose realisation is a sphere when the
factors are simplex boundaries), and a sphere detector.  Homology is
computed over the two-element field by boundary-matrix ranks, which is
enough to recognise the sphere obstruction at the sizes that occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Hashable, Iterable, Optional, Sequence


Vertex = Hashable


class SimplicialComplex:
    """Finite abstract simplicial complex, stored by its maximal faces.

    Simplices are nonempty frozensets of vertex labels; the empty face is
    implicit.  ``vertex_labels`` may list labels that appear in no
    simplex (isolated phantom vertices of a nerve whose set was empty).
    """

    def __init__(self, maximal_faces: Iterable[Iterable[Vertex]], vertex_labels=None):
        maxs: list[frozenset] = []
        for face in maximal_faces:
            fs = frozenset(face)
            if fs:
                maxs.append(fs)
        # drop faces contained in others
        maxs.sort(key=len, reverse=True)
        pruned: list[frozenset] = []
        for fs in maxs:
            if not any(fs <= other for other in pruned):
                pruned.append(fs)
        self.maximal_faces: tuple[frozenset, ...] = tuple(pruned)
        verts: set = set()
        for fs in pruned:
            verts |= fs
        if vertex_labels is None:
            self.vertex_labels = tuple(sorted(verts, key=repr))
        else:
            self.vertex_labels = tuple(vertex_labels)
            missing = verts - set(self.vertex_labels)
            if missing:
                raise ValueError(f"simplices use unlisted vertices {missing}")

    @property
    def dim(self) -> int:
        """Dimension; -1 for the empty complex."""
        if not self.maximal_faces:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    def is_empty(self) -> bool:
        return not self.maximal_faces

    def has_simplex(self, face: Iterable[Vertex]) -> bool:
        fs = frozenset(face)
        if not fs:
            return True
        return any(fs <= m for m in self.maximal_faces)

    def simplices_of_dim(self, k: int) -> list[frozenset]:
        """All k-simplices, each exactly once."""
        out: set[frozenset] = set()
        for m in self.maximal_faces:
            if len(m) >= k + 1:
                out.update(frozenset(c) for c in combinations(sorted(m, key=repr), k + 1))
        return sorted(out, key=lambda s: sorted(map(repr, s)))

    def all_simplices(self) -> list[frozenset]:
        out = []
        for k in range(self.dim + 1):
            out.extend(self.simplices_of_dim(k))
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(self.simplices_of_dim(k)) for k in range(self.dim + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.maximal_faces) == set(other.maximal_faces)

    def __repr__(self) -> str:
        faces = sorted(tuple(sorted(m, key=repr)) for m in self.maximal_faces)
        return f"SimplicialComplex({faces})"


def full_simplex(n: int) -> SimplicialComplex:
    """The n-simplex on vertices 0..n."""
    return SimplicialComplex([range(n + 1)])


def boundary_simplex(n: int) -> SimplicialComplex:
    """The boundary of the n-simplex, a combinatorial (n-1)-sphere."""
    verts = list(range(n + 1))
    return SimplicialComplex(combinations(verts, n))


def nerve(family: Sequence[Iterable]) -> SimplicialComplex:
    """Nerve of a family of finite sets: a simplex ties together the
    indices whose sets share a common element."""
    sets = [frozenset(f) for f in family]
    n = len(sets)
    # grow simplices by the downward-closure property, tracking the
    # running intersection
    live: dict[frozenset, frozenset] = {}
    for i, s in enumerate(sets):
        if s:
            live[frozenset([i])] = s
    all_faces: set[frozenset] = set(live)
    frontier = dict(live)
    while frontier:
        nxt: dict[frozenset, frozenset] = {}
        for face, inter in frontier.items():
            top = max(face)
            for j in range(top + 1, n):
                extended = inter & sets[j]
                if extended:
                    nxt[face | {j}] = extended
        all_faces.update(nxt)
        frontier = nxt
    maxs = [f for f in all_faces if not any(f < other for other in all_faces)]
    return SimplicialComplex(maxs, vertex_labels=tuple(range(n)))


def join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    """Join of two complexes; vertex label sets must be disjoint."""
    overlap = set(k1.vertex_labels) & set(k2.vertex_labels)
    if overlap:
        raise ValueError(f"join requires disjoint vertex labels; shared: {overlap}")
    if k1.is_empty():
        return SimplicialComplex(k2.maximal_faces, k1.vertex_labels + k2.vertex_labels)
    if k2.is_empty():
        return SimplicialComplex(k1.maximal_faces, k1.vertex_labels + k2.vertex_labels)
    maxs = [m1 | m2 for m1 in k1.maximal_faces for m2 in k2.maximal_faces]
    return SimplicialComplex(maxs, k1.vertex_labels + k2.vertex_labels)


def join_all(complexes: Sequence[SimplicialComplex]) -> SimplicialComplex:
    out = SimplicialComplex([])
    for k in complexes:
        out = join(out, k)
    return out


# ---------------------------------------------------------------------------
# homology over the two-element field


def gf2_rank(rows: list[int]) -> int:
    """Rank of a matrix whose rows are given as bitmask integers."""
    rank = 0
    pivots: list[int] = []
    for row in rows:
        for p in pivots:
            low = p & -p
            if row & low:
                row ^= p
        if row:
            pivots.append(row)
            rank += 1
    return rank


@dataclass(frozen=True)
class BettiVector:
    """Reduced mod-2 Betti numbers b~_0 .. b~_dim."""

    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0


def betti_z2(k: SimplicialComplex) -> BettiVector:
    """Reduced Betti numbers over the two-element field via boundary ranks."""
    d = k.dim
    if d < 0:
        return BettiVector(())
    by_dim = [k.simplices_of_dim(q) for q in range(d + 1)]
    index = [{s: i for i, s in enumerate(layer)} for layer in by_dim]

    # rank of the boundary map C_q -> C_{q-1}; q = 0 is the augmentation
    ranks = [0] * (d + 2)
    ranks[0] = 1 if by_dim[0] else 0
    for q in range(1, d + 1):
        rows = []
        idx = index[q - 1]
        for s in by_dim[q]:
            row = 0
            for v in s:
                row |= 1 << idx[s - {v}]
            rows.append(row)
        ranks[q] = gf2_rank(rows)
    values = []
    for q in range(d + 1):
        cycles = len(by_dim[q]) - ranks[q]
        values.append(cycles - ranks[q + 1])
    return BettiVector(tuple(values))


def is_homology_sphere(k: SimplicialComplex, d: int) -> bool:
    """True when the complex has the reduced mod-2 homology of the
    d-sphere concentrated in its own top dimension d."""
    if k.dim != d:
        return False
    betti = betti_z2(k)
    return all(betti[q] == (1 if q == d else 0) for q in range(d + 1))


# ---------------------------------------------------------------------------
# nerves of commuting families


def product_fix_oracle(
    fix_sets: Sequence[Sequence[frozenset]],
) -> Callable[[Sequence[Sequence[int]]], bool]:
    """Oracle modelling commuting families: family i acts on its own
    factor of a product, so a selection has a common fixed point exactly
    when every per-family slice has one."""

    def oracle(selection: Sequence[Sequence[int]]) -> bool:
        for fi, chosen in enumerate(selection):
            if not chosen:
                continue
            inter = fix_sets[fi][chosen[0]]
            for m in chosen[1:]:
                inter = inter & fix_sets[fi][m]
            if not inter:
                return False
        return True

    return oracle


def commuting_nerve_model(
    families: Sequence[Sequence[Hashable]],
    oracle: Callable[[Sequence[Sequence[int]]], bool],
) -> tuple[bool, Optional[frozenset]]:
    """Check that the nerve of a union of families equals the join of the
    per-family nerves under the given nonemptiness oracle.

    Vertices are (family index, member position) pairs.  Returns (True,
    None) on agreement or (False, first violating simplex) where the
    witness is the smallest vertex set on which the two sides differ.
    """
    vertices = [(fi, mi) for fi, fam in enumerate(families) for mi in range(len(fam))]

    def slices(sel: Iterable[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
        per = [[] for _ in families]
        for fi, mi in sel:
            per[fi].append(mi)
        return tuple(tuple(sorted(p)) for p in per)

    def in_union_nerve(sel) -> bool:
        return bool(oracle(slices(sel)))

    def in_join(sel) -> bool:
        for fi, chosen in enumerate(slices(sel)):
            if not chosen:
                continue
            one = [() for _ in families]
            one[fi] = chosen
            if not oracle(tuple(one)):
                return False
        return True

    for size in range(1, len(vertices) + 1):
        for sel in combinations(vertices, size):
            if in_union_nerve(sel) != in_join(sel):
                return False, frozenset(sel)
    return True, None
