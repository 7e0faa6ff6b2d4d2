"""Combinatorial model of the genus-g surface carrying the generator curves.

The union of the generator curves is stored as a ribbon graph: crossings
are 4-valent vertices with a counterclockwise slot order alternating
between the two transversal curves, arcs connect crossings along each
curve, and faces are traced as orbits of the usual next-dart permutation.
Capping the faces with disks recovers the closed surface, which pins the
genus and makes every regular-neighbourhood and complement computation
exact integer bookkeeping.

Crossings along each b-curve occur in the cyclic order g_{i-1}, a_i,
g_i, matching the handle-by-handle picture.  The per-crossing
handedness bits were fixed once by a brute-force search at small genus,
keeping the assignment that closes every capped surface to genus
exactly g and reproduces the handle-window enclosures; the winning
pattern repeats per handle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .lickorish import CurveSet, components, curve_names, is_connected


class SurfaceError(ValueError):
    """Malformed surface request (bad genus, empty set, disconnected set)."""


# Handedness of the three crossing families (a_i x b_i, b_i x g_i,
# b_{i+1} x g_i).  Bit 1 swaps which side of the first curve the second
# curve enters on.  Frozen from the small-genus search; see module note.
_CHIRALITY_AB = 0
_CHIRALITY_BG = 0
_CHIRALITY_GB = 1


@dataclass(frozen=True)
class Crossing:
    """A 4-valent crossing: slots 0..3 counterclockwise, curve_x on
    slots (0, 2) and curve_y on slots (1, 3)."""

    curve_x: str
    curve_y: str
    flipped: bool  # True: curve_y runs 3 -> 1 instead of 1 -> 3

    @property
    def slot_curves(self) -> tuple[str, str, str, str]:
        return (self.curve_x, self.curve_y, self.curve_x, self.curve_y)


@dataclass(frozen=True)
class Arc:
    """One arc of a curve between consecutive crossings along it.
    ``darts`` are the two endpoint darts (vertex * 4 + slot)."""

    curve: str
    darts: tuple[int, int]


class RibbonGraph:
    """The embedded union of all generator curves at genus ``g``.

    Darts are integers ``4 * vertex + slot``.  ``iota`` swaps the two
    ends of each arc, ``sigma`` rotates one slot counterclockwise, and
    faces are the orbits of ``sigma o iota``; each dart lies on exactly
    one face, which is the orientability bookkeeping.
    """

    def __init__(self, genus: int, crossings: Sequence[Crossing], arcs: Sequence[Arc]):
        self.genus = genus
        self.vertices: tuple[Crossing, ...] = tuple(crossings)
        self.arcs: tuple[Arc, ...] = tuple(arcs)
        n_darts = 4 * len(self.vertices)

        iota = [-1] * n_darts
        dart_arc = [-1] * n_darts
        for a_idx, arc in enumerate(self.arcs):
            d1, d2 = arc.darts
            for d in (d1, d2):
                if iota[d] != -1 or dart_arc[d] != -1:
                    raise SurfaceError(f"dart {d} used by two arcs")
            iota[d1], iota[d2] = d2, d1
            dart_arc[d1] = dart_arc[d2] = a_idx
        if any(d == -1 for d in iota):
            raise SurfaceError("some dart is not an arc endpoint")
        self._iota = iota
        self._dart_arc = dart_arc

        self.faces: tuple[tuple[int, ...], ...] = self._trace_faces()
        self._dart_face = [-1] * n_darts
        for f_idx, cycle in enumerate(self.faces):
            for d in cycle:
                self._dart_face[d] = f_idx

    # -- permutations ------------------------------------------------------

    def sigma(self, dart: int) -> int:
        return (dart & ~3) | ((dart + 1) & 3)

    def iota(self, dart: int) -> int:
        return self._iota[dart]

    def _trace_faces(self) -> tuple[tuple[int, ...], ...]:
        n = 4 * len(self.vertices)
        seen = [False] * n
        faces = []
        for start in range(n):
            if seen[start]:
                continue
            cycle = []
            d = start
            while not seen[d]:
                seen[d] = True
                cycle.append(d)
                d = self.sigma(self._iota[d])
            if d != start:
                raise SurfaceError("face tracing is not a permutation orbit")
            faces.append(tuple(cycle))
        return tuple(faces)

    # -- basic counts ------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def euler_char_neighbourhood(self) -> int:
        """Euler characteristic of a regular neighbourhood (V - E)."""
        return self.num_vertices - self.num_arcs

    def capped_genus(self) -> int:
        """Genus of the closed surface obtained by capping all faces."""
        chi = self.num_vertices - self.num_arcs + self.num_faces
        if chi % 2:
            raise SurfaceError("odd Euler characteristic after capping")
        return (2 - chi) // 2

    # -- caches ------------------------------------------------------------

    def _restriction(self, members: frozenset[str]) -> "_Restriction":
        cache = getattr(self, "_restriction_cache", None)
        if cache is None:
            cache = self._restriction_cache = {}
        hit = cache.get(members)
        if hit is None:
            hit = _Restriction(self, members)
            if len(cache) > 60000:
                cache.clear()
            cache[members] = hit
        return hit


def build_lickorish_surface(
    g: int,
    chirality: tuple[int, int, int] = (_CHIRALITY_AB, _CHIRALITY_BG, _CHIRALITY_GB),
) -> RibbonGraph:
    """Canonical rotation system of the generator curves on the closed
    genus-g surface.

    Crossing order along b_i is g_{i-1}, a_i, g_i (absent ones skipped),
    matching the handle-by-handle picture; the handedness bits repeat per
    handle.  Capping the traced faces yields genus exactly g.
    """
    if not isinstance(g, int) or g < 2:
        raise SurfaceError(f"genus must be an integer >= 2, got {g!r}")
    bit_ab, bit_bg, bit_gb = chirality

    crossings: list[Crossing] = []
    vertex_id: dict[tuple[str, str], int] = {}

    def add_crossing(curve_x: str, curve_y: str, flipped: bool) -> None:
        vertex_id[(curve_x, curve_y)] = len(crossings)
        crossings.append(Crossing(curve_x, curve_y, flipped))

    for i in range(1, g + 1):
        add_crossing(f"a{i}", f"b{i}", bool(bit_ab))
    for i in range(1, g):
        add_crossing(f"b{i}", f"g{i}", bool(bit_bg))
    for i in range(1, g):
        add_crossing(f"b{i + 1}", f"g{i}", bool(bit_gb))

    def ports(curve: str, vx: tuple[str, str]) -> tuple[int, int]:
        """(enter_dart, exit_dart) of ``curve`` at crossing ``vx``."""
        v = vertex_id[vx]
        c = crossings[v]
        if curve == c.curve_x:
            return 4 * v + 0, 4 * v + 2
        if not c.flipped:
            return 4 * v + 1, 4 * v + 3
        return 4 * v + 3, 4 * v + 1

    # cyclic crossing itinerary of every curve
    def itinerary(curve: str) -> list[tuple[str, str]]:
        kind, idx = curve[0], int(curve[1:])
        if kind == "a":
            return [(curve, f"b{idx}")]
        if kind == "g":
            return [(f"b{idx}", curve), (f"b{idx + 1}", curve)]
        stops: list[tuple[str, str]] = []
        if idx > 1:
            stops.append((curve, f"g{idx - 1}"))
        stops.append((f"a{idx}", curve))
        if idx < g:
            stops.append((curve, f"g{idx}"))
        return stops

    arcs: list[Arc] = []
    for curve in curve_names(g):
        stops = itinerary(curve)
        for k, stop in enumerate(stops):
            nxt = stops[(k + 1) % len(stops)]
            arcs.append(Arc(curve, (ports(curve, stop)[1], ports(curve, nxt)[0])))

    rg = RibbonGraph(g, crossings, arcs)
    if rg.num_vertices != 3 * g - 2 or rg.num_arcs != 2 * (3 * g - 2):
        raise SurfaceError("crossing/arc counts are off")
    return rg


@lru_cache(maxsize=32)
def lickorish_surface(g: int) -> RibbonGraph:
    """Cached canonical surface for genus ``g``."""
    return build_lickorish_surface(g)


# ---------------------------------------------------------------------------
# restriction to a subset of the curves


class _Restriction:
    """Face and complement data of the union of a curve subset.

    Crossings of a kept curve with a dropped one are smoothed by rotating
    past the dropped slots while tracing, which is exactly isotoping the
    dropped strand off the picture.
    """

    def __init__(self, rg: RibbonGraph, members: frozenset[str]):
        self.rg = rg
        self.members = members
        keep = members
        n_darts = 4 * rg.num_vertices

        in_s = [rg.arcs[rg._dart_arc[d]].curve in keep for d in range(n_darts)]
        self._dart_in_s = in_s

        # crossings internal to the subset
        self.ss_crossings = sum(
            1 for c in rg.vertices if c.curve_x in keep and c.curve_y in keep
        )

        # boundary circles of the smoothed neighbourhood: orbits of the
        # skip-rotation next-dart map over kept darts
        iota = rg._iota
        seen = [False] * n_darts
        self.rfaces: list[tuple[int, ...]] = []
        self._dart_rface = [-1] * n_darts
        for start in range(n_darts):
            if seen[start] or not in_s[start]:
                continue
            cycle = []
            d = start
            while not seen[d]:
                seen[d] = True
                cycle.append(d)
                self._dart_rface[d] = len(self.rfaces)
                e = iota[d]
                base = e & ~3
                for step in range(1, 5):
                    cand = base | ((e + step) & 3)
                    if in_s[cand]:
                        d = cand
                        break
            self.rfaces.append(tuple(cycle))

        self._complement()

    # -- complement components --------------------------------------------

    def _complement(self) -> None:
        rg = self.rg
        n_faces = rg.num_faces
        keep = self.members

        # union-find over [full faces] + [arcs not in the subset]
        parent = list(range(n_faces + rg.num_arcs))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> None:
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        def arc_node(a_idx: int) -> int:
            return n_faces + a_idx

        dart_face = rg._dart_face
        iota = rg._iota

        def corner_face(v: int, k: int) -> int:
            """Face covering the corner between slots k and k+1 at v."""
            return dart_face[iota[4 * v + k]]

        for a_idx, arc in enumerate(rg.arcs):
            if arc.curve in keep:
                continue
            for d in arc.darts:
                union(arc_node(a_idx), dart_face[d])

        for v, c in enumerate(rg.vertices):
            x_in = c.curve_x in keep
            y_in = c.curve_y in keep
            if x_in and y_in:
                continue
            if not x_in and not y_in:
                nodes = [corner_face(v, k) for k in range(4)]
                nodes += [arc_node(rg._dart_arc[4 * v + k]) for k in range(4)]
                for other in nodes[1:]:
                    union(nodes[0], other)
            else:
                s = 0 if x_in else 1  # slots of the kept curve: s and s+2
                for base in (s, s + 2):
                    germ = arc_node(rg._dart_arc[4 * v + (base + 1) % 4])
                    union(corner_face(v, base % 4), corner_face(v, (base + 1) % 4))
                    union(corner_face(v, base % 4), germ)

        # Euler characteristic per component: sectors - edges + faces,
        # counted on the surface cut along the kept curves.
        chi: dict[int, int] = {}
        bnd: dict[int, int] = {}

        def bump(node: int, delta: int) -> None:
            r = find(node)
            chi[r] = chi.get(r, 0) + delta

        for f in range(n_faces):
            bump(f, 1)
        for a_idx, arc in enumerate(rg.arcs):
            if arc.curve in keep:
                for d in arc.darts:  # one boundary edge on each side
                    bump(dart_face[d], -1)
            else:
                bump(arc_node(a_idx), -1)
        for v, c in enumerate(rg.vertices):
            x_in = c.curve_x in keep
            y_in = c.curve_y in keep
            if x_in and y_in:
                for k in range(4):
                    bump(corner_face(v, k), 1)
            elif x_in or y_in:
                s = 0 if x_in else 1
                bump(corner_face(v, s), 1)
                bump(corner_face(v, s + 2), 1)
            else:
                bump(corner_face(v, 0), 1)

        # boundary circles of each component = smoothed faces on its rim
        self._rface_comp: list[int] = []
        for cycle in self.rfaces:
            roots = {find(dart_face[d]) for d in cycle}
            if len(roots) != 1:
                raise SurfaceError("boundary circle touches two complement pieces")
            root = roots.pop()
            bnd[root] = bnd.get(root, 0) + 1
            self._rface_comp.append(root)

        comps = []
        for root in sorted(chi):
            c_chi = chi[root]
            c_bnd = bnd.get(root, 0)
            if c_bnd == 0:
                raise SurfaceError("complement piece with no boundary circle")
            if (2 - c_chi - c_bnd) % 2:
                raise SurfaceError("non-integral complement genus")
            comps.append(((2 - c_chi - c_bnd) // 2, c_bnd, root))
        self.complement: list[tuple[int, int, int]] = comps  # (genus, bnd, root)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class SubsurfaceReport:
    """Genus and boundary data of an enclosing subsurface plus the census
    of its complement inside the closed genus-g surface."""

    genus: int
    boundary_count: int
    complement_components: tuple[tuple[int, int], ...]
    complement_connected: bool
    euler_char: int

    def __post_init__(self) -> None:
        assert self.euler_char == 2 - 2 * self.genus - self.boundary_count


def _as_members(rg: RibbonGraph, s: CurveSet | Iterable[str]) -> frozenset[str]:
    if isinstance(s, CurveSet):
        if s.genus != rg.genus:
            raise SurfaceError("curve set genus does not match the surface")
        return s.members
    return CurveSet.of(rg.genus, s).members


def min_enclosing_subsurface(
    rg: RibbonGraph, s: CurveSet | Iterable[str], fill: bool = True
) -> SubsurfaceReport:
    """Regular neighbourhood of the union of a connected curve subset.

    With ``fill=True`` (default) every complement component that is a
    disk is absorbed, which turns the raw neighbourhood into the handle
    window the enclosure lemmas speak about.  ``fill=False`` reports the
    raw neighbourhood, the object the chain lemma is stated for.
    """
    members = _as_members(rg, s)
    if not members:
        raise SurfaceError("min_enclosing_subsurface requires a nonempty set")
    if not is_connected(CurveSet(rg.genus, members)):
        raise SurfaceError("min_enclosing_subsurface requires a connected set")
    r = rg._restriction(members)

    chi = -r.ss_crossings
    boundary = len(r.rfaces)
    census = [(h, b) for (h, b, _root) in r.complement]
    if fill:
        disks = sum(1 for h, b in census if (h, b) == (0, 1))
        chi += disks
        boundary -= disks
        census = [(h, b) for h, b in census if (h, b) != (0, 1)]
    genus = (2 - chi - boundary) // 2
    census.sort()
    return SubsurfaceReport(
        genus=genus,
        boundary_count=boundary,
        complement_components=tuple(census),
        complement_connected=len(census) == 1,
        euler_char=2 - 2 * genus - boundary,
    )


def complement_census(
    rg: RibbonGraph, s: CurveSet | Iterable[str], fill: bool = True
) -> list[tuple[int, int]]:
    """(genus, boundary) of each component of the surface minus the
    (filled) neighbourhood of the union of the given curves.  The set may
    be disconnected."""
    members = _as_members(rg, s)
    if not members:
        raise SurfaceError("complement_census requires a nonempty set")
    r = rg._restriction(members)
    census = [(h, b) for (h, b, _root) in r.complement]
    if fill:
        census = [(h, b) for h, b in census if (h, b) != (0, 1)]
    return sorted(census)


def neighbourhood_components(
    rg: RibbonGraph, s: CurveSet | Iterable[str]
) -> list[tuple[CurveSet, int, int]]:
    """(curves, genus, boundary) of each connected piece of the raw
    neighbourhood of the union."""
    members = _as_members(rg, s)
    if not members:
        raise SurfaceError("neighbourhood_components requires a nonempty set")
    r = rg._restriction(members)
    out = []
    for part in components(CurveSet(rg.genus, members)):
        ss = sum(
            1
            for c in rg.vertices
            if c.curve_x in part.members and c.curve_y in part.members
        )
        faces = sum(
            1
            for cycle in r.rfaces
            if rg.arcs[rg._dart_arc[cycle[0]]].curve in part.members
        )
        chi = -ss
        out.append((part, (2 - chi - faces) // 2, faces))
    return out


# ---------------------------------------------------------------------------
# cut-and-paste assemblies (the packing constructions)


@dataclass(frozen=True)
class AssemblyPlan:
    """Pieces-and-gluings description of a closed surface, with some
    pieces marked as the packed copies."""

    pieces: tuple[tuple[int, int], ...]  # (genus, boundary slots)
    gluings: tuple[tuple[int, int, int, int], ...]  # piece, slot, piece, slot
    marked_pieces: tuple[int, ...]


def assembly_problems(plan: AssemblyPlan, g: int) -> list[str]:
    """Structural and arithmetic defects of a plan, empty when valid."""
    problems = []
    used: set[tuple[int, int]] = set()
    for (pa, sa, pb, sb) in plan.gluings:
        for p, s in ((pa, sa), (pb, sb)):
            if not (0 <= p < len(plan.pieces)):
                problems.append(f"gluing references missing piece {p}")
                return problems
            if not (0 <= s < plan.pieces[p][1]):
                problems.append(f"gluing {(pa, sa, pb, sb)} references missing slot")
                return problems
            if (p, s) in used:
                problems.append(f"slot {(p, s)} glued twice in {(pa, sa, pb, sb)}")
                return problems
            used.add((p, s))
        if (pa, sa) == (pb, sb):
            problems.append(f"gluing {(pa, sa, pb, sb)} glues a slot to itself")
            return problems

    total_slots = sum(b for _h, b in plan.pieces)
    if len(used) != total_slots:
        problems.append(f"{total_slots - len(used)} boundary slots left unglued")

    chi = sum(2 - 2 * h - b for h, b in plan.pieces)
    if chi != 2 - 2 * g:
        problems.append(f"Euler characteristic {chi} does not close to genus {g}")

    neighbours: dict[int, set[int]] = {p: set() for p in range(len(plan.pieces))}
    for (pa, _sa, pb, _sb) in plan.gluings:
        neighbours[pa].add(pb)
        neighbours[pb].add(pa)

    def connected(nodes: set[int]) -> bool:
        if not nodes:
            return True
        seen = {min(nodes)}
        frontier = [min(nodes)]
        while frontier:
            cur = frontier.pop()
            for nb in neighbours[cur]:
                if nb in nodes and nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
        return seen == nodes

    all_nodes = set(range(len(plan.pieces)))
    if not connected(all_nodes):
        problems.append("gluing graph is not connected")

    if len(set(plan.marked_pieces)) != len(plan.marked_pieces):
        problems.append("marked pieces are not distinct")
    for m in plan.marked_pieces:
        if not (0 <= m < len(plan.pieces)):
            problems.append(f"marked piece {m} does not exist")
        elif not connected(all_nodes - {m}):
            problems.append(f"removing marked piece {m} disconnects the assembly")
    return problems


def verify_assembly(plan: AssemblyPlan, g: int) -> bool:
    """True when the plan closes to genus g, is connected, and every
    marked piece is non-separating."""
    return not assembly_problems(plan, g)


def pack_subsurfaces(g: int, kind: str, ell: int) -> AssemblyPlan:
    """Disjoint packings of the closed genus-g surface:

    * ``fit1``: floor(g/ell) marked copies of the genus-ell one-boundary
      piece, hung off a sphere carrier (connected-sum picture).
    * ``fit2``: floor(g/ell) marked non-separating copies of the
      (ell-1)-genus three-boundary piece in a cyclic chain, capped off.
    * ``fit3``: floor((g-1)/ell) marked non-separating copies of the
      genus-ell two-boundary piece in a cyclic chain.
    """
    if not isinstance(g, int) or g < 1:
        raise SurfaceError(f"genus must be a positive integer, got {g!r}")
    if not isinstance(ell, int) or ell < 1:
        raise SurfaceError(f"ell must be a positive integer, got {ell!r}")

    if kind == "fit1":
        q = g // ell
        if q == 0:
            raise SurfaceError(f"fit1 packs no pieces for ell={ell} > g={g}")
        leftover = g - q * ell
        holes = q + (1 if leftover else 0)
        pieces: list[tuple[int, int]] = [(0, holes)]
        gluings = []
        for k in range(q):
            pieces.append((ell, 1))
            gluings.append((0, k, k + 1, 0))
        if leftover:
            pieces.append((leftover, 1))
            gluings.append((0, q, q + 1, 0))
        return AssemblyPlan(tuple(pieces), tuple(gluings), tuple(range(1, q + 1)))

    if kind == "fit2":
        q = g // ell
        if q == 0:
            raise SurfaceError(f"fit2 packs no pieces for ell={ell} > g={g}")
        leftover = g - q * ell
        # slots of each ring piece: 0 = forward, 1 = cap, 2 = backward
        pieces = [(ell - 1, 3)] * q + [(leftover, q)]
        gluings = [(i, 0, (i + 1) % q, 2) for i in range(q)]
        gluings += [(i, 1, q, i) for i in range(q)]
        return AssemblyPlan(tuple(pieces), tuple(gluings), tuple(range(q)))

    if kind == "fit3":
        q = (g - 1) // ell
        if q == 0:
            raise SurfaceError(f"fit3 packs no pieces for ell={ell} > g-1={g - 1}")
        leftover = (g - 1) - q * ell
        pieces = [(ell, 2)] * q
        if leftover:
            pieces.append((leftover, 2))
        n = len(pieces)
        gluings = [(i, 0, (i + 1) % n, 1) for i in range(n)]
        return AssemblyPlan(tuple(pieces), tuple(gluings), tuple(range(q)))

    raise SurfaceError(f"unknown packing kind {kind!r}")
