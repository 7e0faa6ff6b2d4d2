"""Syntactic combinatorics of the Lickorish generator system.

The generating set for the mapping class group of a closed orientable
genus-g surface used here consists of 3g-1 simple closed curves

    a_1..a_g,  b_1..b_g,  g_1..g_{g-1}

which are pairwise disjoint except for the single crossings

    a_i x b_i,   b_i x g_i,   b_{i+1} x g_i.

This module knows nothing about the surface itself: it handles curve
identifiers, the intersection graph (a tree), chains, the ten interval
kinds, and the enclosure claims used by the derivation engine.  The
semantic counterpart (regular neighbourhoods, genus bookkeeping) lives
in ``twistcert.surface``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional


class LickorishError(ValueError):
    """Invalid curve set, interval, or genus parameter."""


# ---------------------------------------------------------------------------
# curve identifiers


def curve_names(g: int) -> list[str]:
    """All 3g-1 curve ids for genus ``g``, in index order a*, b*, g*."""
    _check_genus(g)
    return (
        [f"a{i}" for i in range(1, g + 1)]
        + [f"b{i}" for i in range(1, g + 1)]
        + [f"g{i}" for i in range(1, g)]
    )


def _check_genus(g: int) -> None:
    if not isinstance(g, int) or g < 2:
        raise LickorishError(f"genus must be an integer >= 2, got {g!r}")


def curve_index(name: str, g: int) -> int:
    """Dense index of a curve id: a_i -> i-1, b_i -> g+i-1, g_i -> 2g+i-1."""
    kind, idx = parse_curve(name, g)
    if kind == "a":
        return idx - 1
    if kind == "b":
        return g + idx - 1
    return 2 * g + idx - 1


def parse_curve(name: str, g: int) -> tuple[str, int]:
    """Split ``"b3"`` into ``("b", 3)``, validating the index for genus g."""
    if not name or name[0] not in "abg":
        raise LickorishError(f"bad curve id {name!r}")
    try:
        idx = int(name[1:])
    except ValueError:
        raise LickorishError(f"bad curve id {name!r}") from None
    hi = g - 1 if name[0] == "g" else g
    if not 1 <= idx <= hi:
        raise LickorishError(f"curve id {name!r} out of range for genus {g}")
    return name[0], idx


@dataclass(frozen=True)
class CurveSet:
    """A subset of the generator curves at a fixed genus."""

    genus: int
    members: frozenset[str]

    def __post_init__(self) -> None:
        _check_genus(self.genus)
        for name in self.members:
            parse_curve(name, self.genus)

    @classmethod
    def of(cls, g: int, names: Iterable[str]) -> "CurveSet":
        return cls(g, frozenset(names))

    def mask(self) -> int:
        """Bitmask of the members under :func:`curve_index`."""
        m = 0
        for name in self.members:
            m |= 1 << curve_index(name, self.genus)
        return m

    @classmethod
    def from_mask(cls, g: int, mask: int) -> "CurveSet":
        names = curve_names(g)
        return cls(g, frozenset(names[i] for i in range(len(names)) if mask >> i & 1))

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[str]:
        return sorted(self.members, key=lambda n: curve_index(n, self.genus))


def lam(g: int) -> CurveSet:
    """The full generator set (3g-1 curves)."""
    return CurveSet.of(g, curve_names(g))


def intersecting_pairs(g: int) -> list[tuple[str, str]]:
    """The 3g-2 crossing pairs, each of multiplicity one."""
    _check_genus(g)
    pairs = [(f"a{i}", f"b{i}") for i in range(1, g + 1)]
    pairs += [(f"b{i}", f"g{i}") for i in range(1, g)]
    pairs += [(f"b{i + 1}", f"g{i}") for i in range(1, g)]
    return pairs


@lru_cache(maxsize=None)
def adjacency(g: int) -> dict[str, frozenset[str]]:
    """Intersection-graph adjacency of the full generator set."""
    adj: dict[str, set[str]] = {name: set() for name in curve_names(g)}
    for x, y in intersecting_pairs(g):
        adj[x].add(y)
        adj[y].add(x)
    return {k: frozenset(v) for k, v in adj.items()}


@lru_cache(maxsize=None)
def adjacency_masks(g: int) -> tuple[int, ...]:
    """Per-curve neighbour bitmasks, indexed by :func:`curve_index`."""
    names = curve_names(g)
    adj = adjacency(g)
    out = []
    for name in names:
        m = 0
        for other in adj[name]:
            m |= 1 << curve_index(other, g)
        out.append(m)
    return tuple(out)


# ---------------------------------------------------------------------------
# connectivity and chains


def components(s: CurveSet) -> list[CurveSet]:
    """Partition of ``s`` into connected pieces of the intersection graph."""
    g = s.genus
    adj = adjacency(g)
    remaining = set(s.members)
    parts: list[CurveSet] = []
    while remaining:
        seed = min(remaining, key=lambda n: curve_index(n, g))
        comp = {seed}
        frontier = [seed]
        while frontier:
            cur = frontier.pop()
            for nb in adj[cur]:
                if nb in remaining and nb not in comp:
                    comp.add(nb)
                    frontier.append(nb)
        remaining -= comp
        parts.append(CurveSet.of(g, comp))
    return parts


def is_connected(s: CurveSet) -> bool:
    """True when the union of the curves is connected (empty set counts)."""
    return len(components(s)) <= 1


def components_mask(g: int, mask: int) -> list[int]:
    """Bitmask version of :func:`components` for exhaustive sweeps."""
    adj = adjacency_masks(g)
    parts = []
    remaining = mask
    while remaining:
        seed = remaining & -remaining
        comp = seed
        frontier = seed
        while frontier:
            bit = frontier & -frontier
            frontier &= frontier - 1
            grow = adj[bit.bit_length() - 1] & remaining & ~comp
            comp |= grow
            frontier |= grow
        parts.append(comp)
        remaining &= ~comp
    return parts


def is_connected_mask(g: int, mask: int) -> bool:
    return len(components_mask(g, mask)) <= 1


def chain_order(s: CurveSet) -> Optional[list[str]]:
    """Ordering C_1..C_m with consecutive curves crossing once and all
    other pairs disjoint, or None when the set is not a chain.

    A single curve is a 1-chain.
    """
    if not s.members:
        raise LickorishError("chain_order requires a nonempty set")
    adj = adjacency(s.genus)
    inside = {name: sorted(adj[name] & s.members) for name in s.members}
    degrees = {name: len(nbs) for name, nbs in inside.items()}
    if len(s) == 1:
        return s.sorted_members()
    if any(d > 2 for d in degrees.values()):
        return None
    ends = sorted(
        (n for n, d in degrees.items() if d == 1),
        key=lambda n: curve_index(n, s.genus),
    )
    if len(ends) != 2:
        return None  # degree-0 piece or a cycle; either way not a chain
    order = [ends[0]]
    prev = None
    while True:
        nxt = [n for n in inside[order[-1]] if n != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(s):
        return None  # disconnected
    return order


# ---------------------------------------------------------------------------
# interval sets (the ten bracket kinds)


class IntervalKind(Enum):
    """The ten bracket kinds, in the order they are introduced."""

    BB = "bb"
    BA = "ba"
    AB = "ab"
    BG = "bg"
    GB = "gb"
    AA = "aa"
    GG = "gg"
    GA = "ga"
    AG = "ag"

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]


_KIND_ORDER = {k: n for n, k in enumerate(IntervalKind)}

# minimal j-i per kind for the endpoint-to-endpoint chain to make sense
_MIN_SPAN = {
    IntervalKind.BB: 1,
    IntervalKind.BA: 0,
    IntervalKind.AB: 0,
    IntervalKind.BG: 0,
    IntervalKind.GB: 1,
    IntervalKind.AA: 1,
    IntervalKind.GG: 1,
    IntervalKind.GA: 1,
    IntervalKind.AG: 0,
}

# chain length m as a function of d = j-i
_CHAIN_LEN = {
    IntervalKind.BB: lambda d: 2 * d + 1,
    IntervalKind.BA: lambda d: 2 * d + 2,
    IntervalKind.AB: lambda d: 2 * d + 2,
    IntervalKind.BG: lambda d: 2 * d + 2,
    IntervalKind.GB: lambda d: 2 * d,
    IntervalKind.AA: lambda d: 2 * d + 3,
    IntervalKind.GG: lambda d: 2 * d + 1,
    IntervalKind.GA: lambda d: 2 * d + 1,
    IntervalKind.AG: lambda d: 2 * d + 3,
}


@dataclass(frozen=True)
class Interval:
    """One of the interval-like subsets, identified by kind and endpoints."""

    kind: IntervalKind
    i: int
    j: int

    def __post_init__(self) -> None:
        if self.j - self.i < _MIN_SPAN[self.kind]:
            raise LickorishError(f"degenerate interval {self.kind.value}[{self.i},{self.j}]")

    @property
    def chain_length_m(self) -> int:
        """Length of the endpoint-to-endpoint chain this interval spans."""
        return _CHAIN_LEN[self.kind](self.j - self.i)

    def label(self) -> str:
        return f"[{self.kind.value[0]}{self.i},{self.kind.value[1]}{self.j}]"


def _rng(prefix: str, lo: int, hi: int) -> set[str]:
    return {f"{prefix}{k}" for k in range(lo, hi + 1)}


def interval_set(iv: Interval, g: int) -> CurveSet:
    """The literal curve content of the bracket, per its defining unions."""
    _validate_interval(iv, g)
    i, j = iv.i, iv.j
    bb = _rng("a", i + 1, j - 1) | _rng("b", i, j) | _rng("g", i, j - 1)
    kind = iv.kind
    if kind is IntervalKind.BB:
        out = bb
    elif kind is IntervalKind.BA:
        out = bb | {f"a{j}"}
    elif kind is IntervalKind.AB:
        out = bb | {f"a{i}"}
    elif kind is IntervalKind.BG:
        out = bb | {f"g{j}"}
    elif kind is IntervalKind.GB:
        out = bb - {f"b{i}"}
    elif kind is IntervalKind.AA:
        out = bb | {f"a{i}", f"a{j}"}
    elif kind is IntervalKind.GG:
        out = (bb | {f"g{j}"}) - {f"b{i}"}
    elif kind is IntervalKind.GA:
        out = (bb - {f"b{i}"}) | {f"a{j}"}
    else:  # AG
        out = bb | {f"a{i}", f"g{j}"}
    return CurveSet.of(g, out)


def extended_support(iv: Interval, g: int) -> CurveSet:
    """All generator curves lying in the interval's enclosing subsurface.

    The enclosing subsurfaces are windows of consecutive handles:

    * ``[a_i,a_j]`` kinds sit in the full handles i..j (boundary the
      loop separating those handles from the rest), so the support is
      the literal set together with the interior a's.
    * kinds ending in ``g_j`` reach into one half of handle j+1.
    * kinds starting at ``g_i`` start in one half of handle i, so the
      support drops b_i but keeps every full-handle curve to the right.
    """
    _validate_interval(iv, g)
    i, j = iv.i, iv.j
    kind = iv.kind

    def window(lo: int, hi: int, extra: set[str]) -> CurveSet:
        # full handles lo..hi: their a's, b's and the g's between them
        out = _rng("a", lo, hi) | _rng("b", lo, hi) | _rng("g", lo, hi - 1) | extra
        return CurveSet.of(g, out)

    if kind in (IntervalKind.AA, IntervalKind.BB, IntervalKind.AB, IntervalKind.BA):
        return window(i, j, set())
    if kind in (IntervalKind.AG, IntervalKind.BG):
        # handles i..j plus the tail curve g_j into half of handle j+1
        return window(i, j, {f"g{j}"})
    if kind in (IntervalKind.GA, IntervalKind.GB):
        # half of handle i plus full handles i+1..j
        return window(i + 1, j, {f"g{i}"})
    # GG: half handles on both sides of the full handles i+1..j
    return window(i + 1, j, {f"g{i}", f"g{j}"})


def _validate_interval(iv: Interval, g: int) -> None:
    _check_genus(g)
    i, j = iv.i, iv.j
    if i < 1:
        raise LickorishError(f"interval index i={i} out of range")
    right_is_g = iv.kind in (IntervalKind.BG, IntervalKind.GG, IntervalKind.AG)
    left_is_g = iv.kind in (IntervalKind.GB, IntervalKind.GG, IntervalKind.GA)
    if j > (g - 1 if right_is_g else g):
        raise LickorishError(f"interval {iv.label()} out of range for genus {g}")
    if left_is_g and i > g - 1:
        raise LickorishError(f"interval {iv.label()} out of range for genus {g}")


@lru_cache(maxsize=None)
def all_intervals(g: int) -> tuple[Interval, ...]:
    """Every valid interval at genus g, sorted by (m, kind order, i, j)."""
    out = []
    for kind in IntervalKind:
        right_hi = g - 1 if kind in (IntervalKind.BG, IntervalKind.GG, IntervalKind.AG) else g
        left_hi = g - 1 if kind in (IntervalKind.GB, IntervalKind.GG, IntervalKind.GA) else g
        for i in range(1, left_hi + 1):
            for j in range(i + _MIN_SPAN[kind], right_hi + 1):
                out.append(Interval(kind, i, j))
    out.sort(key=lambda iv: (iv.chain_length_m, iv.kind.order, iv.i, iv.j))
    return tuple(out)


@lru_cache(maxsize=None)
def _interval_support_masks(g: int) -> tuple[tuple[Interval, int, int], ...]:
    """(interval, m, extended-support mask) in scan order."""
    return tuple(
        (iv, iv.chain_length_m, extended_support(iv, g).mask()) for iv in all_intervals(g)
    )


def enclosing_interval(s: CurveSet) -> tuple[Interval, int]:
    """Minimal interval whose extended support contains a connected
    non-chain set, with m strictly below |S|.

    Ties break lexicographically on (m, kind order, i, j) so that
    certificates are reproducible.  A connected non-chain with no such
    interval would contradict the size classification this engine is
    built on, so that case raises instead of degrading the claim.
    """
    if not is_connected(s) or len(s) == 0:
        raise LickorishError("enclosing_interval requires a nonempty connected set")
    if chain_order(s) is not None:
        raise LickorishError("enclosing_interval is for non-chains; classify chains directly")
    g = s.genus
    smask = s.mask()
    size = len(s)
    for iv, m, emask in _interval_support_masks(g):
        if m < size and smask & ~emask == 0:
            return iv, m
    raise LickorishError(
        f"no interval with m < {size} encloses {sorted(s.members)}; "
        "this contradicts the size classification and should be reported"
    )


# ---------------------------------------------------------------------------
# enclosure claims


class ClaimCase(Enum):
    """Which classification branch produced an enclosure claim."""

    CHAIN_EVEN = "chain-even"
    CHAIN_ODD = "chain-odd"
    CHAIN_ODD_SEPARATING = "chain-odd-separating"
    INTERVAL = "interval"


@dataclass(frozen=True)
class EnclosureClaim:
    """Upper bound on an enclosing subsurface: genus, boundary count,
    and whether the enclosure is required to have connected complement."""

    genus_bound: int
    boundary_bound: int
    nonseparating_required: bool
    case_tag: str

    def packing(self) -> tuple[str, int]:
        """Canonical packing family and parameter for this claim shape.

        One-boundary claims pack as genus-h pieces with one boundary
        circle, two-boundary claims as the cyclic two-boundary pieces,
        and three-boundary claims as the three-holed pieces of genus
        one less than the packing parameter.
        """
        h, b = self.genus_bound, self.boundary_bound
        if b <= 1:
            return "fit1", h
        if b == 2:
            return "fit3", h
        return "fit2", h + 1


def separating_chain_form(s: CurveSet) -> Optional[tuple[int, int]]:
    """Detect the separating-chain pattern {a_i, a_j} + b_i..b_j + g_i..g_{j-1}.

    These are exactly the chains obtained from an [a_i,a_j] interval by
    deleting its interior a's.  Returns (i, j) or None.
    """
    g = s.genus
    a_idx = sorted(int(n[1:]) for n in s.members if n[0] == "a")
    if len(a_idx) != 2:
        return None
    i, j = a_idx
    if i >= j:
        return None
    expected = {f"a{i}", f"a{j}"} | _rng("b", i, j) | _rng("g", i, j - 1)
    if s.members == frozenset(expected):
        return i, j
    return None


def classify_chain(s: CurveSet, g: int) -> EnclosureClaim:
    """Enclosure claim for a chain: even chains close up to genus m/2
    with one boundary circle, odd non-separating chains to genus
    (m-1)/2 with two, and the separating odd family to the handle
    window of genus (m-1)/2 with a single boundary circle."""
    if s.genus != g:
        raise LickorishError("genus mismatch")
    order = chain_order(s)
    if order is None:
        raise LickorishError(f"{sorted(s.members)} is not a chain")
    m = len(order)
    if m % 2 == 0:
        return EnclosureClaim(m // 2, 1, True, ClaimCase.CHAIN_EVEN.value)
    sep = separating_chain_form(s)
    if sep is not None:
        i, j = sep
        assert m == 2 * (j - i) + 3
        return EnclosureClaim(j - i + 1, 1, True, ClaimCase.CHAIN_ODD_SEPARATING.value)
    return EnclosureClaim((m - 1) // 2, 2, True, ClaimCase.CHAIN_ODD.value)


# enclosure (genus, boundary) of each interval kind's window, as a
# function of d = j-i; these are the subsurfaces of the handle-window
# lemmas, with the two b-endpoint kinds enclosed in the larger windows
# the classification proof uses.
_KIND_CLAIM = {
    IntervalKind.AA: lambda d: (d + 1, 1),
    IntervalKind.BB: lambda d: (d + 1, 1),
    IntervalKind.AB: lambda d: (d + 1, 1),
    IntervalKind.BA: lambda d: (d + 1, 1),
    IntervalKind.GG: lambda d: (d, 3),
    IntervalKind.AG: lambda d: (d + 1, 2),
    IntervalKind.BG: lambda d: (d + 1, 2),
    IntervalKind.GA: lambda d: (d, 2),
    IntervalKind.GB: lambda d: (d, 2),
}


def interval_claim(iv: Interval) -> tuple[int, int]:
    """(genus, boundary) of the window enclosing the interval's support."""
    return _KIND_CLAIM[iv.kind](iv.j - iv.i)


def size_classify(s: CurveSet, g: int) -> EnclosureClaim:
    """Enclosure claim for any nonempty connected subset.

    Chains classify directly; everything else routes through the
    minimal enclosing interval and that interval's window bounds.
    """
    if s.genus != g:
        raise LickorishError("genus mismatch")
    if len(s) == 0 or not is_connected(s):
        raise LickorishError("size_classify requires a nonempty connected set")
    if chain_order(s) is not None:
        return classify_chain(s, g)
    iv, m = enclosing_interval(s)
    h, b = interval_claim(iv)
    return EnclosureClaim(h, b, True, f"{ClaimCase.INTERVAL.value}:{iv.label()}:m={m}")


def claim_fits_clause(claim: EnclosureClaim, size: int) -> bool:
    """Check a claim against the two clauses of the size classification:
    even sets allow (l,1) or non-separating (<=l-1, 3); odd sets allow
    non-separating (l, <=2) or (<=l-1, <=3), with l = floor(size/2)."""
    h, b = claim.genus_bound, claim.boundary_bound
    l = size // 2
    if size % 2 == 0:
        return (h <= l and b <= 1) or (h <= l - 1 and b <= 3)
    return (h <= l and b <= 2) or (h <= l - 1 and b <= 3)
