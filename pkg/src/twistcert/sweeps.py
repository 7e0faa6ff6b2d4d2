"""Exhaustive verification sweeps over the generator-set combinatorics.

Each sweep re-derives one of the enclosure facts by brute force on the
ribbon-graph model and reports the number of cases checked plus every
violation found.  The CLI and the acceptance suite both run these.

Sweeps over subset bitmasks can be partitioned across a process pool;
set ``TWISTCERT_WORKERS`` to override the worker count (default: the
machine's available parallelism; 1 disables the pool).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import lickorish as lk
from . import surface as sf
from ._parallel import worker_count
from .bootstrap import count_inequality


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def merge(self, other: "SweepResult") -> None:
        self.checked += other.checked
        self.violations.extend(other.violations)


def _run_chunked(name: str, g: int, fn, workers: int | None = None) -> SweepResult:
    """Run fn(g, lo, hi) over the subset-mask range, optionally in a pool."""
    t0 = time.perf_counter()
    total = 1 << (3 * g - 1)
    w = worker_count() if workers is None else workers
    result = SweepResult(name)
    if w <= 1 or total < (1 << 12):
        result.merge(fn(g, 1, total))
    else:
        chunks = []
        step = (total + w - 1) // w
        with ProcessPoolExecutor(max_workers=w) as pool:
            for lo in range(1, total, step):
                chunks.append(pool.submit(fn, g, lo, min(lo + step, total)))
            for fut in chunks:
                result.merge(fut.result())
    result.elapsed = time.perf_counter() - t0
    return result


# ---------------------------------------------------------------------------
# chain lemma (raw regular neighbourhoods)


def _scan_chains(g: int, lo: int, hi: int) -> SweepResult:
    out = SweepResult("chains")
    rg = sf.lickorish_surface(g)
    for mask in range(lo, hi):
        if not lk.is_connected_mask(g, mask):
            continue
        s = lk.CurveSet.from_mask(g, mask)
        order = lk.chain_order(s)
        if order is None:
            continue
        out.checked += 1
        m = len(order)
        rep = sf.min_enclosing_subsurface(rg, s, fill=False)
        want = (m // 2, 1) if m % 2 == 0 else ((m - 1) // 2, 2)
        if (rep.genus, rep.boundary_count) != want:
            out.violations.append(
                f"g={g} chain {s.sorted_members()}: neighbourhood "
                f"({rep.genus},{rep.boundary_count}) != {want}"
            )
    return out


def sweep_goodchains(genus_min: int, genus_max: int, workers: int | None = None) -> SweepResult:
    """Every chain's raw neighbourhood is genus floor(m/2) with one
    boundary circle (m even) or two (m odd)."""
    result = SweepResult("goodchains")
    t0 = time.perf_counter()
    for g in range(genus_min, genus_max + 1):
        result.merge(_run_chunked("chains", g, _scan_chains, workers))
    result.elapsed = time.perf_counter() - t0
    return result


def _scan_separating(g: int, lo: int, hi: int) -> SweepResult:
    out = SweepResult("separating")
    rg = sf.lickorish_surface(g)
    for mask in range(lo, hi):
        if not lk.is_connected_mask(g, mask):
            continue
        s = lk.CurveSet.from_mask(g, mask)
        order = lk.chain_order(s)
        if order is None or len(order) % 2 == 0:
            continue
        out.checked += 1
        rep = sf.min_enclosing_subsurface(rg, s, fill=False)
        separating = len(rep.complement_components) > 1
        structural = lk.separating_chain_form(s) is not None
        if separating != structural:
            out.violations.append(
                f"g={g} chain {s.sorted_members()}: complement disconnected={separating} "
                f"but matches the deleted-interior-a family={structural}"
            )
    return out


def sweep_badchains(genus_min: int, genus_max: int, workers: int | None = None) -> SweepResult:
    """The separating chains are exactly the family obtained from the
    two-a-endpoint windows by deleting interior a-curves."""
    result = SweepResult("badchains")
    t0 = time.perf_counter()
    for g in range(genus_min, genus_max + 1):
        result.merge(_run_chunked("separating", g, _scan_separating, workers))
    result.elapsed = time.perf_counter() - t0
    return result


# ---------------------------------------------------------------------------
# interval window lemmas (filled neighbourhoods)

# (genus, boundary) of each enclosure window as a function of d = j-i;
# the second component of the value is whether the window must have
# connected complement (it is non-separating).
_WINDOW_TABLE = {
    lk.IntervalKind.AA: lambda d: (d + 1, 1),
    lk.IntervalKind.GG: lambda d: (d, 3),
    lk.IntervalKind.AG: lambda d: (d + 1, 2),
    lk.IntervalKind.GA: lambda d: (d, 2),
}


def sweep_intervals(genus_min: int, genus_max: int) -> SweepResult:
    """Filled neighbourhoods of the four primitive interval windows match
    the handle-window enclosures, with connected complement.

    The full-width two-a-endpoint window is the one degenerate row: its
    complement is a single disk, so the filled neighbourhood closes up to
    the whole surface (boundary 0 instead of 1).
    """
    result = SweepResult("intervals")
    t0 = time.perf_counter()
    for g in range(genus_min, genus_max + 1):
        rg = sf.lickorish_surface(g)
        for iv in lk.all_intervals(g):
            fn = _WINDOW_TABLE.get(iv.kind)
            if fn is None:
                continue
            result.checked += 1
            supp = lk.extended_support(iv, g)
            rep = sf.min_enclosing_subsurface(rg, supp, fill=True)
            want = fn(iv.j - iv.i)
            want_components = 1
            if iv.kind is lk.IntervalKind.AA and (iv.i, iv.j) == (1, g):
                want = (g, 0)  # window spans every handle; filling closes up
                want_components = 0
            got = (rep.genus, rep.boundary_count)
            if got != want:
                result.violations.append(
                    f"g={g} {iv.label()}: filled window {got} != {want}"
                )
            if len(rep.complement_components) != want_components:
                result.violations.append(
                    f"g={g} {iv.label()}: complement census {rep.complement_components} "
                    f"should have {want_components} component(s)"
                )
    result.elapsed = time.perf_counter() - t0
    return result


# ---------------------------------------------------------------------------
# soundness of the size classifier


def _scan_size(g: int, lo: int, hi: int) -> SweepResult:
    out = SweepResult("size")
    rg = sf.lickorish_surface(g)
    for mask in range(lo, hi):
        if not lk.is_connected_mask(g, mask):
            continue
        s = lk.CurveSet.from_mask(g, mask)
        out.checked += 1
        try:
            claim = lk.size_classify(s, g)
        except lk.LickorishError as exc:
            out.violations.append(f"g={g} {s.sorted_members()}: classifier failed: {exc}")
            continue
        if not lk.claim_fits_clause(claim, len(s)):
            out.violations.append(
                f"g={g} {s.sorted_members()}: claim ({claim.genus_bound},{claim.boundary_bound}) "
                f"fits neither clause for size {len(s)}"
            )
        if lk.chain_order(s) is not None:
            support = s
        else:
            iv, m = lk.enclosing_interval(s)
            if m >= len(s):
                out.violations.append(
                    f"g={g} {s.sorted_members()}: enclosing interval {iv.label()} has m={m} >= |S|"
                )
            support = lk.extended_support(iv, g)
            if not s.members <= support.members:
                out.violations.append(
                    f"g={g} {s.sorted_members()}: support of {iv.label()} does not contain the set"
                )
        rep = sf.min_enclosing_subsurface(rg, support, fill=True)
        if rep.genus > claim.genus_bound or rep.boundary_count > claim.boundary_bound:
            out.violations.append(
                f"g={g} {s.sorted_members()}: enclosure ({rep.genus},{rep.boundary_count}) exceeds "
                f"claim ({claim.genus_bound},{claim.boundary_bound})"
            )
        if claim.nonseparating_required and len(rep.complement_components) > 1:
            out.violations.append(
                f"g={g} {s.sorted_members()}: enclosure complement is disconnected"
            )
    return out


def sweep_size_soundness(genus_min: int, genus_max: int, workers: int | None = None) -> SweepResult:
    """Every connected subset's enclosure claim is semantically verified:
    the support's filled neighbourhood stays within the claimed genus and
    boundary bounds and has connected (or empty) complement."""
    result = SweepResult("size")
    t0 = time.perf_counter()
    for g in range(genus_min, genus_max + 1):
        result.merge(_run_chunked("size", g, _scan_size, workers))
    result.elapsed = time.perf_counter() - t0
    return result


# ---------------------------------------------------------------------------
# counting lemma and packings


def sweep_count(genus_min: int, genus_max: int) -> SweepResult:
    """Floor-count inequality for every genus in range and every k in
    [2, 2g], vectorised per genus and spot-checked against the scalar
    evaluator."""
    result = SweepResult("count")
    t0 = time.perf_counter()
    for g in range(genus_min, genus_max + 1):
        k = np.arange(2, 2 * g + 1, dtype=np.int64)
        lhs = np.where(
            k % 2 == 0,
            (k - 1) * (2 * g // np.maximum(k, 1)),
            (k - 1) * (2 * (g - 1) // np.maximum(k - 1, 1)),
        )
        result.checked += int(k.size)
        bad = np.nonzero(lhs < g)[0]
        for idx in bad[:10]:
            kk = int(k[idx])
            result.violations.append(f"g={g} k={kk}: lhs={int(lhs[idx])} < g")
        if g % 479 == 0 or g == genus_min:
            for kk in (2, min(3, 2 * g), 2 * g):
                cc = count_inequality(g, kk)
                if cc.lhs != int(lhs[kk - 2]):
                    result.violations.append(
                        f"g={g} k={kk}: vectorised lhs {int(lhs[kk - 2])} "
                        f"disagrees with count_inequality ({cc.lhs})"
                    )
    result.elapsed = time.perf_counter() - t0
    return result


def sweep_fit(genus_min: int, genus_max: int) -> SweepResult:
    """All packings in range emit the advertised number of marked pieces
    and pass the assembly checks, including the non-separating ones."""
    result = SweepResult("fit")
    t0 = time.perf_counter()
    for g in range(genus_min, genus_max + 1):
        for ell in range(1, g + 1):
            for kind, expected in (
                ("fit1", g // ell),
                ("fit2", g // ell),
                ("fit3", (g - 1) // ell),
            ):
                if expected == 0:
                    try:
                        sf.pack_subsurfaces(g, kind, ell)
                    except sf.SurfaceError:
                        result.checked += 1
                    else:
                        result.violations.append(
                            f"g={g} {kind} ell={ell}: expected a rejection for zero pieces"
                        )
                    continue
                result.checked += 1
                plan = sf.pack_subsurfaces(g, kind, ell)
                if len(plan.marked_pieces) != expected:
                    result.violations.append(
                        f"g={g} {kind} ell={ell}: {len(plan.marked_pieces)} marked != {expected}"
                    )
                problems = sf.assembly_problems(plan, g)
                for p in problems:
                    result.violations.append(f"g={g} {kind} ell={ell}: {p}")
    result.elapsed = time.perf_counter() - t0
    return result
