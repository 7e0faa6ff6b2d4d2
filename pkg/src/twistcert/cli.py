"""Command-line front end.

Subcommands:

* ``lemma <goodchains|badchains|size|fit|count>`` -- brute-force sweeps
  over a genus range; exit 1 when any case fails.
* ``classify`` -- enclosure claims for one subset or all connected ones.
* ``certify`` -- derive a fixed-point certificate and write it to a file.
* ``check`` -- independently re-verify a certificate file.
* ``nerve`` -- nerve/join/homology property demos.

Exit codes: 0 pass, 1 verification failure, 2 usage or I/O error.
``--json`` prints a machine report with sorted keys and no timing, so
identical inputs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from itertools import combinations
from typing import Optional

from . import __version__
from . import lickorish as lk
from . import nervecplx as nc
from . import sweeps
from .bootstrap import (
    EXHAUSTIVE_DEFAULT,
    EXHAUSTIVE_HARD_CAP,
    Failure,
    Theorem,
    certificate_from_json,
    derive_kg,
    derive_main,
    derive_technical,
    verify,
)


def _emit(args, payload: dict, human_lines: list[str], elapsed: float) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in human_lines:
            print(line)
        print(f"wall time: {elapsed:.2f}s")


def _sweep_report(args, result: sweeps.SweepResult, extra: Optional[dict] = None) -> int:
    payload = {
        "command": args.command,
        "checked": result.checked,
        "violations": result.violations,
        "pass": result.passed,
    }
    if extra:
        payload.update(extra)
    status = "PASS" if result.passed else "FAIL"
    lines = [f"{args.command}: {status} ({result.checked} cases, {len(result.violations)} violations)"]
    lines += [f"  violation: {v}" for v in result.violations[:20]]
    if len(result.violations) > 20:
        lines.append(f"  ... and {len(result.violations) - 20} more")
    _emit(args, payload, lines, result.elapsed)
    return 0 if result.passed else 1


def _cmd_lemma(args) -> int:
    lo, hi = args.genus_min, args.genus_max
    if lo > hi:
        print("error: --genus-min exceeds --genus-max", file=sys.stderr)
        return 2
    extra = {"lemma": args.which, "genus_min": lo, "genus_max": hi}
    if args.which == "goodchains":
        return _sweep_report(args, sweeps.sweep_goodchains(max(lo, 2), hi), extra)
    if args.which == "badchains":
        return _sweep_report(args, sweeps.sweep_badchains(max(lo, 2), hi), extra)
    if args.which == "size":
        return _sweep_report(args, sweeps.sweep_size_soundness(max(lo, 2), hi), extra)
    if args.which == "fit":
        return _sweep_report(args, sweeps.sweep_fit(max(lo, 1), hi), extra)
    if args.which == "count":
        return _sweep_report(args, sweeps.sweep_count(max(lo, 1), hi), extra)
    print(f"error: unknown lemma {args.which!r}", file=sys.stderr)
    return 2


def _cmd_classify(args) -> int:
    g = args.genus
    t0 = time.perf_counter()
    if args.set:
        names = [n.strip() for n in args.set.split(",") if n.strip()]
        try:
            s = lk.CurveSet.of(g, names)
            if not lk.is_connected(s) or not names:
                print("error: classify needs a nonempty connected set", file=sys.stderr)
                return 2
            claim = lk.size_classify(s, g)
        except lk.LickorishError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        payload = {
            "command": "classify",
            "genus": g,
            "set": s.sorted_members(),
            "claim": {
                "genus_bound": claim.genus_bound,
                "boundary_bound": claim.boundary_bound,
                "nonseparating_required": claim.nonseparating_required,
                "case": claim.case_tag,
            },
            "pass": True,
        }
        lines = [
            f"classify g={g} {','.join(s.sorted_members())}: enclosure genus <= "
            f"{claim.genus_bound}, boundary <= {claim.boundary_bound} [{claim.case_tag}]"
        ]
        _emit(args, payload, lines, time.perf_counter() - t0)
        return 0

    counts: dict[str, int] = {}
    failures: list[str] = []
    checked = 0
    for mask in range(1, 1 << (3 * g - 1)):
        if not lk.is_connected_mask(g, mask):
            continue
        checked += 1
        s = lk.CurveSet.from_mask(g, mask)
        try:
            claim = lk.size_classify(s, g)
        except lk.LickorishError as exc:
            failures.append(f"{s.sorted_members()}: {exc}")
            continue
        key = f"({claim.genus_bound},{claim.boundary_bound})"
        counts[key] = counts.get(key, 0) + 1
    payload = {
        "command": "classify",
        "genus": g,
        "checked": checked,
        "claims": dict(sorted(counts.items())),
        "violations": failures,
        "pass": not failures,
    }
    lines = [f"classify --all g={g}: {checked} connected subsets"]
    lines += [f"  claim {k}: {v} subsets" for k, v in sorted(counts.items())]
    lines += [f"  violation: {f}" for f in failures]
    _emit(args, payload, lines, time.perf_counter() - t0)
    return 0 if not failures else 1


_DERIVERS = {
    Theorem.TECHNICAL: derive_technical,
    Theorem.MAIN: derive_main,
    Theorem.KG: derive_kg,
}


def _cmd_certify(args) -> int:
    t0 = time.perf_counter()
    theorem = Theorem(args.theorem)
    result = _DERIVERS[theorem](args.genus, args.dim)
    if isinstance(result, Failure):
        payload = {
            "command": "certify",
            "genus": args.genus,
            "dim": args.dim,
            "theorem": theorem.value,
            "pass": False,
            "blocking": {
                "rule": result.blocking_rule,
                "tag": result.tag,
                "message": result.message,
                "params": result.params,
            },
        }
        lines = [
            f"certify g={args.genus} dim={args.dim} {theorem.value}: FAIL",
            f"  blocked at {result.blocking_rule} [{result.tag}]: {result.message}",
        ]
        _emit(args, payload, lines, time.perf_counter() - t0)
        return 1
    text = result.to_json()
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    payload = {
        "command": "certify",
        "genus": args.genus,
        "dim": args.dim,
        "theorem": theorem.value,
        "nodes": len(result.nodes),
        "axioms": list(result.axioms),
        "out": args.out,
        "pass": True,
    }
    lines = [
        f"certify g={args.genus} dim={args.dim} {theorem.value}: PASS "
        f"({len(result.nodes)} nodes, axioms: {', '.join(result.axioms)})"
    ]
    if args.out:
        lines.append(f"  wrote {args.out}")
    _emit(args, payload, lines, time.perf_counter() - t0)
    return 0


def _cmd_check(args) -> int:
    t0 = time.perf_counter()
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            cert = certificate_from_json(fh.read())
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: cannot load certificate {args.file}: {exc}", file=sys.stderr)
        return 2
    bound = args.exhaustive_max_genus
    if bound > EXHAUSTIVE_HARD_CAP:
        print(
            f"warning: exhaustive bound {bound} capped at {EXHAUSTIVE_HARD_CAP} "
            f"(2^{3 * EXHAUSTIVE_HARD_CAP - 1} subsets)",
            file=sys.stderr,
        )
        bound = EXHAUSTIVE_HARD_CAP
    elif bound > EXHAUSTIVE_DEFAULT:
        print(f"warning: exhaustive sweep above genus {EXHAUSTIVE_DEFAULT} is slow", file=sys.stderr)
    violations = verify(cert, exhaustive_max_genus=bound)
    payload = {
        "command": "check",
        "file": args.file,
        "genus": cert.genus,
        "dim": cert.dim,
        "theorem": cert.theorem.value,
        "violations": [str(v) for v in violations],
        "pass": not violations,
    }
    status = "PASS" if not violations else "FAIL"
    lines = [f"check {args.file}: {status} (g={cert.genus}, dim={cert.dim}, {cert.theorem.value})"]
    lines += [f"  violation: {v}" for v in violations[:20]]
    if len(violations) > 20:
        lines.append(f"  ... and {len(violations) - 20} more")
    _emit(args, payload, lines, time.perf_counter() - t0)
    return 0 if not violations else 1


def _demo_helly1d(trials: int, seed: int) -> sweeps.SweepResult:
    """Random interval families on the line: a nerve containing the full
    1-skeleton is the whole simplex."""
    rng = random.Random(seed)
    result = sweeps.SweepResult("helly1d")
    t0 = time.perf_counter()
    for _ in range(trials):
        n = rng.randint(2, 7)
        fam = []
        for _ in range(n):
            a = rng.randint(0, 12)
            b = a + rng.randint(0, 6)
            fam.append(frozenset(range(a, b + 1)))
        nv = nc.nerve(fam)
        result.checked += 1
        full_skeleton = all(
            nv.has_simplex({i, j}) for i in range(n) for j in range(i + 1, n)
        )
        if full_skeleton and not nv.has_simplex(range(n)):
            result.violations.append(f"family {sorted(map(sorted, fam))}: 1-skeleton full but nerve incomplete")
    result.elapsed = time.perf_counter() - t0
    return result


def _demo_sphere_joins(limit: int = 7) -> sweeps.SweepResult:
    """Joins of simplex boundaries carry the homology of the sphere of
    dimension (sum of the k_i) - 1, for every composition up to the cap."""
    result = sweeps.SweepResult("sphere-joins")
    t0 = time.perf_counter()

    def compositions(total: int):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest

    for total in range(1, limit + 1):
        for parts in compositions(total):
            result.checked += 1
            factors = []
            offset = 0
            for k in parts:
                verts = range(offset, offset + k + 1)
                factors.append(nc.SimplicialComplex(combinations(verts, k)))
                offset += k + 1
            joined = nc.join_all(factors)
            if not nc.is_homology_sphere(joined, total - 1):
                result.violations.append(
                    f"join of boundaries {parts}: not a homology {total - 1}-sphere "
                    f"(betti {nc.betti_z2(joined).values})"
                )
    result.elapsed = time.perf_counter() - t0
    return result


def _cmd_nerve(args) -> int:
    if args.demo == "helly1d":
        result = _demo_helly1d(trials=500, seed=20090803)
    else:
        result = _demo_sphere_joins()
    return _sweep_report(args, result, {"demo": args.demo})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistcert",
        description="verify twist-generator surface combinatorics and emit/check fixed-point certificates",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lemma", help="brute-force one lemma over a genus range")
    p.add_argument("which", choices=["goodchains", "badchains", "size", "fit", "count"])
    p.add_argument("--genus-min", type=int, default=2)
    p.add_argument("--genus-max", type=int, default=5)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_lemma)

    p = sub.add_parser("classify", help="enclosure claims for curve subsets")
    p.add_argument("--genus", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--all", action="store_true")
    group.add_argument("--set", type=str, help="comma-separated curve ids, e.g. a1,b1,g1")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("certify", help="derive a fixed-point certificate")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--theorem", choices=[t.value for t in Theorem], default="technical")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("check", help="re-verify a certificate file")
    p.add_argument("file")
    p.add_argument("--exhaustive-max-genus", type=int, default=EXHAUSTIVE_DEFAULT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("nerve", help="nerve/join/homology demos")
    p.add_argument("--demo", choices=["helly1d", "sphere-joins"], required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_nerve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (lk.LickorishError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
