"""Derivation engine for fixed-point certificates.

Encodes the commuting/bootstrap corollaries and the genus-window
classification as inference rules, emits certificates that a fixed point
exists for the whole twist group at a given (genus, dimension), and
re-checks emitted certificates from scratch.

A certificate stores one schema node per (subset size, enclosure class)
rather than one node per subset; the verifier closes the gap by
exhaustively enumerating subsets up to a configurable genus bound and
checking that every subset is concluded by some node, re-running the
classifier and all arithmetic side conditions as it goes.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

from . import __version__
from ._parallel import worker_count
from .lickorish import (
    CurveSet,
    LickorishError,
    claim_fits_clause,
    curve_names,
    is_connected,
    is_connected_mask,
    size_classify,
)
from .surface import AssemblyPlan, assembly_problems, pack_subsurfaces


class BootstrapError(ValueError):
    """Malformed request to the derivation engine."""


class Theorem(str, Enum):
    TECHNICAL = "technical"
    MAIN = "main"
    KG = "kg"


class IsometryClassTag(str, Enum):
    """Symbolic isometry classes; only their fixed-point consequences
    are tracked (finite order forces elliptic under the torsion axiom)."""

    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    NEUTRAL_PARABOLIC = "neutral-parabolic"
    NON_NEUTRAL_PARABOLIC = "non-neutral-parabolic"
    FINITE_ORDER = "finite-order"

    def implies_elliptic(self, axioms: frozenset[str]) -> bool:
        if self is IsometryClassTag.ELLIPTIC:
            return True
        return self is IsometryClassTag.FINITE_ORDER and Axiom.R_TORSION.value in axioms


class Axiom(str, Enum):
    """Facts consumed without proof: metric or classical-algebra content."""

    R_TORSION = "R_TORSION"  # finite order implies a fixed point
    HELLY = "HELLY"  # nerve maps to low spheres are nullhomotopic
    ORBIT_TRANSITIVITY = "ORBIT_TRANSITIVITY"  # homeomorphic, connected complement
    SL2Z_TORSION_GENERATION = "SL2Z_TORSION_GENERATION"  # punctured-torus group
    HANDLE_SEPARATING_TWIST_ELLIPTIC = "HANDLE_SEPARATING_TWIST_ELLIPTIC"
    SEMISIMPLE = "SEMISIMPLE"
    FINITE_ABELIANIZATION = "FINITE_ABELIANIZATION"
    L1LOOP = "L1LOOP"  # twists fix a point or act as neutral parabolics
    SEPARATING_TWISTS_IN_KERNEL = "SEPARATING_TWISTS_IN_KERNEL"
    R_TREE_FIXED_POINT = "R_TREE_FIXED_POINT"  # the genus-2 group on R-trees


_BASE_AXIOMS = (
    Axiom.R_TORSION,
    Axiom.HELLY,
    Axiom.ORBIT_TRANSITIVITY,
    Axiom.SL2Z_TORSION_GENERATION,
)

_THEOREM_AXIOMS = {
    Theorem.TECHNICAL: (Axiom.HANDLE_SEPARATING_TWIST_ELLIPTIC,),
    Theorem.MAIN: (Axiom.SEMISIMPLE, Axiom.FINITE_ABELIANIZATION, Axiom.L1LOOP),
    Theorem.KG: (Axiom.SEPARATING_TWISTS_IN_KERNEL,),
}

_HANDLE_RULE_VIA = {
    Theorem.TECHNICAL: "hypothesis",
    Theorem.MAIN: "semisimple",
    Theorem.KG: "kernel",
}


def allowed_axioms(theorem: Theorem) -> frozenset[str]:
    tags = set(a.value for a in _BASE_AXIOMS)
    tags.update(a.value for a in _THEOREM_AXIOMS[theorem])
    tags.add(Axiom.R_TREE_FIXED_POINT.value)
    return frozenset(tags)


# ---------------------------------------------------------------------------
# counting lemma


@dataclass(frozen=True)
class CountCheck:
    """Evaluated instance of the floor-count inequality."""

    g: int
    k: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def count_inequality(g: int, k: int) -> CountCheck:
    """For even k: (k-1) * floor(2g/k) >= g; for odd k the same with
    2(g-1)/(k-1) inside the floor."""
    if not isinstance(g, int) or g < 1:
        raise BootstrapError(f"g must be a positive integer, got {g!r}")
    if not isinstance(k, int) or not 2 <= k <= 2 * g:
        raise BootstrapError(f"k must lie in [2, 2g] = [2, {2 * g}], got {k!r}")
    if k % 2 == 0:
        lhs = (k - 1) * (2 * g // k)
    else:
        lhs = (k - 1) * (2 * (g - 1) // (k - 1))
    return CountCheck(g, k, lhs, g)


# ---------------------------------------------------------------------------
# judgments, rule applications, certificates


@dataclass(frozen=True)
class Judgment:
    """What a node asserts; schema forms quantify over subsets."""

    form: str
    payload: dict

    def to_json(self) -> dict:
        return {"form": self.form, **self.payload}


@dataclass(frozen=True)
class RuleApp:
    """One rule application: side conditions are recomputable from
    params and witnesses alone."""

    id: int
    rule: str
    params: dict
    premises: tuple[int, ...]
    witnesses: dict
    judgment: Judgment

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "rule": self.rule,
            "params": self.params,
            "premises": list(self.premises),
            "witnesses": self.witnesses,
            "judgment": self.judgment.to_json(),
        }


@dataclass(frozen=True)
class Certificate:
    genus: int
    dim: int
    theorem: Theorem
    axioms: tuple[str, ...]
    nodes: tuple[RuleApp, ...]
    conclusion: Judgment
    version: str = __version__

    def to_json_dict(self) -> dict:
        return {
            "header": {
                "genus": self.genus,
                "dim": self.dim,
                "theorem": self.theorem.value,
                "version": self.version,
            },
            "axioms": list(self.axioms),
            "nodes": [n.to_json() for n in self.nodes],
            "conclusion": self.conclusion.to_json(),
        }

    def to_json(self) -> str:
        """Canonical byte-stable serialization (sorted keys)."""
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":")) + "\n"


@dataclass(frozen=True)
class Failure:
    """A blocked derivation: which rule refused, and why."""

    blocking_rule: str
    tag: str
    message: str
    params: dict = field(default_factory=dict)


class DerivationBlocked(Exception):
    def __init__(self, blocking_rule: str, tag: str, message: str, params: Optional[dict] = None):
        super().__init__(message)
        self.failure = Failure(blocking_rule, tag, message, params or {})


def _plan_json(plan: AssemblyPlan) -> dict:
    return {
        "pieces": [list(p) for p in plan.pieces],
        "gluings": [list(gl) for gl in plan.gluings],
        "marked": list(plan.marked_pieces),
    }


def _plan_from_json(obj: dict) -> AssemblyPlan:
    return AssemblyPlan(
        tuple(tuple(p) for p in obj["pieces"]),
        tuple(tuple(gl) for gl in obj["gluings"]),
        tuple(obj["marked"]),
    )


# ---------------------------------------------------------------------------
# single rule steps


def genus1_step(g: int, dim: int) -> RuleApp:
    """Base of the induction: every one- or two-curve subset has a fixed
    point, provided the twist in a handle-separating loop does.

    The step decomposes the surface into g disjoint one-holed tori, uses
    the orbit axiom to move the handle-separating loop onto each of their
    boundaries, intersects the commuting twist fixed sets, and applies
    the torsion bootstrap (n = g factors, singleton subsets) to the
    punctured-torus quotients.  It needs dim < g.
    """
    if not isinstance(g, int) or g < 3:
        raise BootstrapError("genus1_step applies for genus >= 3; genus 2 uses the R-tree fact")
    if dim < 0:
        raise BootstrapError("dim must be non-negative")
    if dim >= g:
        raise DerivationBlocked(
            "genus1_step",
            "DIM_TOO_LARGE",
            f"torsion bootstrap over {g} punctured-torus factors needs dim < {g}, got {dim}",
            {"g": g, "dim": dim},
        )
    plan = pack_subsurfaces(g, "fit1", 1)
    return RuleApp(
        id=-1,
        rule="genus1_step",
        params={"g": g, "dim": dim, "size_limit": 2, "n": g, "k": 1},
        premises=(),
        witnesses={
            "packing": _plan_json(plan),
            "torsion_bootstrap": {"n": g, "k": 1, "bound": g, "dim": dim},
        },
        judgment=Judgment("EllipticSchema", {"scope": "size_le", "size": 2}),
    )


def connected_step(s: CurveSet, g: int, dim: int) -> RuleApp:
    """Induction step for one connected subset: classify its enclosure,
    pack disjoint copies of the canonical piece, and apply the conjugate
    bootstrap with k = |S| - 1.

    The dimension side condition dim < n*k is recorded together with the
    floor-count instance that implies it whenever |S| is within the
    counting lemma's range.
    """
    if s.genus != g:
        raise BootstrapError("genus mismatch")
    if len(s) < 3:
        raise BootstrapError("connected_step handles subsets of size >= 3")
    if not is_connected(s):
        raise BootstrapError("connected_step requires a connected subset")
    try:
        claim = size_classify(s, g)
    except LickorishError as exc:
        raise DerivationBlocked(
            "connected_step", "CLASSIFIER_FAILED", str(exc), {"set": s.sorted_members()}
        ) from exc
    kind, ell = claim.packing()
    plan = pack_subsurfaces(g, kind, ell)
    n = len(plan.marked_pieces)
    k = len(s) - 1
    if dim >= n * k:
        raise DerivationBlocked(
            "connected_step",
            "DIM_CHECK_FAILED",
            f"need dim < n*k = {n}*{k} = {n * k}, got {dim}",
            {"set": s.sorted_members(), "n": n, "k": k, "dim": dim},
        )
    size = len(s)
    if 2 <= size <= 2 * g:
        cc = count_inequality(g, size)
        count_witness: dict[str, Any] = {"k": size, "lhs": cc.lhs, "rhs": cc.rhs}
    else:
        count_witness = {"k": None, "lhs": n * k, "rhs": g}
    return RuleApp(
        id=-1,
        rule="connected_step",
        params={
            "size": size,
            "claim_genus": claim.genus_bound,
            "claim_boundary": claim.boundary_bound,
            "pack_kind": kind,
            "pack_ell": ell,
            "n": n,
            "k": k,
        },
        premises=(),
        witnesses={
            "set": s.sorted_members(),
            "claim_case": claim.case_tag,
            "packing": _plan_json(plan),
            "count": count_witness,
            "dim_check": {"dim": dim, "bound": n * k},
        },
        judgment=Judgment("Elliptic", {"curves": s.sorted_members()}),
    )


# ---------------------------------------------------------------------------
# certificate schemas


def _schema_profiles(size: int, g: int) -> list[tuple[int, int, str, int]]:
    """(claim genus cap H, boundary B, packing kind, packing parameter)
    for the schema nodes covering connected subsets of the given size."""
    l = size // 2
    h1 = min(l, g)
    h2 = min(l, g - 1) if size % 2 else min(l - 1, g - 1)
    h3 = min(l - 1, g - 2)
    profiles = [(h1, 1, "fit1", h1)]
    if h2 >= 1:
        profiles.append((h2, 2, "fit3", h2))
    if h3 >= 0:
        profiles.append((h3, 3, "fit2", h3 + 1))
    return profiles


def _expected_nodes(g: int, dim: int, theorem: Theorem) -> list[RuleApp]:
    """Deterministic node inventory for a successful derivation."""
    nodes: list[RuleApp] = []

    def add(rule, params, premises, witnesses, judgment) -> int:
        nodes.append(RuleApp(len(nodes), rule, params, tuple(premises), witnesses, judgment))
        return len(nodes) - 1

    if g == 2:
        ax = add(
            "axiom",
            {"tag": Axiom.R_TREE_FIXED_POINT.value},
            (),
            {},
            Judgment("Axiom", {"tag": Axiom.R_TREE_FIXED_POINT.value}),
        )
        add(
            "r_tree_step",
            {"g": g, "dim": dim},
            (ax,),
            {},
            Judgment("Elliptic", {"curves": curve_names(g)}),
        )
        return nodes

    axiom_ids: dict[str, int] = {}
    for axiom in _BASE_AXIOMS + _THEOREM_AXIOMS[theorem]:
        axiom_ids[axiom.value] = add(
            "axiom",
            {"tag": axiom.value},
            (),
            {},
            Judgment("Axiom", {"tag": axiom.value}),
        )

    handle_id = add(
        "handle_separating_twist_elliptic",
        {"via": _HANDLE_RULE_VIA[theorem]},
        tuple(axiom_ids[a.value] for a in _THEOREM_AXIOMS[theorem]),
        {},
        Judgment("EllipticSubgroup", {"tag": "handle_separating_twist"}),
    )

    g1 = genus1_step(g, dim)
    genus1_id = add(
        g1.rule,
        g1.params,
        (
            handle_id,
            axiom_ids[Axiom.R_TORSION.value],
            axiom_ids[Axiom.ORBIT_TRANSITIVITY.value],
            axiom_ids[Axiom.SL2Z_TORSION_GENERATION.value],
            axiom_ids[Axiom.HELLY.value],
        ),
        g1.witnesses,
        g1.judgment,
    )

    size_node_ids: list[int] = []
    for size in range(3, 3 * g):
        smaller = tuple(size_node_ids)
        split_id = add(
            "split_commuting",
            {"size": size},
            (genus1_id,) + smaller,
            {},
            Judgment("EllipticSchema", {"scope": "disconnected_of_size", "size": size}),
        )
        new_ids = [split_id]
        for (h, b, kind, ell) in _schema_profiles(size, g):
            plan = pack_subsurfaces(g, kind, ell)
            n = len(plan.marked_pieces)
            k = size - 1
            if dim >= n * k:
                raise DerivationBlocked(
                    "connected_bootstrap",
                    "DIM_CHECK_FAILED",
                    f"size {size} profile ({h},{b}): need dim < {n}*{k}, got {dim}",
                    {"size": size, "n": n, "k": k, "dim": dim},
                )
            if 2 <= size <= 2 * g:
                cc = count_inequality(g, size)
                count_witness: dict[str, Any] = {"k": size, "lhs": cc.lhs, "rhs": cc.rhs}
            else:
                count_witness = {"k": None, "lhs": n * k, "rhs": g}
            cid = add(
                "connected_bootstrap",
                {
                    "size": size,
                    "claim_genus": h,
                    "claim_boundary": b,
                    "pack_kind": kind,
                    "pack_ell": ell,
                    "n": n,
                    "k": k,
                },
                (
                    genus1_id,
                    axiom_ids[Axiom.ORBIT_TRANSITIVITY.value],
                    axiom_ids[Axiom.HELLY.value],
                )
                + smaller,
                {
                    "packing": _plan_json(plan),
                    "count": count_witness,
                    "dim_check": {"dim": dim, "bound": n * k},
                },
                Judgment(
                    "EllipticSchema",
                    {
                        "scope": "connected_of_size",
                        "size": size,
                        "claim_genus": h,
                        "claim_boundary": b,
                    },
                ),
            )
            new_ids.append(cid)
        size_node_ids.extend(new_ids)

    add(
        "conclude",
        {"g": g, "dim": dim},
        (genus1_id,) + tuple(size_node_ids),
        {},
        Judgment("Elliptic", {"curves": curve_names(g)}),
    )
    return nodes


def _derive(g: int, dim: int, theorem: Theorem) -> Certificate | Failure:
    if not isinstance(g, int) or g < 2:
        raise BootstrapError(f"genus must be an integer >= 2, got {g!r}")
    if not isinstance(dim, int) or dim < 0:
        raise BootstrapError(f"dim must be a non-negative integer, got {dim!r}")
    if g == 2:
        if dim >= 2:
            return Failure(
                "r_tree_step",
                "DIM_TOO_LARGE",
                "the genus-2 route uses the R-tree fixed-point property, which needs dim <= 1",
                {"g": g, "dim": dim},
            )
        axioms = (Axiom.R_TREE_FIXED_POINT.value,)
        nodes = _expected_nodes(g, dim, theorem)
        return Certificate(
            genus=g,
            dim=dim,
            theorem=theorem,
            axioms=tuple(sorted(axioms)),
            nodes=tuple(nodes),
            conclusion=Judgment("Elliptic", {"curves": curve_names(g)}),
        )
    if dim >= g:
        return Failure(
            "genus1_step",
            "DIM_TOO_LARGE",
            f"torsion bootstrap over {g} punctured-torus factors needs dim < {g}, got {dim}",
            {"g": g, "dim": dim},
        )
    try:
        nodes = _expected_nodes(g, dim, theorem)
    except DerivationBlocked as exc:
        return exc.failure
    axioms = tuple(sorted(a.value for a in _BASE_AXIOMS + _THEOREM_AXIOMS[theorem]))
    return Certificate(
        genus=g,
        dim=dim,
        theorem=theorem,
        axioms=axioms,
        nodes=tuple(nodes),
        conclusion=Judgment("Elliptic", {"curves": curve_names(g)}),
    )


def derive_technical(g: int, dim: int) -> Certificate | Failure:
    """Certificate that the twist group fixes a point, assuming the twist
    in a handle-separating loop does, for actions in dimension < g."""
    return _derive(g, dim, Theorem.TECHNICAL)


def derive_main(g: int, dim: int) -> Certificate | Failure:
    """As derive_technical, with the handle-separating hypothesis derived
    from semisimplicity, finite twist-centralizer abelianizations, and
    the fix-or-neutral-parabolic dichotomy."""
    return _derive(g, dim, Theorem.MAIN)


def derive_kg(g: int, dim: int) -> Certificate | Failure:
    """As derive_technical for the two-step nilpotent quotient image,
    where separating twists die in the kernel."""
    return _derive(g, dim, Theorem.KG)


# ---------------------------------------------------------------------------
# the independent checker


@dataclass(frozen=True)
class Violation:
    node_id: int
    rule: str
    field: str
    claimed: Any
    recomputed: Any
    message: str

    def __str__(self) -> str:
        return (
            f"node {self.node_id} [{self.rule}] {self.field}: {self.message} "
            f"(claimed {self.claimed!r}, recomputed {self.recomputed!r})"
        )


def certificate_from_json_dict(doc: dict) -> Certificate:
    header = doc["header"]
    nodes = tuple(
        RuleApp(
            id=n["id"],
            rule=n["rule"],
            params=n["params"],
            premises=tuple(n["premises"]),
            witnesses=n["witnesses"],
            judgment=Judgment(n["judgment"]["form"], {k: v for k, v in n["judgment"].items() if k != "form"}),
        )
        for n in doc["nodes"]
    )
    concl = doc["conclusion"]
    return Certificate(
        genus=header["genus"],
        dim=header["dim"],
        theorem=Theorem(header["theorem"]),
        axioms=tuple(doc["axioms"]),
        nodes=nodes,
        conclusion=Judgment(concl["form"], {k: v for k, v in concl.items() if k != "form"}),
        version=header["version"],
    )


def certificate_from_json(text: str) -> Certificate:
    return certificate_from_json_dict(json.loads(text))


EXHAUSTIVE_DEFAULT = 6
EXHAUSTIVE_HARD_CAP = 8


def verify(cert: Certificate, exhaustive_max_genus: int = EXHAUSTIVE_DEFAULT) -> list[Violation]:
    """Re-check a certificate from scratch; empty list means Ok.

    Nothing emitter-computed is trusted: the expected node inventory is
    re-derived from the header, packing plans are re-validated, count
    instances re-evaluated, and (for genus up to the exhaustive bound)
    every subset of the generator set is re-classified and matched
    against a covering node.
    """
    violations: list[Violation] = []

    def bad(node_id, rule, fieldname, claimed, recomputed, message):
        violations.append(Violation(node_id, rule, fieldname, claimed, recomputed, message))

    g, dim, theorem = cert.genus, cert.dim, cert.theorem
    if not isinstance(g, int) or g < 2 or not isinstance(dim, int) or dim < 0:
        bad(-1, "header", "genus/dim", (g, dim), None, "header out of range")
        return violations

    allowed = allowed_axioms(theorem)
    extra = set(cert.axioms) - allowed
    if extra:
        bad(-1, "header", "axioms", sorted(extra), sorted(allowed), "axiom not allowed for theorem")

    if dim >= g:
        bad(-1, "header", "dim", dim, g - 1, "dimension bound of the derivation exceeded")
        return violations

    try:
        expected = _expected_nodes(g, dim, theorem)
    except DerivationBlocked as exc:
        bad(-1, "header", "derivable", (g, dim), None, f"no valid inventory: {exc.failure.message}")
        return violations

    expected_axioms = (
        (Axiom.R_TREE_FIXED_POINT.value,)
        if g == 2
        else tuple(sorted(a.value for a in _BASE_AXIOMS + _THEOREM_AXIOMS[theorem]))
    )
    if tuple(cert.axioms) != tuple(sorted(expected_axioms)):
        bad(-1, "header", "axioms", list(cert.axioms), sorted(expected_axioms), "axiom list mismatch")

    # ids dense and premises acyclic (strictly earlier)
    for pos, node in enumerate(cert.nodes):
        if node.id != pos:
            bad(node.id, node.rule, "id", node.id, pos, "node ids must be dense and ordered")
        for p in node.premises:
            if not (0 <= p < pos):
                bad(node.id, node.rule, "premises", p, f"< {pos}", "premise must reference an earlier node")

    # inventory comparison: rules, params, premises, judgments
    if len(cert.nodes) != len(expected):
        bad(-1, "inventory", "node_count", len(cert.nodes), len(expected), "wrong number of nodes")
    for pos in range(min(len(cert.nodes), len(expected))):
        got, want = cert.nodes[pos], expected[pos]
        if got.rule != want.rule:
            bad(got.id, got.rule, "rule", got.rule, want.rule, "unexpected rule at this position")
            continue
        if dict(got.params) != dict(want.params):
            bad(got.id, got.rule, "params", got.params, want.params, "parameters do not match the schema")
        if tuple(got.premises) != tuple(want.premises):
            bad(got.id, got.rule, "premises", list(got.premises), list(want.premises), "premise edges do not match")
        if _canon(got.witnesses) != _canon(want.witnesses):
            bad(got.id, got.rule, "witnesses", got.witnesses, want.witnesses, "witness data does not match recomputation")
        if got.judgment.to_json() != want.judgment.to_json():
            bad(got.id, got.rule, "judgment", got.judgment.to_json(), want.judgment.to_json(), "judgment mismatch")

    # per-node side conditions, from the node's own data
    for node in cert.nodes:
        if node.rule == "genus1_step":
            nd = node.params.get("n")
            if nd != g:
                bad(node.id, node.rule, "params.n", nd, g, "torsion bootstrap factor count must be g")
            if dim >= g:
                bad(node.id, node.rule, "dim", dim, g - 1, "genus1_step needs dim < g")
            _check_plan_witness(node, "fit1", 1, g, g, bad)
        elif node.rule == "connected_bootstrap":
            size = node.params.get("size")
            n, k = node.params.get("n"), node.params.get("k")
            kind, ell = node.params.get("pack_kind"), node.params.get("pack_ell")
            if not isinstance(size, int) or not (3 <= size <= 3 * g - 1):
                bad(node.id, node.rule, "params.size", size, f"3..{3 * g - 1}", "size out of range")
                continue
            if k != size - 1:
                bad(node.id, node.rule, "params.k", k, size - 1, "conjugate bootstrap uses k = size - 1")
            expected_n = _expected_pack_count(g, kind, ell)
            if n != expected_n:
                bad(node.id, node.rule, "params.n", n, expected_n, "packing count mismatch")
            if isinstance(n, int) and isinstance(k, int) and dim >= n * k:
                bad(node.id, node.rule, "dim_check", dim, n * k - 1, "dimension side condition violated")
            _check_plan_witness(node, kind, ell, expected_n, g, bad)
            cw = node.witnesses.get("count", {})
            if 2 <= size <= 2 * g:
                cc = count_inequality(g, size)
                if cw.get("k") != size or cw.get("lhs") != cc.lhs or cw.get("rhs") != cc.rhs:
                    bad(node.id, node.rule, "witnesses.count", cw,
                        {"k": size, "lhs": cc.lhs, "rhs": cc.rhs}, "count instance mismatch")
                if not cc.holds:
                    bad(node.id, node.rule, "count", (cc.lhs, cc.rhs), None, "count inequality fails")
            elif cw.get("k") is not None:
                bad(node.id, node.rule, "witnesses.count.k", cw.get("k"), None,
                    "size outside the counting lemma range must use the direct bound")
        elif node.rule == "r_tree_step":
            if g != 2 or dim > 1:
                bad(node.id, node.rule, "dim", (g, dim), (2, 1), "R-tree step needs genus 2 and dim <= 1")

    # conclusion
    if cert.conclusion.form != "Elliptic" or cert.conclusion.payload.get("curves") != curve_names(g):
        bad(-1, "conclusion", "conclusion", cert.conclusion.to_json(),
            {"form": "Elliptic", "curves": curve_names(g)}, "conclusion must cover the full generator set")

    if violations:
        return violations

    # subset coverage
    if g <= min(exhaustive_max_genus, EXHAUSTIVE_HARD_CAP) and g >= 3:
        violations.extend(_exhaustive_coverage(cert))
    return violations


def _canon(obj):
    """JSON-shape normalisation so in-memory tuples compare equal to
    round-tripped lists."""
    if isinstance(obj, dict):
        return {k: _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canon(v) for v in obj]
    return obj


def _expected_pack_count(g: int, kind, ell) -> Optional[int]:
    if kind == "fit1" or kind == "fit2":
        return g // ell if isinstance(ell, int) and ell >= 1 else None
    if kind == "fit3":
        return (g - 1) // ell if isinstance(ell, int) and ell >= 1 else None
    return None


def _check_plan_witness(node: RuleApp, kind, ell, expected_marked, g: int, bad) -> None:
    obj = node.witnesses.get("packing")
    if not isinstance(obj, dict):
        bad(node.id, node.rule, "witnesses.packing", obj, "plan", "missing packing witness")
        return
    try:
        plan = _plan_from_json(obj)
    except Exception:
        bad(node.id, node.rule, "witnesses.packing", obj, "plan", "unparseable packing witness")
        return
    try:
        canonical = pack_subsurfaces(g, kind, ell)
    except Exception as exc:
        bad(node.id, node.rule, "params.pack", (kind, ell), None, f"invalid packing request: {exc}")
        return
    problems = assembly_problems(plan, g)
    for p in problems:
        bad(node.id, node.rule, "witnesses.packing", p, None, "assembly check failed")
    if plan != canonical:
        bad(node.id, node.rule, "witnesses.packing", obj, _plan_json(canonical),
            "packing differs from the canonical construction")
    if expected_marked is not None and len(plan.marked_pieces) != expected_marked:
        bad(node.id, node.rule, "witnesses.packing.marked", len(plan.marked_pieces),
            expected_marked, "marked piece count mismatch")


def _coverage_summary(cert: Certificate) -> dict:
    """Picklable digest of which subsets the certificate's nodes cover."""
    conn_nodes: dict[tuple[int, int], int] = {}  # (size, boundary) -> genus cap
    split_sizes: set[int] = set()
    genus1_ok = False
    for node in cert.nodes:
        if node.rule == "genus1_step":
            genus1_ok = True
        elif node.rule == "split_commuting":
            split_sizes.add(node.params["size"])
        elif node.rule == "connected_bootstrap":
            key = (node.params["size"], node.params["claim_boundary"])
            conn_nodes[key] = max(conn_nodes.get(key, -1), node.params["claim_genus"])
    return {
        "g": cert.genus,
        "conn": conn_nodes,
        "splits": split_sizes,
        "genus1": genus1_ok,
    }


def _scan_coverage(summary: dict, lo: int, hi: int) -> list[Violation]:
    """Check one bitmask range of subsets against the coverage digest,
    re-running the classifier for every connected subset."""
    g = summary["g"]
    conn_nodes, split_sizes, genus1_ok = summary["conn"], summary["splits"], summary["genus1"]
    violations: list[Violation] = []
    for mask in range(lo, hi):
        size = mask.bit_count()
        if size <= 2:
            if not genus1_ok:
                violations.append(Violation(-1, "coverage", "size<=2", None, None,
                                            "no genus1_step node covers small subsets"))
                return violations
            continue
        if not is_connected_mask(g, mask):
            if size not in split_sizes:
                violations.append(Violation(-1, "coverage", "split", size, sorted(split_sizes),
                                            f"no split node for disconnected subsets of size {size}"))
                return violations
            continue
        s = CurveSet.from_mask(g, mask)
        try:
            claim = size_classify(s, g)
        except LickorishError as exc:
            violations.append(Violation(-1, "coverage", "classifier", s.sorted_members(), None,
                                        f"classifier failed: {exc}"))
            continue
        if not claim_fits_clause(claim, size):
            violations.append(Violation(-1, "coverage", "clause", (claim.genus_bound, claim.boundary_bound),
                                        size, "claim does not fit either classification clause"))
        cap = conn_nodes.get((size, claim.boundary_bound), -1)
        if claim.genus_bound > cap:
            violations.append(Violation(
                -1, "coverage", "connected", (size, claim.genus_bound, claim.boundary_bound), cap,
                f"no schema node covers {s.sorted_members()}"))
            if len(violations) > 20:
                return violations
    return violations


def _exhaustive_coverage(cert: Certificate) -> list[Violation]:
    """Enumerate every subset of the generator set and confirm some node
    concludes it; large ranges are partitioned across a process pool."""
    summary = _coverage_summary(cert)
    total = 1 << (3 * cert.genus - 1)
    workers = worker_count()
    if workers <= 1 or total < (1 << 18):
        return _scan_coverage(summary, 1, total)
    violations: list[Violation] = []
    step = (total + workers - 1) // workers
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_scan_coverage, summary, lo, min(lo + step, total))
            for lo in range(1, total, step)
        ]
        for fut in futures:
            violations.extend(fut.result())
    return violations[:32]
