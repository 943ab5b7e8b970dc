"""Verification orchestration and JSON catalog export."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import golay
from .geometry import (
    classify,
    four_partition,
    lines,
    points,
    structure_of,
    verify_orthogonality_skewness,
)
from .perm import GroupSet, affine_group_order, affine_mask, diamond_generators, generate_closure, orbit
from .ring import (
    AFFINE_IDEAL_ORDER,
    RING_ORDER_UNVERIFIED,
    CutDefinition,
    additive_closure,
    affine_patterns,
    census_report,
    is_affine_pattern,
    Gf4Pattern,
)
from .schreier import schreier_sims
from .symmetry import is_symmetric, verify_theorem
from .tiles import Pattern, encode, make_diamond_figure

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
TARGETS = ("group", "theorem", "geometry", "ring", "mog")


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


class Universe:
    """Lazily computed shared objects: G, the orbit of D, its structures."""

    @cached_property
    def diamond(self) -> Pattern:
        return make_diamond_figure()

    @cached_property
    def generators(self):
        return diamond_generators()

    @cached_property
    def group(self) -> GroupSet:
        return generate_closure(self.generators)

    @cached_property
    def orbit(self) -> list[Pattern]:
        return sorted(orbit(self.diamond, self.generators))

    @cached_property
    def classes(self):
        return classify(self.orbit)


@dataclass
class Checker:
    target: str
    values: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def expect(self, check: str, actual, expected) -> None:
        self.values[check] = actual
        if actual != expected:
            self.failures.append({"target": self.target, "check": check,
                                  "detail": f"got {actual!r}, expected {expected!r}"})

    def fail(self, check: str, exc: Exception) -> None:
        self.failures.append({"target": self.target, "check": check, "detail": str(exc)})

    def report(self, **extra) -> dict:
        return {"target": self.target, "passed": not self.failures,
                "failures": self.failures, **self.values, **extra}


def verify_group(u: Universe) -> dict:
    c = Checker("group")
    G = u.group
    c.expect("closure_size", len(G), 322_560)
    c.values["closure_depth"] = G.depth
    c.expect("schreier_sims_order", schreier_sims(u.generators, 16).order(), len(G))
    c.expect("affine_group_order", affine_group_order(4), len(G))
    c.expect("all_affine", bool(affine_mask(G.elements).all()), True)
    digits = np.asarray(u.diamond.digits)
    stab = int(np.count_nonzero(np.all(digits[G.elements] == digits, axis=1)))
    c.expect("diamond_stabilizer_order", stab, len(G) // 840)
    return c.report()


def verify_theorem_target(u: Universe) -> dict:
    c = Checker("theorem")
    c.expect("orbit_size", len(u.orbit), 840)
    c.expect("stabilizer_order", len(u.group) // len(u.orbit), 384)
    rep = verify_theorem(u.orbit, strict=False)
    c.expect("failures_count", len(rep.failures), 0)
    c.expect("center_lemma_failures_count", len(rep.center_lemma_failures), 0)
    out = c.report(**rep.to_dict())
    out["failures"] = c.failures + [{"target": "theorem", "check": "symmetry", "detail": s} for s in rep.failures]
    out["counterexamples"] = rep.failures
    out["passed"] = not out["failures"]
    return out


def structure_records(u: Universe) -> list[dict]:
    return [
        {
            "line": list(line.points),
            "label": line.label,
            "patterns": [encode(p) for p in pats],
            "four_partition": four_partition(line),
        }
        for line, pats in u.classes.items()
    ]


def verify_geometry(u: Universe) -> dict:
    c = Checker("geometry")
    c.expect("points", len(points()), 15)
    c.expect("lines", len(lines()), 35)
    try:
        classes = u.classes
    except AssertionError as exc:
        c.fail("classify", exc)
        return c.report()
    c.expect("classes", len(classes), 35)
    c.expect("class_size", sorted({len(v) for v in classes.values()}), [24])
    appearing = sorted({f for line in classes for f in line.points})
    c.expect("appearing_points", len(appearing), 15)
    zero_sums = 0
    for p in u.orbit:
        s = structure_of(p)
        zero_sums += not (s.diagrams[0].grid ^ s.diagrams[1].grid ^ s.diagrams[2].grid)
    c.expect("triples_summing_to_zero", zero_sums, len(u.orbit))
    orth = verify_orthogonality_skewness(classes, strict=False)
    c.expect("orthogonality_violations", len(orth.violations), 0)
    c.expect("orthogonal_pairs", orth.orthogonal_pairs, 280)
    c.expect("skew_pairs", orth.skew_pairs, 280)
    return c.report(orthogonality=orth.to_dict())


def verify_ring(u: Universe) -> dict:
    c = Checker("ring")
    closure = additive_closure(u.orbit)
    affine = affine_patterns()
    c.expect("closure_size", len(closure), AFFINE_IDEAL_ORDER)
    c.expect("closure_equals_affine_set", closure == set(affine), True)
    c.expect("affine_filter_count", sum(is_affine_pattern(p) for p in closure), AFFINE_IDEAL_ORDER)
    orbit_gf4 = {Gf4Pattern.from_pattern(p) for p in u.orbit}
    c.expect("orbit_inside_closure", len(orbit_gf4 & closure), len(u.orbit))
    c.expect("symmetric_count", sum(is_symmetric(p.to_pattern()) for p in affine), AFFINE_IDEAL_ORDER)
    cuts = [census_report(d, affine=affine).to_dict() for d in CutDefinition]
    return c.report(
        cut_census=cuts,
        matching_cut_definitions=[r["definition"] for r in cuts if r["equals_affine_set"]],
        ring_order_unverified=RING_ORDER_UNVERIFIED,
    )


def verify_mog(u: Universe) -> dict:
    c = Checker("mog")
    try:
        code = golay.build_golay()
        octads = golay.enumerate_octads(code)
        c.expect("weight_distribution", {str(k): v for k, v in code.weight_distribution().items()},
                 {str(k): v for k, v in golay.WEIGHT_DISTRIBUTION.items()})
        steiner = golay.verify_steiner(octads, strict=False)
        c.expect("steiner_histogram", steiner.histogram, {1: 42_504})
        c.expect("intersection_profile", steiner.intersection_profile, {8: 1, 4: 280, 2: 448, 0: 30})
        m24 = golay.m24_group(octads=octads)
        c.expect("m24_order", m24.order(), 759 * 322_560)
        stab = golay.octad_stabilizer(m24)
        c.expect("octad_stabilizer_order", stab.order(), golay.OCTAD_STABILIZER_ORDER)
        c.expect("octad_stabilizer_index", m24.order() // stab.order(), 759)
        _, restriction = golay.restrict_to_square(stab.elements(), u.group, strict=False)
        c.expect("restriction_kernel", restriction.kernel_size, 1)
        c.expect("restriction_equals_group", restriction.equals_group, True)
        _, corr = golay.brick_split_correspondence(octads, strict=False)
        c.expect("split_line_bijection", corr.bijective, True)
        c.expect("disjoint_octads_are_hyperplanes", corr.hyperplanes_match, True)
    except AssertionError as exc:
        c.fail(getattr(exc, "check", type(exc).__name__), exc)
        return c.report()
    return c.report(
        steiner=steiner.to_dict(),
        restriction=restriction.to_dict(),
        correspondence=corr.to_dict(),
    )


VERIFIERS = {
    "group": verify_group,
    "theorem": verify_theorem_target,
    "geometry": verify_geometry,
    "ring": verify_ring,
    "mog": verify_mog,
}


def run_verification(target: str, universe: Universe | None = None) -> dict:
    u = universe or Universe()
    targets = TARGETS if target == "all" else (target,)
    reports = {}
    for t in targets:
        log.info("verifying %s", t)
        reports[t] = VERIFIERS[t](u)
    failures = [f for r in reports.values() for f in r["failures"]]
    if target != "all":
        return {"schema_version": SCHEMA_VERSION, **reports[target]}
    return {"schema_version": SCHEMA_VERSION, "target": "all", "passed": not failures,
            "failures": failures, "reports": reports}


def export_bundle(out_dir: Path | str, universe: Universe | None = None) -> list[Path]:
    """Write orbit.json, structures.json and reports/*.json; returns the written paths."""
    u = universe or Universe()
    out = Path(out_dir)
    files = {
        "orbit.json": {"schema_version": SCHEMA_VERSION, "patterns": [encode(p) for p in u.orbit]},
        "structures.json": {"schema_version": SCHEMA_VERSION, "structures": structure_records(u)},
    }
    for t in TARGETS:
        files[f"reports/{t}.json"] = {"schema_version": SCHEMA_VERSION, **VERIFIERS[t](u)}

    orbit_set = set(files["orbit.json"]["patterns"])
    dangling = [s for rec in files["structures.json"]["structures"] for s in rec["patterns"] if s not in orbit_set]
    if dangling:
        raise AssertionError(f"structure catalog references patterns outside the orbit: {dangling[:3]}")

    written = []
    for name, payload in files.items():
        path = out / name
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(dump_json(payload))
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
        written.append(path)
    return written
