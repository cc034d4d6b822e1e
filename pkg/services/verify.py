"""
Invariant suites run by the `verify` command. Each check returns a JSON-ready report
with a boolean `passed`.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from services import cutproject, diffraction, dualcell, inflation, lattice, matching
from services.covering import cover
from services.errors import InvalidJobConfigError, QuasitileError
from services.exactnum import AB_FRAME, TAU, to_float
from services.patch import Patch, patch_from_schema, patch_to_schema
from services.polygon import contains

logger = logging.getLogger(__name__)

RESTRICTION_LIMIT = 24
INJECTIVITY_BOUND = 20
# rotation steps of the scheme symmetry generator in E_par and E_perp
SCHEME_SYMMETRY = {"ab": ("C8", 1, 3), "penrose": ("C5", 2, 4)}
SCHEME_OF = {"ab": "ab", "penrose": "penrose", "ttt": "penrose", "fibonacci": "fibonacci"}
RULE_SEEDS = {"ab": "star", "penrose": "sun", "fibonacci": "A"}
COVERINGS = {"penrose": "decagon", "ttt": "pentagons"}
REPETITIVITY_STEPS = {"ab": 5, "penrose": 6}
PROBE_RADIUS = 2.0
FREQUENCY_STEPS = {"ab": 5, "penrose": 8}
FREQUENCY_KINDS = {"ab": ("triangle", "rhomb"), "penrose": ("thick-half", "thin-half")}
SECTION_LENGTH = 1e4
ALIGN_WINDOW = 1000
FIXED_POINT_STEPS = 23
MUTATION_TRIALS = 100
MUTATION_SEED = 20


@dataclass
class CheckOptions:
    radius: Optional[float] = None
    steps: Optional[int] = None
    cutoff: float = 1e-3
    k_max: float = 10.0
    threads: Optional[int] = None


# --- lattice and projection ---

def check_crystallographic_restriction(tiling: str, options: CheckOptions) -> dict:
    orders = [n for n in range(1, RESTRICTION_LIMIT + 1) if lattice.crystallographic_restriction(n)]
    return {
        "passed": orders == [1, 2, 3, 4, 6],
        "orders": orders,
        "limit": RESTRICTION_LIMIT,
        "minimal_dimension": {str(n): lattice.minimal_embedding_dimension(n) for n in (5, 8, 10, 12)},
    }


def check_projection(tiling: str, options: CheckOptions) -> dict:
    scheme = lattice.get_scheme(SCHEME_OF[tiling])
    injective = lattice.check_projection_injective(scheme, bound=INJECTIVITY_BOUND)
    equivariant = None
    if scheme.name in SCHEME_SYMMETRY:
        name, par_steps, perp_steps = SCHEME_SYMMETRY[scheme.name]
        rep = scheme.lattice.point_group(name)
        equivariant = rep.preserves_lattice() and lattice.check_scheme_equivariance(scheme, rep, par_steps, perp_steps)
    return {
        "passed": injective and equivariant is not False,
        "scheme": scheme.name,
        "injective": injective,
        "equivariant": equivariant,
    }


def check_volume_partition(tiling: str, options: CheckOptions) -> dict:
    scheme = lattice.get_scheme(SCHEME_OF[tiling])
    kinds = {}
    for kind in ("T", "T*"):
        total, covolume = dualcell.volume_partition(scheme, kind)
        kinds[kind] = {"total": list(total.to_pair()), "covolume": list(covolume.to_pair()), "equal": total == covolume}
    return {"passed": all(k["equal"] for k in kinds.values()), "scheme": scheme.name, "kinds": kinds}


def check_duality(tiling: str, options: CheckOptions) -> dict:
    scheme = lattice.get_scheme(SCHEME_OF[tiling])
    defects = dualcell.duality_defects(scheme.lattice)
    return {"passed": not defects, "lattice": scheme.lattice.name, "defects": [list(d) for d in defects]}


# --- cut-and-project ---

def _vertex_keys(patch: Patch, radius: float) -> set:
    r_sq = radius ** 2
    xy = patch.vertex_array()
    return {patch.points[i].key() for i in range(len(xy)) if float(np.sum(xy[i] ** 2)) <= r_sq - 1e-7}


def check_cut_vs_section(tiling: str, options: CheckOptions) -> dict:
    radius = options.radius or 20.0
    builders = {
        "ab": (cutproject.ab_vertex_set, cutproject.ab_section_tiling),
        "penrose": (cutproject.penrose_vertex_set, cutproject.penrose_tiling),
        "ttt": (cutproject.triangle_vertex_set, cutproject.triangle_tiling),
    }
    cut_fn, section_fn = builders[tiling]
    # section tiles are clipped to the disk, so compare one edge inside it
    cut = _vertex_keys(cut_fn(radius, threads=options.threads), radius - 2)
    section = _vertex_keys(section_fn(radius, threads=options.threads), radius - 2)
    return {
        "passed": cut == section,
        "radius": radius,
        "cut_vertices": len(cut),
        "section_vertices": len(section),
        "only_cut": len(cut - section),
        "only_section": len(section - cut),
    }


def check_inflation_in_window(tiling: str, options: CheckOptions) -> dict:
    """Vertices of the inflated 8-fold star lift into Z4 with perpendicular images in the closed octagon."""
    steps = 2 if options.steps is None else options.steps
    scheme = lattice.ammann_beenker_scheme()
    window = cutproject.octagon()
    patch = inflation.inflate("ab", "star", steps, options.threads)
    outside = []
    for p in patch.points:
        _, perp = lattice.module_project(scheme, cutproject.module_lift(AB_FRAME, p))
        if not contains(AB_FRAME, window, perp, closed=True):
            outside.append(list(AB_FRAME.to_floats(p)))
    return {"passed": not outside, "steps": steps, "vertices": len(patch.points), "outside": outside[:10]}


# --- substitution ---

def check_substitution_rule(tiling: str, options: CheckOptions) -> dict:
    rule = inflation.get_rule(tiling)
    per_kind = inflation.verify_rule(rule)
    matrix = inflation.substitution_matrix(rule)
    frequencies = inflation.tile_frequencies(rule)
    rule_ok = all(all(v for k, v in r.items() if k != "children") for r in per_kind.values())
    perron = inflation.perron_matches_factor(rule)
    return {
        "passed": rule_ok and matrix.is_primitive() and perron,
        "rule": rule.name,
        "kinds": per_kind,
        "matrix": matrix.tolist(),
        "primitive": matrix.is_primitive(),
        "perron_matches_factor": perron,
        "frequencies": {k: list(v.to_pair()) for k, v in frequencies.items()},
    }


def check_repetitivity(tiling: str, options: CheckOptions) -> dict:
    steps = options.steps if options.steps is not None else REPETITIVITY_STEPS[tiling]
    patch = inflation.inflate(tiling, RULE_SEEDS[tiling], steps, options.threads)
    report = inflation.repetitivity_check(patch, probe_radius=PROBE_RADIUS)
    report["passed"] = report["singletons"] == 0
    report["steps"] = steps
    report["tiles"] = len(patch.tiles)
    return report


def _ratio(counts: Dict[str, int], top: str, bottom: str) -> float:
    return counts[top] / counts[bottom] if counts[bottom] else math.inf


def check_frequencies(tiling: str, options: CheckOptions) -> dict:
    """Tile count ratio of an inflated seed against the Perron eigenvector, within 1%."""
    rule = inflation.get_rule(tiling)
    top, bottom = FREQUENCY_KINDS[tiling]
    freqs = inflation.tile_frequencies(rule)
    expected = to_float(freqs[top] / freqs[bottom])
    steps = options.steps if options.steps is not None else FREQUENCY_STEPS[tiling]
    patch = inflation.inflate(tiling, RULE_SEEDS[tiling], steps, options.threads)
    counts = {k: patch.kinds().get(k, 0) for k in rule.kinds}
    measured = _ratio(counts, top, bottom)
    report = {
        "steps": steps,
        "counts": counts,
        "expected_ratio": expected,
        "measured_ratio": measured,
        "passed": abs(measured - expected) <= 0.01 * expected,
    }
    if tiling == "ab":
        # the geometric patch stops early; seven steps are counted by child kinds
        deep = inflation.kind_counts(rule, RULE_SEEDS[tiling], 7)
        deep_ratio = _ratio(deep, top, bottom)
        report["counts_step_7"] = deep
        report["ratio_step_7"] = deep_ratio
        report["passed"] = report["passed"] and abs(deep_ratio - expected) <= 0.01 * expected
    return report


def check_fibonacci_section(tiling: str, options: CheckOptions) -> dict:
    """Section word over a long interval: no BB, A:B near tau, and a factor of the fixed point."""
    length = options.radius or SECTION_LENGTH
    word = inflation.patch_word(cutproject.fibonacci_section(length, threads=options.threads))
    counts = {"A": word.count("A"), "B": word.count("B")}
    ratio = _ratio(counts, "A", "B")
    golden = to_float(TAU)
    fixed_point = inflation.fibonacci_word(FIXED_POINT_STEPS)
    start = max(0, len(word) // 2 - ALIGN_WINDOW // 2)
    window = word[start:start + ALIGN_WINDOW]
    aligned = len(window) == ALIGN_WINDOW and window in fixed_point
    return {
        "passed": "BB" not in word and abs(ratio - golden) <= 0.01 * golden and aligned,
        "length": length,
        "letters": len(word),
        "counts": counts,
        "ratio": ratio,
        "has_bb": "BB" in word,
        "aligned": aligned,
        "offset_in_fixed_point": fixed_point.find(window) if aligned else None,
    }


# --- matching rules and coverings ---

def check_legality(tiling: str, options: CheckOptions) -> dict:
    """
    The inflated sun is legal, and reflecting any one of MUTATION_TRIALS sampled
    interior rhombs is reported. Rim tiles with a single shared edge are not sampled:
    their reflection can stay locally legal.
    """
    steps = 4 if options.steps is None else options.steps
    patch = inflation.pair_halves(inflation.inflate("penrose", "sun", steps, options.threads))
    report = matching.check_legality(patch)
    candidates = _interior_tiles(patch)
    rng = np.random.default_rng(MUTATION_SEED)
    trials = rng.choice(candidates, size=min(MUTATION_TRIALS, len(candidates)), replace=False) if candidates else []
    missed = [int(ti) for ti in trials if matching.check_legality(matching.reflect_tile(patch, int(ti)))["legal"]]
    return {
        "passed": report["legal"] and len(trials) > 0 and not missed,
        "steps": steps,
        "tiles": len(patch.tiles),
        "interior_edges": report["interior_edges"],
        "violations": report["violations"][:10],
        "mutation_trials": len(trials),
        "mutations_missed": missed,
    }


def _interior_tiles(patch: Patch) -> List[int]:
    """Tiles whose edges are all shared, nearest the origin first."""
    edges = patch.edge_map()
    xy = patch.vertex_array()
    inner = [ti for ti, t in enumerate(patch.tiles)
             if all(len(edges[(min(a, b), max(a, b))]) == 2 for a, b in t.edges)]
    return sorted(inner, key=lambda ti: float(np.sum(xy[list(patch.tiles[ti].vertices)].mean(axis=0) ** 2)))


def check_decoration(tiling: str, options: CheckOptions) -> dict:
    radius = options.radius or 6.0
    patch = cutproject.penrose_tiling(radius, threads=options.threads)
    decorated = matching.decorate(patch)
    report = matching.check_legality(decorated)
    return {"passed": report["legal"], "radius": radius, "tiles": len(patch.tiles), "violations": report["violations"][:10]}


def check_covering(tiling: str, options: CheckOptions) -> dict:
    radius = options.radius or 15.0
    build = cutproject.penrose_tiling if tiling == "penrose" else cutproject.triangle_tiling
    patch = build(radius, threads=options.threads)
    placements, report = cover(patch, COVERINGS[tiling], options.threads)
    rhomb_counts = sorted({len(p.tiles) for p in placements})
    report.pop("uncovered", None)
    decagons_ok = rhomb_counts == [10] and report["dominant_class_covered_fraction"] == 1.0
    report.update({
        "passed": (report["covered_fraction"] == 1.0 and report["template_mismatches"] == 0
                   and (tiling != "penrose" or decagons_ok)),
        "radius": radius,
        "tiles_per_cluster": rhomb_counts,
    })
    return report


# --- diffraction ---

def _spec_for(tiling: str) -> cutproject.CutProjectSpec:
    return {"ab": cutproject.ab_spec, "penrose": cutproject.penrose_spec, "fibonacci": cutproject.fibonacci_spec}[tiling]()


def check_diffraction_symmetry(tiling: str, options: CheckOptions) -> dict:
    pattern = diffraction.predict_peaks(_spec_for(tiling), options.cutoff, options.k_max, options.threads)
    steps = {"ab": 8, "penrose": 10}.get(tiling)
    defect = diffraction.symmetry_defect(pattern, steps) if steps else 0.0
    origin = next((p.intensity for p in pattern.peaks if not any(p.indices)), None)
    return {
        "passed": defect <= 1e-9 and origin is not None and abs(origin - 1) <= 1e-12,
        "peaks": len(pattern.peaks),
        "rotation_order": steps,
        "symmetry_defect": defect,
        "origin_intensity": origin,
    }


def check_density(tiling: str, options: CheckOptions) -> dict:
    radius = options.radius or 40.0
    spec = _spec_for(tiling)
    predicted = diffraction.vertex_density(spec)
    patch = cutproject.model_set(spec, radius, threads=options.threads)
    measure = 2 * radius if spec.scheme.par_frame.dim == 1 else math.pi * radius ** 2
    counted = len(patch.points) / measure
    return {
        "passed": abs(counted - predicted) <= 0.02 * predicted,
        "radius": radius,
        "predicted": predicted,
        "counted": counted,
    }


CHECKS: Dict[str, Tuple[Callable[[str, CheckOptions], dict], Tuple[str, ...]]] = {
    "crystallographic-restriction": (check_crystallographic_restriction, ("ab", "penrose", "ttt", "fibonacci")),
    "projection": (check_projection, ("ab", "penrose", "ttt", "fibonacci")),
    "volume-partition": (check_volume_partition, ("ab", "penrose", "ttt", "fibonacci")),
    "duality": (check_duality, ("ab", "penrose", "ttt", "fibonacci")),
    "cut-vs-section": (check_cut_vs_section, ("ab", "penrose", "ttt")),
    "inflation-in-window": (check_inflation_in_window, ("ab",)),
    "substitution-rule": (check_substitution_rule, ("ab", "penrose", "fibonacci")),
    "repetitivity": (check_repetitivity, ("ab", "penrose")),
    "frequencies": (check_frequencies, ("ab", "penrose")),
    "fibonacci-section": (check_fibonacci_section, ("fibonacci",)),
    "legality": (check_legality, ("penrose",)),
    "decoration": (check_decoration, ("penrose",)),
    "covering": (check_covering, ("penrose", "ttt")),
    "diffraction-symmetry": (check_diffraction_symmetry, ("ab", "penrose", "fibonacci")),
    "density": (check_density, ("ab", "penrose", "fibonacci")),
}
# suite run when no check is named; the heavy enumerations are opt-in
DEFAULT_CHECKS = ("crystallographic-restriction", "projection", "volume-partition", "substitution-rule")


def run_checks(tiling: str, names: Optional[Sequence[str]] = None, options: Optional[CheckOptions] = None) -> dict:
    options = options or CheckOptions()
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise InvalidJobConfigError("Unknown check", checks=unknown, available=sorted(CHECKS))
        wrong = [n for n in names if tiling not in CHECKS[n][1]]
        if wrong:
            raise InvalidJobConfigError(f"Check does not apply to tiling {tiling}", checks=wrong)
        selected = list(names)
    else:
        selected = [n for n in DEFAULT_CHECKS if tiling in CHECKS[n][1]]
    results = {}
    for name in selected:
        fn, _ = CHECKS[name]
        logger.info("Running check %s on %s", name, tiling)
        results[name] = fn(tiling, options)
        if not results[name]["passed"]:
            logger.warning("Check %s failed on %s", name, tiling)
    return {"tiling": tiling, "passed": all(r["passed"] for r in results.values()), "checks": results}


def verify_patch(patch: Patch) -> dict:
    """Schema round trip, plus edge-to-edge legality for decorated patches."""
    again = patch_from_schema(patch_to_schema(patch))
    same = (
        again.points == patch.points
        and [(t.kind, t.vertices, t.decoration) for t in again.tiles] == [(t.kind, t.vertices, t.decoration) for t in patch.tiles]
    )
    report: Dict[str, object] = {"round_trip": same, "tiles": len(patch.tiles), "vertices": len(patch.points)}
    legal = True
    if patch.tiles and all(t.decoration is not None for t in patch.tiles):
        try:
            legality = matching.check_legality(patch)
        except QuasitileError as exc:
            legality = {"legal": False, "violations": [exc.to_dict()]}
        legal = legality["legal"]
        report["legality"] = {"legal": legal, "violations": legality["violations"][:10]}
    report["passed"] = same and legal
    return report
