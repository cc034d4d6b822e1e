import json
import logging
import os
from functools import partial
from typing import Dict, Optional, Tuple

from sqlalchemy.orm import Session

from schemas.job import COVERINGS, JobConfig
from schemas.diffraction import DiffractionPatternSchema
from schemas.tiling import CoveringReport, PatchSchema, PlacementResponse
from services import cutproject, diffraction, inflation, matching, render
from services.artifact import get_or_create_artifact
from services.covering import cover
from services.errors import InvalidJobConfigError
from services.exactnum import QuadPoint, QuadValue
from services.lattice import get_scheme
from services.patch import Patch, patch_from_schema, patch_to_schema
from services.verify import RULE_SEEDS, SCHEME_OF, CheckOptions, run_checks, verify_patch

logger = logging.getLogger(__name__)

OUTPUT_DIR = os.getenv("QUASITILE_OUTPUT_DIR", "out")
CACHED_COMMANDS = ("generate", "inflate", "diffract", "cover")


# --- Helper Function ---

def _offset(config: JobConfig) -> Optional[QuadPoint]:
    if not config.c_perp:
        return None
    frame = get_scheme(SCHEME_OF[config.tiling]).perp_frame
    if len(config.c_perp) != frame.dim:
        raise InvalidJobConfigError("c_perp has the wrong dimension", expected=frame.dim, got=len(config.c_perp))
    return QuadPoint(tuple(QuadValue.from_pair(pair, frame.d) for pair in config.c_perp))


def _overrides(config: JobConfig):
    return cutproject.load_window_overrides(config.window_file) if config.window_file else None


def resolve_path(path: str) -> str:
    """Bare file names go to the output directory."""
    if os.path.dirname(path):
        return path
    os.makedirs(OUTPUT_DIR, exist_ok=True)
    return os.path.join(OUTPUT_DIR, path)


def load_patch(path: str) -> Patch:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return patch_from_schema(PatchSchema(**data.get("patch", data)))


def build_patch(config: JobConfig) -> Patch:
    """The patch named by tiling and route."""
    tiling, route = config.tiling, config.route
    offset = _offset(config)
    if route == "inflation" or config.command == "inflate":
        seed = config.seed or RULE_SEEDS[tiling]
        patch = inflation.inflate(tiling, seed, config.steps)
        if tiling != "fibonacci":
            patch = inflation.pair_halves(patch)
    elif tiling == "ab":
        build = cutproject.ab_tiling if route == "cutproject" else cutproject.ab_section_tiling
        patch = build(config.radius, offset)
    elif tiling == "penrose":
        if route == "cutproject":
            patch = cutproject.penrose_vertex_set(config.radius, offset, _overrides(config))
        else:
            patch = cutproject.penrose_tiling(config.radius, offset)
    elif tiling == "ttt":
        if route == "cutproject":
            patch = cutproject.triangle_vertex_set(config.radius, offset, _overrides(config))
        else:
            patch = cutproject.triangle_tiling(config.radius, offset)
    elif route == "cutproject":
        patch = cutproject.fibonacci_tiling(config.radius, offset)
    else:
        length = config.length if config.length is not None else config.radius
        patch = cutproject.fibonacci_section(length, offset)

    if config.decorate and patch.tiles and any(t.decoration is None for t in patch.tiles):
        patch = matching.decorate(patch)
    return patch


def _spec(config: JobConfig) -> cutproject.CutProjectSpec:
    offset = _offset(config)
    if config.tiling == "ab":
        return cutproject.ab_spec(offset)
    if config.tiling == "penrose":
        return cutproject.penrose_spec(offset, _overrides(config))
    return cutproject.fibonacci_spec(offset)


# --- commands ---

def _generate(config: JobConfig) -> dict:
    patch = build_patch(config)
    payload = {"patch": patch_to_schema(patch).dict(), "summary": {"kinds": patch.kinds(), "vertices": len(patch.points)}}
    if config.command == "inflate":
        rule = inflation.get_rule(config.tiling)
        payload["frequencies"] = {k: list(v.to_pair()) for k, v in inflation.tile_frequencies(rule).items()}
        if config.tiling == "fibonacci":
            payload["word"] = inflation.patch_word(patch)
    return payload


def _diffract(config: JobConfig) -> dict:
    spec = _spec(config)
    pattern = diffraction.predict_peaks(spec, config.cutoff, config.k_max)
    payload = {"pattern": DiffractionPatternSchema(**pattern.to_dict()).dict()}
    if config.radius:
        vertices = cutproject.model_set(spec, config.radius)
        table = diffraction.compare_with_direct(pattern, vertices)
        payload["oracle"] = {"radius": config.radius, "vertices": len(vertices.points),
                             "peaks": table.to_dict(orient="records")}
    return payload


def _cover(config: JobConfig) -> dict:
    patch = build_patch(config)
    placements, report = cover(patch, config.covering or COVERINGS[config.tiling])
    return {
        "patch": patch_to_schema(patch).dict(),
        "placements": [PlacementResponse(**p.to_dict(patch.frame)).dict() for p in placements],
        "report": CoveringReport(**report).dict(),
    }


def _svg(config: JobConfig, payload: dict) -> Optional[str]:
    if config.command == "diffract":
        pattern = payload["pattern"]
        peaks = [diffraction.BraggPeak(tuple(p["indices"]), tuple(p["k_par"]), tuple(p["k_perp"]), p["intensity"])
                 for p in pattern["peaks"]]
        return render.pattern_svg(diffraction.DiffractionPattern(pattern["scheme"], peaks, pattern["normalization"]))
    if "patch" not in payload:
        return None
    patch = patch_from_schema(PatchSchema(**payload["patch"]))
    overlays = render.placement_overlays(patch, [p["tiles"] for p in payload.get("placements", [])])
    return render.patch_svg(patch, overlays=overlays)


def run(config: JobConfig, db: Optional[Session] = None) -> Tuple[dict, Optional[str]]:
    """
    Execute one job. Returns the JSON payload and the SVG text (when the command draws
    something). Pure commands are cached in the artifact store when a session is given.
    """
    logger.info("Running %s on %s", config.command, config.tiling)
    computes = {"generate": _generate, "inflate": _generate, "diffract": _diffract, "cover": _cover}
    if config.command in CACHED_COMMANDS:
        compute = partial(computes[config.command], config)
        payload = get_or_create_artifact(db, config, compute) if db is not None else json.loads(
            json.dumps(compute(), sort_keys=True))
    elif config.command == "verify":
        if config.patch_file:
            payload = verify_patch(load_patch(config.patch_file))
        else:
            options = CheckOptions(radius=config.radius, steps=config.steps, cutoff=config.cutoff, k_max=config.k_max)
            payload = run_checks(config.tiling, [config.check] if config.check else None, options)
    else:
        patch = load_patch(config.patch_file)
        payload = {"patch": patch_to_schema(patch).dict(), "summary": {"kinds": patch.kinds(), "vertices": len(patch.points)}}

    svg = _svg(config, payload) if config.command in ("generate", "inflate", "diffract", "cover", "render") else None
    _emit(config, payload, svg)
    return payload, svg


def _emit(config: JobConfig, payload: dict, svg: Optional[str]) -> Dict[str, str]:
    written = {}
    if config.output:
        path = resolve_path(config.output)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
        written["json"] = path
        logger.info("Wrote %s", path)
    if config.svg and svg is not None:
        path = resolve_path(config.svg)
        render.write_svg(path, svg)
        written["svg"] = path
    return written
