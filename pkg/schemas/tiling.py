from pydantic import BaseModel, validator
from typing import Any, Dict, List, Optional, Tuple

PATCH_SCHEMA_VERSION = 1

# Một số trong vành Z[omega]: cặp hệ số [a, b] dạng chuỗi "p/q"
QuadPair = Tuple[str, str]


class VertexBase(BaseModel):
    coords: List[QuadPair]
    lift: Optional[List[str]] = None


class VertexResponse(VertexBase):
    index: int

    class Config:
        orm_mode = True


class DecorationSchema(BaseModel):
    kind: str
    direction: int

    @validator("kind")
    def check_kind(cls, v):
        if v not in ("single", "double"):
            raise ValueError("decoration kind must be single or double")
        return v

    @validator("direction")
    def check_direction(cls, v):
        if v not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        return v


class TileBase(BaseModel):
    kind: str
    vertices: List[int]
    orientation: int = 0
    decoration: Optional[List[DecorationSchema]] = None
    cls: Optional[int] = None
    anchor: Optional[List[QuadPair]] = None


class TileResponse(TileBase):
    class Config:
        orm_mode = True


class PatchSchema(BaseModel):
    schema_version: int = PATCH_SCHEMA_VERSION
    name: str = ""
    provenance: str
    ring: str
    vertices: List[VertexResponse] = []
    tiles: List[TileResponse] = []
    meta: Dict[str, Any] = {}

    @validator("schema_version")
    def check_version(cls, v):
        if v != PATCH_SCHEMA_VERSION:
            raise ValueError(f"unsupported patch schema version {v}")
        return v

    @validator("tiles", each_item=True)
    def check_tile(cls, v):
        if len(v.vertices) < 2:
            raise ValueError("a tile needs at least two vertices")
        return v


class PlacementResponse(BaseModel):
    cluster: str
    rotation: int
    center: List[float]
    tiles: List[int]
    center_class: Optional[int] = None


class CoveringReport(BaseModel):
    tiles: int
    placements: int
    interior_tiles: int
    covered_interior: int
    covered_fraction: float
    uncovered: List[int]
    max_overlap: int
    mean_overlap: float
    center_classes: Dict[str, int]
    margin: float
    class_purity: Dict[str, Dict[str, Any]] = {}
    dominant_class_covered_fraction: float = 0.0
    template_mismatches: int = 0
    clusters: Dict[str, Dict[str, Any]] = {}
