from pydantic import BaseModel
from typing import Dict, List, Optional, Tuple

QuadPair = Tuple[str, str]


class PrototileSchema(BaseModel):
    kind: str
    reference: List[List[QuadPair]]
    pair_kind: Optional[str] = None


class ChildSchema(BaseModel):
    kind: str
    coords: List[List[QuadPair]]


class SeedTileSchema(BaseModel):
    kind: str
    vertices: List[List[QuadPair]]


class SubstitutionRuleSchema(BaseModel):
    name: str
    frame: str
    factor: QuadPair
    prototiles: List[PrototileSchema]
    images: Dict[str, List[ChildSchema]]
    seeds: Dict[str, List[SeedTileSchema]] = {}


class RuleCheckResponse(BaseModel):
    area_conserved: bool
    children_inside: bool
    interiors_disjoint: bool
    children_congruent_size: bool
    children: int
