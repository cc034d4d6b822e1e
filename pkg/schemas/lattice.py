from pydantic import BaseModel, validator
from typing import Dict, List, Optional


class LatticeBase(BaseModel):
    name: str
    description: str = ""
    ambient_dim: int
    basis: List[List[str]]
    generators: Dict[str, List[List[int]]] = {}
    holes: List[List[str]] = []

    @validator("basis")
    def check_basis(cls, v, values):
        dim = values.get("ambient_dim")
        if dim is not None and any(len(row) != dim for row in v):
            raise ValueError("basis rows must have ambient_dim entries")
        return v


class LatticeResponse(LatticeBase):
    gram: Optional[List[List[str]]] = None
    reciprocal_basis: Optional[List[List[str]]] = None
    generators_in_basis: Optional[Dict[str, List[List[str]]]] = None


class LatticeCatalogue(BaseModel):
    schema_version: int
    lattices: List[LatticeResponse]


class RestrictionReport(BaseModel):
    n: int
    orders: List[int]
    minimal_dimension: Dict[int, int] = {}
