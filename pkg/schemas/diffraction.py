from pydantic import BaseModel, validator
from typing import Any, Dict, List


class BraggPeakSchema(BaseModel):
    indices: List[int]
    k_par: List[float]
    k_perp: List[float]
    intensity: float

    @validator("intensity")
    def check_intensity(cls, v):
        if v < 0:
            raise ValueError("intensity must be nonnegative")
        return v


class DiffractionPatternSchema(BaseModel):
    scheme: str
    normalization: Dict[str, Any] = {}
    peaks: List[BraggPeakSchema] = []

    class Config:
        orm_mode = True
