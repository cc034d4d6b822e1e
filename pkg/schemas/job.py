from pydantic import BaseModel, root_validator, validator
from typing import List, Optional, Tuple

COMMANDS = ("generate", "inflate", "diffract", "verify", "cover", "render")
TILINGS = ("ab", "penrose", "ttt", "fibonacci")
ROUTES = {
    "ab": ("cutproject", "inflation", "section"),
    "penrose": ("cutproject", "inflation", "section"),
    "ttt": ("cutproject", "section"),
    "fibonacci": ("cutproject", "inflation", "section"),
}
COVERINGS = {"penrose": "decagon", "ttt": "pentagons"}


class JobConfig(BaseModel):
    command: str
    tiling: str = "ab"
    route: str = "cutproject"
    radius: Optional[float] = None
    steps: Optional[int] = None
    length: Optional[float] = None
    seed: Optional[str] = None
    c_perp: Optional[List[Tuple[str, str]]] = None
    window_file: Optional[str] = None
    decorate: bool = False
    check: Optional[str] = None
    cutoff: float = 1e-3
    k_max: float = 10.0
    covering: Optional[str] = None
    patch_file: Optional[str] = None
    output: Optional[str] = None
    svg: Optional[str] = None

    @validator("command")
    def check_command(cls, v):
        if v not in COMMANDS:
            raise ValueError(f"command must be one of {', '.join(COMMANDS)}")
        return v

    @validator("tiling")
    def check_tiling(cls, v):
        if v not in TILINGS:
            raise ValueError(f"tiling must be one of {', '.join(TILINGS)}")
        return v

    @validator("radius")
    def check_radius(cls, v):
        if v is not None and v <= 0:
            raise ValueError("radius must be positive")
        return v

    @validator("steps")
    def check_steps(cls, v):
        if v is not None and v < 0:
            raise ValueError("steps must be nonnegative")
        return v

    @validator("length")
    def check_length(cls, v):
        if v is not None and v < 0:
            raise ValueError("length must be nonnegative")
        return v

    @validator("cutoff")
    def check_cutoff(cls, v):
        if not 0 < v <= 1:
            raise ValueError("cutoff must lie in (0, 1]")
        return v

    @validator("k_max")
    def check_k_max(cls, v):
        if v <= 0:
            raise ValueError("k_max must be positive")
        return v

    @root_validator(skip_on_failure=True)
    def check_combination(cls, values):
        command, tiling, route = values["command"], values["tiling"], values["route"]
        if command in ("generate", "inflate", "cover") and route not in ROUTES[tiling]:
            raise ValueError(f"route {route} is not available for tiling {tiling}")
        if command == "inflate" and tiling == "ttt":
            raise ValueError("the triangle tiling has no substitution rule")
        if command == "diffract" and tiling == "ttt":
            raise ValueError("diffraction is computed for ab, penrose and fibonacci vertex sets")
        if command == "cover" and tiling not in COVERINGS:
            raise ValueError("coverings exist for the penrose and ttt tilings")
        if command == "render" and not values.get("patch_file"):
            raise ValueError("render needs a patch file")
        if command == "generate" and route == "inflation" and values.get("steps") is None:
            raise ValueError("the inflation route needs steps")
        if command == "generate" and route != "inflation":
            sized = values.get("radius") is not None or (tiling == "fibonacci" and values.get("length") is not None)
            if not sized:
                raise ValueError("generate needs a radius (or a length for fibonacci)")
        if command == "inflate" and values.get("steps") is None:
            raise ValueError("inflate needs steps")
        if command == "cover" and values.get("radius") is None and values.get("steps") is None:
            raise ValueError("cover needs a radius or steps")
        if values.get("decorate") and tiling != "penrose":
            raise ValueError("only penrose rhombs carry arrow decorations")
        return values
