import pytest
from pydantic import ValidationError

from schemas.job import JobConfig


def test_defaults():
    config = JobConfig(command="generate", radius=2.0)
    assert config.tiling == "ab"
    assert config.route == "cutproject"
    assert config.cutoff == 1e-3


@pytest.mark.parametrize("kw", [
    {"command": "explode"},
    {"command": "generate", "tiling": "hexagonal", "radius": 1.0},
    {"command": "generate", "radius": -1.0},
    {"command": "generate", "radius": 1.0, "steps": -2},
    {"command": "diffract", "cutoff": 0.0},
    {"command": "diffract", "k_max": 0.0},
    {"command": "generate", "tiling": "ttt", "route": "inflation", "steps": 2},
    {"command": "inflate", "tiling": "ttt", "steps": 2},
    {"command": "inflate", "tiling": "ab"},
    {"command": "diffract", "tiling": "ttt"},
    {"command": "cover", "tiling": "ab", "radius": 5.0},
    {"command": "cover", "tiling": "penrose"},
    {"command": "render"},
    {"command": "generate"},
    {"command": "generate", "tiling": "ab", "radius": 3.0, "decorate": True},
])
def test_invalid_jobs_rejected(kw):
    with pytest.raises(ValidationError):
        JobConfig(**kw)


def test_fibonacci_accepts_a_length():
    config = JobConfig(command="generate", tiling="fibonacci", route="section", length=0.0)
    assert config.length == 0.0


def test_c_perp_pairs():
    config = JobConfig(command="generate", radius=2.0, c_perp=[("1/3", "0"), ("0", "1/7")])
    assert config.c_perp == [("1/3", "0"), ("0", "1/7")]
