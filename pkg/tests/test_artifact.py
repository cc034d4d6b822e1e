from models.model import Artifact
from schemas.job import JobConfig
from services.artifact import get_or_create_artifact, job_key


def _config(**kw):
    return JobConfig(command="generate", tiling="ab", radius=3.0, **kw)


def test_output_paths_do_not_change_the_key():
    assert job_key(_config()) == job_key(_config(output="a.json", svg="a.svg"))
    assert job_key(_config()) != job_key(JobConfig(command="generate", tiling="ab", radius=4.0))


def test_cache_hit_skips_compute(db_session):
    calls = []

    def compute():
        calls.append(1)
        return {"summary": {"vertices": 3}, "values": [1.5, "x"]}

    first = get_or_create_artifact(db_session, _config(), compute)
    second = get_or_create_artifact(db_session, _config(output="other.json"), compute)
    assert first == second == {"summary": {"vertices": 3}, "values": [1.5, "x"]}
    assert len(calls) == 1
    assert db_session.query(Artifact).count() == 1
    assert db_session.query(Artifact).first().command == "generate"
