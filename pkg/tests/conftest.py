import pytest
from click.testing import CliRunner
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

import db.database as database
from db.database import Base
from models.model import Artifact  # noqa: F401  (registers the table)
from services import cutproject, inflation


@pytest.fixture()
def db_session(monkeypatch):
    engine = create_engine("sqlite://", connect_args={"check_same_thread": False}, poolclass=StaticPool)
    Base.metadata.create_all(bind=engine)
    TestingSession = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    monkeypatch.setattr(database, "SessionLocal", TestingSession)
    session = TestingSession()
    try:
        yield session
    finally:
        session.close()
        engine.dispose()


@pytest.fixture()
def runner(db_session, tmp_path, monkeypatch):
    import services.job as job_service

    monkeypatch.setattr(job_service, "OUTPUT_DIR", str(tmp_path / "out"))
    return CliRunner(mix_stderr=False)


@pytest.fixture(scope="session")
def ab_patch():
    return cutproject.ab_tiling(4.0)


@pytest.fixture(scope="session")
def penrose_patch():
    return cutproject.penrose_tiling(5.0)


@pytest.fixture(scope="session")
def penrose_sun():
    return inflation.pair_halves(inflation.inflate("penrose", "sun", 3))
