import hashlib
import json
import logging
from typing import Callable, Optional

from sqlalchemy.orm import Session

from models.model import Artifact
from schemas.job import JobConfig

logger = logging.getLogger(__name__)


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def job_key(config: JobConfig) -> str:
    """SHA-256 of the canonical JSON of the config; output paths do not change the result."""
    data = config.dict(exclude={"output", "svg"})
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def get_artifact(db: Session, key: str) -> Optional[Artifact]:
    return db.query(Artifact).filter(Artifact.job_key == key).first()


def get_or_create_artifact(db: Session, config: JobConfig, compute: Callable[[], dict]) -> dict:
    # 1. Tra cache theo job_key
    key = job_key(config)
    existing = get_artifact(db, key)
    if existing:
        logger.info("Artifact cache hit for %s (%s)", config.command, key[:12])
        return json.loads(existing.payload)

    # 2. Tính mới và lưu payload đã chuẩn hoá
    payload = compute()
    text = canonical_json(payload)
    artifact = Artifact(job_key=key, command=config.command, tiling=config.tiling, payload=text)
    db.add(artifact)
    db.commit()
    db.refresh(artifact)
    logger.info("Stored artifact %s for %s", artifact.id, config.command)
    return json.loads(text)
