import json
import logging

import click

from db.database import get_db
from schemas.job import JobConfig
import services.job as job_service

logger = logging.getLogger(__name__)


def echo_json(payload) -> None:
    click.echo(json.dumps(payload, sort_keys=True, indent=2))


def parse_c_perp(values):
    # "a,b" mỗi giá trị là một toạ độ hệ số (a + b·ω)
    if not values:
        return None
    pairs = []
    for value in values:
        parts = value.split(",")
        if len(parts) == 1:
            parts.append("0")
        if len(parts) != 2:
            raise click.BadParameter(f"expected a or a,b, got {value}", param_hint="--c-perp")
        pairs.append((parts[0].strip(), parts[1].strip()))
    return pairs


def run_job(**options) -> dict:
    # Mỗi lệnh mở một session riêng, giống Depends(get_db)
    config = JobConfig(**{k: v for k, v in options.items() if v is not None})
    sessions = get_db()
    db = next(sessions)
    try:
        payload, _ = job_service.run(config, db)
    finally:
        sessions.close()
    echo_json(payload)
    return payload
