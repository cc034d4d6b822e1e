import json
import logging
import os
import sys

import click
from dotenv import load_dotenv
from pydantic import ValidationError

from db.database import Base, engine
from routers import diffraction, lattice, rule, tiling, verify
from services.errors import InvalidJobConfigError, QuasitileError

load_dotenv()

Base.metadata.create_all(bind=engine)

logging.basicConfig(
    level=os.getenv("QUASITILE_LOG_LEVEL", "INFO").upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)
logger = logging.getLogger(__name__)


def _fail(payload: dict, code: int) -> None:
    click.echo(json.dumps(payload, sort_keys=True, default=str), err=True)
    sys.exit(code)


class QuasitileCLI(click.Group):
    # Lỗi nghiệp vụ -> JSON trên stderr + exit code, giống HTTPException(status_code, detail)
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except QuasitileError as exc:
            logger.error("%s: %s", type(exc).__name__, exc.detail)
            _fail(exc.to_dict(), exc.exit_code)
        except ValidationError as exc:
            logger.error("Invalid job config: %s", exc)
            _fail({"error": InvalidJobConfigError.__name__, "detail": "invalid job config", "errors": exc.errors()},
                  InvalidJobConfigError.exit_code)


@click.group(cls=QuasitileCLI)
def app():
    """Quasicrystal tilings: projection, inflation, diffraction and coverings."""


# List các router. Lệnh trong mỗi nhóm được gắn thẳng vào app, riêng lattice và rule giữ nhóm con
list_router = [
    tiling.router,
    diffraction.router,
    verify.router,
]
for router in list_router:
    for name, command in router.commands.items():
        app.add_command(command, name)
app.add_command(lattice.router)
app.add_command(rule.router)


if __name__ == "__main__":
    app()
