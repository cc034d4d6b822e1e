import click

from schemas.job import TILINGS
from routers.deps import run_job
from services.verify import CHECKS


@click.group(name="verify")
def router():
    """Invariant suites."""


@router.command(name="verify")
@click.option("--tiling", type=click.Choice(TILINGS), default="ab", show_default=True)
@click.option("--check", type=click.Choice(sorted(CHECKS)), help="Run one check instead of the default suite.")
@click.option("--radius", type=float)
@click.option("--steps", type=int)
@click.option("--patch-file", type=click.Path(exists=True, dir_okay=False), help="Verify a saved patch instead.")
@click.option("--output", "-o")
@click.pass_context
def verify_endpoint(ctx, tiling, check, radius, steps, patch_file, output):
    """Run invariant checks; exits 1 when any check fails."""
    payload = run_job(command="verify", tiling=tiling, check=check, radius=radius, steps=steps,
                      patch_file=patch_file, output=output)
    if not payload["passed"]:
        ctx.exit(1)
