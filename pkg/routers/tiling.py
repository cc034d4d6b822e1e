import click

from schemas.job import COVERINGS, TILINGS
from routers.deps import parse_c_perp, run_job

ROUTE_CHOICES = ("cutproject", "inflation", "section")


@click.group(name="tiling")
def router():
    """Tiling generation and drawing."""


def tiling_options(fn):
    options = [
        click.option("--tiling", type=click.Choice(TILINGS), default="ab", show_default=True),
        click.option("--radius", type=float, help="Disk radius of the patch."),
        click.option("--c-perp", "c_perp", multiple=True, help="Offset coordinate, a or a,b over the ring; repeat per axis."),
        click.option("--window-file", type=click.Path(exists=True, dir_okay=False), help="JSON windows replacing the computed ones."),
        click.option("--output", "-o", help="JSON artifact path."),
        click.option("--svg", help="SVG drawing path."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


@router.command(name="generate")
@tiling_options
@click.option("--route", type=click.Choice(ROUTE_CHOICES), default="cutproject", show_default=True)
@click.option("--steps", type=int, help="Inflation steps for the inflation route.")
@click.option("--length", type=float, help="Interval length for the fibonacci section route.")
@click.option("--seed", help="Seed patch name for the inflation route.")
@click.option("--decorate", is_flag=True, help="Add arrow decorations to penrose rhombs.")
def generate_endpoint(tiling, radius, c_perp, window_file, output, svg, route, steps, length, seed, decorate):
    """Generate a patch by projection, inflation or section."""
    run_job(command="generate", tiling=tiling, route=route, radius=radius, steps=steps, length=length,
            seed=seed, c_perp=parse_c_perp(c_perp), window_file=window_file, decorate=decorate,
            output=output, svg=svg)


@router.command(name="inflate")
@click.option("--tiling", type=click.Choice(("ab", "penrose", "fibonacci")), default="ab", show_default=True)
@click.option("--steps", type=int, required=True)
@click.option("--seed", help="Seed patch name.")
@click.option("--decorate", is_flag=True)
@click.option("--output", "-o")
@click.option("--svg")
def inflate_endpoint(tiling, steps, seed, decorate, output, svg):
    """Iterate a substitution rule from a seed patch."""
    run_job(command="inflate", tiling=tiling, route="inflation", steps=steps, seed=seed, decorate=decorate,
            output=output, svg=svg)


@router.command(name="cover")
@tiling_options
@click.option("--route", type=click.Choice(ROUTE_CHOICES), default="section", show_default=True)
@click.option("--steps", type=int)
@click.option("--covering", type=click.Choice(sorted(set(COVERINGS.values()))))
def cover_endpoint(tiling, radius, c_perp, window_file, output, svg, route, steps, covering):
    """Cover a patch with overlapping clusters and report the coverage."""
    if steps is not None and radius is None:
        route = "inflation"
    run_job(command="cover", tiling=tiling, route=route, radius=radius, steps=steps, covering=covering,
            c_perp=parse_c_perp(c_perp), window_file=window_file, output=output, svg=svg)


@router.command(name="render")
@click.argument("patch_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--svg", required=True)
def render_endpoint(patch_file, svg):
    """Draw a saved patch JSON as SVG."""
    run_job(command="render", patch_file=patch_file, svg=svg)

