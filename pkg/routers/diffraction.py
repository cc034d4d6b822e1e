import click

from routers.deps import parse_c_perp, run_job


@click.group(name="diffraction")
def router():
    """Bragg peaks of model sets."""


@router.command(name="diffract")
@click.option("--tiling", type=click.Choice(("ab", "penrose", "fibonacci")), default="ab", show_default=True)
@click.option("--cutoff", type=float, default=1e-3, show_default=True, help="Smallest relative intensity kept.")
@click.option("--k-max", "k_max", type=float, default=10.0, show_default=True, help="Largest |k_par|.")
@click.option("--radius", type=float, help="Also compare with direct sums over a patch of this radius.")
@click.option("--c-perp", "c_perp", multiple=True)
@click.option("--window-file", type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "-o")
@click.option("--svg")
def diffract_endpoint(tiling, cutoff, k_max, radius, c_perp, window_file, output, svg):
    """Predict peak positions and intensities from the window transforms."""
    run_job(command="diffract", tiling=tiling, cutoff=cutoff, k_max=k_max, radius=radius, c_perp=parse_c_perp(c_perp),
            window_file=window_file, output=output, svg=svg)
