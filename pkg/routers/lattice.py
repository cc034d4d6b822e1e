import click

import services.lattice as lattice_service
from schemas.lattice import LatticeCatalogue, RestrictionReport
from routers.deps import echo_json
from services.job import resolve_path


@click.group(name="lattice")
def router():
    """Lattice catalogue and rotation orders."""


@router.command(name="show")
@click.argument("name", required=False)
def show_lattice_endpoint(name):
    """Print one catalogue lattice (or all) with Gram and reciprocal bases."""
    lattices = [lattice_service.get_lattice(name)] if name else list(lattice_service.load_catalogue().values())
    catalogue = LatticeCatalogue(
        schema_version=lattice_service.CATALOGUE_SCHEMA_VERSION,
        lattices=[lattice_service.catalogue_entry(lat) for lat in lattices],
    )
    echo_json(catalogue.dict())


@router.command(name="export")
@click.argument("path")
def export_lattice_endpoint(path):
    """Write the catalogue JSON."""
    target = resolve_path(path)
    payload = LatticeCatalogue(**lattice_service.export_catalogue(target))
    echo_json({"path": target, "lattices": [lat.name for lat in payload.lattices]})


@router.command(name="restriction")
@click.option("--limit", type=int, default=24, show_default=True)
def restriction_endpoint(limit):
    """Rotation orders compatible with a planar lattice, and minimal embedding dimensions."""
    orders = [n for n in range(1, limit + 1) if lattice_service.crystallographic_restriction(n)]
    report = RestrictionReport(
        n=limit,
        orders=orders,
        minimal_dimension={n: lattice_service.minimal_embedding_dimension(n) for n in range(1, limit + 1)},
    )
    echo_json(report.dict())
