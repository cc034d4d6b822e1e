import json
from fractions import Fraction

import numpy as np
import pytest
import sympy

from services import lattice
from services.errors import DependentSpanError, DimensionMismatchError, InvalidOrderError, NonReciprocalVectorError
from services.exactnum import AB_FRAME, TAU, quad


def test_restriction_allows_only_crystallographic_orders():
    orders = [n for n in range(1, 25) if lattice.crystallographic_restriction(n)]
    assert orders == [1, 2, 3, 4, 6]


def test_restriction_report_for_fivefold():
    report = lattice.restriction_report(5)
    assert report["closer_pair"] is False
    assert report["integral_gap"] is False
    assert report["compatible"] is False


def test_restriction_rejects_order_zero():
    with pytest.raises(InvalidOrderError):
        lattice.restriction_report(0)


@pytest.mark.parametrize("n, dim", [(2, 1), (5, 4), (8, 4), (10, 4), (12, 4), (7, 6)])
def test_minimal_embedding_dimension(n, dim):
    assert lattice.minimal_embedding_dimension(n) == dim


def test_catalogue_has_named_lattices():
    catalogue = lattice.load_catalogue()
    assert {"Z2", "Z4", "A2", "A4", "D6"} <= set(catalogue)
    a4 = catalogue["A4"]
    assert a4.dim == 4 and a4.ambient_dim == 5


def test_reciprocal_basis_is_dual():
    a2 = lattice.get_lattice("A2")
    for i, b in enumerate(a2.reciprocal_basis):
        for j, a in enumerate(a2.basis):
            assert sum(x * y for x, y in zip(b, a)) == (1 if i == j else 0)


def test_dependent_basis_rejected():
    with pytest.raises(DependentSpanError):
        lattice.EmbeddedLattice(name="bad", ambient_dim=2, basis=((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))))


def test_export_catalogue_round_trip(tmp_path):
    path = tmp_path / "lattices.json"
    payload = lattice.export_catalogue(str(path))
    again = lattice.load_catalogue(str(path))
    assert sorted(again) == sorted(entry["name"] for entry in payload["lattices"])
    assert json.loads(path.read_text())["schema_version"] == lattice.CATALOGUE_SCHEMA_VERSION


def test_regular_representation_of_c5():
    rep = lattice.regular_representation(5)
    assert rep.preserves_lattice()
    assert rep.order() == 5
    x = sympy.Symbol("x")
    assert sympy.expand(rep.generators[0].charpoly(x).as_expr() - (x ** 5 - 1)) == 0


def test_block_reduction_of_c5_has_two_planes():
    reduction = lattice.block_reduce_cyclic(lattice.regular_representation(5))
    angles = sorted(float(a) for a in reduction.rotation_angles())
    assert angles == pytest.approx([2 * np.pi / 5, 4 * np.pi / 5])
    assert [b.size for b in reduction.blocks].count(1) == 1


def test_block_reduction_of_c8_on_z4():
    rep = lattice.get_lattice("Z4").point_group("C8")
    assert rep.is_orthogonal()
    reduction = lattice.block_reduce_cyclic(rep)
    angles = sorted(float(a) for a in reduction.rotation_angles())
    assert angles == pytest.approx([np.pi / 4, 3 * np.pi / 4])


def test_unknown_generator_rejected():
    with pytest.raises(InvalidOrderError):
        lattice.get_lattice("Z2").point_group("C5")


@pytest.mark.parametrize("name", ["fibonacci", "ab", "penrose"])
def test_projection_is_injective(name):
    assert lattice.check_projection_injective(lattice.get_scheme(name), bound=20)


@pytest.mark.parametrize("name, group, par, perp", [("ab", "C8", 1, 3), ("penrose", "C5", 2, 4)])
def test_schemes_are_equivariant(name, group, par, perp):
    scheme = lattice.get_scheme(name)
    rep = scheme.lattice.point_group(group)
    assert lattice.check_scheme_equivariance(scheme, rep, par, perp)


def test_fibonacci_projection():
    par, perp = lattice.get_scheme("fibonacci").project([1, 1])
    assert par[0] == 1 + TAU
    assert perp[0] == 2 - TAU


def test_ab_projection_of_unit_vector():
    par, perp = lattice.module_project(lattice.get_scheme("ab"), (0, 1, 0, 0))
    assert par == AB_FRAME.unit(1)
    assert perp == AB_FRAME.unit(3)


def test_projection_rejects_wrong_length():
    with pytest.raises(DimensionMismatchError):
        lattice.get_scheme("ab").project([1, 0])


def test_rational_subspace():
    z2 = lattice.get_lattice("Z2")
    assert lattice.is_rational_subspace(z2, [[1, 1]])
    assert not lattice.is_rational_subspace(z2, [[1, quad(0, 1, 2)]])
    assert not lattice.is_rational_subspace(z2, [[1, TAU]])


def test_bohr_restriction_is_quasiperiodic():
    scheme = lattice.get_scheme("fibonacci")
    periodic = lattice.PeriodicFunction(modes=[((Fraction(1), Fraction(0)), 1.0)])
    f = lattice.bohr_restrict(periodic, scheme, [0.0])
    values = f(np.linspace(0.0, 5.0, 11).reshape(-1, 1))
    assert np.allclose(np.abs(values), 1.0)


def test_bohr_restriction_rejects_non_reciprocal_vector():
    scheme = lattice.get_scheme("fibonacci")
    periodic = lattice.PeriodicFunction(modes=[((Fraction(1, 2), Fraction(0)), 1.0)])
    with pytest.raises(NonReciprocalVectorError):
        lattice.bohr_restrict(periodic, scheme, [0.0])


def test_bohr_restriction_matches_explicit_lift():
    # par = n1 + n2*tau, perp = n1 + n2*(1 - tau)  =>  n2 = (x - c) / sqrt5
    scheme = lattice.get_scheme("fibonacci")
    periodic = lattice.PeriodicFunction(
        modes=[((Fraction(1), Fraction(0)), 1.0), ((Fraction(0), Fraction(1)), 0.5), ((Fraction(2), Fraction(-1)), 0.25j)]
    )
    c = 0.3
    f = lattice.bohr_restrict(periodic, scheme, [c])
    x = np.linspace(0.0, 10.0, 1000)
    tau = (1 + np.sqrt(5)) / 2
    n2 = (x - c) / np.sqrt(5)
    n1 = x - n2 * tau
    expected = np.exp(2j * np.pi * n1) + 0.5 * np.exp(2j * np.pi * n2) + 0.25j * np.exp(2j * np.pi * (2 * n1 - n2))
    assert np.max(np.abs(f(x.reshape(-1, 1)) - expected)) <= 2.0 ** -40
