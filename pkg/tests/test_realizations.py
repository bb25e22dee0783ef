from fractions import Fraction

import numpy as np
import pytest

from app.modules.algebra import StructurePolynomial, telescope_g
from app.modules.common.errors import DomainError, EmptySector, NotDiagonal
from app.modules.realizations import (
    casimir_diagonal,
    check_diagonal,
    closure_fit,
    commutator_diagonal,
    conservation_check,
    find_vacua,
    oracle_fidelity,
    realize_dicke,
    realize_multiphoton,
    realize_pair,
    realize_su11_single,
    realize_trilinear,
    sector_chains,
    sector_to_module,
    trilinear_sectors,
    vacuum_report,
)

SU11 = StructurePolynomial.su11()


def test_single_mode_weights_and_casimir():
    triple = realize_su11_single(32, parity=0)
    assert all(w == Fraction(2 * state[0] + 1, 4) for w, state in zip(triple.n0, triple.sector.basis))
    assert set(casimir_diagonal(triple, telescope_g(SU11))) == {Fraction(3, 16)}
    assert closure_fit(triple) == SU11
    assert [v.weight for v in find_vacua(triple)] == [Fraction(1, 4)]


def test_single_mode_odd_parity_vacuum():
    triple = realize_su11_single(32, parity=1)
    assert [v.weight for v in find_vacua(triple)] == [Fraction(3, 4)]
    assert set(casimir_diagonal(triple, telescope_g(SU11))) == {Fraction(3, 16)}


def test_single_mode_without_parity_has_two_chains():
    triple = realize_su11_single(8)
    assert triple.size == 9
    assert [len(chain) for chain in sector_chains(triple)] == [5, 4]


@pytest.mark.parametrize("q", [0, 1, 3])
def test_pair_sector_closes_on_su11(q):
    triple = realize_pair((12, 12), q)
    assert closure_fit(triple) == SU11
    vacua = find_vacua(triple)
    assert [v.weight for v in vacua] == [Fraction(abs(q) + 1, 2)]
    module = sector_to_module(triple, vacua[0].index, SU11)
    assert list(module.s) == [m * (m + abs(q)) for m in range(module.cutoff)]
    assert not module.is_finite


def test_pair_sector_is_one_chain():
    triple = realize_pair((12, 12), 0)
    assert sector_chains(triple) == [list(range(13))]
    assert triple.raise_boundary == frozenset({12})


def test_two_mode_exchange_closes_on_su2():
    triple = realize_multiphoton(1, 1, (6, 6), 3)
    assert closure_fit(triple) == StructurePolynomial.su2()
    module = sector_to_module(triple, find_vacua(triple)[0].index)
    assert module.is_finite
    assert module.dimension == 7


def test_two_photon_exchange_closes_on_a_cubic():
    triple = realize_multiphoton(2, 2, (12, 12), 3)
    f = closure_fit(triple)
    assert f == StructurePolynomial.higgs(332, -16)
    assert f.coeffs == (0, 664, 0, -64)
    vacua = find_vacua(triple)
    assert [v.state for v in vacua] == [(11, 1), (12, 0)]
    assert [v.weight for v in vacua] == [Fraction(-5, 2), -3]
    dimensions = [sector_to_module(triple, v.index, f).dimension for v in vacua]
    assert dimensions == [6, 7]


@pytest.mark.parametrize("m, n", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)])
def test_closure_degree_is_the_total_order_minus_one(m, n):
    triple = realize_multiphoton(m, n, (18, 18), 3)
    assert len(triple.boundary) < triple.size - (m + n)
    assert closure_fit(triple).degree == m + n - 1


def test_dicke_sector():
    triple = realize_dicke(2, 1, 12, 3)
    assert triple.size == 3
    vacua = find_vacua(triple)
    assert [v.weight for v in vacua] == [Fraction(-5, 2)]
    module = sector_to_module(triple, vacua[0].index, closure_fit(triple))
    assert module.s == (0, 8, 6, 0)
    assert module.dimension == 3


@pytest.mark.parametrize("cutoffs", [(8, 8, 8), (12, 12, 12)])
def test_trilinear_diagonal_in_every_sector(cutoffs):
    for charges in trilinear_sectors(cutoffs):
        h0, q = charges["h0"], int(charges["q"])
        triple = realize_trilinear(cutoffs, h0, q)
        f = StructurePolynomial.trilinear(h0, q)
        diagonal = commutator_diagonal(triple)
        for k in range(triple.size):
            if k not in triple.boundary:
                assert diagonal[k] == f(triple.n0[k]), (h0, q, triple.sector.basis[k])


@pytest.mark.parametrize("h0, q", [(Fraction(9, 4), 0), (Fraction(5, 2), 1), (Fraction(11, 4), 2)])
def test_trilinear_sector_has_one_realized_vacuum(h0, q):
    triple = realize_trilinear((12, 12, 12), h0, q)
    f = closure_fit(triple)
    assert f == StructurePolynomial.trilinear(h0, q)
    report = vacuum_report(triple, f)
    assert len(report["realized"]) == 1
    assert report["realized"][0].weight == -h0
    assert report["realized"][0].state[0] == 0
    assert sum(entry["multiplicity"] for entry in report["algebraic"][0]["weights"]) == 3
    assert sector_to_module(triple, report["realized"][0].index, f).is_finite


@pytest.mark.parametrize(
    "build",
    [
        lambda: realize_pair((12, 12), 0),
        lambda: realize_pair((12, 12), 1),
        lambda: realize_trilinear((12, 12, 12), Fraction(9, 4), 0),
        lambda: realize_multiphoton(2, 2, (12, 12), 3),
        lambda: realize_su11_single(32, 0),
    ],
)
def test_sector_series_agrees_with_module_state(build):
    triple = build()
    f = closure_fit(triple)
    vacuum = find_vacua(triple)[0].index
    for alpha in (0.5, 0.3 - 0.6j):
        assert oracle_fidelity(triple, vacuum, alpha, f) >= 1 - 1e-12


def test_conservation():
    for triple in (
        realize_pair((6, 6), 2),
        realize_trilinear((6, 6, 6), Fraction(5, 2), 1),
        realize_dicke(3, 2, 8, 2),
    ):
        report = conservation_check(triple)
        assert report["conserved"]
        assert report["raising_shift"]
        assert report["leaks"] == []


def test_corrupted_raising_is_not_diagonal():
    triple = realize_pair((6, 6), 0)
    nplus = triple.nplus_dense()
    assert check_diagonal(triple, nplus) == 0.0
    nplus[2, 0] = 1.0
    with pytest.raises(NotDiagonal) as info:
        check_diagonal(triple, nplus)
    assert info.value.context["value"] == pytest.approx(2.0)


def test_empty_sector():
    with pytest.raises(EmptySector):
        realize_pair((3, 3), 5)


@pytest.mark.parametrize("m, n", [(0, 1), (4, 3)])
def test_multiphoton_orders_are_bounded(m, n):
    with pytest.raises(DomainError):
        realize_multiphoton(m, n, (4, 4), 1)


def test_coordinate_export():
    triple = realize_pair((3, 3), 0)
    lines = triple.to_coordinate_csv().splitlines()
    assert lines[0] == "row,col,s"
    assert lines[1:] == ["1,0,1/1", "2,1,4/1", "3,2,9/1"]
    np.testing.assert_allclose(triple.nminus_dense(), triple.nplus_dense().T)
