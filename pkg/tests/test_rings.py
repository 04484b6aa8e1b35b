"""Monomial quotient rings, finite modules, and the classical Betti oracle."""

import pytest

from dgtor.errors import AxiomError, InputError
from dgtor.field import GF101
from dgtor.dga import is_local
from dgtor.dgmod import residue_module, tor_against_k
from dgtor.linalg import Matrix
from dgtor.rings import (
    classical_betti,
    finite_module_as_dg,
    free_finite_module,
    from_monomial_ideal,
    FiniteModule,
    module_from_action,
    parse_monomial,
    residue_finite_module,
    ring_hom,
    as_dg_algebra,
)

F = GF101


def test_monomial_parsing_roundtrip():
    assert parse_monomial("x^2*y", ("x", "y")) == (2, 1)
    assert parse_monomial("1", ("x", "y")) == (0, 0)
    with pytest.raises(InputError):
        parse_monomial("z", ("x", "y"))


def test_basis_x2(ring_x2):
    assert ring_x2.labels() == ["1", "x"]


def test_basis_m2(ring_m2):
    assert set(ring_m2.labels()) == {"1", "x", "y"}
    assert ring_m2.in_m_squared
    # m^2 = 0: all products of variables vanish
    xi, yi = ring_m2.variable_index("x"), ring_m2.variable_index("y")
    assert ring_m2.multiply_basis(xi, xi) is None
    assert ring_m2.multiply_basis(xi, yi) is None


def test_basis_x3_multiplication(ring_x3):
    assert ring_x3.labels() == ["1", "x", "x^2"]
    xi = ring_x3.variable_index("x")
    assert ring_x3.labels()[ring_x3.multiply_basis(xi, xi)] == "x^2"


def test_infinite_quotient_rejected():
    with pytest.raises(InputError):
        from_monomial_ideal(F, ["x", "y"], ["x*y"])


def test_unit_in_ideal_rejected():
    with pytest.raises(InputError):
        from_monomial_ideal(F, ["x"], ["1"])


def test_as_dg_algebra_validates_and_is_local(ring_x2, ring_x3, ring_m2):
    for r in (ring_x2, ring_x3, ring_m2):
        a = as_dg_algebra(r)
        assert a.validate() == []
        assert is_local(a).is_local


def test_residue_and_free_modules(ring_x3):
    k = residue_finite_module(ring_x3)
    assert k.validate() == []
    free = free_finite_module(ring_x3)
    assert free.validate() == []
    assert free.dim == 3


def test_maximal_ideal_module_jordan_block(ring_x3):
    # m in k[x]/(x^3) is 2-dimensional; x acts by a nilpotent Jordan block
    mat = Matrix.from_rows([[0, 0], [1, 0]], F)
    fm, dg = module_from_action(ring_x3, ["x", "x^2"], {"x": mat}, name="m")
    assert fm.validate() == []
    assert dg.validate() == []
    cube = mat.mul(mat).mul(mat)
    assert cube.is_zero()


def test_relation_violation_witnessed(ring_x2):
    bad = Matrix.from_rows([[0, 1], [1, 0]], F)  # x^2 acts as identity
    with pytest.raises(AxiomError) as exc:
        module_from_action(ring_x2, ["a", "b"], {"x": bad})
    assert "x^2" in str(exc.value)


def test_noncommuting_actions_rejected(ring_m2):
    mx = Matrix.from_rows([[0, 0, 0], [1, 0, 0], [0, 0, 0]], F)
    my = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [0, 1, 0]], F)
    # these commute only if mx my = my mx; build a pair that does not
    mx2 = Matrix.from_rows([[0, 0, 0], [0, 0, 1], [0, 0, 0]], F)
    my2 = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [1, 0, 0]], F)
    with pytest.raises(AxiomError) as exc:
        FiniteModule(ring_m2, ["a", "b", "c"], {"x": mx2, "y": my2})
    assert "commute" in str(exc.value)


@pytest.mark.parametrize(
    "fixture_name,expected",
    [
        ("ring_x2", [1, 1, 1, 1, 1, 1, 1]),
        ("ring_x3", [1, 1, 1, 1, 1, 1, 1]),
        ("ring_m2", [1, 2, 4, 8, 16, 32, 64]),
    ],
)
def test_classical_betti_matches_dg_layer(request, fixture_name, expected):
    ring = request.getfixturevalue(fixture_name)
    k = residue_finite_module(ring)
    assert classical_betti(k, 6) == expected
    rdga = as_dg_algebra(ring)
    v = is_local(rdga)
    ser = tor_against_k(rdga, residue_module(rdga, v), 6, verdict=v)
    assert ser.as_list(0, 6) == expected


def test_classical_betti_on_maximal_ideal(ring_x3):
    mat = Matrix.from_rows([[0, 0], [1, 0]], F)
    fm, dg = module_from_action(ring_x3, ["x", "x^2"], {"x": mat}, name="m")
    oracle = classical_betti(fm, 5)
    rdga = as_dg_algebra(ring_x3)
    v = is_local(rdga)
    ser = tor_against_k(rdga, dg, 5, verdict=v)
    assert ser.as_list(0, 5) == oracle


def test_ring_hom_retract(ring_x2):
    R = from_monomial_ideal(F, ["x", "w"], ["x^2", "x*w", "w^2"])
    Sdga = as_dg_algebra(ring_x2)
    Rdga = as_dg_algebra(R)
    alpha = ring_hom(ring_x2, R, {"x": "x"}, Sdga, Rdga)
    beta = ring_hom(R, ring_x2, {"x": "x", "w": "0"}, Rdga, Sdga)
    assert beta.compose(alpha).is_identity()


def test_ring_hom_must_respect_relations(ring_x2, ring_x3):
    # x |-> x is not a ring map k[x]/(x^2) -> k[x]/(x^3)
    with pytest.raises(AxiomError):
        ring_hom(ring_x2, ring_x3, {"x": "x"})
