"""Tensor over the algebra, resolutions, minimization, Tor, syzygies,
perfection certificates."""

import pytest

from dgtor.errors import AxiomError
from dgtor.field import GF101
from dgtor.dga import augmentation, is_local
from dgtor.dgmod import (
    Gen,
    SemifreeResolution,
    algebra_as_module,
    certify_perfect,
    direct_sum_modules,
    minimal_semifree_resolution,
    minimize,
    residue_module,
    restrict_scalars,
    suspend_module,
    syzygy,
    tensor_over,
    tensor_with_semifree,
    tor,
    tor_against_k,
)
from dgtor.graded import homology_dims
from dgtor.constructions import complex_from_dims, koszul_complex, trivial_extension
from dgtor.rings import as_dg_algebra, from_monomial_ideal

F = GF101


# -- tensor over the algebra -------------------------------------------------


def test_tensor_algebra_with_module_is_module(dga_x2):
    b = algebra_as_module(dga_x2)
    k = residue_module(dga_x2)
    t = tensor_over(dga_x2, b, k)
    assert t.space.dims() == {0: 1}
    t2 = tensor_over(dga_x2, b, b)
    assert t2.space.dims() == b.space.dims()


def test_tensor_k_with_k(dga_x2):
    k = residue_module(dga_x2)
    t = tensor_over(dga_x2, k, k)
    assert t.space.dims() == {0: 1}
    assert homology_dims(t) == {0: 1}


def test_tensor_restricted_algebra_over_extension(dga_x2):
    # A (x)_B A for B = A |x W, matching the direct computation A (x)_A A = A
    W = complex_from_dims(F, {0: 1})
    B, tag = trivial_extension(dga_x2, augmentation(dga_x2), W)
    a_over_b = restrict_scalars(tag.beta, algebra_as_module(dga_x2))
    t = tensor_over(B, a_over_b, a_over_b)
    assert t.space.dims() == dga_x2.space.dims()


def test_tensor_semifree_route_matches_quotient_route(dga_x3):
    v = is_local(dga_x3)
    k = residue_module(dga_x3, v)
    res = minimal_semifree_resolution(dga_x3, k, 4, verdict=v)
    fast = tensor_with_semifree(k, res, upto=4)
    slow = tensor_over(dga_x3, k, res.as_module(complete=False))
    for d in range(0, 4):
        assert fast.space.dim(d) == slow.space.dim(d)
        assert homology_dims(fast, (d, d)) == homology_dims(slow, (d, d))


# -- resolutions ---------------------------------------------------------------


def test_free_module_resolves_to_itself(dga_x3):
    v = is_local(dga_x3)
    res = minimal_semifree_resolution(dga_x3, algebra_as_module(dga_x3), 5, verdict=v)
    assert res.counts() == {0: 1}
    assert res.minimal
    assert res.verify()["acyclic"]


def test_periodic_resolution_over_x2(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    res = minimal_semifree_resolution(dga_x2, k, 6, verdict=v)
    assert res.counts() == {d: 1 for d in range(7)}
    assert res.minimal
    assert res.verify()["acyclic"]
    # the differential is multiplication by x throughout
    xi = dga_x2.space.index_of(0, "x")
    for gi, g in enumerate(res.gens):
        if g.degree == 0:
            assert g.diff == {}
        else:
            (key, coeff), = g.diff.items()
            assert key[1] == 0 and key[2] == xi


def test_exponential_resolution_over_m2(dga_m2):
    v = is_local(dga_m2)
    k = residue_module(dga_m2, v)
    res = minimal_semifree_resolution(dga_m2, k, 6, verdict=v)
    assert res.counts() == {d: 2 ** d for d in range(7)}
    assert res.minimal


def test_resolution_of_suspended_module(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    sk = suspend_module(k)
    res = minimal_semifree_resolution(dga_x2, sk, 5, verdict=v)
    assert res.counts() == {d: 1 for d in range(1, 6)}


def test_resolution_over_dg_algebra(ring_x3, dga_x3):
    K, _ = koszul_complex(ring_x3, dga_x3)
    v = is_local(K)
    k = residue_module(K, v)
    res = minimal_semifree_resolution(K, k, 8, verdict=v)
    assert res.counts() == {0: 1, 2: 1, 4: 1, 6: 1, 8: 1}
    assert res.minimal
    assert res.verify()["acyclic"]


# -- minimize -------------------------------------------------------------------


def _pad_with_contractible(res, base, target, degree):
    gens = [Gen(g.label, g.degree, dict(g.diff), dict(g.comp)) for g in res.gens]
    gens.append(Gen(f"pad_v{degree}", degree, {}, {}))
    iv = len(gens) - 1
    unit_idx, unit_c = next(iter(base.unit.items()))
    gens.append(Gen(f"pad_u{degree}", degree + 1, {(iv, 0, unit_idx): unit_c}, {}))
    return SemifreeResolution(base, target, gens, res.truncation, False)


def test_minimize_keeps_minimal_input(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    res = minimal_semifree_resolution(dga_x2, k, 4, verdict=v)
    out = minimize(res, verdict=v)
    assert out.counts() == res.counts()


def test_minimize_cancels_padded_cone(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    res = minimal_semifree_resolution(dga_x2, k, 4, verdict=v)
    padded = _pad_with_contractible(res, dga_x2, k, 2)
    assert padded.counts()[2] == 2 and padded.counts()[3] == 2
    out = minimize(padded, verdict=v)
    assert out.counts() == res.counts()
    assert out.verify()["acyclic"]


def test_minimize_reduces_doubled_generators(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    res = minimal_semifree_resolution(dga_x2, k, 3, verdict=v)
    padded = res
    for d in (0, 1, 2):
        padded = _pad_with_contractible(padded, dga_x2, k, d)
    assert sum(padded.counts().values()) == sum(res.counts().values()) + 6
    out = minimize(padded, verdict=v)
    assert out.counts() == res.counts()
    assert out.is_minimal(v)
    assert out.verify()["acyclic"]


# -- Tor -------------------------------------------------------------------------


def test_tor_with_free_argument_gives_homology(dga_x3):
    v = is_local(dga_x3)
    b = algebra_as_module(dga_x3)
    k = residue_module(dga_x3, v)
    t = tor(dga_x3, b, k, (0, 4), verdict=v)
    assert t.as_list() == [1, 0, 0, 0, 0]
    t2 = tor(dga_x3, k, b, (0, 4), verdict=v)
    assert t2.as_list() == [1, 0, 0, 0, 0]


def test_tor_periodic_over_x2(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    assert tor(dga_x2, k, k, (0, 8), verdict=v).as_list() == [1] * 9


def test_tor_exponential_over_m2(dga_m2):
    v = is_local(dga_m2)
    k = residue_module(dga_m2, v)
    assert tor(dga_m2, k, k, (0, 8), verdict=v).as_list() == [2 ** i for i in range(9)]


def test_tor_symmetry_on_mixed_modules(ring_x3, dga_x3):
    from dgtor.rings import module_from_action
    from dgtor.linalg import Matrix

    v = is_local(dga_x3)
    mat = Matrix.from_rows([[0, 0], [1, 0]], F)
    _, mdg = module_from_action(ring_x3, ["x", "x^2"], {"x": mat}, name="m")
    k = residue_module(dga_x3, v)
    a = tor(dga_x3, mdg, k, (0, 5), verdict=v)
    b = tor(dga_x3, k, mdg, (0, 5), verdict=v)
    assert a.as_list() == b.as_list()


def test_tor_against_k_cross_validates(dga_m2):
    v = is_local(dga_m2)
    k = residue_module(dga_m2, v)
    ser = tor_against_k(dga_m2, k, 8, verdict=v)
    assert ser.as_list() == [2 ** i for i in range(9)]
    t = tor(dga_m2, k, k, (0, 7), verdict=v)
    assert ser.as_list(0, 7) == t.as_list()


def test_series_over_koszul_extension_matches_recursion(ring_x3, dga_x3):
    # over K(k[x]/(x^3)) = k |x (k in degree 1): T = 1/(1 - t^2)
    K, _ = koszul_complex(ring_x3, dga_x3)
    v = is_local(K)
    ser = tor_against_k(K, residue_module(K, v), 9, verdict=v)
    assert ser.as_list() == [1, 0, 1, 0, 1, 0, 1, 0, 1, 0]


def test_series_over_koszul_m2_matches_tor4_recursion(ring_m2, dga_m2):
    # K = k |x W with W dims (3, 2) in degrees (1, 2): T = 1/(1-3t^2-2t^3)
    K, _ = koszul_complex(ring_m2, dga_m2)
    v = is_local(K)
    ser = tor_against_k(K, residue_module(K, v), 8, verdict=v)
    expected = [1, 0, 0, 0, 0, 0, 0, 0, 0]
    for i in range(2, 9):
        expected[i] = 3 * expected[i - 2] + 2 * expected[i - 3]
    assert ser.as_list() == expected == [1, 0, 3, 2, 9, 12, 31, 54, 117]


def test_truncation_stability(dga_m2):
    v = is_local(dga_m2)
    k = residue_module(dga_m2, v)
    small = tor(dga_m2, k, k, (0, 4), verdict=v)
    large = tor(dga_m2, k, k, (0, 7), verdict=v)
    assert small.as_list() == large.as_list(0, 4)


def test_tor_rejects_module_over_wrong_algebra(dga_x2, dga_x3):
    with pytest.raises(AxiomError):
        tor(dga_x2, residue_module(dga_x2), residue_module(dga_x3), (0, 2))


# -- syzygy ---------------------------------------------------------------------


def test_syzygy_of_residue_field_x2(dga_x2):
    v = is_local(dga_x2)
    k = residue_module(dga_x2, v)
    sd = syzygy(dga_x2, k, verdict=v)
    assert all(sd.report.values())
    assert sd.free.space.dims() == {0: 2}
    assert sd.mprime.space.dims() == {0: 1}
    assert sd.msecond.space.dims() == {0: 1}


def test_syzygy_of_finite_semifree_with_bounded_homology(dga_x2):
    v = is_local(dga_x2)
    b = algebra_as_module(dga_x2)
    sd = syzygy(dga_x2, b, verdict=v)
    assert all(sd.report.values())
    assert sd.mprime.space.total_dim() == 0


def test_syzygy_of_koszul_module(ring_m2, dga_m2):
    K, tag = koszul_complex(ring_m2, dga_m2)
    v = is_local(K)
    kmod = algebra_as_module(K)
    sd = syzygy(K, kmod, verdict=v)
    assert all(sd.report.values())
    for d in sd.free.space.labels:
        assert sd.mprime.space.dim(d) + sd.msecond.space.dim(d) == sd.free.space.dim(d)


# -- perfection -------------------------------------------------------------------


@pytest.mark.parametrize("fixture_name", ["dga_x2", "dga_x3", "dga_m2"])
def test_certify_perfect_free_and_residue(request, fixture_name):
    rdga = request.getfixturevalue(fixture_name)
    v = is_local(rdga)
    assert certify_perfect(rdga, algebra_as_module(rdga), 10, verdict=v).verdict == "PERFECT"
    assert certify_perfect(rdga, residue_module(rdga, v), 10, verdict=v).verdict == "NOT-PERFECT"


def test_certify_perfect_sum_with_suspension(dga_x2):
    v = is_local(dga_x2)
    b = algebra_as_module(dga_x2)
    m = direct_sum_modules(b, suspend_module(b))
    cert = certify_perfect(dga_x2, m, 10, verdict=v)
    assert cert.verdict == "PERFECT"
    assert cert.counts == {0: 1, 1: 1}
