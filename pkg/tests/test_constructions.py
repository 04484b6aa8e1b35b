"""Trivial extensions, Koszul extensions, Koszul complexes, module extension."""

import pytest

from dgtor.errors import AxiomError
from dgtor.field import GF101
from dgtor.dga import augmentation, field_algebra, homology_algebra, is_local
from dgtor.dgmod import algebra_as_module, residue_module
from dgtor.graded import homology_dims
from dgtor.linalg import SpanReducer
from dgtor.rings import as_dg_algebra, from_monomial_ideal
from dgtor.constructions import (
    complex_from_dims,
    iterate_koszul,
    koszul_complex,
    koszul_extension,
    module_koszul_extension,
    trivial_extension,
)

F = GF101


def test_trivial_extension_smallest_case():
    # k |x k in degree 0 is k[w]/(w^2)
    kalg = field_algebra(F)
    W = complex_from_dims(F, {0: 1})
    B, tag = trivial_extension(kalg, augmentation(kalg), W)
    assert B.validate() == []
    assert B.space.dims() == {0: 2}
    ref = as_dg_algebra(from_monomial_ideal(F, ["w"], ["w^2"]))
    assert B.space.dims() == ref.space.dims()
    wi = tag.w_offset[0]
    assert B.mul_basis(0, wi, 0, wi) == {}
    assert is_local(B).is_local


def test_trivial_extension_matches_monomial_ring(dga_x2):
    # (k[x]/(x^2)) |x k is k[x,w]/(x^2, xw, w^2): compare multiplication
    W = complex_from_dims(F, {0: 1})
    B, tag = trivial_extension(dga_x2, augmentation(dga_x2), W)
    assert B.validate() == []
    ref = as_dg_algebra(from_monomial_ideal(F, ["x", "w"], ["x^2", "x*w", "w^2"]))
    # map basis 1 -> 1, x -> x, w:w0_0 -> w and compare all products
    blabels = B.space.labels[0]
    mapping = {}
    for i, lab in enumerate(blabels):
        target = "1" if lab == "1" else ("x" if lab == "x" else "w")
        mapping[i] = ref.space.index_of(0, target)
    for i in range(3):
        for j in range(i, 3):
            got = B.mul_basis(0, i, 0, j)
            expected = ref.mul_basis(0, mapping[i], 0, mapping[j])
            assert {mapping[t]: v for t, v in got.items()} == expected


def test_trivial_extension_with_degree_one_w():
    kalg = field_algebra(F)
    W = complex_from_dims(F, {1: 1})
    B, tag = trivial_extension(kalg, augmentation(kalg), W)
    assert B.validate() == []
    wi = tag.w_offset[1]
    assert B.mul_basis(1, wi, 1, wi) == {}


def test_trivial_extension_canonical_maps(dga_x2):
    W = complex_from_dims(F, {0: 2, 1: 1})
    B, tag = trivial_extension(dga_x2, augmentation(dga_x2), W)
    assert tag.beta.compose(tag.alpha).is_identity()
    # W part squares to zero, for every pair
    for d1 in B.space.labels:
        for i1 in tag.w_part_indices(d1):
            for d2 in B.space.labels:
                for i2 in tag.w_part_indices(d2):
                    if (d1, i1) <= (d2, i2):
                        assert B.mul_basis(d1, i1, d2, i2) == {}


def test_trivial_extension_homology_splits(dga_x2):
    # H(A |x W) = H(A) + H(W) when the differential is block diagonal
    W = complex_from_dims(F, {0: 1, 2: 2})
    B, _ = trivial_extension(dga_x2, augmentation(dga_x2), W)
    hb = homology_dims(B.complex)
    ha = homology_dims(dga_x2.complex)
    hw = homology_dims(W)
    for d in set(hb) | set(ha) | set(hw):
        assert hb.get(d, 0) == ha.get(d, 0) + hw.get(d, 0)


def test_koszul_extension_zero_cycle(dga_x2):
    # z = 0 adjoins an exterior variable with dx = 0: H(B<x>) = H(B) (x) E(x)
    Bx, _ = koszul_extension(dga_x2, 0, {}, var_label="t")
    assert Bx.validate() == []
    h = homology_dims(Bx.complex)
    ha = homology_dims(dga_x2.complex)
    assert h[0] == ha[0] and h[1] == ha[0]


def test_koszul_extension_x3(ring_x3, dga_x3):
    xi = ring_x3.variable_index("x")
    Bx, _ = koszul_extension(dga_x3, 0, {xi: F.one()}, var_label="e")
    assert Bx.validate() == []
    assert {d: n for d, n in homology_dims(Bx.complex).items() if n} == {0: 1, 1: 1}


def test_koszul_extension_rejects_odd_or_noncycle(dga_x3):
    with pytest.raises(AxiomError):
        koszul_extension(dga_x3, 1, {}, var_label="t")
    # build an even-degree non-cycle: in K<t> with dt = 0, d(e1*t) = x*t != 0
    K, _ = koszul_complex(from_monomial_ideal(F, ["x"], ["x^3"]), None)
    Kt, _ = koszul_extension(K, 0, {}, var_label="t")
    e1t = Kt.space.index_of(2, "e1*t")
    assert Kt.diff.apply(2, {e1t: F.one()})  # really not a cycle
    with pytest.raises(AxiomError):
        koszul_extension(Kt, 2, {e1t: F.one()}, var_label="u")


def test_iterated_koszul_is_koszul_complex(ring_m2, dga_m2):
    xi, yi = ring_m2.variable_index("x"), ring_m2.variable_index("y")
    K1, _ = iterate_koszul(dga_m2, [(0, {xi: F.one()}), (0, {yi: F.one()})])
    assert K1.validate() == []
    assert {d: n for d, n in homology_dims(K1.complex).items() if n} == {0: 1, 1: 3, 2: 2}


def test_koszul_generator_sign_convention(ring_m2, dga_m2):
    # d(e1e2) = z1 e2 - z2 e1 for the generator order e1 < e2
    K, _ = koszul_complex(ring_m2, dga_m2)
    i12 = K.space.index_of(2, "e1*e2")
    img = K.complex.diff.apply(2, {i12: F.one()})
    xi, yi = ring_m2.variable_index("x"), ring_m2.variable_index("y")
    e1 = K.space.index_of(1, "e1")
    e2 = K.space.index_of(1, "e2")
    # z1 = x, z2 = y; x*e2 has label "x*e2" and y*e1 has "y*e1"
    xe2 = K.space.index_of(1, "x*e2")
    ye1 = K.space.index_of(1, "y*e1")
    assert img == {xe2: F.one(), ye1: F.neg(F.one())}


def test_koszul_complex_of_field():
    r = from_monomial_ideal(F, [], [])
    K, _ = koszul_complex(r)
    assert K.space.dims() == {0: 1}


def test_koszul_complex_x2(ring_x2, dga_x2):
    K, _ = koszul_complex(ring_x2, dga_x2)
    assert K.space.dims() == {0: 2, 1: 2}
    assert {d: n for d, n in homology_dims(K.complex).items() if n} == {0: 1, 1: 1}


def test_koszul_complex_rejects_nonminimal_generators():
    r = from_monomial_ideal(F, ["x", "y"], ["y", "x^2"])
    with pytest.raises(AxiomError):
        koszul_complex(r)


def test_lemma_exterior_les_dimension_count(ring_x3, dga_x3):
    # dim H_i(B<x>) = dim(H_i/z H_{i-d}) + dim ann_z(H_{i-d-1}) with d = |z|
    from dgtor.graded import homology
    from dgtor.linalg import Matrix, rank

    xi = ring_x3.variable_index("x")
    z = {xi: F.one()}
    Bx, _ = koszul_extension(dga_x3, 0, z, var_label="e")
    hb = homology(dga_x3.complex)
    hbx = homology_dims(Bx.complex)
    for i in sorted(set(hbx) | set(hb.dims)):
        # multiplication by z on homology of B (B has zero differential here)
        def mul_z_rank(src_deg):
            n = dga_x3.space.dim(src_deg)
            if n == 0:
                return 0, 0
            cols = [dga_x3.mul(0, z, src_deg, {j: F.one()}) for j in range(n)]
            m = Matrix.from_columns(cols, dga_x3.space.dim(src_deg), F)
            return rank(m), n
        rk_i, n_i = mul_z_rank(i)
        quotient = dga_x3.space.dim(i) - rk_i
        rk_prev, n_prev = mul_z_rank(i - 1)
        ann = n_prev - rk_prev
        assert hbx.get(i, 0) == quotient + ann


def test_module_extension_of_base(ring_x3, dga_x3):
    K, tag = koszul_complex(ring_x3, dga_x3)
    Bmod = algebra_as_module(dga_x3)
    ext = module_koszul_extension(tag, Bmod)
    assert ext.validate() == []
    assert ext.space.dims() == K.space.dims()


def test_module_extension_of_residue_field(ring_x3, dga_x3):
    K, tag = koszul_complex(ring_x3, dga_x3)
    k = residue_module(dga_x3)
    ext = module_koszul_extension(tag, k)
    assert ext.validate() == []
    assert {d: n for d, n in homology_dims(ext.complex).items() if n} == {0: 1, 1: 1}


def test_module_extension_binomial_dims(ring_m2, dga_m2):
    K, tag = koszul_complex(ring_m2, dga_m2)
    k = residue_module(dga_m2)
    ext = module_koszul_extension(tag, k)
    assert ext.space.dims() == {0: 1, 1: 2, 2: 1}
    assert ext.validate() == []


def test_module_extension_wrong_algebra_rejected(ring_x3, dga_x3, dga_x2):
    _, tag = koszul_complex(ring_x3, dga_x3)
    with pytest.raises(AxiomError):
        module_koszul_extension(tag, residue_module(dga_x2))
