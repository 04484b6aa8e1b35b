"""Chain complexes, homology with representatives, cones, tensor products."""

import pytest

from dgtor.errors import AxiomError, DifferentialError, TruncationError
from dgtor.field import GF101
from dgtor.graded import (
    ChainComplex,
    ChainMap,
    GradedMap,
    GradedSpace,
    cone,
    cone_coker_qiso,
    cone_ker_qiso,
    direct_sum,
    euler_characteristic,
    homology,
    homology_dims,
    identity_map,
    is_quasi_iso,
    suspension,
    tensor_k,
    zero_complex,
)
from dgtor.linalg import Matrix
from dgtor.constructions import complex_from_dims, koszul_complex
from dgtor.dga import DGAlgebraMorphism

F = GF101


def two_term(value=1, labels=("a", "b")):
    """0 -> k -> k -> 0 with the differential multiplying by `value`."""
    sp = GradedSpace(F, {0: [labels[0]], 1: [labels[1]]})
    blocks = {}
    if value:
        blocks[1] = Matrix.from_rows([[value]], F)
    return ChainComplex(sp, GradedMap(sp, sp, -1, blocks))


@pytest.fixture(scope="module")
def koszul_m2(ring_m2, dga_m2):
    K, _ = koszul_complex(ring_m2, dga_m2)
    return K


def test_zero_complex_homology():
    assert homology_dims(zero_complex(F)) == {}


def test_square_zero_enforced_with_degree():
    sp = GradedSpace(F, {0: ["a"], 1: ["b"], 2: ["c"]})
    blocks = {1: Matrix.from_rows([[1]], F), 2: Matrix.from_rows([[1]], F)}
    with pytest.raises(DifferentialError) as exc:
        ChainComplex(sp, GradedMap(sp, sp, -1, blocks))
    assert exc.value.degree == 0


def test_koszul_homology_dims(koszul_m2):
    assert homology_dims(koszul_m2.complex) == {0: 1, 1: 3, 2: 2}


def test_homology_representatives_are_cycles(koszul_m2):
    h = homology(koszul_m2.complex)
    for d, reps in h.reps.items():
        for v in reps:
            assert koszul_m2.complex.diff.apply(d, v) == {}
        for i, v in enumerate(reps):
            assert h.project(d, v) == ({i: 1} if v else {})


def test_cone_of_identity_acyclic(koszul_m2):
    c = cone(identity_map(koszul_m2.complex))
    assert not any(homology_dims(c).values())


def test_cone_of_zero_map_is_direct_sum():
    x = two_term(0)
    y = two_term(0, labels=("c", "d"))
    from dgtor.graded import zero_map

    c = cone(zero_map(x, y))
    assert c.space.dims() == {0: 1, 1: 2, 2: 1}
    assert c.diff.is_zero()


def test_suspension_of_zero():
    assert suspension(zero_complex(F)).space.dims() == {}


def test_double_suspension_shifts_dims(koszul_m2):
    c = koszul_m2.complex
    s2 = suspension(suspension(c))
    assert s2.space.dims() == {d + 2: n for d, n in c.space.dims().items()}


def test_suspension_shifts_homology(koszul_m2):
    c = koszul_m2.complex
    hs = homology_dims(suspension(c))
    h = homology_dims(c)
    assert {d: n for d, n in hs.items() if n} == {d + 1: n for d, n in h.items() if n}


def test_suspension_negates_differential():
    c = two_term(3)
    s = suspension(c)
    assert s.diff.block(2).entry(0, 0) == F.neg(F.normalize(3))


def test_cone_euler_characteristic(koszul_m2):
    # chi(cone(psi)) = chi(T) - chi(S) on homology
    c = koszul_m2.complex
    psi = identity_map(c)
    assert euler_characteristic(homology_dims(cone(psi))) == 0
    sh = suspension(c)
    from dgtor.graded import zero_map

    z = zero_map(c, sh)
    lhs = euler_characteristic(homology_dims(cone(z)))
    rhs = euler_characteristic(homology_dims(sh)) - euler_characteristic(homology_dims(c))
    assert lhs == rhs


def test_tensor_with_field_is_identity(koszul_m2):
    c = koszul_m2.complex
    unit = complex_from_dims(F, {0: 1})
    t = tensor_k(c, unit)
    assert t.space.dims() == c.space.dims()
    assert homology_dims(t) == homology_dims(c)


def test_kunneth_on_koszul_square(koszul_m2):
    c = koszul_m2.complex
    t = tensor_k(c, c)
    # convolution of (1,3,2) with itself, frozen by hand
    assert {d: n for d, n in homology_dims(t).items() if n} == {0: 1, 1: 6, 2: 13, 3: 12, 4: 4}


def test_tensor_swap_symmetric_dims(koszul_m2):
    c = koszul_m2.complex
    s = suspension(c)
    assert tensor_k(c, s).space.dims() == tensor_k(s, c).space.dims()


def test_cone_coker_qiso_on_koszul_inclusion(ring_x3, dga_x3):
    K, tag = koszul_complex(ring_x3, dga_x3)
    incl = tag.inclusion.chain_map()
    coker, qiso = cone_coker_qiso(incl)
    assert is_quasi_iso(qiso)
    assert {d: n for d, n in homology_dims(coker).items() if n} == {1: 3}


def test_cone_coker_qiso_identity_gives_zero(koszul_m2):
    coker, qiso = cone_coker_qiso(identity_map(koszul_m2.complex))
    assert coker.space.total_dim() == 0
    assert not any(homology_dims(qiso.source).values())


def test_cone_coker_qiso_on_summand_inclusion():
    x = two_term(0)
    y = two_term(0, labels=("c", "d"))
    s = direct_sum(x, y)
    blocks = {d: Matrix.from_columns([{i: 1} for i in range(x.space.dim(d))], s.space.dim(d), F)
              for d in x.space.labels}
    incl = ChainMap(x, s, GradedMap(x.space, s.space, 0, blocks))
    coker, qiso = cone_coker_qiso(incl)
    assert coker.space.dims() == y.space.dims()
    assert is_quasi_iso(qiso)


def test_cone_coker_rejects_non_injective():
    x = two_term(0)
    from dgtor.graded import zero_map

    with pytest.raises(AxiomError):
        cone_coker_qiso(zero_map(x, x))


def test_cone_ker_qiso_on_trivial_extension_projection(dga_x2):
    from dgtor.dga import augmentation
    from dgtor.constructions import trivial_extension

    W = complex_from_dims(F, {0: 1})
    B, tag = trivial_extension(dga_x2, augmentation(dga_x2), W)
    C, qiso = cone_ker_qiso(tag.beta.chain_map())
    assert is_quasi_iso(qiso)
    assert {d: n for d, n in homology_dims(C).items() if n} == {1: 1}


def test_cone_ker_qiso_on_projection_of_sum():
    x = two_term(0)
    y = two_term(0, labels=("c", "d"))
    s = direct_sum(x, y)
    blocks = {}
    for d in y.space.labels:
        cols = []
        for i in range(s.space.dim(d)):
            nx = x.space.dim(d)
            cols.append({i - nx: 1} if i >= nx else {})
        blocks[d] = Matrix.from_columns(cols, y.space.dim(d), F)
    proj = ChainMap(s, y, GradedMap(s.space, y.space, 0, blocks))
    C, qiso = cone_ker_qiso(proj)
    assert is_quasi_iso(qiso)
    hs = {d: n for d, n in homology_dims(qiso.source).items() if n}
    assert hs == {d + 1: n for d, n in homology_dims(x).items() if n}


def test_cone_ker_rejects_non_surjective():
    x = two_term(0)
    from dgtor.graded import zero_map

    with pytest.raises(AxiomError):
        cone_ker_qiso(zero_map(x, x))


def test_truncation_pollution_is_an_error():
    sp = GradedSpace(F, {0: ["a"], 1: ["b"]})
    c = ChainComplex(sp, GradedMap(sp, sp, -1, {}), truncated_above=1)
    with pytest.raises(TruncationError):
        homology(c, (0, 1))
    assert homology_dims(c, (0, 0)) == {0: 1}


def test_truncation_stability_of_homology(koszul_m2):
    c = koszul_m2.complex
    full = homology_dims(c)
    windowed = homology_dims(c, (1, 1))
    assert windowed[1] == full[1]
