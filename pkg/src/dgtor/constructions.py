"""Generative constructions: trivial extensions, Koszul extensions,
Koszul complexes of Artinian local rings, and module extension along a
Koszul extension."""

from __future__ import annotations

from .errors import AxiomError
from .dga import DGAlgebra, DGAlgebraMorphism, field_algebra, is_local
from .dgmod import DGModule
from .graded import ChainComplex, GradedMap, GradedSpace
from .linalg import Matrix, vec_axpy
from .rings import ArtinianLocalRing, as_dg_algebra


class TrivialExtensionTag:
    """Provenance of A |x W: the factors and the canonical morphisms."""

    __slots__ = ("algebra", "base", "eps", "w", "alpha", "beta", "w_offset")

    def __init__(self, algebra, base, eps, w, alpha, beta, w_offset):
        self.algebra = algebra
        self.base = base
        self.eps = eps
        self.w = w
        self.alpha = alpha
        self.beta = beta
        self.w_offset = w_offset  # degree -> index where the W part starts

    def w_part_indices(self, d):
        start = self.w_offset.get(d, self.algebra.space.dim(d))
        return range(start, self.algebra.space.dim(d))


def trivial_extension(a: DGAlgebra, eps: DGAlgebraMorphism, w: ChainComplex, name=None):
    """A |x W with product (a,w)(a',w') = (aa', eps(a)w' + (-1)^{|w||a'|}eps(a')w).

    W is a complex of k-spaces acted on through the augmentation.  Returns
    (B, tag) with tag.alpha: A -> B and tag.beta: B -> A, beta o alpha = id.
    """
    f = a.field
    if eps.source != a:
        raise AxiomError(["augmentation does not start at the given algebra"])
    if eps.target.space.dims() != {0: 1}:
        raise AxiomError(["augmentation target is not the field in degree 0"])
    labels = {}
    w_offset = {}
    for d in sorted(set(a.space.labels) | set(w.space.labels)):
        ls = list(a.space.labels.get(d, ()))
        w_offset[d] = len(ls)
        ls += ["w:" + l for l in w.space.labels.get(d, ())]
        if ls:
            labels[d] = ls
    sp = GradedSpace(f, labels)
    blocks = {}
    for d in labels:
        na, nat = a.space.dim(d), a.space.dim(d - 1)
        triplets = []
        ba = a.diff.blocks.get(d)
        if ba is not None:
            for i, r in ba.rows.items():
                for j, v in r.items():
                    triplets.append((i, j, v))
        bw = w.diff.blocks.get(d)
        if bw is not None:
            for i, r in bw.rows.items():
                for j, v in r.items():
                    triplets.append((nat + i, na + j, v))
        if triplets:
            blocks[d] = Matrix.from_triplets(sp.dim(d - 1), sp.dim(d), triplets, f)
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, blocks))

    def eps_value(d, i):
        if d != 0:
            return f.zero()
        img = eps.apply(0, {i: f.one()})
        return img.get(0, f.zero())

    products = {}
    for d1 in labels:
        for i1 in range(sp.dim(d1)):
            a_side1 = i1 < w_offset[d1]
            for d2 in labels:
                for i2 in range(sp.dim(d2)):
                    if (d1, i1) > (d2, i2):
                        continue
                    if d1 % 2 and (d1, i1) == (d2, i2):
                        continue
                    a_side2 = i2 < w_offset[d2]
                    vec = {}
                    if a_side1 and a_side2:
                        base = a.mul_basis(d1, i1, d2, i2)
                        vec = dict(base)  # A-part keeps its indices
                    elif a_side1 and not a_side2:
                        c = eps_value(d1, i1)
                        if c:
                            vec = {w_offset[d1 + d2] + (i2 - w_offset[d2]): c}
                    elif not a_side1 and a_side2:
                        c = eps_value(d2, i2)
                        if c:
                            sgn = f.neg(f.one()) if (d1 * d2) % 2 else f.one()
                            vec = {w_offset[d1 + d2] + (i1 - w_offset[d1]): f.mul(sgn, c)}
                    if vec:
                        products[((d1, i1), (d2, i2))] = vec
    unit = dict(a.unit)
    B = DGAlgebra(cx, unit, products, name=name or f"{a.name}|x{'W'}")
    # canonical morphisms
    alpha_blocks = {}
    for d in a.space.labels:
        cols = [{i: f.one()} for i in range(a.space.dim(d))]
        alpha_blocks[d] = Matrix.from_columns(cols, sp.dim(d), f)
    alpha = DGAlgebraMorphism(a, B, GradedMap(a.space, sp, 0, alpha_blocks))
    beta_blocks = {}
    for d in labels:
        cols = []
        for i in range(sp.dim(d)):
            cols.append({i: f.one()} if i < w_offset[d] else {})
        m = Matrix.from_columns(cols, a.space.dim(d), f)
        if not m.is_zero():
            beta_blocks[d] = m
    beta = DGAlgebraMorphism(B, a, GradedMap(sp, a.space, 0, beta_blocks))
    return B, TrivialExtensionTag(B, a, eps, w, alpha, beta, w_offset)


def complex_from_dims(field, dims: dict, prefix="w") -> ChainComplex:
    """A complex with zero differential and the given graded dimensions."""
    labels = {d: [f"{prefix}{d}_{i}" for i in range(n)] for d, n in dims.items() if n}
    sp = GradedSpace(field, labels)
    return ChainComplex(sp, GradedMap(sp, sp, -1, {}))


class KoszulStage:
    __slots__ = ("prev", "next", "var_label", "z_degree", "z_vec")

    def __init__(self, prev, next_, var_label, z_degree, z_vec):
        self.prev = prev
        self.next = next_
        self.var_label = var_label
        self.z_degree = z_degree
        self.z_vec = z_vec


class KoszulExtensionTag:
    """Iterated adjunction data: base, stages, final algebra, inclusion."""

    __slots__ = ("base", "stages", "extension", "inclusion")

    def __init__(self, base, stages, extension, inclusion):
        self.base = base
        self.stages = stages
        self.extension = extension
        self.inclusion = inclusion

    def variables(self):
        return [(s.var_label, s.z_degree + 1) for s in self.stages]


def koszul_extension(b: DGAlgebra, z_degree: int, z_vec: dict, var_label="e", name=None):
    """Adjoin one exterior variable x with dx = z, |x| = |z| + 1.

    z must be a cycle of even degree.  Returns (B<x>, tag) where the tag
    holds the single stage and the inclusion morphism.
    """
    f = b.field
    if z_degree % 2:
        raise AxiomError([f"killed cycle must have even degree, got {z_degree}"])
    z_vec = {i: f.normalize(v) for i, v in z_vec.items() if f.normalize(v)}
    if b.diff.apply(z_degree, z_vec):
        raise AxiomError(["adjoined element must kill a cycle"])
    dx = z_degree + 1
    labels = {}
    offsets = {}
    degs = set(b.space.labels) | {d + dx for d in b.space.labels}
    for d in sorted(degs):
        ls = list(b.space.labels.get(d, ()))
        offsets[d] = len(ls)
        for lab in b.space.labels.get(d - dx, ()):
            ls.append(var_label if lab == "1" else f"{lab}*{var_label}")
        if ls:
            labels[d] = ls
    sp = GradedSpace(f, labels)

    def b_part(d, i):
        """Return ('b'|'x', base degree, base index)."""
        off = offsets.get(d, 0)
        if i < off:
            return "b", d, i
        return "x", d - dx, i - off

    def embed(kind, d, vec):
        """Embed a B-vector of degree d as the kind-part in B<x>."""
        if kind == "b":
            return dict(vec)
        off = offsets.get(d + dx, 0)
        return {off + i: v for i, v in vec.items()}

    blocks = {}
    for d in labels:
        cols = []
        for i in range(sp.dim(d)):
            kind, bd, bi = b_part(d, i)
            col = {}
            img = b.diff.apply(bd, {bi: f.one()})
            if img:
                col.update(embed(kind, bd - 1, img))
            if kind == "x":
                sgn = f.one() if bd % 2 == 0 else f.neg(f.one())
                extra = b.mul(bd, {bi: f.one()}, z_degree, z_vec)
                for i2, v in extra.items():
                    vec_axpy(col, sgn, embed("b", bd + z_degree, {i2: v}), f)
            cols.append(col)
        m = Matrix.from_columns(cols, sp.dim(d - 1), f)
        if not m.is_zero():
            blocks[d] = m
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, blocks))
    products = {}
    for d1 in labels:
        for i1 in range(sp.dim(d1)):
            k1, bd1, bi1 = b_part(d1, i1)
            for d2 in labels:
                for i2 in range(sp.dim(d2)):
                    if (d1, i1) > (d2, i2):
                        continue
                    if d1 % 2 and (d1, i1) == (d2, i2):
                        continue
                    k2, bd2, bi2 = b_part(d2, i2)
                    if k1 == "x" and k2 == "x":
                        continue
                    base = b.mul_basis(bd1, bi1, bd2, bi2)
                    if not base:
                        continue
                    if k1 == "b" and k2 == "b":
                        vec = embed("b", bd1 + bd2, base)
                    elif k1 == "b":
                        vec = embed("x", bd1 + bd2, base)
                    else:
                        # (beta x) * beta' = (-1)^{|beta'|} (beta beta') x
                        vec = embed("x", bd1 + bd2, base)
                        if bd2 % 2:
                            vec = {i: f.neg(v) for i, v in vec.items()}
                    if vec:
                        products[((d1, i1), (d2, i2))] = vec
    unit = dict(b.unit)
    Bx = DGAlgebra(cx, unit, products, name=name or f"{b.name}<{var_label}>")
    inc_blocks = {}
    for d in b.space.labels:
        cols = [{i: f.one()} for i in range(b.space.dim(d))]
        inc_blocks[d] = Matrix.from_columns(cols, sp.dim(d), f)
    incl = DGAlgebraMorphism(b, Bx, GradedMap(b.space, sp, 0, inc_blocks))
    stage = KoszulStage(b, Bx, var_label, z_degree, z_vec)
    tag = KoszulExtensionTag(b, [stage], Bx, incl)
    return Bx, tag


def iterate_koszul(b: DGAlgebra, cycles, labels=None, name=None):
    """Iterated Koszul extension killing the given (degree, vector) cycles."""
    stages = []
    cur = b
    incl = None
    for idx, (zd, zv) in enumerate(cycles):
        lab = labels[idx] if labels else f"e{idx + 1}"
        cur, tag = koszul_extension(cur, zd, zv, var_label=lab)
        stages.extend(tag.stages)
        incl = tag.inclusion if incl is None else DGAlgebraMorphism(
            b, cur, tag.inclusion.gmap.compose(incl.gmap), check=False
        )
    if name:
        cur.name = name
    return cur, KoszulExtensionTag(b, stages, cur, incl)


def koszul_complex(r: ArtinianLocalRing, rdga: DGAlgebra = None, name=None):
    """Koszul complex on the minimal generating set (the variables) of the
    maximal ideal; rejects non-minimal generating sets."""
    if rdga is None:
        rdga = as_dg_algebra(r)
    f = r.field
    for i, v in enumerate(r.variables):
        exps = tuple(1 if j == i else 0 for j in range(len(r.variables)))
        if exps not in r.index:
            raise AxiomError(
                [f"variable {v} vanishes in the quotient: generating set is not minimal"]
            )
    # minimality: variable images must be a basis of m/m^2; for monomial
    # quotients this amounts to no degree-<2 generator, i.e. I in m^2.
    if not r.in_m_squared:
        raise AxiomError(["ideal is not contained in the square of the maximal ideal"])
    cycles = []
    for v in r.variables:
        cycles.append((0, {r.variable_index(v): f.one()}))
    K, tag = iterate_koszul(rdga, cycles, labels=[f"e{i+1}" for i in range(len(r.variables))])
    K.name = name or f"K({r!r})"
    return K, tag


def module_koszul_extension(tag: KoszulExtensionTag, m: DGModule) -> DGModule:
    """M<X> = B<X> (x)_B M with the induced action, built stage by stage."""
    cur = m
    for stage in tag.stages:
        if cur.algebra != stage.prev:
            raise AxiomError(["module is not over the extension base at this stage"])
        cur = _module_single_extension(stage, cur)
    return cur


def _module_single_extension(stage: KoszulStage, m: DGModule) -> DGModule:
    f = m.field
    B2 = stage.next
    dz = stage.z_degree
    dx = dz + 1
    zv = stage.z_vec
    mcx = m.complex
    labels = {}
    offsets = {}
    degs = set(mcx.space.labels) | {d + dx for d in mcx.space.labels}
    for d in sorted(degs):
        ls = list(mcx.space.labels.get(d, ()))
        offsets[d] = len(ls)
        for lab in mcx.space.labels.get(d - dx, ()):
            ls.append(f"{stage.var_label}|{lab}")
        if ls:
            labels[d] = ls
    sp = GradedSpace(f, labels)

    def part(d, i):
        off = offsets.get(d, 0)
        if i < off:
            return "m", d, i
        return "x", d - dx, i - off

    def embed(kind, d, vec):
        if kind == "m":
            return dict(vec)
        off = offsets.get(d + dx, 0)
        return {off + i: v for i, v in vec.items()}

    blocks = {}
    for d in labels:
        cols = []
        for i in range(sp.dim(d)):
            kind, md, mi = part(d, i)
            col = {}
            if kind == "m":
                img = mcx.diff.apply(md, {mi: f.one()})
                col.update(img)
            else:
                # d(x (x) m) = (z.m) - x (x) dm
                zm = m.act(dz, zv, md, {mi: f.one()})
                col.update(embed("m", dz + md, zm))
                dm = mcx.diff.apply(md, {mi: f.one()})
                for i2, v in dm.items():
                    vec_axpy(col, f.neg(f.one()), embed("x", md - 1, {i2: v}), f)
            cols.append(col)
        mtx = Matrix.from_columns(cols, sp.dim(d - 1), f)
        if not mtx.is_zero():
            blocks[d] = mtx
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, blocks))
    # action of B<x> basis elements (beta or beta*x) on (m or x(x)m)
    prev = stage.prev
    prev_offsets = {}
    for d in B2.space.labels:
        prev_offsets[d] = prev.space.dim(d)

    def alg_part(d, i):
        off = prev_offsets.get(d, 0)
        if i < off:
            return "b", d, i
        return "bx", d - dx, i - off

    action = {}
    for da in B2.space.labels:
        for ia in range(B2.space.dim(da)):
            ak, abd, abi = alg_part(da, ia)
            for dm0 in labels:
                for im0 in range(sp.dim(dm0)):
                    mk, md, mi = part(dm0, im0)
                    out = {}
                    if ak == "b" and mk == "m":
                        out = embed("m", abd + md, m.act(abd, {abi: f.one()}, md, {mi: f.one()}))
                    elif ak == "b" and mk == "x":
                        v = m.act(abd, {abi: f.one()}, md, {mi: f.one()})
                        if abd % 2:
                            v = {i2: f.neg(c) for i2, c in v.items()}
                        out = embed("x", abd + md, v)
                    elif ak == "bx" and mk == "m":
                        v = m.act(abd, {abi: f.one()}, md, {mi: f.one()})
                        if abd % 2:
                            v = {i2: f.neg(c) for i2, c in v.items()}
                        out = embed("x", abd + md, v)
                    # (beta x).(x (x) m) = 0
                    if out:
                        action[((da, ia), (dm0, im0))] = out
    return DGModule(B2, cx, action, name=f"{m.name}<{stage.var_label}>")
