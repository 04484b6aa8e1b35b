"""DG modules, tensor products over a DG algebra, the minimal semifree
resolution engine, Tor, Poincare series, syzygies, and perfection
certificates.

Semifree modules are held by their ordered generator list: each generator
stores its differential and comparison image, and the underlying free
basis is enumerated as (generator, algebra basis element) pairs on demand.
All engine-internal vectors over that basis are keyed by
(generator index, algebra degree, algebra index) so that adjoining later
generators never invalidates earlier data.
"""

from __future__ import annotations

from .errors import AxiomError, DimensionError, FieldMismatchError, TruncationError
from .dga import DGAlgebra, DGAlgebraMorphism, is_local, maximal_ideal_basis
from .graded import (
    ChainComplex,
    ChainMap,
    GradedMap,
    GradedSpace,
    cone,
    homology,
    homology_dims,
)
from .linalg import Matrix, SpanReducer, kernel_basis, solve, vec_axpy, vec_scale


class DGModule:
    """A chain complex with a left action of a DG algebra.

    The action is stored as structure constants on basis pairs; the right
    action is derived by the graded-commutative sign rule, so only
    one-sided data exists.
    """

    __slots__ = ("algebra", "complex", "action", "name")

    def __init__(self, algebra: DGAlgebra, complex_: ChainComplex, action: dict, name="M", validate=False):
        if algebra.field != complex_.field:
            raise FieldMismatchError("module over a different field than its algebra")
        self.algebra = algebra
        self.complex = complex_
        self.action = {}
        for key, vec in action.items():
            vec = {i: v for i, v in vec.items() if v}
            if vec:
                self.action[key] = vec
        self.name = name
        if validate:
            violations = self.validate()
            if violations:
                raise AxiomError([str(v) for v in violations])

    @property
    def field(self):
        return self.complex.field

    @property
    def space(self) -> GradedSpace:
        return self.complex.space

    @property
    def diff(self) -> GradedMap:
        return self.complex.diff

    def act_basis(self, db, ib, dm, im) -> dict:
        return self.action.get(((db, ib), (dm, im)), {})

    def act(self, db, avec: dict, dm, mvec: dict) -> dict:
        f = self.field
        out = {}
        for ib, ca in avec.items():
            for im, cm in mvec.items():
                c = f.mul(ca, cm)
                if c:
                    vec_axpy(out, c, self.act_basis(db, ib, dm, im), f)
        return out

    def right_act(self, dm, mvec: dict, db, bvec: dict) -> dict:
        """m * b := (-1)^{|b||m|} b * m."""
        out = self.act(db, bvec, dm, mvec)
        if (db * dm) % 2:
            f = self.field
            out = {i: f.neg(v) for i, v in out.items()}
        return out

    def validate(self, max_violations=25) -> list:
        f = self.field
        a = self.algebra
        out = []

        def report(axiom, witness):
            if len(out) < max_violations:
                out.append({"axiom": axiom, "witness": witness})

        mod_basis = list(self.space.basis())
        alg_basis = list(a.space.basis())
        for dm, im in mod_basis:
            got = self.act(0, a.unit, dm, {im: f.one()})
            if got != {im: f.one()}:
                report("unit-action", {"module": (dm, im), "got": got})
        for db, ib in alg_basis:
            da_img = a.diff.apply(db, {ib: f.one()})
            for dm, im in mod_basis:
                # Leibniz
                lhs = self.diff.apply(db + dm, self.act_basis(db, ib, dm, im))
                rhs = self.act(db - 1, da_img, dm, {im: f.one()})
                sgn = f.one() if db % 2 == 0 else f.neg(f.one())
                dm_img = self.diff.apply(dm, {im: f.one()})
                term2 = self.act(db, {ib: f.one()}, dm - 1, dm_img)
                vec_axpy(rhs, sgn, term2, f)
                if lhs != rhs:
                    report("leibniz-action", {"algebra": (db, ib), "module": (dm, im)})
        for d1, i1 in alg_basis:
            for d2, i2 in alg_basis:
                prod = a.mul_basis(d1, i1, d2, i2)
                for dm, im in mod_basis:
                    lhs = self.act(d1 + d2, prod, dm, {im: f.one()})
                    inner = self.act_basis(d2, i2, dm, im)
                    rhs = self.act(d1, {i1: f.one()}, d2 + dm, inner)
                    if lhs != rhs:
                        report(
                            "associativity-action",
                            {"pair": ((d1, i1), (d2, i2)), "module": (dm, im)},
                        )
        return out

    def homology(self, window=None):
        return homology(self.complex, window)

    def __eq__(self, other):
        return (
            isinstance(other, DGModule)
            and self.algebra == other.algebra
            and self.complex == other.complex
            and self.action == other.action
        )

    def __repr__(self):
        return f"DGModule({self.name} over {self.algebra.name}, dims={self.space.dims()})"


# -- module constructors ---------------------------------------------------


def algebra_as_module(b: DGAlgebra) -> DGModule:
    action = {}
    for da, ia in b.space.basis():
        for dm, im in b.space.basis():
            vec = b.mul_basis(da, ia, dm, im)
            if vec:
                action[((da, ia), (dm, im))] = vec
    return DGModule(b, b.complex, action, name=b.name)


def residue_module(b: DGAlgebra, verdict=None, label="k") -> DGModule:
    """The residue field k as a DG module over a local DG algebra."""
    if verdict is None:
        verdict = is_local(b)
    if not verdict:
        raise AxiomError(["algebra is not local"] + verdict.reasons)
    f = b.field
    sp = GradedSpace(f, {0: [label]})
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, {}))
    action = {}
    for i, lam in enumerate(verdict.lambdas):
        if lam:
            action[((0, i), (0, 0))] = {0: lam}
    return DGModule(b, cx, action, name=label)


def restrict_scalars(fmor: DGAlgebraMorphism, m: DGModule) -> DGModule:
    """View a module over the target of a morphism as one over its source."""
    if m.algebra != fmor.target:
        raise AxiomError(["module is not over the morphism target"])
    f = m.field
    action = {}
    for da, ia in fmor.source.space.basis():
        img = fmor.apply(da, {ia: f.one()})
        if not img:
            continue
        for dm, im in m.space.basis():
            vec = m.act(da, img, dm, {im: f.one()})
            if vec:
                action[((da, ia), (dm, im))] = vec
    return DGModule(fmor.source, m.complex, action, name=f"{m.name}^")


def suspend_module(m: DGModule) -> DGModule:
    """Shift up by one; differential negated, action twisted by (-1)^{|b|}."""
    from .graded import suspension

    f = m.field
    cx = suspension(m.complex)
    action = {}
    for ((db, ib), (dm, im)), vec in m.action.items():
        v = vec if db % 2 == 0 else {i: f.neg(c) for i, c in vec.items()}
        action[((db, ib), (dm + 1, im))] = v
    return DGModule(m.algebra, cx, action, name=f"S{m.name}")


def direct_sum_modules(x: DGModule, y: DGModule, prefixes=("l:", "r:")) -> DGModule:
    if x.algebra != y.algebra:
        raise AxiomError(["direct sum of modules over different algebras"])
    from .graded import direct_sum

    cx = direct_sum(x.complex, y.complex, prefixes)
    action = {}
    for ((db, ib), (dm, im)), vec in x.action.items():
        action[((db, ib), (dm, im))] = vec
    for ((db, ib), (dm, im)), vec in y.action.items():
        off_src = x.space.dim(dm)
        off_tgt = x.space.dim(db + dm)
        action[((db, ib), (dm, off_src + im))] = {off_tgt + i: v for i, v in vec.items()}
    return DGModule(x.algebra, cx, action, name=f"{x.name}(+){y.name}")


def sub_module(m: DGModule, basis: dict, name=None):
    """Submodule spanned degreewise by given vectors.

    Checked closed under both the differential and the algebra action.
    Returns (sub DGModule, inclusion ChainMap).
    """
    from .graded import subcomplex_on

    f = m.field
    sub_cx, incl = subcomplex_on(m.complex, basis)
    reducers = {}
    vecs = {}
    for d in sub_cx.space.labels:
        red = SpanReducer(f)
        vs = []
        for j in range(sub_cx.space.dim(d)):
            v = incl.apply(d, {j: f.one()})
            vs.append(v)
            red.add(v, tag=j)
        reducers[d] = red
        vecs[d] = vs
    action = {}
    for da, ia in m.algebra.space.basis():
        for dm in list(vecs):
            for jm, v in enumerate(vecs[dm]):
                img = m.act(da, {ia: f.one()}, dm, v)
                if not img:
                    continue
                red = reducers.get(da + dm)
                if red is None:
                    raise AxiomError([f"span not closed under action at degree {da + dm}"])
                residual, used = red.reduce(img)
                if residual:
                    raise AxiomError([f"span not closed under action at degree {da + dm}"])
                action[((da, ia), (dm, jm))] = used
    sub = DGModule(m.algebra, sub_cx, action, name=name or f"sub({m.name})")
    return sub, ChainMap(sub_cx, m.complex, incl.gmap)


def quotient_module(m: DGModule, sub_basis: dict, name=None):
    """Quotient by a differential- and action-closed span.

    Returns (quotient DGModule, projection ChainMap).
    """
    from .graded import quotient_complex

    f = m.field
    quot_cx, proj = quotient_complex(m.complex, sub_basis)
    # action closure check
    reducers = {}
    for d in m.space.labels:
        red = SpanReducer(f)
        for v in sub_basis.get(d, ()):
            if v:
                red.add(v)
        reducers[d] = red
    for da, ia in m.algebra.space.basis():
        for dm, vs in sub_basis.items():
            for v in vs:
                if not v:
                    continue
                img = m.act(da, {ia: f.one()}, dm, v)
                if img and not reducers.get(da + dm, SpanReducer(f)).contains(img):
                    raise AxiomError([f"span not closed under action at degree {da + dm}"])
    # induced action on the surviving coordinates
    action = {}
    sections = {}
    for d in quot_cx.space.labels:
        cols = []
        for j in range(quot_cx.space.dim(d)):
            lab = quot_cx.space.label(d, j)
            i = m.space.index_of(d, lab)
            cols.append({i: f.one()})
        sections[d] = cols
    for da, ia in m.algebra.space.basis():
        for dm, cols in sections.items():
            for jm, rep in enumerate(cols):
                img = m.act(da, {ia: f.one()}, dm, rep)
                if not img:
                    continue
                out = proj.apply(da + dm, img)
                if out:
                    action[((da, ia), (dm, jm))] = out
    quot = DGModule(m.algebra, quot_cx, action, name=name or f"{m.name}/sub")
    return quot, proj


def module_dims_equal(x: DGModule, y: DGModule) -> bool:
    return x.space.dims() == y.space.dims()


# -- tensor products over the algebra ---------------------------------------


def _tensor_pairs(lcx: ChainComplex, mcx: ChainComplex):
    """Shared basis bookkeeping for l (x)_k m orderings."""
    pairs = {}
    for dl, lsl in lcx.space.labels.items():
        for dm, lsm in mcx.space.labels.items():
            n = dl + dm
            for il in range(len(lsl)):
                for im in range(len(lsm)):
                    pairs.setdefault(n, []).append((dl, il, im))
    for n in pairs:
        pairs[n].sort()
    pos = {n: {t: k for k, t in enumerate(ps)} for n, ps in pairs.items()}
    return pairs, pos


def tensor_over(b: DGAlgebra, l: DGModule, m: DGModule, name=None) -> ChainComplex:
    """l (x)_b m as a chain complex: the quotient of l (x)_k m by the span
    of (l.x)(x)m - (+/-) l(x)(x.m) over all basis triples."""
    cx, _, _ = tensor_over_with_data(b, l, m, name=name)
    return cx


def tensor_over_with_data(b: DGAlgebra, l: DGModule, m: DGModule, name=None):
    if l.algebra != b or m.algebra != b:
        raise AxiomError(["tensor factors must be modules over the given algebra"])
    from .graded import quotient_complex, tensor_k

    f = b.field
    big = tensor_k(l.complex, m.complex)
    pairs, pos = _tensor_pairs(l.complex, m.complex)
    relations = {}
    for db, ib in b.space.basis():
        bvec = {ib: f.one()}
        for dl, il in l.space.basis():
            lb = l.right_act(dl, {il: f.one()}, db, bvec)  # in degree dl+db
            for dm, im in m.space.basis():
                bm = m.act(db, bvec, dm, {im: f.one()})
                n = dl + db + dm
                rel = {}
                tgt = pos.get(n, {})
                for i2, v in lb.items():
                    key = tgt.get((dl + db, i2, im))
                    if key is None:
                        if v:
                            raise DimensionError("tensor relation escapes the window")
                        continue
                    vec_axpy(rel, v, {key: f.one()}, f)
                for i2, v in bm.items():
                    key = tgt.get((dl, il, i2))
                    if key is None:
                        if v:
                            raise DimensionError("tensor relation escapes the window")
                        continue
                    vec_axpy(rel, f.neg(v), {key: f.one()}, f)
                if rel:
                    relations.setdefault(n, []).append(rel)
    quot, proj = quotient_complex(big, relations)
    return quot, proj, (big, pairs, pos, relations)


def tensor_over_as_module(
    b: DGAlgebra, l: DGModule, m: DGModule, c: DGAlgebra, m_over_c: DGModule, name=None
) -> DGModule:
    """l (x)_b m with the module structure over c inherited from m.

    `m_over_c` must be a c-module structure on the same underlying complex
    as m, commuting with the b-action; the inherited action is verified to
    preserve the relation span.
    """
    if m_over_c.complex != m.complex:
        raise AxiomError(["the c-structure must live on the same complex as m"])
    f = b.field
    quot, proj, (big, pairs, pos, relations) = tensor_over_with_data(b, l, m, name=name)

    def act_on_big(dc, ic, n, vec):
        # c . (lam (x) x) = (-1)^{|c||lam|} lam (x) (c.x)
        out = {}
        src = pairs.get(n, [])
        tgt = pos.get(n + dc, {})
        for k, v in vec.items():
            dl, il, im = src[k]
            dm = n - dl
            img = m_over_c.act(dc, {ic: f.one()}, dm, {im: f.one()})
            if (dc * dl) % 2:
                v = f.neg(v)
            for i2, w in img.items():
                key = tgt.get((dl, il, i2))
                if key is None:
                    if w:
                        raise DimensionError("inherited action escapes the window")
                    continue
                vec_axpy(out, f.mul(v, w), {key: f.one()}, f)
        return out

    # well-definedness: the inherited action preserves the relation span
    rel_reducers = {}
    for n, rels in relations.items():
        red = SpanReducer(f)
        for r in rels:
            red.add(r)
        rel_reducers[n] = red
    for dc, ic in c.space.basis():
        for n, rels in relations.items():
            for r in rels:
                img = act_on_big(dc, ic, n, r)
                if img and not rel_reducers.get(n + dc, SpanReducer(f)).contains(img):
                    raise AxiomError(["inherited action does not preserve the relation span"])
    action = {}
    for dc, ic in c.space.basis():
        for n in quot.space.labels:
            for j in range(quot.space.dim(n)):
                lab = quot.space.label(n, j)
                i = big.space.index_of(n, lab)
                img = act_on_big(dc, ic, n, {i: f.one()})
                out = proj.apply(n + dc, img) if img else {}
                if out:
                    action[((dc, ic), (n, j))] = out
    return DGModule(c, quot, action, name=name or f"{l.name}(x){m.name}")


# -- semifree resolutions ----------------------------------------------------


class Gen:
    """One semibasis generator: label, degree, d(g) over the free basis
    (keys (gen_index, algebra degree, algebra index)), comparison image in
    the target module (plain index dict at the generator's degree)."""

    __slots__ = ("label", "degree", "diff", "comp")

    def __init__(self, label, degree, diff, comp):
        self.label = label
        self.degree = degree
        self.diff = diff
        self.comp = comp

    def __repr__(self):
        return f"Gen({self.label}, deg={self.degree})"


class SemifreeResolution:
    """Semifree DG module with ordered semibasis and comparison morphism.

    The free basis in total degree d consists of keys (gi, bd, bi) with
    gens[gi] of degree d - bd; enumeration is ordered by (gi, bi).
    """

    def __init__(self, base: DGAlgebra, target: DGModule, gens, truncation, minimal):
        self.base = base
        self.target = target
        self.gens = list(gens)
        self.truncation = truncation
        self.minimal = minimal
        self._dcol_cache = {}
        self._pcol_cache = {}

    @property
    def field(self):
        return self.base.field

    def counts(self) -> dict:
        out = {}
        for g in self.gens:
            out[g.degree] = out.get(g.degree, 0) + 1
        return out

    def top_generator_degree(self):
        return max((g.degree for g in self.gens), default=None)

    # -- free basis layout ------------------------------------------------

    def basis_keys(self, d: int):
        keys = []
        for gi, g in enumerate(self.gens):
            bd = d - g.degree
            n = self.base.space.dim(bd)
            for bi in range(n):
                keys.append((gi, bd, bi))
        return keys

    def dim(self, d: int) -> int:
        return sum(self.base.space.dim(d - g.degree) for g in self.gens)

    def dcol(self, key) -> dict:
        """Differential of a free basis element, as a key dict."""
        cached = self._dcol_cache.get(key)
        if cached is not None:
            return cached
        gi, bd, bi = key
        f = self.field
        b = self.base
        out = {}
        for i2, v in b.diff.apply(bd, {bi: f.one()}).items():
            out[(gi, bd - 1, i2)] = v
        g = self.gens[gi]
        sign_neg = bd % 2 == 1
        for (g2, bd2, bi2), c in g.diff.items():
            prod = b.mul_basis(bd, bi, bd2, bi2)
            if not prod:
                continue
            c2 = f.neg(c) if sign_neg else c
            for i3, v3 in prod.items():
                k = (g2, bd + bd2, i3)
                s = f.add(out.get(k, f.zero()), f.mul(c2, v3))
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        self._dcol_cache[key] = out
        return out

    def pcol(self, key) -> dict:
        """Comparison image of a free basis element, in target coordinates."""
        cached = self._pcol_cache.get(key)
        if cached is not None:
            return cached
        gi, bd, bi = key
        f = self.field
        g = self.gens[gi]
        out = self.target.act(bd, {bi: f.one()}, g.degree, g.comp)
        self._pcol_cache[key] = out
        return out

    def act_key(self, db, ib, key) -> dict:
        """b_basis . (beta . g) = (b beta) . g as a key dict."""
        gi, bd, bi = key
        out = {}
        for i3, v in self.base.mul_basis(db, ib, bd, bi).items():
            out[(gi, db + bd, i3)] = v
        return out

    def act_vec(self, db, bvec, vec: dict) -> dict:
        f = self.field
        out = {}
        for ib, cb in bvec.items():
            for key, c in vec.items():
                cc = f.mul(cb, c)
                if cc:
                    vec_axpy(out, cc, self.act_key(db, ib, key), f)
        return out

    # -- materialization ---------------------------------------------------

    def window(self, complete: bool):
        if not self.gens:
            return (0, -1)
        lo = min(g.degree for g in self.gens) + min(self.base.space.lo, 0)
        if complete:
            hi = max(g.degree for g in self.gens) + max(self.base.space.hi, 0)
        else:
            hi = self.truncation
        return lo, hi

    def label_of(self, key) -> str:
        gi, bd, bi = key
        return f"{self.base.space.label(bd, bi)}*{self.gens[gi].label}"

    def materialize(self, complete=False):
        """Return (complex, phi ChainMap, layout) for the free module.

        With complete=False the complex is marked truncated above the
        truncation degree; with complete=True it is the honest finite
        complex generated by the current semibasis (meaningful when no
        further generators exist).
        """
        f = self.field
        lo, hi = self.window(complete)
        labels = {}
        layout = {}
        for d in range(lo, hi + 1):
            keys = self.basis_keys(d)
            if keys:
                labels[d] = [self.label_of(k) for k in keys]
                layout[d] = {k: i for i, k in enumerate(keys)}
        sp = GradedSpace(f, labels)
        blocks = {}
        for d in labels:
            tgt = layout.get(d - 1, {})
            cols = []
            for k in self.basis_keys(d):
                col = {}
                for k2, v in self.dcol(k).items():
                    if k2 in tgt:
                        col[tgt[k2]] = v
                    elif v:
                        raise DimensionError("differential escapes the materialized window")
                cols.append(col)
            mtx = Matrix.from_columns(cols, len(tgt), f)
            if not mtx.is_zero():
                blocks[d] = mtx
        ta = None if complete else self.truncation
        cx = ChainComplex(sp, GradedMap(sp, sp, -1, blocks), truncated_above=ta)
        pblocks = {}
        for d in labels:
            cols = [self.pcol(k) for k in self.basis_keys(d)]
            mtx = Matrix.from_columns(cols, self.target.space.dim(d), f)
            if not mtx.is_zero():
                pblocks[d] = mtx
        phi = ChainMap(cx, self.target.complex, GradedMap(sp, self.target.space, 0, pblocks))
        return cx, phi, layout

    def as_module(self, complete=False) -> DGModule:
        cx, _, layout = self.materialize(complete)
        f = self.field
        action = {}
        for da, ia in self.base.space.basis():
            for d, lay in layout.items():
                tgt = layout.get(d + da)
                if tgt is None:
                    continue
                for key, j in lay.items():
                    img = self.act_key(da, ia, key)
                    out = {}
                    for k2, v in img.items():
                        if k2 in tgt:
                            out[tgt[k2]] = v
                    if out:
                        action[((da, ia), (d, j))] = out
        return DGModule(self.base, cx, action, name=f"F({self.target.name})")

    # -- verification -------------------------------------------------------

    def is_minimal(self, verdict=None) -> bool:
        """d(F) lies in (maximal ideal) F: no generator's differential has a
        unit coefficient on another generator."""
        if verdict is None:
            verdict = is_local(self.base)
        if not verdict:
            raise AxiomError(["minimality is defined over a local base"] + verdict.reasons)
        f = self.field
        for g in self.gens:
            coeffs = {}
            for (gi2, bd, bi), v in g.diff.items():
                if bd == 0:
                    coeffs.setdefault(gi2, {})[bi] = v
            for vec in coeffs.values():
                eps = f.zero()
                for i, v in vec.items():
                    eps = f.add(eps, f.mul(v, verdict.lambdas[i]))
                if eps:
                    return False
        return True

    def verify(self, upto=None) -> dict:
        """Exact post-conditions: d^2 = 0 (by construction of the complex),
        the comparison is a chain map, and its cone is acyclic in all
        truncation-clean degrees <= upto."""
        cx, phi, _ = self.materialize(complete=False)
        C = cone(phi)
        lo, hi = C.window()
        if C.truncated_above is not None:
            hi = min(hi, C.truncated_above - 1)
        if upto is not None:
            hi = min(hi, upto)
        dims = homology_dims(C, (lo, hi)) if hi >= lo else {}
        bad = {d: n for d, n in dims.items() if n}
        return {"acyclic": not bad, "cone_homology": bad, "checked_window": (lo, hi)}

    def __repr__(self):
        return (
            f"SemifreeResolution({self.target.name} over {self.base.name}, "
            f"counts={self.counts()}, truncation={self.truncation}, minimal={self.minimal})"
        )


def _cone_matrix(res: SemifreeResolution, m: DGModule, d, src_keys, tgt_keys):
    """Differential block of Cone(phi) from cone degree d to d-1.

    Cone degree d basis: ("f", key) for key in free degree d-1, then
    ("m", i) for the target degree d basis.
    """
    f = res.field
    tgt_pos = {}
    for i, k in enumerate(tgt_keys):
        tgt_pos[k] = i
    cols = []
    for kind, key in src_keys:
        col = {}
        if kind == "f":
            for k2, v in res.dcol(key).items():
                col[tgt_pos[("f", k2)]] = f.neg(v)
            for i2, v in res.pcol(key).items():
                p = tgt_pos.get(("m", i2))
                if p is not None:
                    col[p] = f.add(col.get(p, f.zero()), v)
                    if not col[p]:
                        del col[p]
        else:
            for i2, v in m.diff.apply(d, {key: f.one()}).items():
                p = tgt_pos[("m", i2)]
                col[p] = v
        cols.append(col)
    return Matrix.from_columns(cols, len(tgt_keys), f)


def _cone_keys(res: SemifreeResolution, m: DGModule, d):
    keys = [("f", k) for k in res.basis_keys(d - 1)]
    keys += [("m", i) for i in range(m.space.dim(d))]
    return keys


def minimal_semifree_resolution(b: DGAlgebra, m: DGModule, n: int, verdict=None) -> SemifreeResolution:
    """Build a semifree resolution of m over b up to truncation degree n.

    Degree-by-degree: at each degree s the homology of the comparison cone
    is killed by adjoining one generator per element of a minimal
    generating set over H_0(b) (Nakayama reduction when b is local; a full
    basis otherwise, minimized afterwards).  Post-conditions are enforced:
    over a local base the result satisfies d(F) in nF, via `minimize` as a
    safety net if needed.
    """
    if m.algebra != b:
        raise AxiomError(["module is not over the given algebra"])
    if b.space.labels and b.space.lo < 0:
        raise AxiomError(["resolution engine requires a non-negative algebra"])
    f = b.field
    if verdict is None:
        verdict = is_local(b)
    local = bool(verdict)
    hm = homology(m.complex)
    nz = hm.nonzero_degrees()
    if not nz:
        return SemifreeResolution(b, m, [], n, True)
    s0 = nz[0]
    if n < s0:
        raise TruncationError(n, s0, f"truncation {n} below inf H(M) = {s0}")
    m0_vectors = verdict.maximal_ideal_deg0 if local else []
    res = SemifreeResolution(b, m, [], n, False)
    gen_serial = {}
    for s in range(s0, n + 1):
        src_keys = _cone_keys(res, m, s)
        tgt_keys = _cone_keys(res, m, s - 1)
        up_keys = _cone_keys(res, m, s + 1)
        d_s = _cone_matrix(res, m, s, src_keys, tgt_keys)
        d_up = _cone_matrix(res, m, s + 1, up_keys, src_keys)
        cycles = kernel_basis(d_s)
        if not cycles:
            continue
        red = SpanReducer(f)
        for col in d_up.columns():
            if col:
                red.add(col)
        if local and m0_vectors:
            # span of m_0 . cycles, positionally
            pos = {k: i for i, k in enumerate(src_keys)}
            for vec in cycles:
                for u in m0_vectors:
                    prod = {}
                    for p, c in vec.items():
                        kind, key = src_keys[p]
                        if kind == "f":
                            img = res.act_vec(0, vec_scale(u, c, f), {key: f.one()})
                            for k2, v in img.items():
                                vec_axpy(prod, v, {pos[("f", k2)]: f.one()}, f)
                        else:
                            img = m.act(0, vec_scale(u, c, f), s, {key: f.one()})
                            for i2, v in img.items():
                                vec_axpy(prod, v, {pos[("m", i2)]: f.one()}, f)
                    if prod:
                        red.add(prod)
        new_reps = []
        for vec in cycles:
            residual, _ = red.reduce(vec)
            if residual:
                red.add(residual)
                new_reps.append(residual)
        for rep in new_reps:
            idx = gen_serial.get(s, 0)
            gen_serial[s] = idx + 1
            diff = {}
            comp = {}
            for p, c in rep.items():
                kind, key = src_keys[p]
                if kind == "f":
                    diff[key] = f.neg(c)
                else:
                    comp[key] = c
            res.gens.append(Gen(f"g{s}_{idx}", s, diff, comp))
    res.minimal = local and res.is_minimal(verdict)
    if local and not res.minimal:
        res = minimize(res, verdict=verdict)
        if not res.is_minimal(verdict):
            raise AxiomError(["resolution failed to minimize"])
        res.minimal = True
    return res


# -- minimization ------------------------------------------------------------


def _b0_coeff(res: SemifreeResolution, vec: dict, target_gi: int) -> dict:
    """Degree-0 algebra coefficient of a key vector on one generator."""
    out = {}
    for (gi, bd, bi), v in vec.items():
        if gi == target_gi and bd == 0:
            out[bi] = v
    return out


def _is_unit_b0(b: DGAlgebra, vec: dict, verdict=None):
    """Invertibility of a degree-0 element; returns the inverse or None."""
    f = b.field
    if not vec:
        return None
    n0 = b.space.dim(0)
    cols = [b.mul(0, vec, 0, {j: f.one()}) for j in range(n0)]
    mtx = Matrix.from_columns(cols, n0, f)
    status, x = solve(mtx, dict(b.unit))
    if status != "solution":
        return None
    return x


def minimize(res: SemifreeResolution, verdict=None) -> SemifreeResolution:
    """Cancel unit pivots in the differential until d(F) has no unit
    coefficients; the comparison is rebuilt by lifting through the
    contractible summands that get split off."""
    b = res.base
    f = res.field
    m = res.target
    gens = [Gen(g.label, g.degree, dict(g.diff), dict(g.comp)) for g in res.gens]

    def rebuild(gens_list):
        r = SemifreeResolution(b, m, gens_list, res.truncation, False)
        return r

    while True:
        # `cur` owns private copies: the lifting step below must read the
        # pre-cancellation differentials.
        cur = rebuild([Gen(g.label, g.degree, dict(g.diff), dict(g.comp)) for g in gens])
        pivot = None
        for gi, g in enumerate(cur.gens):
            targets = sorted({k[0] for k in g.diff if k[1] == 0})
            for gi2 in targets:
                c = _b0_coeff(cur, g.diff, gi2)
                cinv = _is_unit_b0(b, c, verdict)
                if cinv is not None:
                    pivot = (gi, gi2, c, cinv)
                    break
            if pivot:
                break
        if pivot is None:
            break
        gi, gi2, c, cinv = pivot
        g = cur.gens[gi]
        # corr = d(g) with its components on gi2 removed
        corr = {k: v for k, v in g.diff.items() if k[0] != gi2}
        new_gens = []
        index_map = {}
        for j, h in enumerate(gens):
            if j in (gi, gi2):
                continue
            index_map[j] = len(new_gens)
            new_gens.append(h)

        def project_vec(vec):
            """Quotient by B.g + B.d(g): rewrite gi2-components through
            d(g) and drop gi-components."""
            out = {}
            for k, v in vec.items():
                if k[0] == gi:
                    continue
                if k[0] != gi2:
                    out[k] = f.add(out.get(k, f.zero()), v) if k in out else v
                    if not out[k]:
                        del out[k]
            # gather the gi2 coefficient (any algebra degree) and push it
            # through the pivot relation g' = c^{-1}(d(g) - corr) => the
            # class of (beta.g') is -(beta c^{-1}) . corr
            for k, v in vec.items():
                if k[0] != gi2:
                    continue
                _, bd, bi = k
                coef = b.mul(bd, {bi: v}, 0, cinv)
                sub = cur.act_vec(bd, coef, corr)
                for k2, w in sub.items():
                    if k2[0] == gi:
                        continue
                    s = f.sub(out.get(k2, f.zero()), w)
                    if s:
                        out[k2] = s
                    elif k2 in out:
                        del out[k2]
            return out

        def remap(vec):
            out = {}
            for (gj, bd, bi), v in vec.items():
                out[(index_map[gj], bd, bi)] = v
            return out

        for h in new_gens:
            h.diff = remap(project_vec(h.diff))
        reduced = rebuild(new_gens)
        # RebuildT the comparison by lifting against the projection
        # F -> F/(B.g + B.d(g)); the kernel is contractible, so each
        # correction is solved inside it.
        _lift_comparison(cur, reduced, gi, gi2, index_map, c, cinv, corr)
        gens = reduced.gens
    out = rebuild(gens)
    out.minimal = False
    try:
        v = verdict if verdict is not None else is_local(b)
        if v:
            out.minimal = out.is_minimal(v)
    except AxiomError:
        out.minimal = False
    return out


def _lift_comparison(old: SemifreeResolution, new: SemifreeResolution, gi, gi2, index_map, c, cinv, corr):
    """Define new comparison images by a B-linear chain section of the
    quotient map old -> new, corrected inside the contractible kernel."""
    b = old.base
    f = old.field
    m = old.target
    inv_map = {v: k for k, v in index_map.items()}
    lam = {}  # new gen index -> key vector in old F

    def lam_of_vec(vec):
        out = {}
        for (gj, bd, bi), v in vec.items():
            base = lam[gj]
            img = old.act_vec(bd, {bi: v}, base)
            for k2, w in img.items():
                s = f.add(out.get(k2, f.zero()), w)
                if s:
                    out[k2] = s
                elif k2 in out:
                    del out[k2]
        return out

    def project_old_vec(vec):
        out = {}
        for k, v in vec.items():
            if k[0] == gi:
                continue
            if k[0] != gi2:
                out[(index_map[k[0]], k[1], k[2])] = v
        for k, v in vec.items():
            if k[0] != gi2:
                continue
            _, bd, bi = k
            coef = b.mul(bd, {bi: v}, 0, cinv)
            sub = old.act_vec(bd, coef, corr)
            for k2, w in sub.items():
                if k2[0] == gi:
                    continue
                kk = (index_map[k2[0]], k2[1], k2[2])
                s = f.sub(out.get(kk, f.zero()), w)
                if s:
                    out[kk] = s
                elif kk in out:
                    del out[kk]
        return out

    # kernel span C = B.g + B.d(g) per total degree, as old-key vectors
    g = old.gens[gi]
    dg = dict(g.diff)

    def kernel_span(d):
        vecs = []
        bd1 = d - g.degree
        for bi in range(b.space.dim(bd1)):
            vecs.append({(gi, bd1, bi): f.one()})
        bd2 = d - (g.degree - 1)
        for bi in range(b.space.dim(bd2)):
            vecs.append(old.act_vec(bd2, {bi: f.one()}, dg))
        return [v for v in vecs if v]

    order = sorted(range(len(new.gens)), key=lambda j: (new.gens[j].degree, j))
    for j in order:
        h_new = new.gens[j]
        h_old_idx = inv_map[j]
        w = {(h_old_idx, 0, bi): v for (bi, v) in _unit_coords(b)}  # 1 * h
        # v := lam(d'(h)) must equal d(lam(h)); correct w inside the kernel
        v_target = lam_of_vec(h_new.diff)
        dw = _apply_old_diff(old, w)
        z = dict(dw)
        for k, val in v_target.items():
            s = f.sub(z.get(k, f.zero()), val)
            if s:
                z[k] = s
            elif k in z:
                del z[k]
        if z:
            span = kernel_span(h_new.degree)
            keys = sorted({k for vec in span for k in vec} | set(z))
            pos = {k: i for i, k in enumerate(keys)}
            cols = []
            for vec in span:
                cols.append({pos[k]: val for k, val in _apply_old_diff(old, vec).items()})
            # solve d(y) = z with y in the kernel span
            missing = [k for k in z if k not in pos]
            if missing:
                raise AxiomError(["cancellation correction escapes the kernel span"])
            allkeys = sorted({k for col in cols for k in col} | {pos[k] for k in z})
            mtx = Matrix.from_columns(cols, (max(allkeys) + 1) if allkeys else 0, f)
            rhs = {pos[k]: val for k, val in z.items()}
            status, x = solve(mtx, rhs)
            if status != "solution":
                raise AxiomError(["contractible summand failed to absorb the correction"])
            for jj, coef in x.items():
                for k, val in span[jj].items():
                    s = f.sub(w.get(k, f.zero()), f.mul(coef, val))
                    if s:
                        w[k] = s
                    elif k in w:
                        del w[k]
        lam[j] = w
        # comparison image: phi(lam(h))
        comp = {}
        for k, val in w.items():
            vec_axpy(comp, val, old.pcol(k), f)
        h_new.comp = comp


def _unit_coords(b: DGAlgebra):
    return list(b.unit.items())


def _apply_old_diff(old: SemifreeResolution, vec: dict) -> dict:
    f = old.field
    out = {}
    for k, v in vec.items():
        vec_axpy(out, v, old.dcol(k), f)
    return out


# -- Tor and Poincare series --------------------------------------------------


class TorTable:
    """Graded Tor dimensions over a window, with provenance."""

    __slots__ = ("window", "dims", "provenance")

    def __init__(self, window, dims, provenance):
        self.window = window
        self.dims = {d: int(v) for d, v in dims.items()}
        self.provenance = provenance

    def dim(self, d):
        return self.dims.get(d, 0)

    def as_list(self, lo=None, hi=None):
        lo = self.window[0] if lo is None else lo
        hi = self.window[1] if hi is None else hi
        return [self.dim(d) for d in range(lo, hi + 1)]

    def nonzero_degrees(self):
        return sorted(d for d, v in self.dims.items() if v)

    def sup(self):
        nz = self.nonzero_degrees()
        return nz[-1] if nz else None

    def inf(self):
        nz = self.nonzero_degrees()
        return nz[0] if nz else None

    def __eq__(self, other):
        return (
            isinstance(other, TorTable)
            and self.window == other.window
            and self.dims == other.dims
        )

    def __repr__(self):
        return f"TorTable({self.window}, {self.dims})"


def tensor_with_semifree(l: DGModule, res: SemifreeResolution, upto=None) -> ChainComplex:
    """l (x)_B F for semifree F, materialized directly on (l-basis, gen)
    pairs; no balancing quotient is needed."""
    f = res.field
    if l.algebra != res.base:
        raise AxiomError(["tensor factor is not over the resolution base"])
    lcx = l.complex
    if not res.gens or not lcx.space.labels:
        from .graded import zero_complex

        return zero_complex(f)
    l_lo = lcx.space.lo
    gen_lo = min(g.degree for g in res.gens)
    lo = l_lo + gen_lo
    hi = (res.truncation + lcx.space.hi) if upto is None else upto
    clean_top = res.truncation + l_lo  # degrees above may miss generators
    entries = {}
    for d in range(lo, hi + 1):
        ent = []
        for gi, g in enumerate(res.gens):
            dl = d - g.degree
            for il in range(lcx.space.dim(dl)):
                ent.append((gi, dl, il))
        if ent:
            entries[d] = ent
    pos = {d: {t: i for i, t in enumerate(ent)} for d, ent in entries.items()}
    labels = {
        d: [f"{lcx.space.label(dl, il)}|{res.gens[gi].label}" for gi, dl, il in ent]
        for d, ent in entries.items()
    }
    sp = GradedSpace(f, labels)
    blocks = {}
    for d, ent in entries.items():
        tgt = pos.get(d - 1, {})
        cols = []
        for gi, dl, il in ent:
            col = {}
            for i2, v in lcx.diff.apply(dl, {il: f.one()}).items():
                p = tgt.get((gi, dl - 1, i2))
                if p is not None:
                    col[p] = v
            sgn = dl % 2 == 1
            for (g2, bd, bi), cdg in res.gens[gi].diff.items():
                lb = l.right_act(dl, {il: f.one()}, bd, {bi: f.one()})
                if not lb:
                    continue
                c = f.neg(cdg) if sgn else cdg
                for i2, v in lb.items():
                    p = tgt.get((g2, dl + bd, i2))
                    if p is None:
                        continue
                    s = f.add(col.get(p, f.zero()), f.mul(c, v))
                    if s:
                        col[p] = s
                    elif p in col:
                        del col[p]
            cols.append(col)
        mtx = Matrix.from_columns(cols, len(pos.get(d - 1, {})), f)
        if not mtx.is_zero():
            blocks[d] = mtx
    return ChainComplex(sp, GradedMap(sp, sp, -1, blocks), truncated_above=clean_top)


def tor(b: DGAlgebra, l: DGModule, m: DGModule, window, verdict=None) -> TorTable:
    """Tor over b of (l, m) on a degree window; m is resolved."""
    lo, hi = window
    l_lo = l.complex.space.lo if l.complex.space.labels else 0
    n_res = hi + 1 - min(0, l_lo)
    res = minimal_semifree_resolution(b, m, n_res, verdict=verdict)
    T = tensor_with_semifree(l, res, upto=hi + 1)
    dims = {}
    for d in range(lo, hi + 1):
        if T.space.dim(d) == 0:
            dims[d] = 0
            continue
        cyc = len(kernel_basis(T.diff.block(d)))
        from .linalg import rank as _rank

        dims[d] = cyc - _rank(T.diff.block(d + 1))
    return TorTable(
        (lo, hi),
        dims,
        {
            "algebra": b.name,
            "resolved": m.name,
            "other": l.name,
            "truncation": res.truncation,
            "minimal": res.minimal,
        },
    )


class SeriesCoefficients:
    """Poincare series coefficients: dim Tor_i(M, k) as exact integers."""

    __slots__ = ("coeffs", "upto", "provenance")

    def __init__(self, coeffs: dict, upto: int, provenance):
        self.coeffs = {d: int(v) for d, v in coeffs.items() if v}
        self.upto = upto
        self.provenance = provenance

    def coeff(self, d):
        return self.coeffs.get(d, 0)

    def as_list(self, lo=0, hi=None):
        hi = self.upto if hi is None else hi
        return [self.coeff(d) for d in range(lo, hi + 1)]

    def cauchy_product(self, other: "SeriesCoefficients", upto=None):
        upto = min(self.upto, other.upto) if upto is None else upto
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                if d1 + d2 <= upto:
                    out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return SeriesCoefficients(out, upto, {"product": True})

    def __eq__(self, other):
        return (
            isinstance(other, SeriesCoefficients)
            and self.coeffs == other.coeffs
            and self.upto == other.upto
        )

    def __repr__(self):
        return f"SeriesCoefficients({self.as_list()}, upto={self.upto})"


def tor_against_k(b: DGAlgebra, m: DGModule, n: int, verdict=None) -> SeriesCoefficients:
    """Semibasis counts of the minimal resolution, cross-validated against
    the homology of k (x)_B F."""
    if verdict is None:
        verdict = is_local(b)
    if not verdict:
        raise AxiomError(["Poincare series needs a local base"] + verdict.reasons)
    res = minimal_semifree_resolution(b, m, n, verdict=verdict)
    if not res.minimal:
        raise AxiomError(["resolution is not minimal; series undefined"])
    counts = res.counts()
    k_mod = residue_module(b, verdict)
    T = tensor_with_semifree(k_mod, res, upto=n)
    # minimality makes the induced differential vanish identically
    for d, blk in T.diff.blocks.items():
        if not blk.is_zero():
            raise AxiomError([f"minimal resolution induced a nonzero differential at degree {d}"])
    for d in range(min(counts, default=0), n + 1):
        if T.space.dim(d) != counts.get(d, 0):
            raise AxiomError([f"semibasis count mismatch at degree {d}"])
    return SeriesCoefficients(
        counts,
        n,
        {"algebra": b.name, "module": m.name, "truncation": res.truncation},
    )


# -- syzygy sequence -----------------------------------------------------------


class SyzygyData:
    """0 -> M' -> F -> M'' -> 0 with F finite semifree and M' in nF."""

    __slots__ = ("mprime", "free", "msecond", "inclusion", "projection", "report")

    def __init__(self, mprime, free, msecond, inclusion, projection, report):
        self.mprime = mprime
        self.free = free
        self.msecond = msecond
        self.inclusion = inclusion
        self.projection = projection
        self.report = report


def syzygy(b: DGAlgebra, m: DGModule, verdict=None) -> SyzygyData:
    """Construct the syzygy exact sequence of a homologically bounded module."""
    if verdict is None:
        verdict = is_local(b)
    if not verdict:
        raise AxiomError(["syzygy construction needs a local base"] + verdict.reasons)
    hm = homology(m.complex)
    nz = hm.nonzero_degrees()
    if not nz:
        raise AxiomError(["module is acyclic; syzygy sequence is degenerate"])
    s = nz[-1]
    res = minimal_semifree_resolution(b, m, s + 1, verdict=verdict)
    f = b.field
    # E is complete through degree s+1 with the generators found so far.
    low_keys = {d: res.basis_keys(d) for d in range(min(nz) + min(b.space.lo, 0), s + 2)}
    # M'' = E / L with L_i = E_i (i >= s+1), L_s = d(E_{s+1})
    red_s = SpanReducer(f)
    pos_s = {k: i for i, k in enumerate(low_keys.get(s, []))}
    for k in low_keys.get(s + 1, []):
        col = {}
        for k2, v in res.dcol(k).items():
            col[pos_s[k2]] = v
        if col:
            red_s.add(col)
    keep_s = [i for i in range(len(low_keys.get(s, []))) if i not in red_s.rows]
    Epos = {d: {k: i for i, k in enumerate(ks)} for d, ks in low_keys.items()}

    def project_s(vec_pos):
        residual, _ = red_s.reduce(vec_pos)
        out = {}
        posmap = {orig: t for t, orig in enumerate(keep_s)}
        for i, v in residual.items():
            out[posmap[i]] = v
        return out

    labels = {}
    for d in range(min(low_keys, default=0), s):
        ks = low_keys.get(d, [])
        if ks:
            labels[d] = [res.label_of(k) for k in ks]
    if keep_s:
        labels[s] = [res.label_of(low_keys[s][i]) for i in keep_s]
    spM2 = GradedSpace(f, labels)
    blocks = {}
    for d in labels:
        cols = []
        if d == s:
            srcs = [low_keys[s][i] for i in keep_s]
        else:
            srcs = low_keys[d]
        tgt_pos = Epos.get(d - 1, {})
        for k in srcs:
            col = {}
            for k2, v in res.dcol(k).items():
                col[tgt_pos[k2]] = v
            if d - 1 == s:
                col = project_s(col)
            cols.append(col)
        nrows = len(keep_s) if d - 1 == s else len(low_keys.get(d - 1, []))
        mtx = Matrix.from_columns(cols, nrows, f)
        if not mtx.is_zero():
            blocks[d] = mtx
    cxM2 = ChainComplex(spM2, GradedMap(spM2, spM2, -1, blocks))
    actionM2 = {}
    for da, ia in b.space.basis():
        for d in labels:
            srcs = [low_keys[s][i] for i in keep_s] if d == s else low_keys[d]
            for j, k in enumerate(srcs):
                if d + da > s or (d + da) not in labels:
                    continue
                img = res.act_key(da, ia, k)
                if d + da == s:
                    col = {Epos[s][k2]: v for k2, v in img.items()}
                    out = project_s(col)
                else:
                    out = {Epos[d + da][k2]: v for k2, v in img.items()}
                if out:
                    actionM2[((da, ia), (d, j))] = out
    M2 = DGModule(b, cxM2, actionM2, name=f"{m.name}''")
    # F: semifree on generators of degree <= s, complete
    fgens = [g for g in res.gens if g.degree <= s]
    subres = SemifreeResolution(b, m, [Gen(g.label, g.degree, dict(g.diff), dict(g.comp)) for g in fgens], s, res.minimal)
    F = subres.as_module(complete=True)
    # map F -> M'': inclusion into E followed by the quotient
    Fcx = F.complex
    qblocks = {}
    for d in Fcx.space.labels:
        if d not in labels:
            continue
        cols = []
        for j in range(Fcx.space.dim(d)):
            key = subres.basis_keys(d)[j]
            if d == s:
                col = {Epos[s][key]: f.one()}
                cols.append(project_s(col))
            else:
                cols.append({Epos[d][key]: f.one()})
        mtx = Matrix.from_columns(cols, spM2.dim(d), f)
        if not mtx.is_zero():
            qblocks[d] = mtx
    proj = ChainMap(Fcx, cxM2, GradedMap(Fcx.space, spM2, 0, qblocks))
    # M' = kernel submodule of the projection
    ker_basis = {d: kernel_basis(proj.block(d)) for d in Fcx.space.labels}
    Mp, incl = sub_module(F, ker_basis, name=f"{m.name}'")
    report = _verify_syzygy(b, m, Mp, F, M2, incl, proj, hm, verdict)
    return SyzygyData(Mp, F, M2, incl, proj, report)


def _verify_syzygy(b, m, Mp, F, M2, incl, proj, hm, verdict):
    from .linalg import rank as _rank

    f = b.field
    report = {"exact": True, "mprime_in_nF": True, "quasi_iso_dims": True, "inf_match": True}
    for d in F.space.labels:
        dimF = F.space.dim(d)
        if Mp.space.dim(d) + M2.space.dim(d) != dimF:
            report["exact"] = False
        if _rank(proj.block(d)) != M2.space.dim(d):
            report["exact"] = False  # surjectivity
        img_red = SpanReducer(f)
        for col in incl.block(d).columns():
            img_red.add(col)
        for vec in kernel_basis(proj.block(d)):
            if not img_red.contains(vec):
                report["exact"] = False
    # M' inside nF
    nf = {}
    mib = maximal_ideal_basis(b, verdict)
    for d in F.space.labels:
        red = SpanReducer(f)
        for da, vecs in mib.items():
            dm = d - da
            if F.space.dim(dm) == 0:
                continue
            for u in vecs:
                for j in range(F.space.dim(dm)):
                    w = F.act(da, u, dm, {j: f.one()})
                    if w:
                        red.add(w)
        nf[d] = red
    for d in Mp.space.labels:
        for col in incl.block(d).columns():
            if not nf[d].contains(col):
                report["mprime_in_nF"] = False
    h2 = homology_dims(M2.complex)
    hm_dims = {d: v for d, v in hm.dims.items() if v}
    h2_nz = {d: v for d, v in h2.items() if v}
    if hm_dims != h2_nz:
        report["quasi_iso_dims"] = False
    nz = sorted(hm_dims)
    if nz:
        inf_m2 = min((d for d in M2.space.labels if M2.space.dim(d)), default=None)
        if inf_m2 != nz[0]:
            report["inf_match"] = False
    return report


# -- perfection --------------------------------------------------------------


class PerfectionCertificate:
    """Verdict PERFECT / NOT-PERFECT / UNDETERMINED with checkable data."""

    __slots__ = ("verdict", "top_degree", "counts", "window", "note")

    def __init__(self, verdict, top_degree, counts, window, note):
        self.verdict = verdict
        self.top_degree = top_degree
        self.counts = counts
        self.window = window
        self.note = note

    def __repr__(self):
        return f"PerfectionCertificate({self.verdict}, d={self.top_degree}, counts={self.counts})"


def certify_perfect(b: DGAlgebra, m: DGModule, n: int, verdict=None) -> PerfectionCertificate:
    """Finite-window perfection check via the minimal resolution.

    PERFECT: the semibasis stops at some degree d and the comparison cone
    of the finite semifree module is exactly acyclic in every degree (a
    complete check; base and module are bounded).  NOT-PERFECT ("not
    perfect up to n"): generator counts are nonzero throughout the top
    max(3, n//4) degrees, weakly increasing, and nonzero at n.
    UNDETERMINED otherwise.
    """
    if verdict is None:
        verdict = is_local(b)
    if not verdict:
        raise AxiomError(["perfection certificates need a local base"] + verdict.reasons)
    res = minimal_semifree_resolution(b, m, n, verdict=verdict)
    counts = res.counts()
    if not res.gens:
        return PerfectionCertificate("PERFECT", None, {}, n, "module is acyclic")
    d_top = max(counts)
    # complete acyclicity check of the finite candidate
    cx, phi, _ = res.materialize(complete=True)
    C = cone(phi)
    lo, hi = C.window()
    acyclic = True
    if C.space.labels:
        dims = homology_dims(C, (lo, hi))
        acyclic = not any(dims.values())
    if acyclic:
        return PerfectionCertificate(
            "PERFECT", d_top, counts, n, f"cone exactly acyclic on [{lo},{hi}]"
        )
    t = max(3, n // 4)
    tail = [counts.get(d, 0) for d in range(n - t + 1, n + 1)]
    if counts.get(n, 0) > 0 and all(c > 0 for c in tail) and all(
        tail[i] <= tail[i + 1] for i in range(len(tail) - 1)
    ):
        return PerfectionCertificate(
            "NOT-PERFECT",
            d_top,
            counts,
            n,
            f"generators persist with weakly increasing counts on the top {t} degrees",
        )
    return PerfectionCertificate(
        "UNDETERMINED", d_top, counts, n, "window too small to decide"
    )
