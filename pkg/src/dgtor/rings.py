"""Artinian local rings presented by monomial ideals, their finite
modules, and the bridge into the DG layer as degree-0 algebras.

Includes an independent classical free-resolution Betti oracle used to
cross-check the DG resolution engine on honest rings.
"""

from __future__ import annotations

from .errors import AxiomError, InputError
from .dga import DGAlgebra, DGAlgebraMorphism
from .graded import ChainComplex, GradedMap, GradedSpace
from .linalg import Matrix, SpanReducer, kernel_basis, vec_axpy


def parse_monomial(text: str, variables) -> tuple:
    """Parse "x^2*y" into an exponent tuple over the given variables."""
    exps = [0] * len(variables)
    text = text.strip()
    if text in ("1", ""):
        return tuple(exps)
    var_index = {v: i for i, v in enumerate(variables)}
    for factor in text.split("*"):
        factor = factor.strip()
        if "^" in factor:
            name, power = factor.split("^", 1)
            name = name.strip()
            try:
                power = int(power)
            except ValueError:
                raise InputError(f"bad exponent in monomial {text!r}") from None
        else:
            name, power = factor, 1
        if name not in var_index:
            raise InputError(f"unknown variable {name!r} in monomial {text!r}")
        if power < 1:
            raise InputError(f"exponent must be positive in {text!r}")
        exps[var_index[name]] += power
    return tuple(exps)


def format_monomial(exps, variables) -> str:
    parts = []
    for v, e in zip(variables, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


class ArtinianLocalRing:
    """Monomial quotient k[x_1..x_e]/I with finite k-dimension.

    The basis consists of the monomials outside the ideal, ordered by
    (total degree, exponent tuple).
    """

    __slots__ = ("field", "variables", "ideal_gens", "basis", "index", "in_m_squared")

    def __init__(self, field, variables, ideal_gens):
        self.field = field
        self.variables = tuple(variables)
        gens = []
        for g in ideal_gens:
            if isinstance(g, str):
                g = parse_monomial(g, self.variables)
            gens.append(tuple(g))
        self.ideal_gens = tuple(sorted(set(gens)))
        for g in self.ideal_gens:
            if sum(g) == 0:
                raise InputError("ideal contains 1; quotient ring is zero")
        for i, v in enumerate(self.variables):
            if not any(g[i] > 0 and all(g[j] == 0 for j in range(len(g)) if j != i) for g in self.ideal_gens):
                raise InputError(
                    f"no pure power of {v} in the ideal: quotient is infinite-dimensional"
                )
        bounds = [0] * len(self.variables)
        for i in range(len(self.variables)):
            for g in self.ideal_gens:
                if g[i] > 0 and all(g[j] == 0 for j in range(len(g)) if j != i):
                    bounds[i] = g[i] if bounds[i] == 0 else min(bounds[i], g[i])
        monos = [()]
        basis = []

        def expand(prefix):
            if len(prefix) == len(self.variables):
                basis.append(tuple(prefix))
                return
            i = len(prefix)
            for e in range(bounds[i]):
                expand(prefix + [e])

        expand([])
        basis = [m for m in basis if not self._in_ideal(m)]
        basis.sort(key=lambda m: (sum(m), m))
        self.basis = tuple(basis)
        self.index = {m: i for i, m in enumerate(basis)}
        self.in_m_squared = all(sum(g) >= 2 for g in self.ideal_gens)

    def _in_ideal(self, mono) -> bool:
        return any(_divides(g, mono) for g in self.ideal_gens)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def multiply_basis(self, i: int, j: int):
        prod = tuple(a + b for a, b in zip(self.basis[i], self.basis[j]))
        if self._in_ideal(prod):
            return None
        return self.index[prod]

    def variable_index(self, v: str) -> int:
        exps = tuple(1 if w == v else 0 for w in self.variables)
        return self.index[exps]

    def maximal_ideal_indices(self):
        return [i for i, m in enumerate(self.basis) if sum(m) > 0]

    def labels(self):
        return [format_monomial(m, self.variables) for m in self.basis]

    def __eq__(self, other):
        return (
            isinstance(other, ArtinianLocalRing)
            and self.field == other.field
            and self.variables == other.variables
            and self.ideal_gens == other.ideal_gens
        )

    def __repr__(self):
        gens = ", ".join(format_monomial(g, self.variables) for g in self.ideal_gens)
        return f"k[{','.join(self.variables)}]/({gens})"


def from_monomial_ideal(field, variables, gens) -> ArtinianLocalRing:
    return ArtinianLocalRing(field, variables, gens)


def as_dg_algebra(r: ArtinianLocalRing, name=None) -> DGAlgebra:
    """The ring concentrated in degree 0."""
    f = r.field
    sp = GradedSpace(f, {0: r.labels()})
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, {}))
    products = {}
    one = f.one()
    for i in range(r.dim):
        for j in range(i, r.dim):
            t = r.multiply_basis(i, j)
            if t is not None:
                products[((0, i), (0, j))] = {t: one}
    return DGAlgebra(cx, {0: one}, products, name=name or repr(r))


class FiniteModule:
    """Finite module over a monomial quotient: k-basis plus one action
    matrix per ring variable (matrices must commute and kill the ideal)."""

    __slots__ = ("ring", "basis_labels", "matrices", "name")

    def __init__(self, ring: ArtinianLocalRing, basis_labels, matrices: dict, name="M", check=True):
        self.ring = ring
        self.basis_labels = tuple(basis_labels)
        self.matrices = {v: matrices[v] for v in ring.variables}
        self.name = name
        if check:
            bad = self.validate()
            if bad:
                raise AxiomError(bad)

    @property
    def dim(self):
        return len(self.basis_labels)

    def validate(self) -> list:
        out = []
        n = self.dim
        for v, mtx in self.matrices.items():
            if (mtx.nrows, mtx.ncols) != (n, n):
                out.append(f"action matrix for {v} has wrong shape")
        if out:
            return out
        vs = self.ring.variables
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                a, b = self.matrices[vs[i]], self.matrices[vs[j]]
                if a.mul(b) != b.mul(a):
                    out.append(f"action matrices for {vs[i]} and {vs[j]} do not commute")
        for g in self.ring.ideal_gens:
            acc = Matrix.identity(n, self.ring.field)
            for i, e in enumerate(g):
                for _ in range(e):
                    acc = self.matrices[vs[i]].mul(acc)
            if not acc.is_zero():
                out.append(
                    f"relation {format_monomial(g, vs)} does not annihilate the module"
                )
        return out

    def monomial_matrix(self, mono) -> Matrix:
        acc = Matrix.identity(self.dim, self.ring.field)
        for i, e in enumerate(mono):
            for _ in range(e):
                acc = self.matrices[self.ring.variables[i]].mul(acc)
        return acc

    def __repr__(self):
        return f"FiniteModule({self.name} over {self.ring}, dim={self.dim})"


def module_from_action(ring: ArtinianLocalRing, basis_labels, matrices: dict, name="M"):
    """Validated finite module, wrapped also as a degree-0 DG module."""
    fm = FiniteModule(ring, basis_labels, matrices, name=name)
    return fm, finite_module_as_dg(as_dg_algebra(ring), fm)


def finite_module_as_dg(rdga: DGAlgebra, fm: FiniteModule):
    from .dgmod import DGModule

    f = fm.ring.field
    sp = GradedSpace(f, {0: list(fm.basis_labels)})
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, {}))
    action = {}
    for i, mono in enumerate(fm.ring.basis):
        mtx = fm.monomial_matrix(mono)
        for j in range(fm.dim):
            col = mtx.column(j)
            if col:
                action[((0, i), (0, j))] = col
    return DGModule(rdga, cx, action, name=fm.name)


def residue_finite_module(ring: ArtinianLocalRing, name="k") -> FiniteModule:
    zero = Matrix.zero(1, 1, ring.field)
    return FiniteModule(ring, [name], {v: zero for v in ring.variables}, name=name)


def free_finite_module(ring: ArtinianLocalRing, name=None) -> FiniteModule:
    f = ring.field
    mats = {}
    for v in ring.variables:
        cols = []
        vi = ring.variable_index(v)
        for j in range(ring.dim):
            t = ring.multiply_basis(vi, j)
            cols.append({t: f.one()} if t is not None else {})
        mats[v] = Matrix.from_columns(cols, ring.dim, f)
    return FiniteModule(ring, ring.labels(), mats, name=name or "R")


def ring_hom(source: ArtinianLocalRing, target: ArtinianLocalRing, var_images: dict,
             source_dga=None, target_dga=None) -> DGAlgebraMorphism:
    """Ring homomorphism given by variable images (monomial strings or
    basis vectors), lifted to the degree-0 DG algebras."""
    f = source.field
    if source_dga is None:
        source_dga = as_dg_algebra(source)
    if target_dga is None:
        target_dga = as_dg_algebra(target)
    images = {}
    for v in source.variables:
        img = var_images[v]
        if isinstance(img, str):
            if img.strip() == "0":
                vec = {}
            else:
                exps = parse_monomial(img, target.variables)
                vec = {} if target._in_ideal(exps) else {target.index[exps]: f.one()}
        else:
            vec = dict(img)
        images[v] = vec

    def image_of_basis(mono):
        unit = tuple([0] * len(target.variables))
        vec = {target.index[unit]: f.one()}
        for i, e in enumerate(mono):
            for _ in range(e):
                new = {}
                for t, c in vec.items():
                    for t2, c2 in images[source.variables[i]].items():
                        s = target.multiply_basis(t, t2)
                        if s is not None:
                            vec_axpy(new, f.mul(c, c2), {s: f.one()}, f)
                vec = new
        return vec

    cols = [image_of_basis(mono) for mono in source.basis]
    mtx = Matrix.from_columns(cols, target.dim, f)
    gm = GradedMap(source_dga.space, target_dga.space, 0, {0: mtx} if not mtx.is_zero() else {})
    return DGAlgebraMorphism(source_dga, target_dga, gm)


# -- independent classical Betti oracle --------------------------------------


def classical_betti(fm: FiniteModule, n: int) -> list:
    """Betti numbers of a finite module by the textbook construction:
    minimal generators, kernel, repeat.  Shares only the matrix kernel
    with the DG engine."""
    ring = fm.ring
    f = ring.field
    m_idx = ring.maximal_ideal_indices()
    betti = []
    current = fm
    for _ in range(n + 1):
        dim = current.dim
        if dim == 0:
            betti.append(0)
            continue
        red = SpanReducer(f)
        for i in m_idx:
            mtx = current.monomial_matrix(ring.basis[i])
            for col in mtx.columns():
                if col:
                    red.add(col)
        gens = []
        for j in range(dim):
            vec = {j: f.one()}
            residual, _ = red.reduce(vec)
            if residual:
                red.add(residual)
                gens.append(vec)
        b = len(gens)
        betti.append(b)
        if b == 0:
            current = FiniteModule(ring, [], {v: Matrix.zero(0, 0, f) for v in ring.variables}, check=False)
            continue
        # free cover R^b -> M, e_(t,j) = mono_t * gen_j; kernel is a submodule
        cover_dim = ring.dim * b
        cols = []
        for j in range(b):
            gvec = gens[j]
            for t in range(ring.dim):
                mtx = current.monomial_matrix(ring.basis[t])
                img = {}
                for jj, c in gvec.items():
                    vec_axpy(img, c, mtx.column(jj), f)
                cols.append(img)
        cover = Matrix.from_columns(cols, dim, f)
        ker = kernel_basis(cover)
        kdim = len(ker)
        kmat = Matrix.from_columns(ker, cover_dim, f)
        # express multiplication by each variable inside the kernel
        red2 = SpanReducer(f)
        for i, vec in enumerate(ker):
            red2.add(vec, tag=i)
        var_mats = {}
        for v in ring.variables:
            vi = ring.variable_index(v)
            colsv = []
            for vec in ker:
                img = {}
                for pos, c in vec.items():
                    j, t = divmod(pos, ring.dim)
                    s = ring.multiply_basis(vi, t)
                    if s is not None:
                        vec_axpy(img, c, {j * ring.dim + s: f.one()}, f)
                residual, used = red2.reduce(img)
                if residual:
                    raise AxiomError(["kernel is not closed under the action"])
                colsv.append(used)
            var_mats[v] = Matrix.from_columns(colsv, kdim, f)
        current = FiniteModule(
            ring, [f"s{i}" for i in range(kdim)], var_mats, name="syz", check=False
        )
    return betti
