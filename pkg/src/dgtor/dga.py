"""Graded-commutative DG algebras as structure-constant tables.

Products are stored once per unordered basis pair; the opposite order is
derived through the sign rule, so graded commutativity holds by
construction and the validator only needs to check the remaining axioms
(Leibniz, associativity, unit, odd squares).
"""

from __future__ import annotations

from .errors import AxiomError, DimensionError, FieldMismatchError
from .graded import ChainComplex, ChainMap, GradedMap, GradedSpace, HomologyData, homology
from .linalg import Matrix, SpanReducer, kernel_basis, solve, vec_axpy, vec_scale, vec_sub


def _pair_key(d1, i1, d2, i2):
    return ((d1, i1), (d2, i2)) if (d1, i1) <= (d2, i2) else ((d2, i2), (d1, i1))


class DGAlgebra:
    """A chain complex with unit and multiplication structure constants.

    `products` maps ((d1,i1),(d2,i2)) with (d1,i1) <= (d2,i2) to the
    product vector in degree d1+d2.  Odd-degree squares are never stored;
    the accessor returns zero for them.
    """

    __slots__ = ("complex", "unit", "products", "name")

    def __init__(self, complex_: ChainComplex, unit: dict, products: dict, name="A"):
        self.complex = complex_
        self.unit = {i: v for i, v in unit.items() if v}
        self.products = {}
        for (k1, k2), vec in products.items():
            if k1 > k2:
                raise AxiomError([f"product key {(k1, k2)} not in canonical order"])
            vec = {i: v for i, v in vec.items() if v}
            if vec:
                self.products[(k1, k2)] = vec
        self.name = name

    # -- basic access ----------------------------------------------------

    @property
    def field(self):
        return self.complex.field

    @property
    def space(self) -> GradedSpace:
        return self.complex.space

    @property
    def diff(self) -> GradedMap:
        return self.complex.diff

    def mul_basis(self, d1, i1, d2, i2) -> dict:
        if d1 % 2 and (d1, i1) == (d2, i2):
            return {}
        key = _pair_key(d1, i1, d2, i2)
        vec = self.products.get(key, {})
        if (d1, i1) <= (d2, i2) or not vec or (d1 * d2) % 2 == 0:
            return vec
        f = self.field
        return {i: f.neg(v) for i, v in vec.items()}

    def mul(self, d1: int, v1: dict, d2: int, v2: dict) -> dict:
        """Product of homogeneous elements, degrees d1 and d2."""
        f = self.field
        out = {}
        for i1, c1 in v1.items():
            for i2, c2 in v2.items():
                c = f.mul(c1, c2)
                if not c:
                    continue
                vec_axpy(out, c, self.mul_basis(d1, i1, d2, i2), f)
        return out

    def element_from_label(self, label: str):
        for d, ls in self.space.labels.items():
            if label in ls:
                return d, {self.space.index_of(d, label): self.field.one()}
        raise KeyError(label)

    # -- validation --------------------------------------------------------

    def validate(self, max_violations=25) -> list:
        """Check the graded-commutative DG algebra axioms.

        Returns a list of violation records (empty means pass); each record
        carries the axiom name and a witness (degrees and indices).
        """
        f = self.field
        out = []

        def report(axiom, witness):
            if len(out) < max_violations:
                out.append({"axiom": axiom, "witness": witness})

        if self.unit and any(self.unit.values()):
            img = self.diff.apply(0, self.unit)
            if img:
                report("unit-is-cycle", {"d(1)": img})
        else:
            report("unit-nonzero", {})
        basis = list(self.space.basis())
        # unit laws
        for d, i in basis:
            left = self.mul(0, self.unit, d, {i: f.one()})
            if left != {i: f.one()}:
                report("unit-left", {"degree": d, "index": i, "got": left})
            right = self.mul(d, {i: f.one()}, 0, self.unit)
            if right != {i: f.one()}:
                report("unit-right", {"degree": d, "index": i, "got": right})
        # odd squares (independent of commutativity; matters in char 2)
        for (k1, k2), vec in self.products.items():
            if k1 == k2 and k1[0] % 2 and vec:
                report("odd-square", {"key": k1})
        # Leibniz on basis pairs
        for d1, i1 in basis:
            da = self.diff.apply(d1, {i1: f.one()})
            for d2, i2 in basis:
                if (d1, i1) > (d2, i2):
                    continue
                db = self.diff.apply(d2, {i2: f.one()})
                lhs = self.diff.apply(d1 + d2, self.mul_basis(d1, i1, d2, i2))
                rhs = self.mul(d1 - 1, da, d2, {i2: f.one()})
                sgn = f.one() if d1 % 2 == 0 else f.neg(f.one())
                term2 = self.mul(d1, {i1: f.one()}, d2 - 1, db)
                vec_axpy(rhs, sgn, term2, f)
                if lhs != rhs:
                    report(
                        "leibniz",
                        {"left": (d1, i1), "right": (d2, i2), "lhs": lhs, "rhs": rhs},
                    )
        # associativity on basis triples
        for d1, i1 in basis:
            for d2, i2 in basis:
                ab = self.mul_basis(d1, i1, d2, i2)
                for d3, i3 in basis:
                    lhs = self.mul(d1 + d2, ab, d3, {i3: f.one()})
                    bc = self.mul_basis(d2, i2, d3, i3)
                    rhs = self.mul(d1, {i1: f.one()}, d2 + d3, bc)
                    if lhs != rhs:
                        report(
                            "associativity",
                            {"triple": ((d1, i1), (d2, i2), (d3, i3))},
                        )
        return out

    def assert_valid(self):
        violations = self.validate()
        if violations:
            raise AxiomError([str(v) for v in violations])

    def __eq__(self, other):
        return (
            isinstance(other, DGAlgebra)
            and self.complex == other.complex
            and self.unit == other.unit
            and self.products == other.products
        )

    def __repr__(self):
        return f"DGAlgebra({self.name}, dims={self.space.dims()})"


def build_products_from_table(table: dict) -> dict:
    """Normalize a possibly-redundant product table to canonical keys.

    `table` maps ((d1,i1),(d2,i2)) (any order) to product vectors.  Both
    orders, when present, must agree up to the sign rule; odd diagonals
    must be zero.
    """
    out = {}
    for (k1, k2), vec in table.items():
        vec = {i: v for i, v in vec.items() if v}
        if k1 == k2 and k1[0] % 2:
            if vec:
                raise AxiomError([f"odd-degree square of {k1} must be zero"])
            continue
        key = (k1, k2) if k1 <= k2 else (k2, k1)
        if k1 <= k2:
            canon = vec
        else:
            sign_flip = (k1[0] * k2[0]) % 2 == 1
            canon = vec
            if sign_flip:
                canon = {i: -v for i, v in vec.items()}
        if key in out:
            prev = out[key]
            if prev != canon:
                raise AxiomError([f"inconsistent graded-commutative pair at {key}"])
        else:
            out[key] = canon
    return out


def field_algebra(field, label="1") -> DGAlgebra:
    sp = GradedSpace(field, {0: [label]})
    cx = ChainComplex(sp, GradedMap(sp, sp, -1, {}))
    one = field.one()
    return DGAlgebra(cx, {0: one}, {((0, 0), (0, 0)): {0: one}}, name="k")


class DGAlgebraMorphism:
    """Unit-preserving multiplicative chain map of DG algebras."""

    __slots__ = ("source", "target", "gmap")

    def __init__(self, source: DGAlgebra, target: DGAlgebra, gmap: GradedMap, check=True):
        if gmap.shift != 0:
            raise DimensionError("algebra morphism must have shift 0")
        if source.field != target.field:
            raise FieldMismatchError("morphism across fields")
        self.source = source
        self.target = target
        self.gmap = gmap
        if check:
            violations = self.validate()
            if violations:
                raise AxiomError([str(v) for v in violations])

    def apply(self, d, vec):
        return self.gmap.apply(d, vec)

    def chain_map(self) -> ChainMap:
        return ChainMap(self.source.complex, self.target.complex, self.gmap)

    def validate(self, max_violations=25) -> list:
        f = self.source.field
        out = []

        def report(axiom, witness):
            if len(out) < max_violations:
                out.append({"axiom": axiom, "witness": witness})

        cm = ChainMap(self.source.complex, self.target.complex, self.gmap, check=False)
        if not cm.commutes():
            report("chain-map", {})
        if self.apply(0, self.source.unit) != self.target.unit:
            report("unit", {})
        basis = list(self.source.space.basis())
        for d1, i1 in basis:
            fa = self.apply(d1, {i1: f.one()})
            for d2, i2 in basis:
                if (d1, i1) > (d2, i2):
                    continue
                fb = self.apply(d2, {i2: f.one()})
                lhs = self.apply(d1 + d2, self.source.mul_basis(d1, i1, d2, i2))
                rhs = self.target.mul(d1, fa, d2, fb)
                if lhs != rhs:
                    report("multiplicative", {"pair": ((d1, i1), (d2, i2))})
        return out

    def compose(self, other: "DGAlgebraMorphism") -> "DGAlgebraMorphism":
        """self after other."""
        return DGAlgebraMorphism(
            other.source, self.target, self.gmap.compose(other.gmap), check=False
        )

    def is_identity(self) -> bool:
        if self.source is not self.target and self.source != self.target:
            return False
        for d in self.source.space.labels:
            if self.gmap.block(d) != Matrix.identity(self.source.space.dim(d), self.source.field):
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, DGAlgebraMorphism)
            and self.source == other.source
            and self.target == other.target
            and self.gmap == other.gmap
        )


def identity_morphism(a: DGAlgebra) -> DGAlgebraMorphism:
    blocks = {d: Matrix.identity(a.space.dim(d), a.field) for d in a.space.labels}
    return DGAlgebraMorphism(a, a, GradedMap(a.space, a.space, 0, blocks), check=False)


def morphism_on_labels(source: DGAlgebra, target: DGAlgebra, images: dict, check=True):
    """Morphism given by label -> target vector (dict or label string)."""
    f = source.field
    blocks = {}
    for d, ls in source.space.labels.items():
        cols = []
        for lab in ls:
            img = images[lab]
            if isinstance(img, str):
                dd, vec = target.element_from_label(img)
                if dd != d:
                    raise DimensionError(f"{lab} -> {img} changes degree")
            else:
                vec = img
            cols.append(vec)
        m = Matrix.from_columns(cols, target.space.dim(d), f)
        if not m.is_zero():
            blocks[d] = m
    return DGAlgebraMorphism(source, target, GradedMap(source.space, target.space, 0, blocks), check=check)


# -- locality ------------------------------------------------------------


def _mult_operator(a: DGAlgebra, vec: dict) -> Matrix:
    """Left multiplication by a degree-0 element, restricted to degree 0."""
    f = a.field
    n = a.space.dim(0)
    cols = [a.mul(0, vec, 0, {j: f.one()}) for j in range(n)]
    return Matrix.from_columns(cols, n, f)


def _flatten(mat: Matrix) -> dict:
    out = {}
    for i, r in mat.rows.items():
        for j, v in r.items():
            out[i * mat.ncols + j] = v
    return out


def minimal_polynomial(mat: Matrix) -> list:
    """Monic minimal polynomial of a square matrix, low-degree first."""
    f = mat.field
    n = mat.nrows
    red = SpanReducer(f)
    power = Matrix.identity(n, f)
    k = 0
    while True:
        residual = red.add(_flatten(power), tag=k)
        if residual is None:
            _, used = red.reduce(_flatten(power))
            coeffs = [f.zero()] * (k + 1)
            for j, c in used.items():
                coeffs[j] = c
            # power = sum used[j] * mat^j, so min poly is t^k - sum c_j t^j
            poly = [f.neg(c) for c in coeffs[:k]] + [f.one()]
            return poly
        k += 1
        power = mat.mul(power)
        if k > n:
            raise AxiomError(["minimal polynomial search exceeded dimension bound"])


def _poly_mul(a, b, f):
    out = [f.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


def linear_power_root(mu: list, field):
    """If mu(t) = (t - lam)^e for lam in the field, return lam, else None."""
    f = field
    e = len(mu) - 1
    if e == 0:
        return None
    p = f.characteristic
    if p == 0:
        lam = f.neg(f.div(mu[e - 1], f.normalize(e)))
    else:
        m, q = e, 1
        while m % p == 0:
            m //= p
            q *= p
        # (t - lam)^e = (t^q - lam^q)^m; coefficients live at multiples of q
        for j, c in enumerate(mu):
            if j % q and c:
                return None
        nu = [mu[j * q] for j in range(m + 1)]
        theta = f.neg(f.div(nu[m - 1], f.normalize(m)))
        lam = theta  # ground-field elements are Frobenius-fixed
    check = [f.one()]
    for _ in range(e):
        check = _poly_mul(check, [f.neg(lam), f.one()], f)
    if check != [f.normalize(c) for c in mu]:
        return None
    return lam


class LocalVerdict:
    __slots__ = ("is_local", "reasons", "lambdas", "maximal_ideal_deg0", "witness")

    def __init__(self, is_local, reasons, lambdas=None, maximal_ideal_deg0=None, witness=None):
        self.is_local = is_local
        self.reasons = reasons
        self.lambdas = lambdas
        self.maximal_ideal_deg0 = maximal_ideal_deg0
        self.witness = witness

    def __bool__(self):
        return self.is_local

    def __repr__(self):
        return f"LocalVerdict({self.is_local}, {self.reasons})"


def is_local(a: DGAlgebra) -> LocalVerdict:
    """Decide the local-DG-algebra conditions with residue field = ground field.

    Degree-0 locality is decided by the minimal polynomial of each basis
    multiplication operator: the algebra is local with residue field k iff
    every one is a power of a single linear factor over k.  On failure a
    nontrivial idempotent is extracted when a Fitting decomposition
    exposes one.
    """
    f = a.field
    reasons = []
    if a.space.labels and a.space.lo < 0:
        reasons.append(f"nonzero component in negative degree {a.space.lo}")
        return LocalVerdict(False, reasons)
    n0 = a.space.dim(0)
    if n0 == 0:
        reasons.append("degree-0 part is zero")
        return LocalVerdict(False, reasons)
    # H_0 != 0
    cycles0 = len(kernel_basis(a.diff.block(0)))
    from .linalg import rank as _rank

    h0 = cycles0 - _rank(a.diff.block(1))
    if h0 == 0:
        reasons.append("H_0 vanishes")
        return LocalVerdict(False, reasons)
    lambdas = []
    for i in range(n0):
        op = _mult_operator(a, {i: f.one()})
        mu = minimal_polynomial(op)
        lam = linear_power_root(mu, f)
        if lam is None:
            witness = {"basis_index": i, "min_poly": mu}
            idem = _find_idempotent(a, i, mu)
            if idem is not None:
                witness["idempotent"] = idem
            reasons.append(
                f"degree-0 basis element {a.space.label(0, i)} has non-local minimal polynomial"
            )
            return LocalVerdict(False, reasons, witness=witness)
        lambdas.append(lam)
    # multiplicativity of the candidate augmentation on degree-0 pairs
    for i in range(n0):
        for j in range(i, n0):
            prod = a.mul_basis(0, i, 0, j)
            val = f.zero()
            for t, v in prod.items():
                val = f.add(val, f.mul(v, lambdas[t]))
            if val != f.mul(lambdas[i], lambdas[j]):
                reasons.append("candidate residue map is not multiplicative")
                return LocalVerdict(False, reasons, witness={"pair": (i, j)})
    unit_val = f.zero()
    for t, v in a.unit.items():
        unit_val = f.add(unit_val, f.mul(v, lambdas[t]))
    if unit_val != f.one():
        reasons.append("candidate residue map does not send 1 to 1")
        return LocalVerdict(False, reasons)
    # the augmentation must kill boundaries from degree 1
    b1 = a.diff.block(1)
    for col in b1.columns():
        val = f.zero()
        for t, v in col.items():
            val = f.add(val, f.mul(v, lambdas[t]))
        if val:
            reasons.append("image of the differential is not contained in the maximal ideal")
            return LocalVerdict(False, reasons)
    eps_row = Matrix.from_rows([[lambdas[i] for i in range(n0)]], f)
    m0 = kernel_basis(eps_row)  # basis of ker(eps) in degree 0
    return LocalVerdict(True, [], lambdas=lambdas, maximal_ideal_deg0=m0)


def _find_idempotent(a: DGAlgebra, i, mu):
    """Try to exhibit a nontrivial idempotent from a Fitting split."""
    f = a.field
    n0 = a.space.dim(0)
    shifts = [f.zero()]
    if f.characteristic == 0:
        const = mu[0]
        num = const.numerator if hasattr(const, "numerator") else int(const)
        for c in sorted({1, -1, num, -num} - {0}, key=lambda v: (abs(v), v < 0)):
            shifts.append(f.normalize(c))
    else:
        for c in range(1, min(f.characteristic, 64)):
            shifts.append(f.normalize(c))
    for c in shifts:
        vec = vec_sub({i: f.one()}, vec_scale(a.unit, c, f), f)
        op = _mult_operator(a, vec)
        power = Matrix.identity(n0, f)
        for _ in range(n0):
            power = op.mul(power)
        ker = kernel_basis(power)
        img = [col for col in power.columns() if col]
        if not ker or not img:
            continue
        # 1 = u + w with u in ker, w in im; w is then idempotent
        cols = [dict(v) for v in ker] + [dict(v) for v in img]
        m = Matrix.from_columns(cols, n0, f)
        status, x = solve(m, a.unit)
        if status != "solution":
            continue
        w = {}
        for jcol, coef in x.items():
            if jcol >= len(ker):
                vec_axpy(w, coef, cols[jcol], f)
        if not w or w == a.unit:
            continue
        if a.mul(0, w, 0, w) == w:
            return w
    return None


def augmentation(a: DGAlgebra) -> DGAlgebraMorphism:
    """Canonical augmentation of a local DG algebra onto its residue field."""
    verdict = is_local(a)
    if not verdict:
        raise AxiomError(["algebra is not local"] + verdict.reasons)
    f = a.field
    k_alg = field_algebra(f)
    blocks = {0: Matrix.from_rows([[verdict.lambdas[i] for i in range(a.space.dim(0))]], f)}
    return DGAlgebraMorphism(a, k_alg, GradedMap(a.space, k_alg.space, 0, blocks), check=False)


def maximal_ideal_basis(a: DGAlgebra, verdict: LocalVerdict = None) -> dict:
    """Per-degree vector basis of the maximal DG ideal."""
    if verdict is None:
        verdict = is_local(a)
    if not verdict:
        raise AxiomError(["algebra is not local"] + verdict.reasons)
    f = a.field
    out = {}
    for d, ls in a.space.labels.items():
        if d == 0:
            eps = Matrix.from_rows([[verdict.lambdas[i] for i in range(len(ls))]], f)
            out[d] = kernel_basis(eps)
        else:
            out[d] = [{i: f.one()} for i in range(len(ls))]
    return out


# -- homology algebra ------------------------------------------------------


class HomologyAlgebra:
    """Homology classes with the induced products.

    Classes in degree d are labeled h<d>_<i>; products are stored in
    canonical pair order like DGAlgebra.
    """

    __slots__ = ("algebra", "homology", "products", "unit_class")

    def __init__(self, algebra: DGAlgebra, hdata: HomologyData, products: dict, unit_class: dict):
        self.algebra = algebra
        self.homology = hdata
        self.products = products
        self.unit_class = unit_class

    def dims(self):
        return dict(self.homology.dims)

    def dim(self, d):
        return self.homology.dim(d)

    def mul_class(self, d1, i1, d2, i2) -> dict:
        if d1 % 2 and (d1, i1) == (d2, i2):
            return {}
        key = _pair_key(d1, i1, d2, i2)
        vec = self.products.get(key, {})
        if (d1, i1) <= (d2, i2) or not vec or (d1 * d2) % 2 == 0:
            return vec
        f = self.algebra.field
        return {i: f.neg(v) for i, v in vec.items()}

    def as_dga(self, name=None) -> DGAlgebra:
        f = self.algebra.field
        labels = {
            d: [f"h{d}_{i}" for i in range(n)] for d, n in self.homology.dims.items() if n
        }
        sp = GradedSpace(f, labels)
        cx = ChainComplex(sp, GradedMap(sp, sp, -1, {}))
        return DGAlgebra(cx, self.unit_class, dict(self.products), name=name or f"H({self.algebra.name})")

    def verify_representative_independence(self, rng) -> bool:
        """Recompute a sample of products with boundary-perturbed
        representatives and compare."""
        a = self.algebra
        f = a.field
        h = self.homology
        for d1 in h.dims:
            for i1 in range(h.dim(d1)):
                rep = h.reps[d1][i1]
                pert = dict(rep)
                bnd = a.diff.blocks.get(d1 + 1)
                if bnd is not None and bnd.ncols:
                    j = rng.randrange(bnd.ncols)
                    col = bnd.column(j)
                    vec_axpy(pert, f.normalize(1 + rng.randrange(3)), col, f)
                for d2 in h.dims:
                    if (d1 + d2) not in h.dims:
                        continue
                    for i2 in range(h.dim(d2)):
                        other = h.reps[d2][i2]
                        prod = a.mul(d1, pert, d2, other)
                        expected = self.mul_class(d1, i1, d2, i2)
                        got = h.project(d1 + d2, prod)
                        if got != expected:
                            return False
        return True


def homology_algebra(a: DGAlgebra, window=None) -> HomologyAlgebra:
    """Homology with the induced graded products on chosen representatives."""
    h = homology(a.complex, window)
    f = a.field
    lo, hi = h.window
    products = {}
    for d1 in range(lo, hi + 1):
        for i1 in range(h.dim(d1)):
            for d2 in range(d1, hi + 1):
                if d1 + d2 > hi:
                    continue
                for i2 in range(h.dim(d2)):
                    if (d1, i1) > (d2, i2):
                        continue
                    if d1 % 2 and (d1, i1) == (d2, i2):
                        continue
                    prod = a.mul(d1, h.reps[d1][i1], d2, h.reps[d2][i2])
                    coords = h.project(d1 + d2, prod)
                    if coords:
                        products[((d1, i1), (d2, i2))] = coords
    unit_class = h.project(0, a.unit) if 0 in h.dims else {}
    return HomologyAlgebra(a, h, products, unit_class)
