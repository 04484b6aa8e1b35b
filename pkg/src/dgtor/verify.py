"""Executable verification of the decomposition theorems as exact
degreewise dimension identities on concrete instances.

Every PASS is an exact integer equality in every clean degree; infinite
statements are replaced by explicit finite-window proxies that each
report names.  Reports are reproducible bit for bit under a fixed
configuration.
"""

from __future__ import annotations

import time

from .errors import AxiomError
from .dga import DGAlgebra, DGAlgebraMorphism, augmentation, is_local
from .dgmod import (
    algebra_as_module,
    certify_perfect,
    quotient_module,
    residue_module,
    restrict_scalars,
    sub_module,
    suspend_module,
    tensor_over,
    tensor_over_as_module,
    tor,
    tor_against_k,
)
from .constructions import (
    KoszulExtensionTag,
    TrivialExtensionTag,
    koszul_complex,
    module_koszul_extension,
    trivial_extension,
)
from .detect import auto_AxW_search, certify_kxW
from .dga import homology_algebra
from .graded import homology_dims, is_quasi_iso
from .linalg import kernel_basis
from .rings import ArtinianLocalRing, as_dg_algebra, finite_module_as_dg


THEOREM_IDS = (
    "thm-tor",
    "ps-product",
    "decomposition",
    "nonvanishing",
    "herzog",
    "star",
    "th-local",
    "retract-split",
    "koszul-transfer",
)


class VerificationReport:
    """Degreewise dimension columns plus a verdict.

    verdict: PASS | FAIL | SKIPPED | NOT-APPLICABLE | HYPOTHESIS-UNDETERMINED
    """

    __slots__ = (
        "theorem",
        "instance",
        "columns",
        "rows",
        "verdict",
        "clean_window",
        "proxy",
        "notes",
        "details",
        "timing_s",
    )

    def __init__(self, theorem, instance, columns, rows, verdict, clean_window, proxy=None,
                 notes=None, details=None, timing_s=0.0):
        self.theorem = theorem
        self.instance = instance
        self.columns = columns
        self.rows = rows
        self.verdict = verdict
        self.clean_window = clean_window
        self.proxy = proxy
        self.notes = notes or []
        self.details = details or {}
        self.timing_s = timing_s

    def to_text(self) -> str:
        lines = [f"[{self.theorem}] {self.instance}"]
        lines.append(f"  verdict: {self.verdict}   clean window: {list(self.clean_window)}")
        if self.proxy:
            lines.append(f"  proxy: {self.proxy}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        if self.rows:
            header = "  " + "  ".join(f"{c:>8}" for c in self.columns)
            lines.append(header)
            for row in self.rows:
                lines.append("  " + "  ".join(f"{v!s:>8}" for v in row))
        lines.append(f"  time: {self.timing_s:.3f}s")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        # timing is intentionally excluded: reports must be byte-identical
        # across runs and thread counts.
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "columns": list(self.columns),
            "rows": [list(r) for r in self.rows],
            "verdict": self.verdict,
            "clean_window": list(self.clean_window),
            "proxy": self.proxy,
            "notes": list(self.notes),
        }

    def __repr__(self):
        return f"VerificationReport({self.theorem}, {self.verdict})"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.monotonic()
        report = fn(*args, **kwargs)
        report.timing_s = time.monotonic() - t0
        return report

    return wrapper


@_timed
def verify_thm_tor(a: DGAlgebra, w, m, n_mod, degree: int, eps=None, instance="") -> VerificationReport:
    """Trivial-extension Tor decomposition, degreewise:

    dim Tor_i^B(M^b, N^b) = dim Tor_i^A(M, N)
        + sum_{p+1+q+r=i} dim Tor_p^A(M, k) * dim H_q(W) * dim Tor_r^B(k, N^b)
    over B = A |x W.
    """
    va = is_local(a)
    if not va:
        raise AxiomError(["base algebra must be local"] + va.reasons)
    if eps is None:
        eps = augmentation(a)
    B, tag = trivial_extension(a, eps, w)
    vb = is_local(B)
    mb = restrict_scalars(tag.beta, m)
    nb = restrict_scalars(tag.beta, n_mod)
    kb = residue_module(B, vb)
    ka = residue_module(a, va)
    n = degree
    lhs = tor(B, mb, nb, (0, n), verdict=vb)
    tor_a_mn = tor(a, m, n_mod, (0, n), verdict=va)
    tor_a_mk = tor(a, m, ka, (0, n), verdict=va)
    hw = homology_dims(w)
    # resolve k over B, independent of the resolution used on the left
    tor_b_kn = tor(B, nb, kb, (0, n), verdict=vb)
    rows = []
    ok = True
    for i in range(0, n + 1):
        rhs = tor_a_mn.dim(i)
        for q, hq in hw.items():
            if not hq:
                continue
            for p in range(0, n + 1):
                r = i - 1 - q - p
                if r < 0 or r > n:
                    continue
                rhs += tor_a_mk.dim(p) * hq * tor_b_kn.dim(r)
        l = lhs.dim(i)
        rows.append([i, l, rhs])
        if l != rhs:
            ok = False
    return VerificationReport(
        "thm-tor",
        instance or f"A={a.name}, W dims={dict(w.space.dims())}, M={m.name}, N={n_mod.name}",
        ["degree", "left", "right"],
        rows,
        "PASS" if ok else "FAIL",
        (0, n),
        notes=["left side resolves N^b over B; right side uses separate resolutions"],
    )


@_timed
def verify_poincare_product(tag_or_maps, l, n: int, instance="") -> VerificationReport:
    """Poincare series product over a DG algebra retract:
    P^B_L = P^B_C * P^C_L coefficientwise up to degree n."""
    if isinstance(tag_or_maps, TrivialExtensionTag):
        B, C = tag_or_maps.algebra, tag_or_maps.base
        alpha, beta = tag_or_maps.alpha, tag_or_maps.beta
    else:
        alpha, beta = tag_or_maps
        B, C = beta.source, beta.target
    if not beta.compose(alpha).is_identity():
        raise AxiomError(["retract data invalid: beta o alpha is not the identity"])
    vb = is_local(B)
    vc = is_local(C)
    if not (vb and vc):
        raise AxiomError(["retract factors must be local"])
    lb = restrict_scalars(beta, l)
    cb = restrict_scalars(beta, algebra_as_module(C))
    p_b_l = tor_against_k(B, lb, n, verdict=vb)
    p_b_c = tor_against_k(B, cb, n, verdict=vb)
    p_c_l = tor_against_k(C, l, n, verdict=vc)
    prod = p_b_c.cauchy_product(p_c_l, upto=n)
    rows = []
    ok = True
    for i in range(0, n + 1):
        lv, rv = p_b_l.coeff(i), prod.coeff(i)
        rows.append([i, lv, rv])
        if lv != rv:
            ok = False
    return VerificationReport(
        "ps-product",
        instance or f"B={B.name}, C={C.name}, L={l.name}",
        ["degree", "P^B_L", "product"],
        rows,
        "PASS" if ok else "FAIL",
        (0, n),
        details={
            "P^B_L": p_b_l.as_list(0, n),
            "P^B_C": p_b_c.as_list(0, n),
            "P^C_L": p_c_l.as_list(0, n),
        },
    )


@_timed
def verify_decomposition(beta: DGAlgebraMorphism, n: int, instance="") -> VerificationReport:
    """Tor decomposition of a (co)kernel: per degree
    1_{i=0} + dim Tor_i^B(X, k) = dim Tor_i^B(C^b, k), where X is the
    honest cokernel for injective beta and the suspended kernel (the
    mapping-cone replacement) for surjective beta."""
    B = beta.source
    C = beta.target
    vb = is_local(B)
    if not vb:
        raise AxiomError(["source must be local"])
    f = B.field
    Bmod = algebra_as_module(B)
    cb = restrict_scalars(beta, algebra_as_module(C))
    note = ""
    if beta.gmap.is_surjective():
        ker_basis = {d: kernel_basis(beta.gmap.block(d)) for d in B.space.labels}
        kernel_mod, _ = sub_module(Bmod, ker_basis, name="ker")
        x_mod = suspend_module(kernel_mod)
        note = "beta surjective: X = suspended kernel, quasi-isomorphic to Cone(beta)"
    elif beta.gmap.is_injective():
        image = {d: [c for c in beta.gmap.block(d).columns() if c] for d in B.space.labels}
        x_mod, _ = quotient_module(cb, image, name="coker")
        note = "beta injective: X = Coker(beta), quasi-isomorphic to Cone(beta)"
    else:
        raise AxiomError(["beta must be injective or surjective in every degree"])
    sx = tor_against_k(B, x_mod, n, verdict=vb)
    sc = tor_against_k(B, cb, n, verdict=vb)
    rows = []
    ok = True
    for i in range(0, n + 1):
        lv = (1 if i == 0 else 0) + sx.coeff(i)
        rv = sc.coeff(i)
        rows.append([i, lv, rv])
        if lv != rv:
            ok = False
    return VerificationReport(
        "decomposition",
        instance or f"B={B.name} -> C={C.name}",
        ["degree", "1+Tor(X,k)", "Tor(C,k)"],
        rows,
        "PASS" if ok else "FAIL",
        (0, n),
        notes=[note],
    )


@_timed
def nonvanishing_window(tag: TrivialExtensionTag, m, n_mod, window, instance="") -> VerificationReport:
    """Finite-window proxy for Tor non-vanishing over a trivial extension.

    The infinite statement is untestable; this reports all nonzero degrees
    in the window and passes iff the top max(3, len/4) degrees contain a
    nonzero entry.  Hypothesis failures yield SKIPPED.
    """
    lo, hi = window
    a = tag.base
    B = tag.algebra
    va = is_local(a)
    vb = is_local(B)
    proxy = "PASS iff some Tor_i != 0 with i in the top max(3, window/4) degrees"
    hw = homology_dims(tag.w)
    if not any(v for d, v in hw.items() if d != -1):
        return VerificationReport(
            "nonvanishing", instance or B.name, ["degree", "Tor^B"], [],
            "SKIPPED", window, proxy=proxy,
            notes=["hypothesis fails: H(W) vanishes away from degree -1"],
        )
    ka = residue_module(a, va)
    tor_mk = tor(a, m, ka, (lo, hi), verdict=va)
    tor_kn = tor(a, n_mod, ka, (lo, hi), verdict=va)
    nontrivial_base = a.space.total_dim() > 1
    for table, which in ((tor_mk, "M"), (tor_kn, "N")):
        if not any(table.dims.values()):
            return VerificationReport(
                "nonvanishing", instance or B.name, ["degree", "Tor^B"], [],
                "SKIPPED", window, proxy=proxy,
                notes=[f"hypothesis fails: Tor^A({which}, k) = 0 on the window"],
            )
        if nontrivial_base and not any(v for d, v in table.dims.items() if d != 0):
            return VerificationReport(
                "nonvanishing", instance or B.name, ["degree", "Tor^B"], [],
                "SKIPPED", window, proxy=proxy,
                notes=[
                    f"hypothesis fails: Tor^A({which}, k) concentrated in degree 0 "
                    f"over a nontrivial base ({which} behaves as perfect)"
                ],
            )
    mb = restrict_scalars(tag.beta, m)
    nb = restrict_scalars(tag.beta, n_mod)
    t = tor(B, mb, nb, (lo, hi), verdict=vb)
    rows = [[i, t.dim(i)] for i in range(lo, hi + 1)]
    span = max(3, (hi - lo + 1) // 4)
    tail_ok = any(t.dim(i) for i in range(hi - span + 1, hi + 1))
    return VerificationReport(
        "nonvanishing",
        instance or f"B={B.name}, M={m.name}, N={n_mod.name}",
        ["degree", "Tor^B"],
        rows,
        "PASS" if tail_ok else "FAIL",
        window,
        proxy=proxy,
        details={"nonzero_degrees": t.nonzero_degrees(), "tail_span": span},
    )


@_timed
def verify_herzog(s_ring: ArtinianLocalRing, r_ring: ArtinianLocalRing, alpha: DGAlgebraMorphism,
                  beta: DGAlgebraMorphism, n_module, n: int, instance="") -> VerificationReport:
    """Herzog's Poincare series identity over a ring retract:
    P^R_N = P^R_S * P^S_N for beta o alpha = id_S."""
    if not beta.compose(alpha).is_identity():
        raise AxiomError(["retract equation beta o alpha = id fails"])
    S = alpha.source
    R = beta.source
    vs = is_local(S)
    vr = is_local(R)
    n_over_r = restrict_scalars(beta, n_module)
    s_over_r = restrict_scalars(beta, algebra_as_module(S))
    p_r_n = tor_against_k(R, n_over_r, n, verdict=vr)
    p_r_s = tor_against_k(R, s_over_r, n, verdict=vr)
    p_s_n = tor_against_k(S, n_module, n, verdict=vs)
    prod = p_r_s.cauchy_product(p_s_n, upto=n)
    rows = []
    ok = True
    for i in range(0, n + 1):
        lv, rv = p_r_n.coeff(i), prod.coeff(i)
        rows.append([i, lv, rv])
        if lv != rv:
            ok = False
    return VerificationReport(
        "herzog",
        instance or f"S={s_ring!r}, R={r_ring!r}, N={n_module.name}",
        ["degree", "P^R_N", "product"],
        rows,
        "PASS" if ok else "FAIL",
        (0, n),
        details={"P^R_S": p_r_s.as_list(0, n), "P^S_N": p_s_n.as_list(0, n)},
    )


def _bounded_in_window(table, lo, hi):
    span = max(3, (hi - lo + 1) // 4)
    top = [table.dim(i) for i in range(hi - span + 1, hi + 1)]
    return all(v == 0 for v in top), span


@_timed
def star_property_check(rdga: DGAlgebra, m, n_mod, n: int, instance="") -> VerificationReport:
    """Finite proxy for property (*): if Tor^R(M, N) is bounded in the
    window (zero on the top max(3, n/4) degrees), at least one argument
    must certify PERFECT."""
    vr = is_local(rdga)
    if not vr:
        raise AxiomError(["star check needs a local ring"])
    t = tor(rdga, m, n_mod, (0, n), verdict=vr)
    rows = [[i, t.dim(i)] for i in range(0, n + 1)]
    bounded, span = _bounded_in_window(t, 0, n)
    proxy = f"bounded means zero on the top {span} degrees of [0,{n}]"
    if not bounded:
        return VerificationReport(
            "star", instance or rdga.name, ["degree", "Tor"], rows,
            "NOT-APPLICABLE", (0, n), proxy=proxy,
            notes=["Tor is unbounded in the window; (*) makes no claim"],
        )
    cm = certify_perfect(rdga, m, n, verdict=vr)
    cn = certify_perfect(rdga, n_mod, n, verdict=vr)
    notes = [f"M: {cm.verdict} ({cm.note})", f"N: {cn.verdict} ({cn.note})"]
    if cm.verdict == "PERFECT" or cn.verdict == "PERFECT":
        verdict = "PASS"
    elif "UNDETERMINED" in (cm.verdict, cn.verdict):
        verdict = "HYPOTHESIS-UNDETERMINED"
    else:
        verdict = "FAIL"
    return VerificationReport(
        "star", instance or f"R={rdga.name}, M={m.name}, N={n_mod.name}",
        ["degree", "Tor"], rows, verdict, (0, n), proxy=proxy, notes=notes,
    )


@_timed
def th_local_pipeline(r: ArtinianLocalRing, m, n_mod, n: int, instance="") -> VerificationReport:
    """Koszul-homology pipeline for the local-ring theorem.

    Builds K^R, extracts H(K^R) as the stand-in for Tor^P(R, k) (the
    hypothesis that some minimal resolution carries a DG algebra structure
    is not checked; it is automatic along this route), runs the structure
    detectors, and on success cross-checks the (*) proxy.
    """
    if not r.in_m_squared:
        raise AxiomError(["pipeline needs a presentation with I inside m^2"])
    rdga = as_dg_algebra(r)
    K, _ = koszul_complex(r, rdga)
    halg = homology_algebra(K)
    notes = [
        "Tor^P(R,k) realized as the Koszul homology algebra H(K^R)",
        "hypothesis (a) (DG structure on a minimal resolution of R over P) "
        "is automatic along this route and not separately verified",
    ]
    hdims = halg.dims()
    rows = [[d, v] for d, v in sorted(hdims.items())]
    if not any(v for d, v in hdims.items() if d >= 1):
        return VerificationReport(
            "th-local", instance or repr(r), ["degree", "dim H(K)"], rows,
            "SKIPPED", (0, max(hdims) if hdims else 0),
            notes=notes + ["W = 0: the ring is regular, hypothesis (b) requires W != 0"],
        )
    kx = certify_kxW(K)
    ax = auto_AxW_search(halg.as_dga())
    notes.append(f"certify_kxW on K^R: {kx.verdict}")
    notes.append(f"auto A|xW split on H(K^R): {ax.verdict}")
    if kx.verdict == "REFUTED" and ax.verdict == "REFUTED":
        return VerificationReport(
            "th-local", instance or repr(r), ["degree", "dim H(K)"], rows,
            "SKIPPED", (0, max(hdims)),
            notes=notes + ["hypothesis (b) refuted on this instance"],
        )
    if not (kx.certified or ax.certified):
        return VerificationReport(
            "th-local", instance or repr(r), ["degree", "dim H(K)"], rows,
            "HYPOTHESIS-UNDETERMINED", (0, max(hdims)), notes=notes,
        )
    star = star_property_check(rdga, m, n_mod, n)
    notes.append(f"star proxy on (M, N): {star.verdict}")
    if star.verdict == "FAIL":
        verdict = "FAIL"
        notes.append("INCONSISTENT: certified hypothesis but (*) proxy failed")
    else:
        verdict = "PASS"
        notes.append("conclusion consistent with theorem on this window")
    return VerificationReport(
        "th-local", instance or f"R={r!r}, M={m.name}, N={n_mod.name}",
        ["degree", "dim H(K)"], rows, verdict, (0, n), notes=notes,
        details={"star_rows": star.rows, "star_verdict": star.verdict},
    )


@_timed
def verify_lemma_retract_splitting(alpha: DGAlgebraMorphism, beta: DGAlgebraMorphism,
                                   l, m, instance="") -> VerificationReport:
    """Complex-level splitting along A -a-> B -b-> C:

    (L (x)_A C)^b (x)_B M = (L (x)_A M) (+) (L (x)_A (Coker(b) (x)_B M))
    degreewise in dimensions; when beta(alpha) is a quasi-isomorphism the
    homology columns check the quasi-isomorphism refinement.
    """
    A = alpha.source
    B = beta.source
    C = beta.target
    ba = beta.compose(alpha)
    c_over_a = restrict_scalars(ba, algebra_as_module(C))
    c_over_c = algebra_as_module(C)
    t1 = tensor_over_as_module(A, l, c_over_a, C, c_over_c, name="L(x)C")
    t1_b = restrict_scalars(beta, t1)
    m_b = restrict_scalars(beta, m)
    lhs = tensor_over(B, t1_b, m_b)
    m_over_a = restrict_scalars(ba, m)
    r1 = tensor_over(A, l, m_over_a)
    c_over_b = restrict_scalars(beta, c_over_c)
    image = {d: [c for c in beta.gmap.block(d).columns() if c] for d in B.space.labels}
    coker, _ = quotient_module(c_over_b, image, name="coker")
    if coker.space.total_dim():
        inner = tensor_over_as_module(B, coker, m_b, B, m_b, name="coker(x)M")
        inner_a = restrict_scalars(alpha, inner)
        r2 = tensor_over(A, l, inner_a)
    else:
        from .graded import zero_complex

        r2 = zero_complex(A.field)
    degs = sorted(set(lhs.space.labels) | set(r1.space.labels) | set(r2.space.labels))
    rows = []
    ok = True
    for d in degs:
        lv = lhs.space.dim(d)
        rv = r1.space.dim(d) + r2.space.dim(d)
        rows.append([d, lv, rv])
        if lv != rv:
            ok = False
    notes = []
    hcols = None
    if ba.is_identity() or is_quasi_iso(ba.chain_map()):
        hl = homology_dims(lhs)
        h1 = homology_dims(r1)
        h2 = homology_dims(r2)
        hdegs = sorted(set(hl) | set(h1) | set(h2))
        hcols = []
        for d in hdegs:
            a_ = hl.get(d, 0)
            b_ = h1.get(d, 0) + h2.get(d, 0)
            hcols.append([d, a_, b_])
            if a_ != b_:
                ok = False
        notes.append("homology columns verified (retract quasi-isomorphism case)")
    else:
        notes.append("beta(alpha) not a quasi-isomorphism: homology refinement skipped")
    details = {"homology_rows": hcols} if hcols else {}
    lo = degs[0] if degs else 0
    hi = degs[-1] if degs else 0
    return VerificationReport(
        "retract-split",
        instance or f"A={A.name}, B={B.name}, C={C.name}, L={l.name}, M={m.name}",
        ["degree", "left", "right"],
        rows,
        "PASS" if ok else "FAIL",
        (lo, hi),
        notes=notes,
        details=details,
    )


@_timed
def verify_koszul_transfer(tag: KoszulExtensionTag, m, n_mod, n: int, instance="") -> VerificationReport:
    """Tor transfer along a Koszul extension:
    Tor^{B<X>}(M<X>, N) = Tor^B(M, N) degreewise."""
    B = tag.base
    BX = tag.extension
    vb = is_local(B)
    vbx = is_local(BX)
    if n_mod.algebra != BX:
        raise AxiomError(["second module must live over the Koszul extension"])
    mx = module_koszul_extension(tag, m)
    lhs = tor(BX, mx, n_mod, (0, n), verdict=vbx)
    n_over_b = restrict_scalars(tag.inclusion, n_mod)
    rhs = tor(B, m, n_over_b, (0, n), verdict=vb)
    rows = []
    ok = True
    for i in range(0, n + 1):
        lv, rv = lhs.dim(i), rhs.dim(i)
        rows.append([i, lv, rv])
        if lv != rv:
            ok = False
    return VerificationReport(
        "koszul-transfer",
        instance or f"B={B.name}, B<X>={BX.name}, M={m.name}, N={n_mod.name}",
        ["degree", "Tor^{B<X>}", "Tor^B"],
        rows,
        "PASS" if ok else "FAIL",
        (0, n),
    )


EXPLANATIONS = {
    "thm-tor": (
        "Checks, per degree i on [0, n]: dim Tor_i^B(M^b, N^b) equals\n"
        "dim Tor_i^A(M, N) + sum over p+1+q+r=i of\n"
        "dim Tor_p^A(M, k) * dim H_q(W) * dim Tor_r^B(k, N^b),\n"
        "where B = A |x W. Both sides come from independent resolutions;\n"
        "exact integer equality is required in every clean degree."
    ),
    "ps-product": (
        "Checks the Poincare series product P^B_L = P^B_C * P^C_L\n"
        "coefficientwise up to degree n, for a DG algebra retract\n"
        "B -> C with a section. Coefficients are semibasis counts of\n"
        "verified minimal resolutions; equality is exact."
    ),
    "decomposition": (
        "Checks per degree: 1_{i=0} + dim Tor_i^B(X, k) = dim Tor_i^B(C, k),\n"
        "where X is the cokernel of an injective map B -> C, or the\n"
        "suspended kernel (the mapping-cone replacement) of the split\n"
        "surjection B -> C."
    ),
    "nonvanishing": (
        "Reports all degrees in the window with Tor_i^B(M^b, N^b) != 0 over\n"
        "a trivial extension. The infinite statement is untestable; the\n"
        "finite proxy passes iff the top max(3, window/4) degrees contain a\n"
        "nonzero entry. Hypothesis failures are SKIPPED, not FAIL."
    ),
    "herzog": (
        "Checks P^R_N = P^R_S * P^S_N coefficientwise up to degree n for a\n"
        "ring retract S -> R -> S composing to the identity."
    ),
    "star": (
        "Computes Tor^R(M, N) on [0, n]. 'Bounded' is the explicit proxy:\n"
        "zero on the top max(3, n/4) degrees. If bounded, both modules run\n"
        "through the perfection certifier and at least one must be PERFECT\n"
        "for PASS; unbounded Tor reports NOT-APPLICABLE."
    ),
    "th-local": (
        "Builds the Koszul complex K^R, takes H(K^R) as the stand-in for\n"
        "the Tor algebra of a minimal Cohen presentation, runs the trivial-\n"
        "extension detectors, and on a certificate cross-checks the star\n"
        "proxy; every step and the unverified DG-structure hypothesis are\n"
        "recorded in the report."
    ),
    "retract-split": (
        "Checks the complex-level splitting (L(x)_A C)(x)_B M =\n"
        "(L(x)_A M) (+) (L(x)_A (Coker(beta)(x)_B M)) in graded dimensions,\n"
        "and its homology refinement when beta(alpha) is a\n"
        "quasi-isomorphism."
    ),
    "koszul-transfer": (
        "Checks Tor^{B<X>}(M<X>, N) = Tor^B(M, N) per degree on [0, n],\n"
        "with the two sides computed by independent resolution runs over\n"
        "B<X> and over B."
    ),
}


def explain(theorem_id: str) -> str:
    if theorem_id not in EXPLANATIONS:
        raise AxiomError([f"unknown theorem id {theorem_id!r}; known: {', '.join(THEOREM_IDS)}"])
    return EXPLANATIONS[theorem_id]
