"""Session files: JSON serialization of the domain objects, named
definitions, and command execution.

Sessions are single-file JSON: a field spec, a dictionary of named
definitions (rings, modules, complexes, DG algebras), and a command list.
Construction commands bind new names; definitions are resolved lazily, so
they may reference objects built by earlier commands.  References are
checked for cycles and dangling names.
"""

from __future__ import annotations

import json

from .errors import AxiomError, DgtorError, InputError
from .field import Field, format_field, parse_field
from .dga import DGAlgebra, augmentation, build_products_from_table, is_local
from .dgmod import (
    algebra_as_module,
    residue_module,
    restrict_scalars,
    tor,
    tor_against_k,
)
from .constructions import (
    complex_from_dims,
    koszul_complex,
    trivial_extension,
)
from .detect import auto_AxW_search, certify_kxW, products_vanish
from .dga import homology_algebra
from .graded import ChainComplex, GradedMap, GradedSpace, homology_dims
from .linalg import Matrix
from .rings import ArtinianLocalRing, FiniteModule, as_dg_algebra, finite_module_as_dg, free_finite_module
from . import verify as verify_ops

SCHEMA = "dgtor/1"


# -- object serialization ----------------------------------------------------


def _vec_to_json(space_labels, degree, vec, field):
    out = []
    for i in sorted(vec):
        out.append({"label": space_labels[degree][i], "coeff": field.format(vec[i])})
    return out


def complex_to_json(cx: ChainComplex) -> dict:
    field = cx.field
    basis = []
    for d, ls in cx.space.labels.items():
        for lab in ls:
            basis.append({"label": lab, "degree": d})
    diff = []
    for d in sorted(cx.diff.blocks):
        blk = cx.diff.blocks[d]
        for j in range(blk.ncols):
            col = blk.column(j)
            if col:
                diff.append(
                    [cx.space.label(d, j), _vec_to_json(cx.space.labels, d - 1, col, field)]
                )
    return {"kind": "complex", "basis": basis, "differential": diff}


def complex_from_json(data: dict, field: Field) -> ChainComplex:
    labels = {}
    for ent in data.get("basis", ()):
        labels.setdefault(int(ent["degree"]), []).append(ent["label"])
    sp = GradedSpace(field, labels)
    where = {}
    for d, ls in sp.labels.items():
        for i, lab in enumerate(ls):
            if lab in where:
                raise InputError(f"duplicate basis label {lab!r}")
            where[lab] = (d, i)
    cols = {}
    for lab, img in data.get("differential", ()):
        if lab not in where:
            raise InputError(f"differential on unknown label {lab!r}")
        d, j = where[lab]
        vec = {}
        for t in img:
            tl = t["label"]
            if tl not in where:
                raise InputError(f"differential hits unknown label {tl!r}")
            dd, ii = where[tl]
            if dd != d - 1:
                raise InputError(f"differential of {lab!r} is not of degree -1 at {tl!r}")
            vec[ii] = field.parse(t["coeff"])
        cols.setdefault(d, {})[j] = vec
    blocks = {}
    for d, colmap in cols.items():
        columns = [colmap.get(j, {}) for j in range(sp.dim(d))]
        m = Matrix.from_columns(columns, sp.dim(d - 1), field)
        if not m.is_zero():
            blocks[d] = m
    return ChainComplex(sp, GradedMap(sp, sp, -1, blocks))


def dga_to_json(a: DGAlgebra) -> dict:
    field = a.field
    base = complex_to_json(a.complex)
    products = []
    for ((d1, i1), (d2, i2)), vec in sorted(a.products.items()):
        products.append(
            [
                a.space.label(d1, i1),
                a.space.label(d2, i2),
                _vec_to_json(a.space.labels, d1 + d2, vec, field),
            ]
        )
    return {
        "kind": "dga",
        "basis": base["basis"],
        "unit": _vec_to_json(a.space.labels, 0, a.unit, field),
        "products": products,
        "differential": base["differential"],
    }


def dga_from_json(data: dict, field: Field) -> DGAlgebra:
    cx = complex_from_json({"basis": data["basis"], "differential": data.get("differential", ())}, field)
    where = {}
    for d, ls in cx.space.labels.items():
        for i, lab in enumerate(ls):
            where[lab] = (d, i)
    unit_spec = data.get("unit", "1")
    if isinstance(unit_spec, str):
        if unit_spec not in where or where[unit_spec][0] != 0:
            raise InputError(f"unit label {unit_spec!r} is not a degree-0 basis element")
        unit = {where[unit_spec][1]: field.one()}
    else:
        unit = {}
        for t in unit_spec:
            d, i = where[t["label"]]
            if d != 0:
                raise InputError("unit must live in degree 0")
            unit[i] = field.parse(t["coeff"])
    table = {}
    for left, right, img in data.get("products", ()):
        if left not in where or right not in where:
            raise InputError(f"product on unknown labels ({left!r}, {right!r})")
        k1, k2 = where[left], where[right]
        vec = {}
        for t in img:
            if t["label"] not in where:
                raise InputError(f"product hits unknown label {t['label']!r}")
            dd, ii = where[t["label"]]
            if dd != k1[0] + k2[0]:
                raise InputError(f"product of ({left!r}, {right!r}) has wrong degree at {t['label']!r}")
            vec[ii] = field.parse(t["coeff"])
        table[(k1, k2)] = vec
    products = build_products_from_table(table)
    a = DGAlgebra(cx, unit, products, name=data.get("name", "A"))
    violations = a.validate()
    if violations:
        raise InputError(f"algebra fails validation: {violations[:3]}")
    return a


def ring_to_json(r: ArtinianLocalRing) -> dict:
    from .rings import format_monomial

    return {
        "kind": "ring",
        "vars": list(r.variables),
        "monomials": [format_monomial(g, r.variables) for g in r.ideal_gens],
    }


def ring_from_json(data: dict, field: Field) -> ArtinianLocalRing:
    return ArtinianLocalRing(field, data["vars"], data["monomials"])


def finite_module_to_json(fm: FiniteModule) -> dict:
    field = fm.ring.field
    action = {}
    for v, mtx in fm.matrices.items():
        action[v] = [
            [field.format(mtx.entry(i, j)) for j in range(mtx.ncols)] for i in range(mtx.nrows)
        ]
    return {
        "kind": "module",
        "ring": None,  # filled by the session writer with the ring's name
        "basis": list(fm.basis_labels),
        "action": action,
    }


def finite_module_from_json(data: dict, ring: ArtinianLocalRing, field: Field, name="M") -> FiniteModule:
    basis = data["basis"]
    n = len(basis)
    mats = {}
    for v in ring.variables:
        rows = data["action"].get(v)
        if rows is None:
            raise InputError(f"module action missing variable {v!r}")
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"action matrix for {v!r} is not {n}x{n}")
        mats[v] = Matrix.from_rows([[field.parse(x) for x in row] for row in rows], field)
    try:
        return FiniteModule(ring, basis, mats, name=name)
    except AxiomError as e:
        raise InputError(f"module fails validation: {e}") from None


# -- session environment -------------------------------------------------------


class SessionEnv:
    """Lazily resolved named objects with cycle detection."""

    def __init__(self, field: Field, definitions: dict):
        self.field = field
        self.definitions = definitions or {}
        self.values = {}
        self._resolving = []

    def bind(self, name, kind, value, extra=None):
        self.values[name] = (kind, value, extra)

    def resolve(self, name, want=None):
        if name in self.values:
            kind, value, extra = self.values[name]
        else:
            if name not in self.definitions:
                raise InputError(f"reference to undefined name {name!r}")
            if name in self._resolving:
                chain = " -> ".join(self._resolving + [name])
                raise InputError(f"cyclic definitions: {chain}")
            self._resolving.append(name)
            try:
                kind, value, extra = self._build(name, self.definitions[name])
            finally:
                self._resolving.pop()
            self.values[name] = (kind, value, extra)
        if want and kind != want:
            converted = self._convert(kind, value, extra, want)
            if converted is None:
                raise InputError(f"{name!r} is a {kind}, expected {want}")
            return converted
        return (kind, value, extra) if want is None else value

    def _convert(self, kind, value, extra, want):
        if want == "algebra" and kind == "ring":
            return extra["dga"]
        if want == "module" and kind == "algebra":
            return algebra_as_module(value)
        return None

    def _build(self, name, spec):
        if not isinstance(spec, dict) or "kind" not in spec:
            raise InputError(f"definition {name!r} must be an object with a 'kind'")
        kind = spec["kind"]
        if kind == "ring":
            ring = ring_from_json(spec, self.field)
            rdga = as_dg_algebra(ring, name=name)
            return "ring", ring, {"dga": rdga}
        if kind == "complex":
            return "complex", complex_from_json(spec, self.field), None
        if kind == "dga":
            a = dga_from_json(spec, self.field)
            a.name = name
            return "algebra", a, {}
        if kind == "module":
            rkind, ring, extra = self.resolve(spec["ring"])
            if rkind != "ring":
                raise InputError(f"module {name!r}: {spec['ring']!r} is not a ring")
            fm = finite_module_from_json(spec, ring, self.field, name=name)
            dg = finite_module_as_dg(extra["dga"], fm)
            return "module", dg, {"finite": fm}
        if kind == "residue-field":
            alg = self.resolve(spec["over"], want="algebra")
            return "module", residue_module(alg, label=name), None
        if kind == "free":
            alg = self.resolve(spec["over"], want="algebra")
            mod = algebra_as_module(alg)
            mod.name = name
            return "module", mod, None
        raise InputError(f"unknown definition kind {kind!r} for {name!r}")

    def algebra(self, name):
        return self.resolve(name, want="algebra")

    def module_over(self, name, alg: DGAlgebra):
        mod = self.resolve(name, want="module")
        if mod.algebra != alg:
            raise InputError(
                f"module {name!r} lives over {mod.algebra.name!r}, expected {alg.name!r}"
            )
        return mod

    def tag_of(self, name, cls):
        kind, value, extra = self.resolve(name)
        if kind != "algebra" or not extra or not isinstance(extra.get("tag"), cls):
            raise InputError(f"{name!r} does not carry the required construction tag")
        return value, extra["tag"]


# -- command execution ----------------------------------------------------------


class CommandOutcome:
    __slots__ = ("index", "op", "payload", "verdict")

    def __init__(self, index, op, payload, verdict=None):
        self.index = index
        self.op = op
        self.payload = payload
        self.verdict = verdict


def run_session(doc: dict, field: Field = None, seed=0, threads=1, max_degree=None):
    """Execute a parsed session document; returns list of CommandOutcome."""
    if not isinstance(doc, dict):
        raise InputError("session must be a JSON object")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise InputError(f"unsupported schema {schema!r}, expected {SCHEMA!r}")
    if field is None:
        field = parse_field(doc.get("field", "fp:101"))
    env = SessionEnv(field, doc.get("definitions", {}))
    commands = doc.get("commands", [])
    if not isinstance(commands, list):
        raise InputError("'commands' must be a list")
    # binding commands run sequentially first; pure commands may be threaded
    plans = []
    for idx, cmd in enumerate(commands):
        if not isinstance(cmd, dict) or "op" not in cmd:
            raise InputError(f"command #{idx} must be an object with an 'op'")
        op = cmd["op"]
        if op in ("koszul", "trivext"):
            _run_binding(env, idx, cmd, field)
            plans.append((idx, cmd, True))
        else:
            plans.append((idx, cmd, False))
    outcomes = {}
    for idx, cmd, bound in plans:
        if bound:
            outcomes[idx] = CommandOutcome(idx, cmd["op"], {"bound": cmd.get("as")},
                                           verdict="OK")
    pure = [(idx, cmd) for idx, cmd, bound in plans if not bound]
    if threads > 1 and len(pure) > 1:
        import concurrent.futures

        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            futs = {pool.submit(_run_pure, env, idx, cmd, seed, max_degree): idx for idx, cmd in pure}
            for fut in concurrent.futures.as_completed(futs):
                out = fut.result()
                outcomes[out.index] = out
    else:
        for idx, cmd in pure:
            out = _run_pure(env, idx, cmd, seed, max_degree)
            outcomes[out.index] = out
    return [outcomes[i] for i in sorted(outcomes)]


def _run_binding(env: SessionEnv, idx, cmd, field):
    op = cmd["op"]
    name = cmd.get("as")
    if not name:
        raise InputError(f"command #{idx} ({op}) needs an 'as' name")
    if name in env.values or name in env.definitions:
        raise InputError(f"command #{idx}: name {name!r} already defined")
    if op == "koszul":
        kind, ring, extra = env.resolve(cmd["ring"])
        if kind != "ring":
            raise InputError(f"command #{idx}: {cmd['ring']!r} is not a ring")
        K, tag = koszul_complex(ring, extra["dga"], name=name)
        env.bind(name, "algebra", K, {"tag": tag})
    elif op == "trivext":
        a = env.algebra(cmd["algebra"])
        kind, w, _ = env.resolve(cmd["w"])
        if kind != "complex":
            raise InputError(f"command #{idx}: {cmd['w']!r} is not a complex")
        B, tag = trivial_extension(a, augmentation(a), w, name=name)
        env.bind(name, "algebra", B, {"tag": tag})


def _window(cmd, max_degree, default_hi=10):
    if "window" in cmd:
        w = cmd["window"]
        return int(w[0]), int(w[1])
    hi = int(cmd.get("degree", max_degree if max_degree is not None else default_hi))
    return 0, hi


def _run_pure(env: SessionEnv, idx, cmd, seed, max_degree):
    op = cmd["op"]
    if op == "homology":
        kind, value, extra = env.resolve(cmd["of"])
        if kind == "algebra":
            cx = value.complex
        elif kind == "complex":
            cx = value
        elif kind == "module":
            cx = value.complex
        else:
            raise InputError(f"command #{idx}: cannot take homology of a {kind}")
        window = None
        if "window" in cmd:
            window = (int(cmd["window"][0]), int(cmd["window"][1]))
        dims = homology_dims(cx, window)
        payload = {"of": cmd["of"], "dims": {str(d): v for d, v in sorted(dims.items())}}
        return CommandOutcome(idx, op, payload, verdict="OK")
    if op == "detect":
        target = env.algebra(cmd["target"])
        mode = cmd.get("mode", "kxw")
        if mode == "kxw":
            cert = certify_kxW(target, max_iters=int(cmd.get("max_iters", 8)),
                               restarts=int(cmd.get("restarts", 0)))
        elif mode == "axw-auto":
            halg = homology_algebra(target)
            cert = auto_AxW_search(halg.as_dga())
        elif mode == "products":
            halg = homology_algebra(target)
            ok, witness = products_vanish(halg)
            payload = {"target": cmd["target"], "mode": mode, "vanish": ok}
            return CommandOutcome(idx, op, payload, verdict="OK" if ok else "NONZERO-PRODUCT")
        else:
            raise InputError(f"command #{idx}: unknown detect mode {mode!r}")
        payload = {
            "target": cmd["target"],
            "mode": mode,
            "verdict": cert.verdict,
            "note": cert.note,
        }
        if cert.certified and cert.kind == "kxw":
            payload["w_dims"] = {str(d): v for d, v in sorted(cert.witness["w_dims"].items())}
        return CommandOutcome(idx, op, payload, verdict=cert.verdict)
    if op == "poincare":
        alg = env.algebra(cmd["algebra"])
        mod = env.module_over(cmd["module"], alg)
        hi = int(cmd.get("degree", max_degree if max_degree is not None else 10))
        ser = tor_against_k(alg, mod, hi)
        payload = {
            "algebra": cmd["algebra"],
            "module": cmd["module"],
            "coefficients": ser.as_list(0, hi),
        }
        return CommandOutcome(idx, op, payload, verdict="OK")
    if op == "tor":
        alg = env.algebra(cmd["algebra"])
        l = env.module_over(cmd["left"], alg)
        m = env.module_over(cmd["right"], alg)
        lo, hi = _window(cmd, max_degree)
        table = tor(alg, l, m, (lo, hi))
        payload = {
            "algebra": cmd["algebra"],
            "left": cmd["left"],
            "right": cmd["right"],
            "window": [lo, hi],
            "dims": table.as_list(lo, hi),
        }
        return CommandOutcome(idx, op, payload, verdict="OK")
    if op == "verify":
        report = _run_verify(env, idx, cmd, max_degree)
        return CommandOutcome(idx, op, report.to_json_dict(), verdict=report.verdict)
    raise InputError(f"command #{idx}: unknown op {op!r}")


def _run_verify(env: SessionEnv, idx, cmd, max_degree):
    from .constructions import KoszulExtensionTag, TrivialExtensionTag

    vid = cmd.get("id")
    lo, hi = _window(cmd, max_degree)
    if vid == "thm-tor":
        a = env.algebra(cmd["algebra"])
        kind, w, _ = env.resolve(cmd["w"])
        if kind != "complex":
            raise InputError(f"command #{idx}: {cmd['w']!r} is not a complex")
        m = env.module_over(cmd["m"], a)
        n_mod = env.module_over(cmd["n"], a)
        return verify_ops.verify_thm_tor(a, w, m, n_mod, hi)
    if vid == "ps-product":
        _, tag = env.tag_of(cmd["extension"], TrivialExtensionTag)
        l = env.module_over(cmd["l"], tag.base)
        return verify_ops.verify_poincare_product(tag, l, hi)
    if vid == "decomposition":
        _, tag = env.tag_of(cmd["extension"], TrivialExtensionTag)
        return verify_ops.verify_decomposition(tag.beta, hi)
    if vid == "nonvanishing":
        _, tag = env.tag_of(cmd["extension"], TrivialExtensionTag)
        m = env.module_over(cmd["m"], tag.base)
        n_mod = env.module_over(cmd["n"], tag.base)
        return verify_ops.nonvanishing_window(tag, m, n_mod, (lo, hi))
    if vid == "herzog":
        skind, s_ring, s_extra = env.resolve(cmd["s"])
        rkind, r_ring, r_extra = env.resolve(cmd["r"])
        if skind != "ring" or rkind != "ring":
            raise InputError(f"command #{idx}: herzog needs ring names")
        from .rings import ring_hom

        alpha = ring_hom(s_ring, r_ring, cmd["alpha"], s_extra["dga"], r_extra["dga"])
        beta = ring_hom(r_ring, s_ring, cmd["beta"], r_extra["dga"], s_extra["dga"])
        n_mod = env.module_over(cmd["n"], s_extra["dga"])
        return verify_ops.verify_herzog(s_ring, r_ring, alpha, beta, n_mod, hi)
    if vid == "star":
        kind, ring, extra = env.resolve(cmd["ring"])
        if kind != "ring":
            raise InputError(f"command #{idx}: {cmd['ring']!r} is not a ring")
        rdga = extra["dga"]
        m = env.module_over(cmd["m"], rdga)
        n_mod = env.module_over(cmd["n"], rdga)
        return verify_ops.star_property_check(rdga, m, n_mod, hi)
    if vid == "th-local":
        kind, ring, extra = env.resolve(cmd["ring"])
        if kind != "ring":
            raise InputError(f"command #{idx}: {cmd['ring']!r} is not a ring")
        rdga = extra["dga"]
        m = env.module_over(cmd["m"], rdga)
        n_mod = env.module_over(cmd["n"], rdga)
        return verify_ops.th_local_pipeline(ring, m, n_mod, hi)
    if vid == "retract-split":
        _, tag = env.tag_of(cmd["extension"], TrivialExtensionTag)
        l = env.module_over(cmd["l"], tag.base)
        m = env.module_over(cmd["m"], tag.base)
        mb = restrict_scalars(tag.beta, m)
        # the lemma wants a C-module; over the split retract C = base
        return verify_ops.verify_lemma_retract_splitting(tag.alpha, tag.beta, l, m)
    if vid == "koszul-transfer":
        _, tag = env.tag_of(cmd["extension"], KoszulExtensionTag)
        m = env.module_over(cmd["m"], tag.base)
        n_mod = env.module_over(cmd["n"], tag.extension)
        return verify_ops.verify_koszul_transfer(tag, m, n_mod, hi)
    raise InputError(f"command #{idx}: unknown verify id {vid!r}")


def outcomes_to_json(outcomes, field) -> dict:
    results = []
    for out in outcomes:
        entry = {"command": out.index, "op": out.op}
        if out.verdict is not None:
            entry["verdict"] = out.verdict
        entry.update(out.payload)
        results.append(entry)
    return {"schema": SCHEMA, "field": format_field(field), "results": results}


def outcomes_to_text(outcomes) -> str:
    lines = []
    for out in outcomes:
        head = f"#{out.index} {out.op}"
        if out.verdict:
            head += f": {out.verdict}"
        lines.append(head)
        for key, val in out.payload.items():
            if key in ("rows",):
                for row in val:
                    lines.append("    " + "  ".join(str(v) for v in row))
            else:
                lines.append(f"  {key}: {val}")
    return "\n".join(lines)
