"""JSON encodings of pipeline artifacts, and re-verification from exported files.

Scalars use the CycloNum encoding {"coeffs": [...]} (canonical rational strings in the
power basis of Q(zeta_4p)); algebra elements use AlgElem.to_json; matrices are lists of
rows of scalars.
"""

from __future__ import annotations

import json
from pathlib import Path

from .cyclo import CycloNum, to_complex
from .hopf import AlgElem, LinForm, TensorElem, dual_convolve, left_right_shift, right_shift, uq
from .integrals import NORMALIZATION_PIN, is_left_integral, is_symmetric_full
from .linalg import identity, mat_eq, mat_mul, mat_scale
from .mcg import Check
from .slf import coords_in_or_none

EXPORTS = ("st-matrices", "gta-basis", "ribbon", "integrals", "modules")


def enc_matrix(m) -> list:
    return [[x.to_json() for x in row] for row in m]


def dec_matrix(ctx, m) -> list:
    return [[ctx.from_json(x) for x in row] for row in m]


def enc_complex(m) -> list:
    out = []
    for row in m:
        out.append([[round(z.real, 15) + 0.0, round(z.imag, 15) + 0.0] for z in map(to_complex, row)])
    return out


def enc_tensor(t: TensorElem) -> list:
    alg = t.alg
    return [{"legs": [list(alg.unkey(k)) for k in keys], "coeff": t.terms[keys].to_json()}
            for keys in sorted(t.terms)]


def provenance(data) -> dict:
    pin = data.space.pin
    return {
        "integral_normalization": NORMALIZATION_PIN,
        "gta_pinning_route": pin["route"],
        "gta_pinning_shift": {"a": pin["a"].to_json(), "b": pin["b"].to_json()},
        "simple_module_lift": "K^(1/2) v_j = eps^(1/2) q^((s-1-2j)/2) v_j, eps^(1/2) in {1, i}",
        "projective_lift": "lift sign +1 on the top; x/y lines carry the extra q^(p/2) factor",
    }


# ----------------------------------------------------------------------------
# exports


def export_st_matrices(data, rep, dec) -> dict:
    return {
        "p": rep.p,
        "labels": list(rep.labels),
        "rho_a": enc_matrix(rep.rho_a),
        "rho_b": enc_matrix(rep.rho_b),
        "rho_a_complex": enc_complex(rep.rho_a),
        "rho_b_complex": enc_complex(rep.rho_b),
        "scalar_braid": rep.scalar_braid.to_json() if rep.scalar_braid is not None else None,
        "scalar_cube": rep.scalar_cube.to_json() if rep.scalar_cube is not None else None,
        "ratio": rep.ratio.to_json(),
        "W": {"tau_a": enc_matrix(dec.W_a), "tau_b": enc_matrix(dec.W_b)},
        "V": {"tau_a": enc_matrix(dec.rho_V_a), "tau_b": enc_matrix(dec.rho_V_b)},
        "intertwiner": enc_matrix(dec.intertwiner),
    }


def export_gta_basis(data) -> dict:
    sp = data.space
    return {
        "p": data.alg.p,
        "labels": list(sp.labels),
        "forms": [f.to_json() for f in sp.gta],
        "change_of_basis": enc_matrix(sp.change_of_basis()),
        "xi": sp.xi.to_json(),
    }


def export_ribbon(data) -> dict:
    rd = data.ribbon
    return {
        "p": data.alg.p,
        "u": rd.u.to_json(),
        "v": rd.v.to_json(),
        "v_inverse": rd.v_inverse.to_json(),
        "g": rd.g.to_json(),
        "RR'": enc_tensor(rd.RRp),
    }


def export_integrals(data) -> dict:
    integ = data.integrals
    return {
        "p": data.alg.p,
        "mu_l": integ.mu_l.to_json(),
        "mu_r": integ.mu_r.to_json(),
        "c": integ.cointegral.to_json(),
        "ratio": integ.ratio.to_json(),
        "normalization": integ.normalization_pin,
    }


def export_modules(data) -> dict:
    from .repns import simple_modules

    mods = simple_modules(data.alg)
    return {
        "p": data.alg.p,
        "simple": {m.name(): m.to_json() for _, m in sorted(mods.items())},
        "projective": {m.name(): m.to_json() for _, m in sorted(data.pims.items())},
        "dimensions": {m.name(): m.dim for m in list(mods.values()) + list(data.pims.values())},
    }


def export(what: str, p: int) -> dict:
    from .mcg import build_rep, decompose
    from .slf import build_slf

    data = build_slf(p)
    if what == "st-matrices":
        rep = build_rep(data)
        dec, _ = decompose(rep, data)
        return export_st_matrices(data, rep, dec)
    return {"gta-basis": export_gta_basis, "ribbon": export_ribbon, "integrals": export_integrals,
            "modules": export_modules}[what](data)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=True) + "\n"


# ----------------------------------------------------------------------------
# text rendering


def render_text(what: str, obj: dict, p: int) -> str:
    alg = uq(p)
    ctx = alg.ctx
    lines = [f"# {what} p={p}"]

    def elem(o):
        return str(AlgElem.from_json(alg, o))

    def mat(m):
        return ["  [" + ", ".join(str(ctx.from_json(x)) for x in row) + "]" for row in m]

    for key in sorted(obj):
        val = obj[key]
        if key in ("u", "v", "v_inverse", "g", "c"):
            lines.append(f"{key} = {elem(val)}")
        elif key in ("ratio", "xi", "scalar_braid", "scalar_cube") and val is not None:
            lines.append(f"{key} = {ctx.from_json(val)}")
        elif key in ("rho_a", "rho_b", "change_of_basis", "intertwiner"):
            lines.append(f"{key} =")
            lines.extend(mat(val))
        elif key in ("W", "V"):
            for sub in sorted(val):
                lines.append(f"{key}.{sub} =")
                lines.extend(mat(val[sub]))
        elif key in ("labels", "normalization", "dimensions"):
            lines.append(f"{key} = {val}")
        elif key in ("mu_l", "mu_r"):
            form = LinForm.from_json(alg, val)
            support = [(alg.sub_keys[i] if not form.ext else i, c) for i, c in enumerate(form.values) if c]
            from .hopf import monomial_str

            lines.append(f"{key} = " + " + ".join(f"({c})*delta[{monomial_str(alg, k)}]" for k, c in support))
        elif key == "forms":
            lines.append(f"forms: {len(val)} linear forms on a basis of dimension {len(val[0]['values'])}")
        elif key in ("simple", "projective"):
            lines.append(f"{key}: " + ", ".join(sorted(val)))
        elif key == "RR'":
            lines.append(f"RR': {len(val)} terms")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# import and re-verify


def load_artifacts(directory) -> dict:
    d = Path(directory)
    out = {}
    for what in EXPORTS:
        path = d / f"{what}.json"
        if path.exists():
            out[what] = json.loads(path.read_text())
    manifest = d / "manifest.json"
    if manifest.exists():
        out["manifest"] = json.loads(manifest.read_text())
    return out


def reverify(art: dict) -> list[Check]:
    """Checks that use only the exported data and the algebra's structure constants."""
    st, gb, rib, integ = art["st-matrices"], art["gta-basis"], art["ribbon"], art["integrals"]
    p = st["p"]
    alg = uq(p)
    ctx = alg.ctx
    ra, rb = dec_matrix(ctx, st["rho_a"]), dec_matrix(ctx, st["rho_b"])
    ratio = ctx.from_json(st["ratio"])
    n = len(ra)
    forms = [LinForm.from_json(alg, f) for f in gb["forms"]]
    v = AlgElem.from_json(alg, rib["v"])
    v_inv = AlgElem.from_json(alg, rib["v_inverse"])
    g = AlgElem.from_json(alg, rib["g"])
    mu_l = LinForm.from_json(alg, integ["mu_l"])
    out = []
    aba = mat_mul(mat_mul(ra, rb, ctx), ra, ctx)
    bab = mat_mul(mat_mul(rb, ra, ctx), rb, ctx)
    out.append(Check("braid", mat_eq(aba, bab)))
    ab = mat_mul(ra, rb, ctx)
    cube = mat_mul(mat_mul(ab, ab, ctx), ab, ctx)
    out.append(Check("cube", mat_eq(cube, mat_scale(identity(n, ctx), ratio))))
    out.append(Check("forms symmetric", all(is_symmetric_full(f) for f in forms)))
    out.append(Check("v central", all(v * x == x * v for x in (alg.E, alg.F, alg.K))))
    out.append(Check("v v^-1 = 1", v * v_inv == alg.one()))
    out.append(Check("mu_l left integral", is_left_integral(mu_l)))
    out.append(Check("ratio", ratio == mu_l(v_inv) / mu_l(v)))
    phi_vinv = left_right_shift(mu_l, a=g.inverse() * v).scale(mu_l(v).inv())
    bad = None
    for j, f in enumerate(forms):
        ca = coords_in_or_none(forms, right_shift(f, v_inv))
        cb = coords_in_or_none(forms, right_shift(dual_convolve(phi_vinv, right_shift(f, v)), v_inv))
        if ca != [ra[i][j] for i in range(n)] or cb != [rb[i][j] for i in range(n)]:
            bad = gb["labels"][j]
            break
    out.append(Check("matrices agree with forms", bad is None, bad))
    return out


def scalar_json(x):
    """JSON-able rendering of check values and witnesses."""
    if isinstance(x, CycloNum):
        return x.to_json()
    if isinstance(x, AlgElem):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): scalar_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [scalar_json(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)
