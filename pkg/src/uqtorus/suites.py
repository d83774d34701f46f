"""Named verification suites.

Each suite is a function p -> list[Check].  Check ids are unique inside a suite; the
CLI prefixes them with the suite name.  A check whose id is listed in PROBE_IDS (or
that comes from the conjecture suite) is reported with status "probe" and never fails
a run; SKIP_IDS are reported as "skipped".
"""

from __future__ import annotations

import random

from .cyclo import complex_embed, euler_phi, field_context
from .hopf import TensorElem, uq
from .integrals import (NORMALIZATION_PIN, integral_space, is_left_integral, is_right_integral,
                        is_symmetric_full, is_two_sided_cointegral, pin_element, symmetry_s2_holds,
                        unibalanced_witness)
from .mcg import (Check, build_rep, conjecture_probe, decompose, exchange_relation, fusion_A, fusion_B,
                  heis_generators, invariance_checks, lm_operators, reflection_A, structure_checks,
                  verify_closed_forms, verify_equivalence, verify_relations)
from .quasi import (build_ribbon, drinfeld_u_inverse, hexagons_factored, presentation_relations, psi01_matrix,
                    ribbon_coproduct_check, theta_coproduct_identities, ybe_factored)
from .repns import build_pims, casimir, casimir_value, loewy_check, simple_module, simple_modules, tensor_module
from .slf import build_slf, ribbon_decomposition_residual, ribbon_scalar

SUITES = ("field", "hopf", "ribbon", "integrals", "modules", "slf", "mcg", "conjecture")

# the printed closed form of xi is off by a p-dependent factor (see README); reported, not gating
PROBE_IDS = {"mcg/xi printed closed form"}


def _gens(alg):
    return {"E": alg.E, "F": alg.F, "K": alg.K, "Khalf": alg.Khalf}


def _sample_keys(alg, n, seed=0):
    keys = list(alg.sub_keys)
    if len(keys) <= n:
        return keys
    return random.Random(seed).sample(keys, n)


# ----------------------------------------------------------------------------


def field_suite(p: int) -> list[Check]:
    ctx = field_context(p)
    z = ctx.zeta_pow(1)
    q, i = ctx.q, ctx.i
    out = [
        Check("degree", ctx.degree == euler_phi(4 * p), values={"degree": ctx.degree}),
        Check("zeta^2p = -1", z ** (2 * p) == -ctx.one),
        Check("q^p = -1", q ** p == -ctx.one),
        Check("i^2 = -1", i * i == -ctx.one),
        Check("[p] = 0", ctx.qint(p).is_zero()),
        Check("[p-1]! != 0", not ctx.qfact(p - 1).is_zero()),
        Check("qhat = q - q^-1", ctx.qhat == q - q.inv()),
    ]
    x = sum((ctx.zeta_pow(k) * (k + 1) for k in range(0, 2 * p, 3)), ctx.zero) + ctx.one
    out.append(Check("inverse", x * x.inv() == ctx.one))
    from flint import acb, arb
    from flint import ctx as flint_ctx

    qhat_c = complex_embed(ctx.qhat, 128)
    old = flint_ctx.prec
    flint_ctx.prec = 160
    try:
        expected = acb(0, 2) * (arb.pi() / p).sin()
        close = bool(abs(qhat_c - expected) < arb(2) ** -120)
    finally:
        flint_ctx.prec = old
    out.append(Check("qhat = 2i sin(pi/p) in the embedding", close, values={"qhat": qhat_c.str(20)}))
    return out


def hopf_suite(p: int) -> list[Check]:
    alg = uq(p)
    ctx = alg.ctx
    E, F, K, Ki = alg.E, alg.F, alg.K, alg.Kinv
    q = ctx.q
    one = alg.one()
    out = [
        Check("dim", len(alg.sub_keys) == 2 * p ** 3, values={"dim": len(alg.sub_keys)}),
        Check("KEK^-1 = q^2 E", K * E * Ki == E * q ** 2),
        Check("KFK^-1 = q^-2 F", K * F * Ki == F * q.inv() ** 2),
        Check("[E,F]", E * F - F * E == (K - Ki) * (q - q.inv()).inv()),
        Check("E^p = 0", (E ** p).is_zero()),
        Check("F^p = 0", (F ** p).is_zero()),
        Check("K^2p = 1", K ** (2 * p) == one),
    ]
    gens = _gens(alg)
    hom = all((x * y).coproduct() == x.coproduct() * y.coproduct() for x in gens.values() for y in gens.values())
    out.append(Check("Delta multiplicative", hom))
    coass = all(x.coproduct().apply_coproduct(0) == x.coproduct().apply_coproduct(1) for x in gens.values())
    out.append(Check("coassociative", coass))
    anti = all((x * y).antipode() == y.antipode() * x.antipode() for x in gens.values() for y in gens.values())
    out.append(Check("S antimultiplicative", anti))
    bad = None
    for k in _sample_keys(alg, 64):
        x = alg.monomial(*alg.unkey(k))
        d = x.coproduct()
        left = d.apply_map(0, alg.antipode_mono).multiply_legs()
        right = d.apply_map(1, alg.antipode_mono).multiply_legs()
        if left != one * x.counit() or right != one * x.counit():
            bad = alg.unkey(k)
            break
    out.append(Check("antipode axiom", bad is None, bad))
    inv_ok = all(x.antipode().antipode_inv() == x for x in gens.values())
    out.append(Check("S^-1 S = id", inv_ok))
    return out


def ribbon_suite(p: int) -> list[Check]:
    alg = uq(p)
    ctx = alg.ctx
    rd = build_ribbon(alg)
    R, u, v, g = rd.R, rd.u, rd.v, rd.g
    lhs, rhs = ybe_factored(alg)
    out = [Check("Yang-Baxter", lhs == rhs)]
    (a1, b1), (a2, b2) = hexagons_factored(alg)
    t1, t2 = theta_coproduct_identities(alg)
    out.append(Check("hexagon (Delta(x)id)R", a1 == b1 and t1))
    out.append(Check("hexagon (id(x)Delta)R", a2 == b2 and t2))
    out.append(Check("(S(x)S)R = R", R.apply_map(0, alg.antipode_mono).apply_map(1, alg.antipode_mono) == R))
    gens = _gens(alg)
    out.append(Check("u S^2-conjugation", all(u * x == x.antipode().antipode() * u for x in gens.values())))
    out.append(Check("u^-1 = S^-2(b_i) a_i", u * drinfeld_u_inverse(R) == alg.one()))
    out.append(Check("v central", all(v * x == x * v for x in gens.values())))
    out.append(Check("v in Uq", v.in_subalgebra()))
    out.append(Check("v^2 = u S(u)", v * v == u * u.antipode()))
    out.append(Check("S(v) = v", v.antipode() == v))
    out.append(Check("Delta(v) = (R'R)^-1 v(x)v", ribbon_coproduct_check(alg, v)))
    out.append(Check("g = K^(p+1) pivotal",
                     g.coproduct() == TensorElem.pure(g, g)
                     and all(g * x * rd.g_inverse == x.antipode().antipode() for x in gens.values())
                     and g == u * v.inverse()))
    bad = None
    for eps in "+-":
        for s in range(1, p + 1):
            from .repns import scalar_of

            c = scalar_of(simple_module(alg, eps, s).act(v), ctx)
            if c != ribbon_scalar(ctx, eps, s):
                bad = (eps, s)
    out.append(Check("v eigenvalues", bad is None, bad))
    rank = rd.drinfeld_rank()
    out.append(Check("Drinfeld map rank", rank == 2 * p ** 3, values={"rank": rank}))
    out.extend(convention_gate(p))
    return out


def displayed_psi01(alg):
    """[[K + q^-1 qhat^2 FE, q^-1 qhat F], [qhat K^-1 E, K^-1]]."""
    ctx = alg.ctx
    qi, qh = ctx.q.inv(), ctx.qhat
    E, F, K, Ki = alg.E, alg.F, alg.K, alg.Kinv
    return [[K + F * E * (qi * qh * qh), F * (qi * qh)], [Ki * E * qh, Ki]]


def convention_gate(p: int) -> list[Check]:
    alg = uq(p)
    M = psi01_matrix(simple_module(alg, "+", 2))
    target = displayed_psi01(alg)
    out = [Check("Psi01(M) on X+(2) = displayed matrix", all(M[i][j] == target[i][j] for i in range(2) for j in range(2)))]
    rels = presentation_relations(M, alg)
    out.append(Check("L01 presentation relations", all(rels.values()),
                     next((k for k, ok in rels.items() if not ok), None)))
    return out


def integrals_suite(p: int) -> list[Check]:
    alg = uq(p)
    data = build_slf(alg).integrals
    rd = build_ribbon(alg)
    rng = random.Random(1)
    pairs = [(alg.random_elem(rng), alg.random_elem(rng)) for _ in range(4)]
    return [
        Check("left integral unique", len(integral_space(alg)) == 1),
        Check("mu_l left integral", is_left_integral(data.mu_l)),
        Check("mu_r right integral", is_right_integral(data.mu_r)),
        Check("normalization pin", data.mu_l(pin_element(alg)) == alg.ctx.one, values={"pin": NORMALIZATION_PIN}),
        Check("two-sided cointegral", is_two_sided_cointegral(data.cointegral)),
        Check("unibalanced", unibalanced_witness(data, rd) is None, unibalanced_witness(data, rd)),
        Check("mu_l(xy) = mu_l(y S^2(x))", all(symmetry_s2_holds(data.mu_l, x, y) for x, y in pairs)),
        Check("ratio", data.ratio == data.mu_l(rd.v_inverse) / data.mu_l(rd.v),
              values={"mu_l(v^-1)/mu_l(v)": data.ratio}),
    ]


def modules_suite(p: int) -> list[Check]:
    alg = uq(p)
    ctx = alg.ctx
    out = []
    C = casimir(alg)
    from .repns import scalar_of

    for (eps, s), X in sorted(simple_modules(alg).items()):
        ok = X.relations_hold() and X.dim == s and scalar_of(X.act(C), ctx) == casimir_value(ctx, eps, s)
        out.append(Check(f"simple {X.name()}", ok, values={"dim": X.dim}))
    for (eps, s), P in sorted(build_pims(alg).items()):
        out.append(Check(f"projective {P.name()}", P.relations_hold() and P.dim == 2 * p and loewy_check(P),
                         values={"dim": P.dim}))
    return out


def slf_suite(p: int) -> list[Check]:
    data = build_slf(p)
    ctx = data.alg.ctx
    sp, center = data.space, data.center
    n = 3 * p - 1
    out = [
        Check("dim SLF", sp.dim == n, values={"dim": sp.dim}),
        Check("dim Z", len(center.canonical_basis()) == n, values={"dim": len(center.canonical_basis())}),
        Check("GTA forms symmetric", all(is_symmetric_full(f) for f in sp.gta)),
    ]
    from .linalg import KMatrix

    cob = sp.change_of_basis()
    out.append(Check("GTA basis independent", KMatrix.from_rows(ctx, cob).rank() == n))
    idem = list(center.idempotents.values())
    one = data.alg.one()
    ok = sum(idem, data.alg.elem()) == one and all(
        (a * b == a if i == j else (a * b).is_zero()) for i, a in enumerate(idem) for j, b in enumerate(idem))
    out.append(Check("central idempotents", ok, values={"count": len(idem)}))
    out.append(Check("v from block decomposition", ribbon_decomposition_residual(center, data.ribbon).is_zero()))
    out.append(Check("xi nonzero", not sp.xi.is_zero(), values={"xi": sp.xi}))
    return out


def mcg_suite(p: int, operator_level: int = 3, lm_max: int = 5) -> list[Check]:
    data = build_slf(p)
    rep = build_rep(data)
    out = list(verify_relations(rep, data, operator_level=p <= operator_level))
    out.extend(verify_closed_forms(rep, data))
    _, dchecks = decompose(rep, data)
    out.extend(dchecks)
    if p <= lm_max:
        out.extend(verify_equivalence(lm_operators(data), rep, data))
    if p <= operator_level:
        alg = data.alg
        X2 = simple_module(alg, "+", 2)
        X1m = simple_module(alg, "-", 1)
        out.append(fusion_A(X2, X2))
        out.append(reflection_A(X2, X2))
        g2, g1m = heis_generators(X2), heis_generators(X1m)
        out.append(exchange_relation(g2, g2))
        out.append(fusion_B(g2, g1m, heis_generators(tensor_module(X2, X1m))))
        out.extend(invariance_checks(data))
        out.extend(structure_checks(data))
    return out


def conjecture_suite(p: int) -> list[Check]:
    return conjecture_probe(build_slf(p))


RUNNERS = {
    "field": field_suite,
    "hopf": hopf_suite,
    "ribbon": ribbon_suite,
    "integrals": integrals_suite,
    "modules": modules_suite,
    "slf": slf_suite,
    "mcg": mcg_suite,
    "conjecture": conjecture_suite,
}


def status_of(suite: str, check: Check) -> str:
    cid = f"{suite}/{check.check_id}"
    if suite == "conjecture" or cid in PROBE_IDS:
        return "probe"
    if check.values.get("note", "").startswith("pinning case"):
        return "skipped"
    return "pass" if check.ok else "fail"
