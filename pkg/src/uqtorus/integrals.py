"""Integrals, cointegral and the forms phi_v, phi_{v^{-1}}.

The left integral is found as the kernel of the linear system
(id (x) mu)Delta(x) = mu(x) 1 over all PBW monomials x; it is one-dimensional.
It is supported on E^{p-1} F^{p-1} K^{p-1} and scaled so that
mu(F^{p-1} E^{p-1} K^{p-1}) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CycloNum
from .hopf import AlgElem, LinForm, Uq, dual_antipode, left_right_shift, uq
from .linalg import nullspace
from .quasi import RibbonData, build_ribbon

NORMALIZATION_PIN = "mu_l(F^(p-1) E^(p-1) K^(p-1)) = 1"


@dataclass
class IntegralData:
    alg: Uq
    mu_l: LinForm
    mu_r: LinForm
    cointegral: AlgElem
    ratio: CycloNum
    normalization_pin: str = NORMALIZATION_PIN


def pin_element(alg: Uq) -> AlgElem:
    p = alg.p
    return alg.monomial(0, p - 1, 0) * alg.monomial(p - 1, 0, 0) * alg.k_power(2 * (p - 1))


def _integral_rows(alg: Uq, right: bool):
    """Rows of the system (id(x)mu)Delta(x) = mu(x)1 (or its mirror), unknowns = sub_index."""
    one_key = alg.key(0, 0, 0)
    keep = 0 if right else 1  # leg evaluated by mu
    rows = []
    for k in alg.sub_keys:
        per_out: dict[int, dict] = {}
        for pair, c in alg.coproduct_mono(k).terms.items():
            out, ev = pair[1 - keep], pair[keep]
            row = per_out.setdefault(out, {})
            j = alg.sub_index(ev)
            row[j] = row[j] + c if j in row else c
        row = per_out.setdefault(one_key, {})
        j = alg.sub_index(k)
        row[j] = row[j] - alg.ctx.one if j in row else -alg.ctx.one
        rows.extend({c: v for c, v in r.items() if v} for r in per_out.values())
    return [r for r in rows if r]


def integral_space(alg: Uq, right: bool = False) -> list[LinForm]:
    rows = _integral_rows(alg, right)
    basis = nullspace(rows, range(alg.dim), alg.ctx)
    return [LinForm(alg, [vec.get(i, alg.ctx.zero) for i in range(alg.dim)]) for vec in basis]


def solve_left_integral(alg: Uq) -> LinForm:
    space = integral_space(alg)
    if len(space) != 1:
        raise ArithmeticError(f"left integrals form a space of dimension {len(space)}, expected 1")
    mu = space[0]
    pin = mu(pin_element(alg))
    if not pin:
        raise ArithmeticError("normalisation element has zero integral")
    return mu.scale(pin.inv())


def is_left_integral(mu: LinForm) -> bool:
    return _integral_residual(mu, right=False) is None


def is_right_integral(mu: LinForm) -> bool:
    return _integral_residual(mu, right=True) is None


def _integral_residual(mu: LinForm, right: bool):
    """First basis key violating the integral property, or None."""
    alg = mu.alg
    for k in alg.sub_keys:
        val = alg.coproduct_mono(k).apply_functional(0 if right else 1, mu.value_at)
        if val != alg.one() * mu.value_at(k):
            return k
    return None


def right_integral(mu_l: LinForm) -> LinForm:
    """mu_r = mu_l o S^{-1}."""
    return dual_antipode(mu_l, inverse=True)


def solve_cointegral(alg: Uq) -> AlgElem:
    """The element c with x c = eps(x) c, from the kernel of left multiplication by E, F, K - 1."""
    ctx = alg.ctx
    gens = [(alg.E, ctx.zero), (alg.F, ctx.zero), (alg.K, ctx.one)]
    rows: dict = {}
    for g, eps in gens:
        for k in alg.sub_keys:
            j = alg.sub_index(k)
            prod = g * AlgElem(alg, {k: ctx.one})
            if eps:
                prod = prod - AlgElem(alg, {k: eps})
            for mk, c in prod.terms.items():
                r = rows.setdefault((id(g), mk), {})
                r[j] = r[j] + c if j in r else c
    basis = nullspace([{a: b for a, b in r.items() if b} for r in rows.values()], range(alg.dim), ctx)
    if len(basis) != 1:
        raise ArithmeticError(f"left cointegrals form a space of dimension {len(basis)}, expected 1")
    vec = basis[0]
    c = AlgElem(alg, {alg.sub_keys[i]: v for i, v in vec.items() if v})
    # normalise so that c = F^{p-1}E^{p-1} sum_n K^n + (lower terms)
    lead = c.coeff(alg.p - 1, alg.p - 1, 0)
    return c * lead.inv() if lead else c


def is_two_sided_cointegral(c: AlgElem) -> bool:
    alg = c.alg
    ctx = alg.ctx
    for g in (alg.E, alg.F, alg.K):
        eps = alg.counit(g)
        if g * c != c * eps or c * g != c * eps:
            return False
    return not c.is_zero()


def build_integrals(p_or_alg, ribbon: RibbonData | None = None) -> IntegralData:
    alg = p_or_alg if isinstance(p_or_alg, Uq) else uq(p_or_alg)
    key = alg.p
    if key in _CACHE:
        return _CACHE[key]
    rd = ribbon or build_ribbon(alg)
    mu_l = solve_left_integral(alg)
    mu_r = right_integral(mu_l)
    coint = solve_cointegral(alg)
    ratio = integral_ratio(mu_l, rd)
    _CACHE[key] = IntegralData(alg, mu_l, mu_r, coint, ratio)
    return _CACHE[key]


_CACHE: dict[int, IntegralData] = {}


def integral_ratio(mu_l: LinForm, rd: RibbonData) -> CycloNum:
    """mu_l(v^{-1}) / mu_l(v); independent of the scale of mu_l."""
    den = mu_l(rd.v)
    if not den:
        raise ArithmeticError("mu_l(v) = 0")
    return mu_l(rd.v_inverse) / den


# ----------------------------------------------------------------------------
# certificates


def unibalanced_witness(data: IntegralData, rd: RibbonData):
    """First basis index where mu_l != mu_r(g^2 ?), or None."""
    g2 = rd.g * rd.g
    shifted = left_right_shift(data.mu_r, a=g2)
    for i, (a, b) in enumerate(zip(data.mu_l.values, shifted.values)):
        if a != b:
            return i
    return None


def comodulus_witness(data: IntegralData, a: AlgElem):
    """First basis key where (id(x)mu_r)Delta(x) != mu_r(x) a, or None.

    Pairing with the dual basis, this is psi mu_r = psi(a) mu_r for every psi.
    """
    alg = data.alg
    for k in alg.sub_keys:
        lhs = alg.coproduct_mono(k).apply_functional(1, data.mu_r.value_at)
        if lhs != a * data.mu_r.value_at(k):
            return k
    return None


def symmetry_s2_holds(mu_l: LinForm, x: AlgElem, y: AlgElem) -> bool:
    """mu_l(xy) = mu_l(y S^2(x))."""
    return mu_l(x * y) == mu_l(y * x.antipode().antipode())


def phi_forms(data: IntegralData, rd: RibbonData) -> tuple[LinForm, LinForm]:
    """(phi_v, phi_{v^{-1}}) with phi_v = mu_l(v^{-1})^{-1} mu_l(g^{-1}v^{-1} ?)."""
    mu = data.mu_l
    a, b = mu(rd.v_inverse), mu(rd.v)
    if not a or not b:
        raise ArithmeticError("mu_l(v) or mu_l(v^{-1}) vanishes")
    phi_v = left_right_shift(mu, a=rd.g_inverse * rd.v_inverse).scale(a.inv())
    phi_vinv = left_right_shift(mu, a=rd.g_inverse * rd.v).scale(b.inv())
    return phi_v, phi_vinv


def is_symmetric(psi: LinForm, pairs) -> bool:
    return all(psi(x * y) == psi(y * x) for x, y in pairs)


def is_symmetric_full(psi: LinForm) -> bool:
    """psi(xy) = psi(yx) for generators x in {E, F, K} and every basis y."""
    alg = psi.alg
    one = alg.ctx.one
    for g in (alg.E, alg.F, alg.K):
        for k in alg.sub_keys:
            y = AlgElem(alg, {k: one})
            if psi(g * y) != psi(y * g):
                return False
    return True
