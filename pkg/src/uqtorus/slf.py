"""Symmetric linear forms, the center and the GTA basis.

The center and SLF are solved as kernels.  Central idempotents e_s and the
nilpotents w^+_s, w^-_s are found by evaluating central elements on the
projective modules: a central element acts on P^eps(s) as a scalar plus a
multiple of the top-to-socle map, and is determined by these numbers.

The pseudo-characters G_s are pinned as follows.
  1. G_1 is fixed up to adding a chi+_1 + b chi-_{p-1} by
     G_1^{e_t} = delta_{1t} G_1, G_1^{w+_1} = chi+_1, G_1^{w-_1} = chi-_{p-1}.
  2. G_s = G_1 chi+_s / [s].
  3. (xi, xi a, xi b) are solved from the expansion of
     v_B^{-1} chi+_1 = mu_l(v)^{-1} mu_r(K^{p+1} ?) given by the closed formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import CycloNum, complex_embed
from .hopf import AlgElem, LinForm, Uq, dual_convolve, left_right_shift, right_shift, uq
from .integrals import IntegralData, build_integrals
from .linalg import express_in_basis, nullspace, solve_linear
from .quasi import RibbonData, build_ribbon
from .repns import ModuleData, build_pims, character, simple_module

# ----------------------------------------------------------------------------
# raw spaces


def _commutator_rows(alg: Uq, side: str):
    """Linear conditions for psi(gy) = psi(yg) (side='dual') or gz = zg (side='center')."""
    ctx = alg.ctx
    one = ctx.one
    rows: dict = {}
    for gi, g in enumerate((alg.E, alg.F, alg.K)):
        for k in alg.sub_keys:
            y = AlgElem(alg, {k: one})
            diff = g * y - y * g
            j = alg.sub_index(k)
            if side == "dual":
                row = {alg.sub_index(m): c for m, c in diff.terms.items()}
                if row:
                    rows[(gi, j)] = row
            else:
                for m, c in diff.terms.items():
                    r = rows.setdefault((gi, m), {})
                    r[j] = r[j] + c if j in r else c
    return [{a: b for a, b in r.items() if b} for r in rows.values()]


def solve_slf(alg: Uq) -> list[LinForm]:
    ctx = alg.ctx
    basis = nullspace(_commutator_rows(alg, "dual"), range(alg.dim), ctx)
    return [LinForm(alg, [vec.get(i, ctx.zero) for i in range(alg.dim)]) for vec in basis]


def solve_center(alg: Uq) -> list[AlgElem]:
    basis = nullspace(_commutator_rows(alg, "center"), range(alg.dim), alg.ctx)
    return [AlgElem(alg, {alg.sub_keys[i]: v for i, v in vec.items() if v}) for vec in basis]


def characters(alg: Uq) -> dict:
    """chi^eps_s for eps in {+,-}, 1 <= s <= p."""
    return {(eps, s): character(simple_module(alg, eps, s, lift_sign=None))
            for eps in "+-" for s in range(1, alg.p + 1)}


def gta_labels(p: int) -> list[str]:
    return ([f"chi+_{s}" for s in range(1, p + 1)] + [f"chi-_{s}" for s in range(1, p + 1)]
            + [f"G_{s}" for s in range(1, p)])


def ribbon_scalar(ctx, eps: str, s: int) -> CycloNum:
    """v acting on X^eps(s): v_{X+(s)} = v_{X-(p-s)} = (-1)^{s-1} q^{-(s^2-1)/2}; s = 0 means X-(p)."""
    p = ctx.p
    t = s if eps == "+" else p - s
    return ctx.zeta_pow(-(t * t - 1)) * (-1 if (t - 1) % 2 else 1)


# ----------------------------------------------------------------------------
# canonical central elements


@dataclass
class CenterData:
    alg: Uq
    basis: list
    idempotents: dict = field(default_factory=dict)  # s -> e_s, 0 <= s <= p
    w_plus: dict = field(default_factory=dict)  # s -> w+_s, 1 <= s <= p-1
    w_minus: dict = field(default_factory=dict)
    casimir: AlgElem | None = None

    def canonical_basis(self) -> list[AlgElem]:
        p = self.alg.p
        return ([self.idempotents[s] for s in range(p + 1)] + [self.w_plus[s] for s in range(1, p)]
                + [self.w_minus[s] for s in range(1, p)])

    def canonical_labels(self) -> list[str]:
        p = self.alg.p
        return ([f"e_{s}" for s in range(p + 1)] + [f"w+_{s}" for s in range(1, p)]
                + [f"w-_{s}" for s in range(1, p)])


def _test_modules(alg: Uq, pims: dict) -> list[tuple[str, int, ModuleData]]:
    """PIMs P^eps(s) and the projective simples X^+(p), X^-(p), each tagged by its block."""
    out = []
    for (eps, s), P in sorted(pims.items()):
        out.append((f"P{eps}({s})", s if eps == "+" else alg.p - s, P))
    out.append((f"X+({alg.p})", alg.p, simple_module(alg, "+", alg.p, lift_sign=None)))
    out.append((f"X-({alg.p})", 0, simple_module(alg, "-", alg.p, lift_sign=None)))
    return out


def _action_data(module: ModuleData, z: AlgElem):
    """(scalar, nilpotent coefficient) of a central element on a test module.

    On a PIM a central element acts as c Id + n N where N sends the top generator
    b0 to the socle vector a0 (the flagged basis fixes N up to the choice of b0)."""
    ctx = module.ctx
    mat = module.act(z)
    c = mat[0][0]
    if module.flagged_basis is None:
        for r in range(module.dim):
            for s in range(module.dim):
                if mat[r][s] != (c if r == s else ctx.zero):
                    raise ArithmeticError("central element is not scalar on a simple projective module")
        return c, ctx.zero
    b0 = module.flagged_basis["b0"]
    a0 = module.flagged_basis["a0"]
    img = [sum((mat[r][t] * b0[t] for t in range(module.dim) if mat[r][t] and b0[t]), ctx.zero)
           for r in range(module.dim)]
    sol = express_in_basis([_vec_dict(b0), _vec_dict(a0)], _vec_dict(img), ctx)
    if sol is None:
        raise ArithmeticError("central element does not act as c + n N on a PIM")
    c, n = sol
    return c, n


def _vec_dict(vec) -> dict:
    return {i: v for i, v in enumerate(vec) if v}


def canonical_center(alg: Uq, rd: RibbonData, center_basis: list[AlgElem], pims: dict) -> CenterData:
    ctx, p = alg.ctx, alg.p
    tests = _test_modules(alg, pims)
    # coordinates of each raw central element on the test modules
    table = []
    for z in center_basis:
        row = []
        for _, _, M in tests:
            c, n = _action_data(M, z)
            row.extend([c, n])
        table.append(row)
    ncoord = len(tests) * 2

    def solve_for(target):
        cols = [{i: v for i, v in enumerate(row) if v} for row in table]
        sol = solve_linear(cols, {i: v for i, v in enumerate(target) if v}, ctx)
        if sol is None:
            raise ArithmeticError("no central element with the requested action")
        out = alg.elem()
        for i, c in sol.items():
            out = out.add_scaled(center_basis[i], c)
        return out

    data = CenterData(alg, center_basis)
    for s in range(p + 1):
        target = [ctx.zero] * ncoord
        for t, (_, block, _) in enumerate(tests):
            if block == s:
                target[2 * t] = ctx.one
        data.idempotents[s] = solve_for(target)
    # nilpotent directions r+_s (acting on P+(s) only) and r-_s (on P-(p-s) only)
    index = {name: t for t, (name, _, _) in enumerate(tests)}
    for s in range(1, p):
        e_s = data.idempotents[s]
        nil = e_s * rd.v - e_s * ribbon_scalar(ctx, "+", s)
        tp, tm = index[f"P+({s})"], index[f"P-({p - s})"]
        _, n_plus = _action_data(tests[tp][2], nil)
        _, n_minus = _action_data(tests[tm][2], nil)
        vs = ribbon_scalar(ctx, "+", s)
        alpha = ctx.qhat * vs * (p - s) / ctx.qint(s)
        beta = -ctx.qhat * vs * s / ctx.qint(s)
        tgt_p = [ctx.zero] * ncoord
        tgt_p[2 * tp + 1] = n_plus / alpha
        tgt_m = [ctx.zero] * ncoord
        tgt_m[2 * tm + 1] = n_minus / beta
        data.w_plus[s] = solve_for(tgt_p)
        data.w_minus[s] = solve_for(tgt_m)
    from .repns import casimir

    data.casimir = casimir(alg)
    return data


def ribbon_decomposition_residual(data: CenterData, rd: RibbonData) -> AlgElem:
    """v minus the canonical-basis expansion of the ribbon element (zero when consistent)."""
    alg, ctx, p = data.alg, data.alg.ctx, data.alg.p
    out = rd.v
    for s in range(p + 1):
        out = out - data.idempotents[s] * ribbon_scalar(ctx, "+", s)
    for s in range(1, p):
        vs = ribbon_scalar(ctx, "+", s)
        out = out - data.w_plus[s] * (ctx.qhat * vs * (p - s) / ctx.qint(s))
        out = out + data.w_minus[s] * (ctx.qhat * vs * s / ctx.qint(s))
    return out


# ----------------------------------------------------------------------------
# GTA basis


@dataclass
class SLFSpace:
    alg: Uq
    basis_raw: list
    gta: list
    labels: list
    xi: CycloNum
    pin: dict
    _cols: list | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.gta)

    def chi(self, eps: str, s: int) -> LinForm:
        p = self.alg.p
        return self.gta[(s - 1) + (0 if eps == "+" else p)]

    def G(self, s: int) -> LinForm:
        return self.gta[2 * self.alg.p + s - 1]

    def coords(self, psi: LinForm) -> list[CycloNum]:
        """Coordinates of a symmetric form in the GTA basis (raises if psi is not in the span)."""
        return coords_in(self.gta, psi, self._columns())

    def _columns(self):
        if self._cols is None:
            self._cols = [_form_dict(f) for f in self.gta]
        return self._cols

    def combine(self, coeffs) -> LinForm:
        out = LinForm.zero(self.alg)
        for c, f in zip(coeffs, self.gta):
            if c:
                out = out + f.scale(c)
        return out

    def change_of_basis(self) -> list[list[CycloNum]]:
        """Columns: GTA vectors expressed in the raw solved basis."""
        cols = [_form_dict(f) for f in self.basis_raw]
        return [coords_in(self.basis_raw, g, cols) for g in self.gta]


def _form_dict(f: LinForm) -> dict:
    return {i: v for i, v in enumerate(f.values) if v}


def coords_in(basis, psi: LinForm, cols=None) -> list[CycloNum]:
    ctx = psi.alg.ctx
    cols = cols if cols is not None else [_form_dict(f) for f in basis]
    sol = solve_linear(cols, _form_dict(psi), ctx)
    if sol is None:
        raise ArithmeticError("form is not in the span of the basis")
    return [sol.get(i, ctx.zero) for i in range(len(basis))]


def shift(psi: LinForm, z: AlgElem) -> LinForm:
    """psi^z = psi(z ?)."""
    return right_shift(psi, z)


def block_conditions_for_g1(alg: Uq, center: CenterData, chars: dict, slf_basis: list[LinForm]):
    """All symmetric psi with psi^{e_t} = delta_{1t} psi, psi^{w+_1} = chi+_1, psi^{w-_1} = chi-_{p-1}.

    Returns (particular solution, homogeneous solutions)."""
    ctx, p = alg.ctx, alg.p
    n = len(slf_basis)
    # unknown coefficients y_i:  psi = sum y_i b_i
    conditions = []  # (list of forms L_i, target form): sum y_i L_i = target
    for t in range(p + 1):
        forms = [shift(b, center.idempotents[t]) - (b if t == 1 else LinForm.zero(alg)) for b in slf_basis]
        conditions.append((forms, LinForm.zero(alg)))
    conditions.append(([shift(b, center.w_plus[1]) for b in slf_basis], chars[("+", 1)]))
    conditions.append(([shift(b, center.w_minus[1]) for b in slf_basis], chars[("-", p - 1)]))
    rows = []
    rhs_key = "__rhs__"
    for forms, target in conditions:
        for idx in range(alg.dim):
            row = {i: f.values[idx] for i, f in enumerate(forms) if f.values[idx]}
            if target.values[idx]:
                row[rhs_key] = target.values[idx]
            if row:
                rows.append(row)
    from .linalg import Echelon

    ech = Echelon(ctx, protect=rhs_key)
    for r in rows:
        ech.add(r)
    part = [ctx.zero] * n
    for pc, prow in ech.pivots.items():
        part[pc] = prow.get(rhs_key, ctx.zero)
    homog = []
    for f in range(n):
        if f in ech.pivots:
            continue
        vec = [ctx.zero] * n
        vec[f] = ctx.one
        for pc, prow in ech.pivots.items():
            v = prow.get(f)
            if v:
                vec[pc] = -v
        homog.append(vec)

    def combine(coeffs):
        out = LinForm.zero(alg)
        for c, b in zip(coeffs, slf_basis):
            if c:
                out = out + b.scale(c)
        return out

    return combine(part), [combine(h) for h in homog]


def phi_pin_form(integ: IntegralData, rd: RibbonData) -> LinForm:
    """mu_l(v)^{-1} mu_r(K^{p+1} ?) = v_B^{-1} chi+_1."""
    alg = integ.alg
    return left_right_shift(integ.mu_r, a=alg.k_power(2 * (alg.p + 1))).scale(integ.mu_l(rd.v).inv())


def vb_chi_closed_form(ctx, eps: str, s: int, xi: CycloNum, chi, G) -> LinForm:
    """Closed form of v_B^{-1} chi^eps_s as a combination of given forms chi(eps, l), G(j)."""
    p = ctx.p
    e = 1 if eps == "+" else -1
    q = ctx.q
    lam = xi * e * (-e) ** (p - 1) * s * ctx.q_pow(-(s * s - 1))
    out = chi("+", p).scale(lam) + chi("-", p).scale(lam * (-e) ** p * (-1) ** s)
    for l in range(1, p):
        c = lam * (-1) ** s * (-e) ** (p - l) * (ctx.q_pow(l * s) + ctx.q_pow(-l * s))
        out = out + (chi("+", l) + chi("-", p - l)).scale(c)
    dcoef = xi * e * (-1) ** s * ctx.q_pow(-(s * s - 1))
    for j in range(1, p):
        out = out + G(j).scale(dcoef * (-e) ** (j + 1) * ctx.qint(j) * ctx.qint(j * s))
    return out


def vb_g_closed_form(ctx, s: int, xi: CycloNum, chi, G) -> LinForm:
    p = ctx.p
    qh = ctx.qhat
    pref = xi * (-1) ** s * ctx.q_pow(-(s * s - 1)) * qh * p / ctx.qint(s)
    out = None
    for j in range(1, p):
        c = pref * (-1) ** (j + 1) * ctx.qint(j) * ctx.qint(j * s)
        term = G(j).scale(2 * ctx.one) - chi("+", j).scale(qh * (p - j) / ctx.qint(j)) \
            + chi("-", p - j).scale(qh * j / ctx.qint(j))
        out = term.scale(c) if out is None else out + term.scale(c)
    return out


def xi_closed_form_inverse_squared(ctx) -> CycloNum:
    """xi^{-2} from the closed form; exact because ((1-i)/(2 sqrt p))^2 = -i/(2p)."""
    p = ctx.p
    rest = ctx.qhat ** (p - 1) / ctx.qfact(p - 1) * (-1) ** p * ctx.zeta_pow(-(p - 3))
    return ctx.i * (-ctx.one) / (2 * p) * rest * rest


def xi_closed_form_numeric(ctx, precision: int = 128):
    """xi from its closed form as a complex ball, with sqrt(p) > 0."""
    from flint import acb, arb, ctx as flint_ctx

    old = flint_ctx.prec
    flint_ctx.prec = precision + 20
    try:
        p = ctx.p
        rest = complex_embed(ctx.qhat ** (p - 1) / ctx.qfact(p - 1) * (-1) ** p * ctx.zeta_pow(-(p - 3)), precision)
        xi_inv = (acb(1) - acb(0, 1)) / (2 * arb(p).sqrt()) * rest
        return 1 / xi_inv
    finally:
        flint_ctx.prec = old


def gta_pin(alg: Uq, slf_basis: list[LinForm], center: CenterData, integ: IntegralData, rd: RibbonData,
            chars: dict) -> SLFSpace:
    ctx, p = alg.ctx, alg.p
    g1_part, g1_homog = block_conditions_for_g1(alg, center, chars, slf_basis)
    expected = [chars[("+", 1)], chars[("-", p - 1)]]
    # the homogeneous part must be span(chi+_1, chi-_{p-1})
    hom_basis = expected
    if len(g1_homog) != 2 or any(coords_in_or_none(hom_basis, h) is None for h in g1_homog):
        raise ArithmeticError("block conditions do not fix G_1 up to chi+_1, chi-_{p-1}")

    def ladder(g1):
        return [g1] + [dual_convolve(g1, chars[("+", s)]).scale(ctx.qint(s).inv()) for s in range(2, p)]

    G0 = ladder(g1_part)
    Ga = ladder(chars[("+", 1)])
    Gb = ladder(chars[("-", p - 1)])

    def chi(eps, s):
        return chars[(eps, s)]

    # closed form at (+,1) with G_j = G0_j + a Ga_j + b Gb_j is  xi*F0 + (xi a)*Fa + (xi b)*Fb
    one = ctx.one
    F0 = vb_chi_closed_form(ctx, "+", 1, one, chi, lambda j: G0[j - 1])
    zero_chi = lambda eps, s: LinForm.zero(alg)  # noqa: E731
    Fa = vb_chi_closed_form(ctx, "+", 1, one, zero_chi, lambda j: Ga[j - 1])
    Fb = vb_chi_closed_form(ctx, "+", 1, one, zero_chi, lambda j: Gb[j - 1])
    phi = phi_pin_form(integ, rd)
    sol = coords_in_or_none([F0, Fa, Fb], phi)
    if sol is None:
        raise ArithmeticError("v_B^{-1} chi+_1 is not of the closed form for any G_1 (convention mismatch)")
    xi, xa, xb = sol
    if not xi:
        raise ArithmeticError("xi = 0")
    a, b = xa / xi, xb / xi
    G = [G0[j] + Ga[j].scale(a) + Gb[j].scale(b) for j in range(p - 1)]
    gta = [chars[("+", s)] for s in range(1, p + 1)] + [chars[("-", s)] for s in range(1, p + 1)] + G
    pin = {"route": "block conditions on G_1, G_s = G_1 chi+_s/[s], (xi, a, b) from v_B^{-1} chi+_1",
           "a": a, "b": b}
    return SLFSpace(alg, slf_basis, gta, gta_labels(p), xi, pin)


def coords_in_or_none(basis, psi):
    try:
        return coords_in(basis, psi)
    except ArithmeticError:
        return None


# ----------------------------------------------------------------------------
# full pipeline


@dataclass
class SLFData:
    alg: Uq
    ribbon: RibbonData
    integrals: IntegralData
    center: CenterData
    space: SLFSpace
    chars: dict
    pims: dict


_PIPELINE: dict[int, SLFData] = {}


def build_slf(p_or_alg) -> SLFData:
    alg = p_or_alg if isinstance(p_or_alg, Uq) else uq(p_or_alg)
    if alg.p not in _PIPELINE:
        rd = build_ribbon(alg)
        integ = build_integrals(alg, rd)
        pims = build_pims(alg)
        center_raw = solve_center(alg)
        slf_raw = solve_slf(alg)
        if len(center_raw) != 3 * alg.p - 1 or len(slf_raw) != 3 * alg.p - 1:
            raise ArithmeticError(f"dim Z = {len(center_raw)}, dim SLF = {len(slf_raw)}, expected {3 * alg.p - 1}")
        center = canonical_center(alg, rd, center_raw, pims)
        chars = characters(alg)
        space = gta_pin(alg, slf_raw, center, integ, rd, chars)
        _PIPELINE[alg.p] = SLFData(alg, rd, integ, center, space, chars, pims)
    return _PIPELINE[alg.p]
