"""Finite-dimensional modules: simples X^eps(s), projective covers P^eps(s), liftings.

Matrices are dense lists of rows of CycloNum; a module acts on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import CycloNum
from .hopf import AlgElem, LinForm, Uq, uq
from .linalg import (Echelon, identity, kron, mat_add, mat_eq, mat_mul, mat_scale, mat_sub, nullspace,
                     solve_linear, transpose)


@dataclass
class ModuleData:
    alg: Uq
    dim: int
    matE: list
    matF: list
    matK: list
    lift: list | None = None
    tag: tuple = ("other", "+", 0)
    flagged_basis: dict | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def ctx(self):
        return self.alg.ctx

    @property
    def kind(self):
        return self.tag[0]

    @property
    def eps(self):
        return self.tag[1]

    @property
    def s(self):
        return self.tag[2]

    def name(self) -> str:
        kind, eps, s = self.tag
        if kind == "simple":
            return f"X{eps}({s})"
        if kind == "pim":
            return f"P{eps}({s})"
        return f"module[{self.dim}]"

    def k_power_matrix(self, l: int):
        ctx = self.ctx
        l %= self.alg.korder
        if self.lift is None:
            if l % 2:
                raise ValueError(f"{self.name()} has no K^(1/2) action")
            base, exp = self.matK, l // 2
        else:
            base, exp = self.lift, l
        out = identity(self.dim, ctx)
        for _ in range(exp):
            out = mat_mul(out, base, ctx)
        return out

    def act_mono(self, key: int):
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        i, j, l = self.alg.unkey(key)
        ctx = self.ctx
        out = identity(self.dim, ctx)
        for _ in range(i):
            out = mat_mul(out, self.matE, ctx)
        for _ in range(j):
            out = mat_mul(out, self.matF, ctx)
        if l:
            out = mat_mul(out, self.k_power_matrix(l), ctx)
        self._cache[key] = out
        return out

    def act(self, x: AlgElem):
        out = [[self.ctx.zero] * self.dim for _ in range(self.dim)]
        for k, c in x.terms.items():
            m = self.act_mono(k)
            for r in range(self.dim):
                row, orow = m[r], out[r]
                for s in range(self.dim):
                    if row[s]:
                        orow[s] = orow[s] + c * row[s]
        return out

    def relations_hold(self) -> bool:
        ctx = self.ctx
        q, p = ctx.q, self.alg.p
        E, F, K = self.matE, self.matF, self.matK
        Kinv = mat_pow(K, 2 * p - 1, ctx)
        ok = mat_eq(mat_mul(K, E, ctx), mat_scale(mat_mul(E, K, ctx), q ** 2))
        ok &= mat_eq(mat_mul(K, F, ctx), mat_scale(mat_mul(F, K, ctx), q ** -2))
        ok &= mat_eq(mat_scale(mat_sub(mat_mul(E, F, ctx), mat_mul(F, E, ctx)), ctx.qhat), mat_sub(K, Kinv))
        zero = [[ctx.zero] * self.dim for _ in range(self.dim)]
        ok &= mat_eq(mat_pow(E, p, ctx), zero) and mat_eq(mat_pow(F, p, ctx), zero)
        ok &= mat_eq(mat_pow(K, 2 * p, ctx), identity(self.dim, ctx))
        if self.lift is not None:
            ok &= mat_eq(mat_mul(self.lift, self.lift, ctx), K)
            ok &= mat_eq(mat_mul(self.lift, E, ctx), mat_scale(mat_mul(E, self.lift, ctx), q))
            ok &= mat_eq(mat_mul(self.lift, F, ctx), mat_scale(mat_mul(F, self.lift, ctx), q.inv()))
        return bool(ok)

    def to_json(self) -> dict:
        enc = lambda m: [[x.to_json() for x in row] for row in m]  # noqa: E731
        out = {"name": self.name(), "dim": self.dim, "tag": list(self.tag),
               "E": enc(self.matE), "F": enc(self.matF), "K": enc(self.matK)}
        if self.lift is not None:
            out["Khalf"] = enc(self.lift)
        if self.flagged_basis:
            out["flagged_basis"] = {k: [x.to_json() for x in v] for k, v in self.flagged_basis.items()}
        return out


def mat_pow(m, n, ctx):
    out = identity(len(m), ctx)
    for _ in range(n):
        out = mat_mul(out, m, ctx)
    return out


def eps_sqrt(ctx, eps: str, lift_sign: int = 1) -> CycloNum:
    base = ctx.one if eps == "+" else ctx.i
    return base if lift_sign > 0 else -base


def simple_module(alg: Uq, eps: str, s: int, lift_sign: int | None = 1) -> ModuleData:
    """X^eps(s): K v_j = eps q^{s-1-2j} v_j, E v_j = eps [j][s-j] v_{j-1}, F v_j = v_{j+1}."""
    p, ctx = alg.p, alg.ctx
    if eps not in "+-" or len(eps) != 1:
        raise ValueError("eps must be '+' or '-'")
    if not 1 <= s <= p:
        raise ValueError(f"s must satisfy 1 <= s <= p (got {s})")
    sign = 1 if eps == "+" else -1
    zero = ctx.zero
    E = [[zero] * s for _ in range(s)]
    F = [[zero] * s for _ in range(s)]
    K = [[zero] * s for _ in range(s)]
    lift = [[zero] * s for _ in range(s)] if lift_sign else None
    for j in range(s):
        K[j][j] = ctx.q_pow(s - 1 - 2 * j) * sign
        if j + 1 < s:
            F[j + 1][j] = ctx.one
        if j > 0:
            E[j - 1][j] = ctx.qint(j) * ctx.qint(s - j) * sign
        if lift is not None:
            lift[j][j] = eps_sqrt(ctx, eps, lift_sign) * ctx.zeta_pow(s - 1 - 2 * j)
    return ModuleData(alg, s, E, F, K, lift, ("simple", eps, s))


def sign_module(alg: Uq) -> ModuleData:
    """The one-dimensional lift of the trivial module with K^{1/2} = -1."""
    ctx = alg.ctx
    return ModuleData(alg, 1, [[ctx.zero]], [[ctx.zero]], [[ctx.one]], [[-ctx.one]], ("other", "+", 1))


def tensor_module(I: ModuleData, J: ModuleData) -> ModuleData:
    alg = I.alg
    ctx = alg.ctx
    Kinv_I = I.act(alg.Kinv)
    E = mat_add(kron(I.matE, J.matK, ctx), kron(identity(I.dim, ctx), J.matE, ctx))
    F = mat_add(kron(Kinv_I, J.matF, ctx), kron(I.matF, identity(J.dim, ctx), ctx))
    K = kron(I.matK, J.matK, ctx)
    lift = kron(I.lift, J.lift, ctx) if I.lift is not None and J.lift is not None else None
    return ModuleData(alg, I.dim * J.dim, E, F, K, lift, ("tensor", "+", 0))


def dual_module(I: ModuleData) -> ModuleData:
    """I^*: x acts by the transpose of S(x)."""
    alg = I.alg
    E = transpose(I.act(alg.antipode(alg.E)))
    F = transpose(I.act(alg.antipode(alg.F)))
    K = transpose(I.act(alg.Kinv))
    lift = transpose(I.act(alg.k_power(-1))) if I.lift is not None else None
    return ModuleData(alg, I.dim, E, F, K, lift, ("dual", I.eps, I.s))


def hom_space(I: ModuleData, J: ModuleData, use_lift: bool = False) -> list:
    """Basis of Uq-linear maps I -> J (as dim J x dim I matrices)."""
    ctx = I.ctx
    gens = [(I.matE, J.matE), (I.matF, J.matF), (I.matK, J.matK)]
    if use_lift and I.lift is not None and J.lift is not None:
        gens.append((I.lift, J.lift))
    n, m = J.dim, I.dim
    rows = []
    for A, B in gens:
        # (f A - B f)[r][c] = sum_t f[r][t] A[t][c] - sum_t B[r][t] f[t][c]
        for r in range(n):
            for c in range(m):
                row = {}
                for t in range(m):
                    if A[t][c]:
                        row[(r, t)] = row.get((r, t), ctx.zero) + A[t][c]
                for t in range(n):
                    if B[r][t]:
                        row[(t, c)] = row.get((t, c), ctx.zero) - B[r][t]
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    cols = [(r, c) for r in range(n) for c in range(m)]
    basis = []
    for vec in nullspace(rows, cols, ctx):
        f = [[vec.get((r, c), ctx.zero) for c in range(m)] for r in range(n)]
        basis.append(f)
    return basis


def matrix_coeff(module: ModuleData, i: int, j: int, ext: bool = False) -> LinForm:
    """T^i_j(x) = entry (i, j) of x acting on the module."""
    alg = module.alg
    return LinForm.from_function(alg, lambda k: module.act_mono(k)[i][j], ext)


def character(module: ModuleData, ext: bool = False) -> LinForm:
    alg = module.alg
    ctx = alg.ctx

    def tr(k):
        m = module.act_mono(k)
        out = ctx.zero
        for r in range(module.dim):
            if m[r][r]:
                out = out + m[r][r]
        return out

    return LinForm.from_function(alg, tr, ext)


def twisted_trace(module: ModuleData, x: AlgElem) -> CycloNum:
    m = module.act(x)
    out = module.ctx.zero
    for r in range(module.dim):
        out = out + m[r][r]
    return out


def scalar_of(mat, ctx):
    """Return c if mat = c * Id, else None."""
    n = len(mat)
    c = mat[0][0]
    for r in range(n):
        for s in range(n):
            if mat[r][s] != (c if r == s else ctx.zero):
                return None
    return c


def simple_modules(alg: Uq) -> dict:
    return {(eps, s): simple_module(alg, eps, s) for eps in "+-" for s in range(1, alg.p + 1)}


# ----------------------------------------------------------------------------
# projective indecomposables


def casimir(alg: Uq) -> AlgElem:
    """C = FE + (qK + q^{-1}K^{-1}) / qhat^2."""
    ctx = alg.ctx
    return alg.F * alg.E + (alg.K * ctx.q + alg.Kinv * ctx.q.inv()) * (ctx.qhat ** -2)


def casimir_value(ctx, eps: str, s: int) -> CycloNum:
    """Eigenvalue of C on X^eps(s): eps (q^s + q^{-s}) / qhat^2."""
    sign = 1 if eps == "+" else -1
    return (ctx.q_pow(s) + ctx.q_pow(-s)) * sign / ctx.qhat ** 2


def _kernel_vectors(mat, ctx):
    n = len(mat)
    rows = [{c: v for c, v in enumerate(row) if v} for row in mat]
    return [[vec.get(c, ctx.zero) for c in range(n)] for vec in nullspace(rows, range(n), ctx)]


def _restrict(module: ModuleData, basis) -> ModuleData:
    """Action on an invariant subspace spanned by the columns `basis` (list of vectors)."""
    ctx = module.ctx
    n = len(basis)
    cols = [{r: v for r, v in enumerate(vec) if v} for vec in basis]

    def coords(vec):
        sol = solve_linear(cols, {r: v for r, v in enumerate(vec) if v}, ctx)
        if sol is None:
            raise ArithmeticError("subspace is not invariant")
        return [sol.get(i, ctx.zero) for i in range(n)]

    def restricted(mat):
        images = [coords([sum((mat[r][t] * vec[t] for t in range(len(vec)) if mat[r][t] and vec[t]), ctx.zero)
                          for r in range(len(mat))]) for vec in basis]
        return transpose(images)

    lift = restricted(module.lift) if module.lift is not None else None
    return ModuleData(module.alg, n, restricted(module.matE), restricted(module.matF), restricted(module.matK), lift)


def _matvec(m, v, ctx):
    out = []
    for row in m:
        s = ctx.zero
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def build_pim(alg: Uq, eps: str, s: int, lift_sign: int = 1) -> ModuleData:
    """P^eps(s), 1 <= s <= p-1, as the generalised Casimir eigenspace in X^eps(p) (x) X^+(p-s+1).

    The flagged basis (b0, x0, y0, a0) follows the lift eigenvalues of the
    canonical basis: b0 spans the top, a0 = E^{p-s} ... reached from b0, x0/y0
    are the middle highest weight vectors separated by their K^{1/2} eigenvalue.
    """
    p, ctx = alg.p, alg.ctx
    if not 1 <= s <= p - 1:
        raise ValueError("PIMs P^eps(s) are built for 1 <= s <= p-1")
    big = tensor_module(simple_module(alg, eps, p, 1), simple_module(alg, "+", p - s + 1, 1))
    C = big.act(casimir(alg))
    shift = mat_sub(C, mat_scale(identity(big.dim, ctx), casimir_value(ctx, eps, s)))
    gen_kernel = _kernel_vectors(mat_mul(shift, shift, ctx), ctx)
    if len(gen_kernel) != 2 * p:
        raise ArithmeticError(f"generalised Casimir eigenspace has dimension {len(gen_kernel)} != 2p")
    P = _restrict(big, gen_kernel)
    # renormalise the lift so that the top weight vector has eigenvalue eps^{1/2} q^{(s-1)/2}
    target = eps_sqrt(ctx, eps, lift_sign) * ctx.zeta_pow(s - 1)
    P = _fix_lift(P, target, s)
    P.tag = ("pim", eps, s)
    P.flagged_basis = _flagged_basis(P, eps, s, lift_sign)
    return P


def _eigvecs(m, val, ctx):
    shifted = mat_sub(m, mat_scale(identity(len(m), ctx), val))
    return _kernel_vectors(shifted, ctx)


def _fix_lift(P: ModuleData, target: CycloNum, s: int) -> ModuleData:
    ctx = P.ctx
    # the top and socle highest weight lines share the K-eigenvalue target^2; the lift of the
    # tensor product gives them eigenvalue +-target.  Flip the sign of the lift if needed.
    if _eigvecs(P.lift, target, ctx):
        return P
    if _eigvecs(P.lift, -target, ctx):
        P.lift = mat_scale(P.lift, -ctx.one)
        return P
    raise ArithmeticError("no lift eigenvector with the expected eigenvalue")


def _flagged_basis(P: ModuleData, eps: str, s: int, lift_sign: int) -> dict:
    """b0, x0, y0, a0 as coordinate vectors."""
    alg, ctx, p = P.alg, P.ctx, P.alg.p
    e12 = eps_sqrt(ctx, eps, lift_sign)
    top_val = e12 * ctx.zeta_pow(s - 1)
    mid_val = e12 * ctx.zeta_pow(p) * ctx.zeta_pow(p - s - 1)
    hw = _kernel_vectors(P.matE, ctx)  # highest weight vectors (killed by E)
    # socle highest weight: E-kernel inside the top-weight eigenspace
    top_space = _eigvecs(P.lift, top_val, ctx)
    a_candidates = _intersect(top_space, hw, ctx)
    if len(a_candidates) != 1:
        raise ArithmeticError("socle highest weight line is not one-dimensional")
    a0 = a_candidates[0]
    # b0: vector of the top weight space not in the span of a0 ... and with E b0 in the socle
    b0 = None
    for vec in top_space:
        if _in_span([a0], vec, ctx):
            continue
        b0 = vec
        break
    if b0 is None:
        raise ArithmeticError("no top vector")
    # normalise b0 so that a0 is reached by the Casimir nilpotent: a0 := (C - c_s) b0
    C = P.act(casimir(alg))
    shift = mat_sub(C, mat_scale(identity(P.dim, ctx), casimir_value(ctx, eps, s)))
    a0 = _matvec(shift, b0, ctx)
    if not any(a0):
        raise ArithmeticError("b0 is not a generator")
    x0 = _matvec(P.act(alg.monomial(p - s, 0, 0)), b0, ctx)
    y0 = _matvec(P.act(alg.monomial(0, s, 0)), b0, ctx)
    checks = [(x0, mid_val), (y0, -mid_val)]
    for vec, val in checks:
        if not any(vec):
            raise ArithmeticError("middle highest weight vector vanishes")
        if _matvec(P.lift, vec, ctx) != [val * c for c in vec]:
            raise ArithmeticError("middle vector has unexpected K^(1/2) eigenvalue")
    return {"b0": b0, "x0": x0, "y0": y0, "a0": a0}


def _intersect(space_a, space_b, ctx):
    """Basis of span(A) ∩ span(B)."""
    if not space_a or not space_b:
        return []
    n = len(space_a[0])
    cols = [{r: v for r, v in enumerate(vec) if v} for vec in space_a]
    cols += [{r: -v for r, v in enumerate(vec) if v} for vec in space_b]
    rows: dict = {}
    for c, col in enumerate(cols):
        for r, v in col.items():
            rows.setdefault(r, {})[c] = v
    null = nullspace(list(rows.values()), range(len(cols)), ctx)
    out = []
    for vec in null:
        w = [ctx.zero] * n
        for i, a in enumerate(space_a):
            c = vec.get(i)
            if c:
                w = [x + c * y for x, y in zip(w, a)]
        if any(w):
            out.append(w)
    return out


def _in_span(vectors, target, ctx) -> bool:
    cols = [{r: v for r, v in enumerate(vec) if v} for vec in vectors]
    return solve_linear(cols, {r: v for r, v in enumerate(target) if v}, ctx) is not None


def build_pims(alg: Uq) -> dict:
    return {(eps, s): build_pim(alg, eps, s) for eps in "+-" for s in range(1, alg.p)}


def loewy_check(P: ModuleData) -> bool:
    """Radical layers of dimensions s, 2(p-s)... via E/F action: top and socle are simple."""
    ctx = P.ctx
    alg = P.alg
    hw = _kernel_vectors(P.matE, ctx)
    return len(hw) == 2 if P.kind == "pim" else True
