"""R-matrix, Drinfeld element, ribbon element and the Drinfeld map.

The R-matrix lives in the tensor square of the K^{1/2}-extension:

    R = Theta * X,  Theta = q^{H(x)H/2} = (1/4p) sum_{n,j} q^{-nj/2} k^n (x) k^j,
    X = sum_m qhat^m / [m]! * q^{m(m-1)/2} E^m (x) F^m.

Identities involving products of several copies of R are evaluated by moving
every Theta to the left with the exact rule

    Theta (x (x) y) Theta^{-1} = q^{ab/2} x k^b (x) y k^a

for weight vectors x, y of weights a, b (K x K^{-1} = q^a x).  What remains is
a product of copies of X, which has only p terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cyclo import CycloNum
from .hopf import AlgElem, LinForm, TensorElem, Uq, uq
from .linalg import Echelon


def theta(alg: Uq, power: int = 1) -> TensorElem:
    """Theta^power = (1/4p) sum q^{-nj/2} k^{power*n} (x) k^j."""
    ctx = alg.ctx
    n4 = alg.korder
    scale = ctx.rational(1) / n4
    acc: dict = {}
    for n in range(n4):
        for j in range(n4):
            key = (alg.key(0, 0, power * n), alg.key(0, 0, j))
            c = ctx.zeta_pow(-n * j)
            prev = acc.get(key)
            acc[key] = c if prev is None else prev + c
    return TensorElem(alg, 2, {k: v * scale for k, v in acc.items() if v})


def x_part(alg: Uq) -> TensorElem:
    ctx = alg.ctx
    terms = {}
    for m in range(alg.p):
        c = ctx.qhat ** m / ctx.qfact(m) * ctx.zeta_pow(m * (m - 1))
        terms[(alg.key(m, 0, 0), alg.key(0, m, 0))] = c
    return TensorElem(alg, 2, terms)


def conj_theta(t: TensorElem, a: int, b: int, inverse: bool = False) -> TensorElem:
    """Theta_ab t Theta_ab^{-1} (or Theta_ab^{-1} t Theta_ab when inverse=True)."""
    alg = t.alg
    ctx = alg.ctx
    p2 = alg.p * alg.p
    sign = -1 if inverse else 1
    out = {}
    for key, c in t.terms.items():
        x, y = key[a], key[b]
        wa, wb = alg.weight(x), alg.weight(y)
        newkey = list(key)
        newkey[a] = alg.key(*alg.unkey(x)[:2], alg.unkey(x)[2] + sign * wb)
        newkey[b] = alg.key(*alg.unkey(y)[:2], alg.unkey(y)[2] + sign * wa)
        # q^{ab/2} = zeta^{ab}
        out[tuple(newkey)] = c * ctx.zeta_pow(sign * wa * wb)
    return TensorElem(alg, t.arity, out)


def build_R(alg: Uq) -> TensorElem:
    return theta(alg) * x_part(alg)


def expanded_R(alg: Uq) -> TensorElem:
    """R written out term by term: (c_m/4p) q^{-nj/2} q^{(n-j)m} E^m k^n (x) F^m k^j."""
    ctx = alg.ctx
    n4 = alg.korder
    terms = {}
    for m in range(alg.p):
        cm = ctx.qhat ** m / ctx.qfact(m) * ctx.zeta_pow(m * (m - 1)) / n4
        for n in range(n4):
            for j in range(n4):
                c = cm * ctx.zeta_pow(-n * j + 2 * (n - j) * m)
                key = (alg.key(m, 0, n), alg.key(0, m, j))
                terms[key] = terms[key] + c if key in terms else c
    return TensorElem(alg, 2, {k: v for k, v in terms.items() if v})


def r_inverse(R: TensorElem) -> TensorElem:
    """R^{-1} = (S (x) id)(R)."""
    alg = R.alg
    return R.apply_map(0, alg.antipode_mono)


# ----------------------------------------------------------------------------
# identities through the factorisation


def ybe_factored(alg: Uq) -> tuple[TensorElem, TensorElem]:
    """Both sides of the Yang-Baxter equation with the Theta factors removed.

    R12 R13 R23 = Theta12 Theta13 Theta23 * c23^{-1}c13^{-1}(X12) c23^{-1}(X13) X23
    R23 R13 R12 = Theta23 Theta13 Theta12 * c12^{-1}c13^{-1}(X23) c12^{-1}(X13) X12
    """
    X = x_part(alg)
    X12 = X.embed(3, (0, 1))
    X13 = X.embed(3, (0, 2))
    X23 = X.embed(3, (1, 2))
    inv = dict(inverse=True)
    lhs = conj_theta(conj_theta(X12, 0, 2, **inv), 1, 2, **inv) * conj_theta(X13, 1, 2, **inv) * X23
    rhs = conj_theta(conj_theta(X23, 0, 2, **inv), 0, 1, **inv) * conj_theta(X13, 0, 1, **inv) * X12
    return lhs, rhs


def hexagons_factored(alg: Uq):
    """(Delta(x)id)X vs c23^{-1}(X13) X23 and (id(x)Delta)X vs c12^{-1}(X13) X12."""
    X = x_part(alg)
    X12 = X.embed(3, (0, 1))
    X13 = X.embed(3, (0, 2))
    X23 = X.embed(3, (1, 2))
    first = (X.apply_coproduct(0), conj_theta(X13, 1, 2, inverse=True) * X23)
    second = (X.apply_coproduct(1), conj_theta(X13, 0, 1, inverse=True) * X12)
    return first, second


def theta_coproduct_identities(alg: Uq) -> tuple[bool, bool]:
    """(Delta(x)id)Theta = Theta13 Theta23 and (id(x)Delta)Theta = Theta13 Theta12."""
    th = theta(alg)
    t13 = th.embed(3, (0, 2))
    t23 = th.embed(3, (1, 2))
    t12 = th.embed(3, (0, 1))
    return th.apply_coproduct(0) == t13 * t23, th.apply_coproduct(1) == t13 * t12


def monodromy(alg: Uq) -> TensorElem:
    """RR' = Theta^2 * (Theta^{-1} X Theta) * X_21."""
    X = x_part(alg)
    return theta(alg, 2) * conj_theta(X, 0, 1, inverse=True) * X.flip()


def reverse_monodromy(alg: Uq) -> TensorElem:
    """R'R = Theta^2 * (Theta^{-1} X_21 Theta) * X."""
    X = x_part(alg)
    return theta(alg, 2) * conj_theta(X.flip(), 0, 1, inverse=True) * X


def drinfeld_u(R: TensorElem) -> AlgElem:
    """u = S(b_i) a_i."""
    alg = R.alg
    return R.apply_map(1, alg.antipode_mono).multiply_legs((1, 0))


def drinfeld_u_inverse(R: TensorElem) -> AlgElem:
    """u^{-1} = S^{-2}(b_i) a_i."""
    alg = R.alg

    def s_inv2(k):
        return alg.antipode_inv(alg.antipode_mono(k, inverse=True))

    return R.apply_map(1, s_inv2).multiply_legs((1, 0))


def ribbon_v(R: TensorElem) -> AlgElem:
    """v = g^{-1} u with g = K^{p+1}."""
    alg = R.alg
    v = alg.k_power(-2 * (alg.p + 1)) * drinfeld_u(R)
    if not v.in_subalgebra():
        raise ArithmeticError("ribbon element has odd powers of K^{1/2}: conventions are broken")
    return v


def central_inverse(z: AlgElem) -> AlgElem:
    return z.inverse()


def ribbon_coproduct_check(alg: Uq, v: AlgElem) -> bool:
    """Delta(v) = (R'R)^{-1} (v(x)v), checked as Xc X Delta(v) = Theta^{-2}(v(x)v) with Xc = Theta^{-1} X_21 Theta."""
    X = x_part(alg)
    lhs = conj_theta(X.flip(), 0, 1, inverse=True) * X * alg.coproduct(v)
    rhs = theta(alg, -2) * TensorElem.pure(v, v)
    return lhs == rhs


@dataclass
class RibbonData:
    alg: Uq
    R: TensorElem
    Rprime: TensorElem
    RRp: TensorElem
    u: AlgElem
    v: AlgElem
    g: AlgElem
    v_inverse: AlgElem
    g_inverse: AlgElem
    _drinfeld_tensor: TensorElem | None = field(default=None, repr=False)

    @property
    def p(self):
        return self.alg.p

    def drinfeld_tensor(self) -> TensorElem:
        """(g (x) 1) RR'."""
        if self._drinfeld_tensor is None:
            self._drinfeld_tensor = TensorElem.pure(self.g, self.alg.one()) * self.RRp
        return self._drinfeld_tensor

    def drinfeld_map(self, psi: LinForm) -> AlgElem:
        return self.drinfeld_tensor().apply_functional(0, psi.value_at)

    def drinfeld_rows(self) -> list[dict]:
        """Row for each basis form: D(delta_x) as {sub_index: coeff}."""
        alg = self.alg
        rows: dict[int, dict] = {}
        for (a, b), c in self.drinfeld_tensor().terms.items():
            rows.setdefault(alg.sub_index(a), {})[alg.sub_index(b)] = c
        return [rows.get(i, {}) for i in range(alg.dim)]

    def drinfeld_rank(self) -> int:
        ech = Echelon(self.alg.ctx)
        for row in self.drinfeld_rows():
            ech.add(row)
        return ech.rank

    def drinfeld_inverse(self, z: AlgElem) -> LinForm:
        """The unique psi with D(psi) = z (D is bijective)."""
        from .linalg import solve_linear

        alg = self.alg
        cols = self.drinfeld_rows()
        rhs = {alg.sub_index(k): c for k, c in z.terms.items()}
        sol = solve_linear(cols, rhs, alg.ctx)
        if sol is None:
            raise ValueError("element is not in the image of the Drinfeld map")
        vals = [sol.get(i, alg.ctx.zero) for i in range(alg.dim)]
        return LinForm(alg, vals)


def build_ribbon(p_or_alg) -> RibbonData:
    alg = p_or_alg if isinstance(p_or_alg, Uq) else uq(p_or_alg)
    return _build_ribbon_cached(alg.p)


_RIBBON_CACHE: dict[int, RibbonData] = {}


def _build_ribbon_cached(p: int) -> RibbonData:
    if p not in _RIBBON_CACHE:
        alg = uq(p)
        R = build_R(alg)
        RRp = monodromy(alg)
        if not RRp.in_subalgebra():
            raise ArithmeticError("RR' has odd powers of K^{1/2}: conventions are broken")
        u = drinfeld_u(R)
        v = ribbon_v(R)
        g = alg.pivotal()
        g_inv = alg.k_power(-2 * (p + 1))
        v_inv = v.inverse()
        _RIBBON_CACHE[p] = RibbonData(alg, R, R.flip(), RRp, u, v, g, v_inv, g_inv)
    return _RIBBON_CACHE[p]


# ----------------------------------------------------------------------------
# RSD map on a module


def l_matrices(module, R: TensorElem | None = None):
    """(L^{(+)}, L^{(-)-1}) = ((T(x)id)(R), (T(x)id)(R')) as matrices over the extension."""
    alg = module.alg
    R = R if R is not None else build_R(alg)
    return _eval_first_leg(module, R), _eval_first_leg(module, R.flip())


def l_minus(module, R: TensorElem | None = None):
    """L^{(-)} = (T(x)id)(R'^{-1}), using R'^{-1} = (R^{-1})_21."""
    alg = module.alg
    R = R if R is not None else build_R(alg)
    rinv = r_inverse(R)  # R^{-1}
    return _eval_first_leg(module, rinv.flip())


def _eval_first_leg(module, t: TensorElem):
    alg = module.alg
    n = module.dim
    out = [[alg.elem() for _ in range(n)] for _ in range(n)]
    acc = [[{} for _ in range(n)] for _ in range(n)]
    for (a, b), c in t.terms.items():
        mat = module.act_mono(a)
        for r in range(n):
            row = mat[r]
            for s in range(n):
                x = row[s]
                if x:
                    d = acc[r][s]
                    w = c * x
                    d[b] = d[b] + w if b in d else w
    for r in range(n):
        for s in range(n):
            out[r][s] = AlgElem(alg, {k: v for k, v in acc[r][s].items() if v})
    return out


def elem_matmul(a, b, alg: Uq):
    n, m, k = len(a), len(b), len(b[0])
    out = [[alg.elem() for _ in range(k)] for _ in range(n)]
    for i in range(n):
        for j in range(k):
            s = alg.elem()
            for t in range(m):
                if a[i][t].terms and b[t][j].terms:
                    s = s + a[i][t] * b[t][j]
            out[i][j] = s
    return out


def psi01_matrix(module, R: TensorElem | None = None):
    """Psi_{0,1}(M) = L^{(+)} L^{(-)-1} for a lifted module; entries lie in Uq."""
    lp, lmi = l_matrices(module, R)
    out = elem_matmul(lp, lmi, module.alg)
    for row in out:
        for x in row:
            if not x.in_subalgebra():
                raise ArithmeticError("RSD image left the restricted quantum group")
    return out


def presentation_relations(abcd, alg: Uq) -> dict[str, bool]:
    """The defining relations of L_{0,1}(Uq) evaluated on given a, b, c, d."""
    (a, b), (c, d) = abcd
    ctx = alg.ctx
    q, qh, qi = ctx.q, ctx.qhat, ctx.q.inv()
    one = alg.one()
    p = alg.p
    return {
        "da=ad": d * a == a * d,
        "db=q^2bd": d * b == b * d * q ** 2,
        "dc=q^-2cd": d * c == c * d * qi ** 2,
        "ba=ab+q^-1qhat bd": b * a == a * b + b * d * (qi * qh),
        "cb=bc+q^-1qhat(da-d^2)": c * b == b * c + (d * a - d * d) * (qi * qh),
        "ca=ac-q^-1qhat dc": c * a == a * c - d * c * (qi * qh),
        "ad-q^2bc=1": a * d - b * c * q ** 2 == one,
        "b^p=0": (b ** p).is_zero(),
        "c^p=0": (c ** p).is_zero(),
        "d^2p=1": d ** (2 * p) == one,
    }
