"""Exact linear algebra over Q(zeta_4p).

Sparse Gauss-Jordan elimination on rows stored as {column: CycloNum}, plus a
dense matrix type whose power-basis components are flint rational matrices
(used for the large operator products).
"""

from __future__ import annotations

from flint import fmpq, fmpq_mat, fmpq_poly

from .cyclo import CycloNum, FieldContext


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self, ctx: FieldContext, protect=None):
        self.ctx = ctx
        self.pivots: dict = {}  # pivot column -> row (pivot entry normalised to 1)
        self.protect = protect  # column that may never become a pivot (augmented rhs)

    def reduce(self, row: dict) -> dict:
        row = {c: v for c, v in row.items() if v}
        for col in [c for c in row if c in self.pivots]:
            f = row.get(col)
            if not f:
                continue
            for c, v in self.pivots[col].items():
                w = row.get(c)
                w = -f * v if w is None else w - f * v
                if w:
                    row[c] = w
                else:
                    row.pop(c, None)
        return row

    def add(self, row: dict):
        """Insert a row; returns the new pivot column, or None if dependent.

        Raises ValueError when the row reduces to a nonzero multiple of the
        protected column (inconsistent system)."""
        row = self.reduce(row)
        if not row:
            return None
        candidates = [c for c in row if c != self.protect]
        if not candidates:
            raise ValueError("inconsistent linear system")
        col = min(candidates, key=_sort_key)
        inv = row[col].inv()
        row = {c: v * inv for c, v in row.items()}
        row[col] = self.ctx.one
        for pc, prow in self.pivots.items():
            f = prow.get(col)
            if f:
                for c, v in row.items():
                    w = prow.get(c)
                    w = -f * v if w is None else w - f * v
                    if w:
                        prow[c] = w
                    else:
                        prow.pop(c, None)
        self.pivots[col] = row
        return col

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _sort_key(c):
    return (0, c) if isinstance(c, int) else (1, repr(c))


def rank(rows, ctx: FieldContext) -> int:
    ech = Echelon(ctx)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, columns, ctx: FieldContext) -> list[dict]:
    """Basis of {x : sum_c row[c] x[c] = 0 for every row}, x indexed by `columns`."""
    ech = Echelon(ctx)
    for r in rows:
        ech.add(r)
    basis = []
    for f in columns:
        if f in ech.pivots:
            continue
        vec = {f: ctx.one}
        for pc, prow in ech.pivots.items():
            v = prow.get(f)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


_RHS = ("__rhs__",)


def solve_linear(cols, rhs: dict, ctx: FieldContext):
    """Find x with sum_c x[c] * cols[c] = rhs (vectors as dicts); None if inconsistent."""
    rows: dict = {}
    for c, col in enumerate(cols):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
    for r, v in rhs.items():
        if v:
            rows.setdefault(r, {})[_RHS] = v
    ech = Echelon(ctx, protect=_RHS)
    try:
        for r in rows.values():
            ech.add(r)
    except ValueError:
        return None
    sol = {}
    for pc, prow in ech.pivots.items():
        v = prow.get(_RHS)
        if v:
            sol[pc] = v
    return sol


def solve_rows(rows, rhs_key, ctx: FieldContext):
    """Solve a system given as rows {unknown: coeff, rhs_key: constant} meaning sum = constant."""
    ech = Echelon(ctx, protect=rhs_key)
    try:
        for r in rows:
            ech.add(r)
    except ValueError:
        return None
    return {pc: prow.get(rhs_key, ctx.zero) for pc, prow in ech.pivots.items()}, ech


def express_in_basis(vectors, target, ctx: FieldContext):
    """Coefficients a with sum_i a[i] vectors[i] = target (dict vectors), or None."""
    sol = solve_linear([dict(v) for v in vectors], dict(target), ctx)
    if sol is None:
        return None
    return [sol.get(i, ctx.zero) for i in range(len(vectors))]


# ----------------------------------------------------------------------------
# dense matrices


class KMatrix:
    """Dense matrix over Q(zeta) stored as rational components on the power basis."""

    __slots__ = ("ctx", "nrows", "ncols", "comps")

    def __init__(self, ctx: FieldContext, nrows: int, ncols: int, comps=None):
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        self.comps = comps if comps is not None else [fmpq_mat(nrows, ncols) for _ in range(ctx.degree)]

    @classmethod
    def from_entries(cls, ctx, nrows, ncols, entries) -> "KMatrix":
        """entries: iterable of (row, col, CycloNum)."""
        d = ctx.degree
        tables = [[[0] * ncols for _ in range(nrows)] for _ in range(d)]
        for r, c, v in entries:
            for t, coef in enumerate(v.poly.coeffs()):
                if coef:
                    tables[t][r][c] = tables[t][r][c] + coef
        comps = [fmpq_mat(nrows, ncols, [x for row in tab for x in row]) if nrows and ncols else fmpq_mat(nrows, ncols)
                 for tab in tables]
        return cls(ctx, nrows, ncols, comps)

    @classmethod
    def from_rows(cls, ctx, rows) -> "KMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls.from_entries(ctx, nrows, ncols,
                                ((r, c, v) for r, row in enumerate(rows) for c, v in enumerate(row) if v))

    @classmethod
    def identity(cls, ctx, n) -> "KMatrix":
        m = cls(ctx, n, n)
        for i in range(n):
            m.comps[0][i, i] = 1
        return m

    @classmethod
    def zeros(cls, ctx, nrows, ncols) -> "KMatrix":
        return cls(ctx, nrows, ncols)

    def entry(self, r: int, c: int) -> CycloNum:
        return CycloNum(self.ctx, fmpq_poly([comp[r, c] for comp in self.comps]))

    def to_rows(self) -> list[list[CycloNum]]:
        tabs = [comp.tolist() for comp in self.comps]
        out = []
        for r in range(self.nrows):
            out.append([CycloNum(self.ctx, fmpq_poly([tab[r][c] for tab in tabs])) for c in range(self.ncols)])
        return out

    def _reduce(self, comps):
        d = self.ctx.degree
        mod = [int(c.p) for c in self.ctx.modulus.coeffs()]  # monic, integer
        for e in range(len(comps) - 1, d - 1, -1):
            top = comps[e]
            if top is None:
                continue
            for t in range(d):
                if mod[t]:
                    idx = e - d + t
                    term = top * (-mod[t])
                    comps[idx] = term if comps[idx] is None else comps[idx] + term
        out = []
        for t in range(d):
            out.append(comps[t] if comps[t] is not None else fmpq_mat(self.nrows, self.ncols))
        return out

    def __matmul__(self, other: "KMatrix") -> "KMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        d = self.ctx.degree
        comps = [None] * (2 * d - 1)
        for a, A in enumerate(self.comps):
            if _is_zero_mat(A):
                continue
            for b, B in enumerate(other.comps):
                if _is_zero_mat(B):
                    continue
                prod = A * B
                comps[a + b] = prod if comps[a + b] is None else comps[a + b] + prod
        res = KMatrix(self.ctx, self.nrows, other.ncols)
        res.comps = res._reduce(comps)
        return res

    def __add__(self, other: "KMatrix") -> "KMatrix":
        return KMatrix(self.ctx, self.nrows, self.ncols, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "KMatrix") -> "KMatrix":
        return KMatrix(self.ctx, self.nrows, self.ncols, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return KMatrix(self.ctx, self.nrows, self.ncols, [-a for a in self.comps])

    def scale(self, c: CycloNum) -> "KMatrix":
        c = self.ctx.rational(c) if not isinstance(c, CycloNum) else c
        d = self.ctx.degree
        comps = [None] * (2 * d - 1)
        for t, coef in enumerate(c.poly.coeffs()):
            if not coef:
                continue
            for a, A in enumerate(self.comps):
                term = A * coef
                comps[a + t] = term if comps[a + t] is None else comps[a + t] + term
        res = KMatrix(self.ctx, self.nrows, self.ncols)
        res.comps = res._reduce(comps)
        return res

    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and all(
            a == b for a, b in zip(self.comps, other.comps))

    def is_zero(self) -> bool:
        return all(_is_zero_mat(c) for c in self.comps)

    def is_scalar(self, c: CycloNum) -> bool:
        return self == KMatrix.identity(self.ctx, self.nrows).scale(c)

    def transpose(self) -> "KMatrix":
        return KMatrix(self.ctx, self.ncols, self.nrows, [c.transpose() for c in self.comps])

    def submatrix(self, rows, cols) -> "KMatrix":
        tabs = [c.tolist() for c in self.comps]
        comps = []
        for tab in tabs:
            comps.append(fmpq_mat(len(rows), len(cols), [tab[r][c] for r in rows for c in cols])
                         if rows and cols else fmpq_mat(len(rows), len(cols)))
        return KMatrix(self.ctx, len(rows), len(cols), comps)

    def apply(self, vec) -> list[CycloNum]:
        col = KMatrix.from_entries(self.ctx, self.ncols, 1, ((i, 0, v) for i, v in enumerate(vec) if v))
        out = self @ col
        return [out.entry(i, 0) for i in range(self.nrows)]

    def rank(self) -> int:
        return rank(self.sparse_rows(), self.ctx)

    def sparse_rows(self) -> list[dict]:
        rows = self.to_rows()
        return [{c: v for c, v in enumerate(row) if v} for row in rows]

    def first_difference(self, other: "KMatrix"):
        diff = self - other
        tabs = [c.tolist() for c in diff.comps]
        for r in range(self.nrows):
            for c in range(self.ncols):
                if any(tab[r][c] for tab in tabs):
                    return r, c
        return None

    def inverse(self) -> "KMatrix":
        n = self.nrows
        ctx = self.ctx
        rows = self.sparse_rows()
        aug = []
        for r, row in enumerate(rows):
            rr = dict(row)
            rr[("inv", r)] = ctx.one
            aug.append(rr)
        ech = Echelon(ctx)
        for r in aug:
            ech.add(r)
        if any(c not in ech.pivots for c in range(n)):
            raise ZeroDivisionError("singular matrix")
        entries = []
        for c in range(n):
            prow = ech.pivots[c]
            for key, v in prow.items():
                if isinstance(key, tuple):
                    entries.append((c, key[1], v))
        return KMatrix.from_entries(ctx, n, n, entries)

    def __repr__(self):
        return f"KMatrix({self.nrows}x{self.ncols})"


def _is_zero_mat(m) -> bool:
    return m.nrows() == 0 or m.ncols() == 0 or not any(m.entries())


def block_matrix(ctx, blocks) -> KMatrix:
    """Assemble a KMatrix from a 2-d list of equally sized KMatrix blocks."""
    nb_r = len(blocks)
    nb_c = len(blocks[0])
    h = blocks[0][0].nrows
    w = blocks[0][0].ncols
    entries = []
    for bi, brow in enumerate(blocks):
        for bj, blk in enumerate(brow):
            tabs = [c.tolist() for c in blk.comps]
            for r in range(h):
                for c in range(w):
                    coeffs = [tab[r][c] for tab in tabs]
                    if any(coeffs):
                        entries.append((bi * h + r, bj * w + c, CycloNum(ctx, fmpq_poly(coeffs))))
    return KMatrix.from_entries(ctx, nb_r * h, nb_c * w, entries)


def split_blocks(m: KMatrix, nb: int) -> list[list[KMatrix]]:
    h = m.nrows // nb
    w = m.ncols // nb
    return [[m.submatrix(list(range(bi * h, (bi + 1) * h)), list(range(bj * w, (bj + 1) * w)))
             for bj in range(nb)] for bi in range(nb)]


# small dense helpers over CycloNum lists --------------------------------------


def mat_mul(a, b, ctx):
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    out = [[ctx.zero] * k for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(m):
            x = ai[t]
            if not x:
                continue
            bt = b[t]
            for j in range(k):
                y = bt[j]
                if y:
                    oi[j] = oi[j] + x * y
    return out


def mat_eq(a, b) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def identity(n, ctx):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def kron(a, b, ctx):
    n, m = len(a), len(b)
    out = [[ctx.zero] * (n * m) for _ in range(n * m)]
    for i in range(n):
        for j in range(n):
            x = a[i][j]
            if not x:
                continue
            for k in range(m):
                for l in range(m):
                    y = b[k][l]
                    if y:
                        out[i * m + k][j * m + l] = x * y
    return out


def mat_inverse(a, ctx):
    n = len(a)
    km = KMatrix.from_rows(ctx, a)
    return km.inverse().to_rows()


def transpose(a):
    return [list(r) for r in zip(*a)]
